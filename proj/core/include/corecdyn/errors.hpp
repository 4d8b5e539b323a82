#pragma once

#include <stdexcept>
#include <string>

namespace corecdyn {

enum class ErrorKind {
    NoIntersection,       // normal ray misses the core
    DegenerateTangent,    // outer boundary fails to be an immersion
    NonPositiveThickness, // profile dips to d <= 0
    DegenerateCosine,     // |<n,nu>| below tolerance in the distance relation
    ConstraintInfeasible, // no positive d0 attains the requested area
    ConfigError,          // malformed experiment configuration
    IoError,              // file could not be written or read
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    const char* kind_name() const { return error_kind_name(kind_); }

private:
    ErrorKind kind_;
};

} // namespace corecdyn
