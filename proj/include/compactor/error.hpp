#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compactor {

enum class ErrorKind {
    Parse,         // malformed specification document
    Validation,    // well-formed document violating a model invariant
    Mapping,       // declared mapping function does not hold
    Io,
    Verification,  // placement check failed
    TooLarge,      // instance exceeds exhaustive-search limits
    Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace compactor
