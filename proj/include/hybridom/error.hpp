#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hybridom {

/// Failure categories surfaced by the library. The CLI maps them to exit codes.
enum class ErrorKind {
    InvalidParameter,
    SingularResponse,
    NoThreshold,
    NoWindow,
    NoSteadyState,
    IntegrationFailure,
    Validation,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "invalid-parameter";
        case ErrorKind::SingularResponse: return "singular-response";
        case ErrorKind::NoThreshold: return "no-threshold";
        case ErrorKind::NoWindow: return "no-window";
        case ErrorKind::NoSteadyState: return "no-steady-state";
        case ErrorKind::IntegrationFailure: return "integration-failure";
        case ErrorKind::Validation: return "validation";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hybridom
