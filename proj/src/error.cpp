#include "driftwave/error.hpp"

namespace driftwave {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPowerOfTwo: return "NonPowerOfTwo";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::NonDyadicLength: return "NonDyadicLength";
        case ErrorCode::BadWindow: return "BadWindow";
        case ErrorCode::EmptyPanel: return "EmptyPanel";
        case ErrorCode::RaggedPanel: return "RaggedPanel";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

namespace {
std::string decorate(ErrorCode code, const std::string& what, std::optional<std::size_t> line) {
    std::string msg{to_string(code)};
    if (line) msg += " (line " + std::to_string(*line) + ")";
    msg += ": ";
    msg += what;
    return msg;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, what, line)), code_(code), line_(line) {}

bool Error::is_input_error() const noexcept {
    switch (code_) {
        case ErrorCode::InvalidConfig:
        case ErrorCode::DomainError:
            return false;
        default:
            return true;
    }
}

}  // namespace driftwave
