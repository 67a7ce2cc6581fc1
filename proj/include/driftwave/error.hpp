#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace driftwave {

enum class ErrorCode {
    NonPowerOfTwo,
    LengthMismatch,
    DomainError,
    TooShort,
    NonDyadicLength,
    BadWindow,
    EmptyPanel,
    RaggedPanel,
    ParseError,
    NonFiniteValue,
    InvalidConfig,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. Input-file errors carry the
// 1-based line number they were raised on.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<std::size_t> line = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

    // True for errors caused by malformed or unusable input data rather
    // than by an inconsistent configuration.
    bool is_input_error() const noexcept;

private:
    ErrorCode code_;
    std::optional<std::size_t> line_;
};

}  // namespace driftwave
