#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvipat {

enum class ErrorKind {
    InvalidDimension,
    UnsupportedDimension,
    ParameterRange,
    Structure,
    Shape,
    OracleSize,
    NumericalFailure,
    Divergence,
    Usage,
    Io,
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

/// Library error carrying a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the time loop when a field becomes non-finite or exceeds the
/// magnitude guard. `step()` is 1-based.
class DivergenceError : public Error {
public:
    DivergenceError(std::size_t step, const std::string& what)
        : Error(ErrorKind::Divergence, what), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace curvipat
