#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace curvipat {

/// Dense column-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i + j * rows_]; }

    [[nodiscard]] double* data() noexcept { return data_.data(); }
    [[nodiscard]] const double* data() const noexcept { return data_.data(); }
    [[nodiscard]] std::span<double> values() noexcept { return data_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return data_; }

    [[nodiscard]] Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class Trans { No, Yes };

/// C = alpha * op(A) * op(B) + beta * C, column-major, op(A) is m x k.
/// When beta == 0 the prior contents of C are ignored (NaN-safe).
void gemm(Trans ta, Trans tb, std::size_t m, std::size_t n, std::size_t k, double alpha,
          const double* A, std::size_t lda, const double* B, std::size_t ldb, double beta,
          double* C, std::size_t ldc);

[[nodiscard]] Matrix matmul(const Matrix& A, const Matrix& B, Trans ta = Trans::No,
                            Trans tb = Trans::No);

[[nodiscard]] std::vector<double> matvec(const Matrix& A, std::span<const double> x);

[[nodiscard]] double max_abs(std::span<const double> x) noexcept;
[[nodiscard]] double max_abs(const Matrix& A) noexcept;
[[nodiscard]] double norm1(const Matrix& A) noexcept;
[[nodiscard]] double max_abs_diff(const Matrix& A, const Matrix& B);

/// exp(A) by Taylor scaling-and-squaring: A/2^s has 1-norm <= 0.5, 20 terms.
[[nodiscard]] Matrix expm_taylor(const Matrix& A);

}  // namespace curvipat
