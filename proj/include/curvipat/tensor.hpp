#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "curvipat/dense.hpp"

namespace curvipat {

/// Dense real tensor of order 1..3 stored with the first index fastest:
/// element (i, j, k) lives at i + j*n1 + k*n1*n2 (0-based).
class Field {
public:
    Field() = default;
    Field(std::initializer_list<std::size_t> dims, double fill = 0.0);
    Field(std::span<const std::size_t> dims, double fill = 0.0);

    /// Rebuilds a field from its vectorization; the data is copied verbatim.
    static Field unvec(std::span<const double> data, std::span<const std::size_t> dims);

    [[nodiscard]] std::size_t order() const noexcept { return order_; }
    /// Extent along `axis` (0-based). Axes beyond the order have extent 1.
    [[nodiscard]] std::size_t dim(std::size_t axis) const noexcept { return dims_[axis]; }
    [[nodiscard]] std::array<std::size_t, 3> dims() const noexcept { return dims_; }
    [[nodiscard]] std::span<const std::size_t> shape() const noexcept {
        return {dims_.data(), order_};
    }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool same_shape(const Field& other) const noexcept {
        return order_ == other.order_ && dims_ == other.dims_;
    }

    double& operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) noexcept {
        return data_[i + dims_[0] * (j + dims_[1] * k)];
    }
    double operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) const noexcept {
        return data_[i + dims_[0] * (j + dims_[1] * k)];
    }

    [[nodiscard]] double* data() noexcept { return data_.data(); }
    [[nodiscard]] const double* data() const noexcept { return data_.data(); }
    [[nodiscard]] std::span<double> vec() noexcept { return data_; }
    [[nodiscard]] std::span<const double> vec() const noexcept { return data_; }

    void fill(double value) noexcept;

    friend bool operator==(const Field&, const Field&) = default;

private:
    void init(std::span<const std::size_t> dims, double fill);

    std::size_t order_ = 0;
    std::array<std::size_t, 3> dims_{1, 1, 1};
    std::vector<double> data_;
};

/// out = T x_mu op(L), i.e. out(.., i, ..) = sum_m op(L)(i, m) T(.., m, ..).
/// `mu` is 1-based. `out` is resized to T's shape and must not alias T.
void mode_product(int mu, const Matrix& L, const Field& T, Field& out, Trans t = Trans::No);
[[nodiscard]] Field mode_product(int mu, const Matrix& L, const Field& T, Trans t = Trans::No);

/// Successive mode products in ascending mode order. A null entry skips its mode.
[[nodiscard]] Field tucker(const Field& T, std::span<const Matrix* const> factors);

[[nodiscard]] Field hadamard(const Field& A, const Field& B);
void hadamard_inplace(Field& A, const Field& B);

/// Dense L_d (x) ... (x) L_1 for factors given as (L_1, ..., L_d).
inline constexpr std::size_t kKronCap = 4096;
[[nodiscard]] Matrix kron_assemble(std::span<const Matrix> factors);

}  // namespace curvipat
