#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "curvipat/dense.hpp"
#include "curvipat/operators.hpp"
#include "curvipat/tensor.hpp"

namespace curvipat {

/// phi_1(x) = (e^x - 1)/x with phi_1(0) = 1.
[[nodiscard]] double phi1_scalar(double x) noexcept;

/// Elementwise phi_1 values on a tensor grid.
struct PhiTensor {
    Field field;
    double tau_scale = 0.0;  ///< tau times the diffusion coefficient
};

/// Entry (i, j[, k]) = phi_1(((tau_coeff * f1[i]) * f2[j]) * f3[k]).
/// An empty span stands for a constant-ones factor of the given extent.
struct PhiFactor {
    std::span<const double> values;
    std::size_t extent = 0;  ///< used only when `values` is empty
};
[[nodiscard]] PhiTensor phi1_outer(double tau_coeff, std::span<const PhiFactor> factors);

/// V diag(phi_1(tau * lambda)) V^{-1}; pass tau already multiplied by any
/// diffusion coefficient.
[[nodiscard]] Matrix phi1_matrix(double tau, const EigenFactorization& E);

/// Top-right block of exp([[M, I], [0, 0]]), evaluated blockwise by Taylor
/// scaling-and-squaring. Test and reference use only.
inline constexpr std::size_t kPhiOracleCap = 4096;
[[nodiscard]] Matrix phi1_dense_oracle(const Matrix& M);

}  // namespace curvipat
