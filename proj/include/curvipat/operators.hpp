#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "curvipat/dense.hpp"

namespace curvipat {

enum class OperatorKind { Rho2, Rho3, Phi, Z, Lambda };

[[nodiscard]] const char* to_string(OperatorKind kind) noexcept;

/// One-dimensional tridiagonal discretization matrix with its grid.
/// Row l (0-based) reads c[l-1] w[l-1] + a[l] w[l] + b[l] w[l+1].
struct TridiagonalOperator {
    std::size_t n = 0;
    std::vector<double> a;     ///< diagonal, length n
    std::vector<double> b;     ///< superdiagonal, length n-1
    std::vector<double> c;     ///< subdiagonal, length n-1
    std::vector<double> grid;  ///< coordinate nodes, length n
    double h = 0.0;
    OperatorKind kind = OperatorKind::Rho2;
    double lambda = 0.0;  ///< anomalous exponent, meaningful for kind == Lambda

    [[nodiscard]] Matrix dense() const;
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] std::vector<double> row_sums() const;
};

/// Periodic second-difference matrix on n equispaced angles.
struct PeriodicTridiagonal {
    std::size_t n = 0;
    double h = 0.0;
    double diag = 0.0;
    double off = 0.0;
    std::vector<double> grid;

    [[nodiscard]] Matrix dense() const;
    [[nodiscard]] double max_abs() const noexcept { return -diag; }
};

/// A = V diag(lambdas) V^{-1} with V = Xi Q.
struct EigenFactorization {
    std::vector<double> lambdas;
    Matrix Q;
    std::vector<double> xi;

    [[nodiscard]] std::size_t size() const noexcept { return lambdas.size(); }
    [[nodiscard]] Matrix V() const;
    [[nodiscard]] Matrix Vinv() const;
};

struct DiagonalWeights {
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] Matrix dense() const;
};

/// Entries rho_i^{-p}; p = 2 for the Laplacian, 2 + lambda for the anomalous operator.
[[nodiscard]] DiagonalWeights radial_weights(std::span<const double> rho, double p);
/// Entries sin(phi_k)^{-2}.
[[nodiscard]] DiagonalWeights polar_weights(std::span<const double> phi);

[[nodiscard]] PeriodicTridiagonal build_theta(std::size_t n);
[[nodiscard]] EigenFactorization eig_theta(const PeriodicTridiagonal& A);

/// Radial operator for dimension d in {2, 3} with a symmetry condition at
/// the origin and homogeneous Neumann at rho_star.
[[nodiscard]] TridiagonalOperator build_rho(int d, std::size_t n, double rho_star);

/// The characteristic function whose root fixes the polar grid offset.
[[nodiscard]] double sigma_residual(std::size_t n, double x);
/// Lower end of the guaranteed bracket for the polar offset.
[[nodiscard]] double sigma_lower_bound(std::size_t n);
/// Root of sigma_residual in (sigma_lower_bound(n), 1/2).
[[nodiscard]] double solve_sigma(std::size_t n, double tol = 1e-14);

[[nodiscard]] std::pair<TridiagonalOperator, double> build_phi_op(std::size_t n);
[[nodiscard]] TridiagonalOperator build_z(std::size_t n, double z_star);
[[nodiscard]] TridiagonalOperator build_lambda(std::size_t n, double rho_star, double lambda);

/// Closed-form eigenpairs of build_z(n, z_star); eigenvectors are unnormalized
/// columns scaled so that the last component is 1. Ordered by k = 1..n.
struct ExplicitEigenpairs {
    std::vector<double> lambdas;
    Matrix vectors;
};
[[nodiscard]] ExplicitEigenpairs explicit_z_eigenpairs(std::size_t n, double z_star);

struct Symmetrization {
    std::vector<double> xi;
    std::vector<double> diag;
    std::vector<double> off;  ///< sqrt(b_l c_l), length n-1
};
[[nodiscard]] Symmetrization symmetrize(const TridiagonalOperator& T);

/// Symmetric tridiagonal eigensolver (implicit QL). Eigenvalues ascending,
/// columns of the returned matrix are the matching orthonormal eigenvectors.
std::pair<std::vector<double>, Matrix> symmetric_tridiagonal_eigen(std::span<const double> diag,
                                                                   std::span<const double> off);

[[nodiscard]] EigenFactorization eig_tridiag(const TridiagonalOperator& T);

/// Minimum entry of exp(tA), computed densely. Test-scale only (n <= 64).
inline constexpr std::size_t kExpCheckCap = 64;
[[nodiscard]] double matrix_exp_nonneg_check(const TridiagonalOperator& T, double t);
[[nodiscard]] double matrix_exp_nonneg_check(const PeriodicTridiagonal& A, double t);

}  // namespace curvipat
