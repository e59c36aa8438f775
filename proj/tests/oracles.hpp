#pragma once

// Reference implementations kept independent of the library code paths they
// check: Eigen dense algebra, naive loops, long-double bisection.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "curvipat/integrators.hpp"
#include "curvipat/operators.hpp"
#include "curvipat/tensor.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd to_eigen(const curvipat::Matrix& A) {
    MatrixXd out(A.rows(), A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i) out(i, j) = A(i, j);
    return out;
}

inline VectorXd to_eigen(const curvipat::Field& W) {
    const auto v = W.vec();
    return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline curvipat::Field to_field(const VectorXd& v, std::span<const std::size_t> dims) {
    return curvipat::Field::unvec(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), dims);
}

/// out(.., i, ..) = sum_m L(i, m) T(.., m, ..) by explicit loops.
inline curvipat::Field naive_mode_product(int mu, const MatrixXd& L, const curvipat::Field& T) {
    curvipat::Field out(T.shape());
    const std::size_t n1 = T.dim(0), n2 = T.dim(1), n3 = T.dim(2);
    for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t i = 0; i < n1; ++i) {
                double s = 0.0;
                if (mu == 1)
                    for (std::size_t m = 0; m < n1; ++m) s += L(i, m) * T(m, j, k);
                else if (mu == 2)
                    for (std::size_t m = 0; m < n2; ++m) s += L(j, m) * T(i, m, k);
                else
                    for (std::size_t m = 0; m < n3; ++m) s += L(k, m) * T(i, j, m);
                out(i, j, k) = s;
            }
    return out;
}

inline MatrixXd kron(const MatrixXd& A, const MatrixXd& B) {
    MatrixXd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

/// L_d (x) ... (x) L_1 for (L_1, ..., L_d).
inline MatrixXd kron_chain(const std::vector<MatrixXd>& factors) {
    MatrixXd out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(factors[i], out);
    return out;
}

/// phi_1(X) as the top-right block of exp([[X, I], [0, 0]]).
inline MatrixXd phi1(const MatrixXd& X) {
    const Eigen::Index n = X.rows();
    MatrixXd B = MatrixXd::Zero(2 * n, 2 * n);
    B.topLeftCorner(n, n) = X;
    B.topRightCorner(n, n) = MatrixXd::Identity(n, n);
    const MatrixXd E = B.exp();
    return E.topRightCorner(n, n);
}

inline MatrixXd tridiag(const curvipat::TridiagonalOperator& T) {
    const auto n = static_cast<Eigen::Index>(T.n);
    MatrixXd A = MatrixXd::Zero(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        A(l, l) = T.a[l];
        if (l + 1 < n) {
            A(l, l + 1) = T.b[l];
            A(l + 1, l) = T.c[l];
        }
    }
    return A;
}

inline MatrixXd periodic(const curvipat::PeriodicTridiagonal& P) {
    const auto n = static_cast<Eigen::Index>(P.n);
    MatrixXd A = MatrixXd::Zero(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        A(l, l) += P.diag;
        A(l, (l + 1) % n) += P.off;
        A(l, (l + n - 1) % n) += P.off;
    }
    return A;
}

inline MatrixXd diag(const curvipat::DiagonalWeights& D) {
    VectorXd d(static_cast<Eigen::Index>(D.size()));
    for (std::size_t i = 0; i < D.size(); ++i) d(static_cast<Eigen::Index>(i)) = D.values[i];
    return d.asDiagonal();
}

inline MatrixXd eye(std::size_t n) {
    return MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

/// Kronecker summands of coeff * M in split order (innermost factor first).
inline std::vector<MatrixXd> split_summands(const curvipat::Discretization& d, double coeff) {
    using curvipat::Geometry;
    std::vector<MatrixXd> s;
    switch (d.geometry) {
        case Geometry::Disk: {
            s.push_back(kron_chain({diag(d.d_rho), periodic(*d.theta)}));
            s.push_back(kron_chain({tridiag(*d.rho), eye(d.dims[1])}));
            break;
        }
        case Geometry::Sphere: {
            const std::size_t nt = d.dims[0];
            s.push_back(kron_chain({eye(nt), tridiag(*d.phi)}));
            s.push_back(kron_chain({periodic(*d.theta), diag(d.d_phi)}));
            break;
        }
        case Geometry::Ball: {
            const std::size_t nt = d.dims[1], np = d.dims[2];
            s.push_back(kron_chain({diag(d.d_rho), eye(nt), tridiag(*d.phi)}));
            s.push_back(kron_chain({diag(d.d_rho), periodic(*d.theta), diag(d.d_phi)}));
            s.push_back(kron_chain({tridiag(*d.rho), eye(nt), eye(np)}));
            break;
        }
        case Geometry::Cylinder: {
            const std::size_t nr = d.dims[0], nt = d.dims[1];
            s.push_back(kron_chain({eye(nr), eye(nt), tridiag(*d.z)}));
            s.push_back(kron_chain({diag(d.d_rho), periodic(*d.theta), eye(d.dims[2])}));
            s.push_back(kron_chain({tridiag(*d.rho), eye(nt), eye(d.dims[2])}));
            break;
        }
    }
    for (auto& m : s) m *= coeff;
    return s;
}

inline MatrixXd full_operator(const std::vector<MatrixXd>& summands) {
    MatrixXd M = summands.front();
    for (std::size_t i = 1; i < summands.size(); ++i) M += summands[i];
    return M;
}

/// w + tau * phi1(tau S_d) ... phi1(tau S_1) (M w + g).
inline VectorXd split_step(const std::vector<MatrixXd>& summands, const VectorXd& w,
                           const VectorXd& g, double tau) {
    VectorXd f = full_operator(summands) * w + g;
    for (const MatrixXd& S : summands) f = phi1(tau * S) * f;
    return w + tau * f;
}

/// w + tau * phi1(tau M) (M w + g).
inline VectorXd exact_ee_step(const MatrixXd& M, const VectorXd& w, const VectorXd& g, double tau) {
    return w + tau * (phi1(tau * M) * (M * w + g));
}

/// Root of cot(x pi / (n - 1 + 2x)) - 2 (n - 1 + 2x) / pi on (0, 1/2) by
/// long-double bisection.
inline long double sigma_bisection(std::size_t n) {
    const long double nm1 = static_cast<long double>(n) - 1.0L;
    const long double pi = std::numbers::pi_v<long double>;
    auto f = [&](long double x) {
        const long double N = nm1 + 2.0L * x;
        return std::cos(x * pi / N) / std::sin(x * pi / N) - 2.0L * N / pi;
    };
    long double lo = 1e-30L, hi = 0.5L;
    for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (f(mid) > 0.0L)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5L * (lo + hi);
}

inline curvipat::Field random_field(std::span<const std::size_t> dims, std::mt19937_64& gen,
                                    double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> U(lo, hi);
    curvipat::Field F(dims);
    for (double& v : F.vec()) v = U(gen);
    return F;
}

inline curvipat::Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    curvipat::Matrix A(r, c);
    for (double& v : A.values()) v = U(gen);
    return A;
}

}  // namespace oracle
