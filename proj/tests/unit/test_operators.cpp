#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvipat/error.hpp"
#include "curvipat/operators.hpp"
#include "oracles.hpp"

using namespace curvipat;
using std::numbers::pi;

namespace {

std::vector<double> sorted_real_eigs(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    std::vector<double> out;
    for (auto v : es.eigenvalues()) out.push_back(v.real());
    std::sort(out.begin(), out.end());
    return out;
}

TridiagonalOperator make(OperatorKind kind, std::size_t n) {
    switch (kind) {
        case OperatorKind::Rho2: return build_rho(2, n, 1.0);
        case OperatorKind::Rho3: return build_rho(3, n, 1.0);
        case OperatorKind::Phi: return build_phi_op(n).first;
        case OperatorKind::Z: return build_z(n, 1.0);
        case OperatorKind::Lambda: return build_lambda(n, 1.0, -1.95);
    }
    return {};
}

double inv_xi_norm(const EigenFactorization& E) {
    return 1.0 / *std::min_element(E.xi.begin(), E.xi.end());
}

}  // namespace

TEST(Theta, FourPointStencil) {
    const auto A = build_theta(4);
    EXPECT_DOUBLE_EQ(A.h, pi / 2);
    EXPECT_DOUBLE_EQ(A.diag, -8 / (pi * pi));
    EXPECT_DOUBLE_EQ(A.off, 4 / (pi * pi));
    EXPECT_DOUBLE_EQ(A.grid[0], pi / 2);
    EXPECT_DOUBLE_EQ(A.grid[3], 2 * pi);
    const auto eigs = sorted_real_eigs(oracle::periodic(A));
    const double c = 1 / (pi * pi);
    EXPECT_NEAR(eigs[0], -16 * c, 1e-13);
    EXPECT_NEAR(eigs[1], -8 * c, 1e-13);
    EXPECT_NEAR(eigs[2], -8 * c, 1e-13);
    EXPECT_NEAR(eigs[3], 0.0, 1e-13);
    EXPECT_THROW((void)build_theta(2), Error);
}

TEST(Theta, RowSumsExactlyZero) {
    for (std::size_t n : {3u, 7u, 64u}) {
        const Matrix A = build_theta(n).dense();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += A(i, j);
            EXPECT_EQ(s, 0.0);
        }
    }
}

TEST(EigTheta, ConstantKernelOrthogonalAndResidual) {
    const auto E3 = eig_theta(build_theta(3));
    std::size_t zero = 0;
    for (std::size_t k = 0; k < 3; ++k)
        if (std::abs(E3.lambdas[k]) < 1e-14) zero = k;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(E3.Q(i, zero)), 1 / std::sqrt(3.0), 1e-15);

    for (std::size_t n : {8u, 9u}) {
        const auto A = build_theta(n);
        const auto E = eig_theta(A);
        const auto Q = oracle::to_eigen(E.Q);
        const auto eA = oracle::periodic(A);
        EXPECT_LE((Q.transpose() * Q - oracle::eye(n)).cwiseAbs().maxCoeff(), 1e-12);
        Eigen::VectorXd lam(n);
        for (std::size_t k = 0; k < n; ++k) lam(k) = E.lambdas[k];
        EXPECT_LE((eA * Q - Q * lam.asDiagonal()).cwiseAbs().maxCoeff(), 1e-12 * A.max_abs());
        for (double x : E.xi) EXPECT_EQ(x, 1.0);
    }
}

TEST(Rho, HandComputedSmallCases) {
    const auto T2 = build_rho(2, 2, 1.0);
    EXPECT_DOUBLE_EQ(T2.h, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(T2.grid[0], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(T2.grid[1], 1.0);
    EXPECT_DOUBLE_EQ(T2.a[0], -4.5);
    EXPECT_DOUBLE_EQ(T2.a[1], -4.5);
    EXPECT_DOUBLE_EQ(T2.b[0], 4.5);
    EXPECT_DOUBLE_EQ(T2.c[0], 4.5);

    const auto T3 = build_rho(3, 3, 1.0);
    EXPECT_DOUBLE_EQ(T3.h, 1.0 / 3.0);
    for (double a : T3.a) EXPECT_DOUBLE_EQ(a, -18.0);
    EXPECT_DOUBLE_EQ(T3.b[0], 18.0);
    EXPECT_DOUBLE_EQ(T3.b[1], 13.5);
    EXPECT_DOUBLE_EQ(T3.c[0], 4.5);
    EXPECT_DOUBLE_EQ(T3.c[1], 18.0);

    EXPECT_THROW((void)build_rho(4, 5, 1.0), Error);
}

TEST(Sigma, MatchesBisectionOracleAndBracket) {
    for (std::size_t n : {2u, 3u, 10u, 100u, 10000u}) {
        const double s = solve_sigma(n, 1e-12);
        const double ref = static_cast<double>(oracle::sigma_bisection(n));
        EXPECT_NEAR(s, ref, 1e-12 * std::max(1.0, double(n) / 100)) << n;
        EXPECT_LE(std::abs(sigma_residual(n, s)), 1e-12);
        const double nd = static_cast<double>(n);
        EXPECT_GT(s, (-(nd - 1) + std::sqrt(nd * nd - 1)) / 2);
        EXPECT_LT(s, 0.5);
    }
    EXPECT_NEAR(solve_sigma(2), 0.41289957, 1e-8);
    EXPECT_GT(solve_sigma(10000, 1e-12), 0.49);
    EXPECT_THROW((void)solve_sigma(10, 1e-9), Error);
}

TEST(Sigma, IncreasesWithN) {
    double prev = 0.0;
    for (std::size_t n = 2; n <= 4096; n *= 2) {
        const double s = solve_sigma(n, 1e-12);
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(Phi, SymmetricGridPositiveBandsZeroRowSums) {
    for (std::size_t n : {2u, 5u, 16u, 200u}) {
        const auto [T, sigma] = build_phi_op(n);
        EXPECT_NEAR(T.grid.front() + T.grid.back(), pi, 1e-12);
        EXPECT_NEAR(T.grid.front(), sigma * T.h, 1e-15);
        for (std::size_t l = 0; l + 1 < n; ++l) {
            EXPECT_GT(T.b[l], 0.0);
            EXPECT_GT(T.c[l], 0.0);
            EXPECT_DOUBLE_EQ(T.c[l], T.b[n - 2 - l]);
        }
        for (double r : T.row_sums()) EXPECT_LE(std::abs(r), 1e-12 * 2 / (T.h * T.h));
    }
}

TEST(Z, HandComputedAndDirichletRow) {
    const auto T = build_z(4, 1.0);
    EXPECT_DOUBLE_EQ(T.h, 0.25);
    for (double a : T.a) EXPECT_DOUBLE_EQ(a, -32.0);
    EXPECT_EQ(T.b, (std::vector<double>{32, 16, 16}));
    EXPECT_EQ(T.c, (std::vector<double>{16, 16, 16}));
    EXPECT_EQ(T.row_sums(), (std::vector<double>{0, 0, 0, -16}));
    EXPECT_DOUBLE_EQ(T.grid[0], 0.0);
}

TEST(Z, ExplicitEigenpairs) {
    const auto E4 = explicit_z_eigenpairs(4, 1.0);
    EXPECT_NEAR(E4.lambdas[0], -32 + 32 * std::cos(pi / 8), 1e-12);
    for (double l : E4.lambdas) EXPECT_LT(l, 0.0);
    for (std::size_t n : {4u, 8u, 16u, 64u}) {
        const auto T = build_z(n, 1.0);
        const auto E = explicit_z_eigenpairs(n, 1.0);
        const auto A = oracle::tridiag(T);
        const auto V = oracle::to_eigen(E.vectors);
        for (std::size_t k = 0; k < n; ++k) {
            const Eigen::VectorXd r = A * V.col(k) - E.lambdas[k] * V.col(k);
            EXPECT_LE(r.cwiseAbs().maxCoeff(), 1e-10 * T.max_abs());
        }
        auto expl = E.lambdas;
        std::sort(expl.begin(), expl.end());
        const auto num = eig_tridiag(T).lambdas;
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(expl[k], num[k], 1e-10 * T.max_abs());
    }
}

TEST(Lambda, ZeroExponentMatchesDiskInterior) {
    const auto L = build_lambda(4, 1.0, 0.0);
    const double h = L.h;
    EXPECT_DOUBLE_EQ(h, 1.0 / 4.5);
    EXPECT_DOUBLE_EQ(L.grid[0], h / 2);
    for (std::size_t l = 1; l <= 3; ++l) {
        const double ld = static_cast<double>(l);
        EXPECT_NEAR(L.b[l - 1], 2 * ld / ((2 * ld - 1) * h * h), 1e-12);
        EXPECT_NEAR(L.c[l - 1], 2 * ld / ((2 * ld + 1) * h * h), 1e-12);
    }
    for (double a : L.a) EXPECT_NEAR(a, -2 / (h * h), 1e-12);
}

TEST(Lambda, SuperdiffusiveStructure) {
    const auto L = build_lambda(8, 1.0, -1.95);
    EXPECT_NEAR(L.grid[0], 1.475 * L.h, 1e-15);
    const auto rs = L.row_sums();
    for (std::size_t l = 0; l + 1 < 8; ++l) EXPECT_LE(std::abs(rs[l]), 1e-12 * L.max_abs());
    EXPECT_LT(rs[7], 0.0);
    for (double b : L.b) EXPECT_GT(b, 0.0);
    for (double c : L.c) EXPECT_GT(c, 0.0);
    for (double l : eig_tridiag(L).lambdas) EXPECT_LT(l, 0.0);
    EXPECT_THROW((void)build_lambda(8, 1.0, -2.0), Error);
    EXPECT_THROW((void)build_lambda(8, 1.0, 0.5), Error);
}

TEST(Symmetrize, SymmetricAndClosedFormNorms) {
    const auto S = symmetrize(build_rho(2, 8, 1.0));
    EXPECT_EQ(S.xi[0], 1.0);
    for (std::size_t n : {3u, 8u, 20u, 500u}) {
        const auto E2 = eig_tridiag(build_rho(2, n, 1.0));
        EXPECT_LE(*std::max_element(E2.xi.begin(), E2.xi.end()), 1.0);
        EXPECT_NEAR(inv_xi_norm(E2), std::sqrt(2.0 * n - 3), 1e-12 * std::sqrt(2.0 * n));
        const auto E3 = eig_tridiag(build_rho(3, n, 1.0));
        EXPECT_NEAR(inv_xi_norm(E3), n - 1.0, 1e-12 * n);
        const auto Ez = eig_tridiag(build_z(n, 1.0));
        const auto [lo, hi] = std::minmax_element(Ez.xi.begin(), Ez.xi.end());
        EXPECT_NEAR(*hi / *lo, std::sqrt(2.0), 1e-12);
    }
    TridiagonalOperator bad = build_z(4, 1.0);
    bad.b[1] = 0.0;
    EXPECT_THROW((void)symmetrize(bad), Error);
}

TEST(Symmetrize, GrowthWindowsForPhiAndLambda) {
    for (std::size_t n : {64u, 128u, 256u}) {
        const double rp = inv_xi_norm(eig_tridiag(build_phi_op(2 * n).first)) /
                          inv_xi_norm(eig_tridiag(build_phi_op(n).first));
        EXPECT_GE(rp, 1.2);
        EXPECT_LE(rp, 1.7);
        const double rl = inv_xi_norm(eig_tridiag(build_lambda(2 * n, 1.0, -1.95))) /
                          inv_xi_norm(eig_tridiag(build_lambda(n, 1.0, -1.95)));
        EXPECT_LE(rl, 2.0);
    }
}

TEST(EigTridiag, AgainstGeneralEigensolverAndReconstruction) {
    for (OperatorKind kind :
         {OperatorKind::Rho2, OperatorKind::Rho3, OperatorKind::Phi, OperatorKind::Z, OperatorKind::Lambda}) {
        const auto T = make(kind, 16);
        const auto E = eig_tridiag(T);
        EXPECT_TRUE(std::is_sorted(E.lambdas.begin(), E.lambdas.end()));
        const auto ref = sorted_real_eigs(oracle::tridiag(T));
        for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(E.lambdas[k], ref[k], 1e-9 * T.max_abs());
        const auto Q = oracle::to_eigen(E.Q);
        EXPECT_LE((Q.transpose() * Q - oracle::eye(16)).cwiseAbs().maxCoeff(), 1e-12);
        Eigen::VectorXd lam(16);
        for (std::size_t k = 0; k < 16; ++k) lam(k) = E.lambdas[k];
        const Eigen::MatrixXd rec = oracle::to_eigen(E.V()) * lam.asDiagonal() * oracle::to_eigen(E.Vinv());
        EXPECT_LE((rec - oracle::tridiag(T)).cwiseAbs().maxCoeff(), 1e-9 * T.max_abs());
    }
}

TEST(EigTridiag, Deterministic) {
    const auto a = eig_tridiag(build_phi_op(33).first);
    const auto b = eig_tridiag(build_phi_op(33).first);
    EXPECT_EQ(a.lambdas, b.lambdas);
    EXPECT_EQ(a.Q, b.Q);
    EXPECT_EQ(a.xi, b.xi);
}

class OperatorStructure : public ::testing::TestWithParam<std::tuple<OperatorKind, std::size_t>> {};

TEST_P(OperatorStructure, PositivityEigenvaluesExponential) {
    const auto [kind, n] = GetParam();
    const auto T = make(kind, n);
    for (double b : T.b) EXPECT_GT(b, 0.0);
    for (double c : T.c) EXPECT_GT(c, 0.0);
    for (double a : T.a) EXPECT_LT(a, 0.0);
    for (double l : eig_tridiag(T).lambdas) EXPECT_LE(l, 1e-10 * T.max_abs());
    for (double t : {0.1, 1.0, 10.0}) EXPECT_GE(matrix_exp_nonneg_check(T, t), -1e-12);
}

INSTANTIATE_TEST_SUITE_P(
    AllKinds, OperatorStructure,
    ::testing::Combine(::testing::Values(OperatorKind::Rho2, OperatorKind::Rho3, OperatorKind::Phi,
                                         OperatorKind::Z, OperatorKind::Lambda),
                       ::testing::Values(8u, 16u, 32u, 64u)));

TEST(ExpCheck, IdentityAtZeroAndStochasticTheta) {
    EXPECT_EQ(matrix_exp_nonneg_check(build_z(5, 1.0), 0.0), 0.0);
    const auto A = build_theta(6);
    Matrix X = A.dense();
    const Matrix E = expm_taylor(X);
    for (std::size_t i = 0; i < 6; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 6; ++j) s += E(i, j);
        EXPECT_NEAR(s, 1.0, 1e-13);
    }
    EXPECT_GE(matrix_exp_nonneg_check(A, 1.0), 0.0);
    EXPECT_THROW((void)matrix_exp_nonneg_check(build_z(65, 1.0), 1.0), Error);
}
