#include "curvipat/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curvipat/error.hpp"

namespace curvipat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_n(std::size_t n, std::size_t min, const char* who) {
    if (n < min)
        throw Error(ErrorKind::InvalidDimension,
                    std::string(who) + ": n must be >= " + std::to_string(min));
}

TridiagonalOperator blank(std::size_t n, double h, OperatorKind kind) {
    TridiagonalOperator T;
    T.n = n;
    T.h = h;
    T.kind = kind;
    T.a.assign(n, 0.0);
    T.b.assign(n - 1, 0.0);
    T.c.assign(n - 1, 0.0);
    T.grid.assign(n, 0.0);
    return T;
}

// 1/y - cot(y), accurate for small y where the direct difference cancels.
double inv_minus_cot(double y) {
    if (std::abs(y) < 0.1) {
        const double y2 = y * y;
        return y * (1.0 / 3.0 +
                    y2 * (1.0 / 45.0 +
                          y2 * (2.0 / 945.0 +
                                y2 * (1.0 / 4725.0 +
                                      y2 * (2.0 / 93555.0 + y2 * (1382.0 / 638512875.0))))));
    }
    return 1.0 / y - std::cos(y) / std::sin(y);
}

}  // namespace

const char* to_string(OperatorKind kind) noexcept {
    switch (kind) {
        case OperatorKind::Rho2: return "rho2";
        case OperatorKind::Rho3: return "rho3";
        case OperatorKind::Phi: return "phi";
        case OperatorKind::Z: return "z";
        case OperatorKind::Lambda: return "lambda";
    }
    return "unknown";
}

Matrix TridiagonalOperator::dense() const {
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) A(i, i) = a[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        A(i, i + 1) = b[i];
        A(i + 1, i) = c[i];
    }
    return A;
}

double TridiagonalOperator::max_abs() const noexcept {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    for (double v : b) m = std::max(m, std::abs(v));
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> TridiagonalOperator::row_sums() const {
    std::vector<double> s(a);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s[i] += b[i];
        s[i + 1] += c[i];
    }
    return s;
}

Matrix PeriodicTridiagonal::dense() const {
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = diag;
        A(i, (i + 1) % n) += off;
        A(i, (i + n - 1) % n) += off;
    }
    return A;
}

Matrix EigenFactorization::V() const {
    Matrix V = Q;
    for (std::size_t j = 0; j < V.cols(); ++j)
        for (std::size_t i = 0; i < V.rows(); ++i) V(i, j) *= xi[i];
    return V;
}

Matrix EigenFactorization::Vinv() const {
    Matrix W = Q.transposed();
    for (std::size_t j = 0; j < W.cols(); ++j)
        for (std::size_t i = 0; i < W.rows(); ++i) W(i, j) /= xi[j];
    return W;
}

Matrix DiagonalWeights::dense() const {
    Matrix D(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) D(i, i) = values[i];
    return D;
}

DiagonalWeights radial_weights(std::span<const double> rho, double p) {
    DiagonalWeights D;
    D.values.reserve(rho.size());
    for (double r : rho) {
        if (!(r > 0.0)) throw Error(ErrorKind::ParameterRange, "radial_weights: node <= 0");
        D.values.push_back(std::pow(r, -p));
    }
    return D;
}

DiagonalWeights polar_weights(std::span<const double> phi) {
    DiagonalWeights D;
    D.values.reserve(phi.size());
    for (double p : phi) {
        const double s = std::sin(p);
        if (!(s > 0.0)) throw Error(ErrorKind::ParameterRange, "polar_weights: node at a pole");
        D.values.push_back(1.0 / (s * s));
    }
    return D;
}

PeriodicTridiagonal build_theta(std::size_t n) {
    require_n(n, 3, "build_theta");
    PeriodicTridiagonal A;
    A.n = n;
    A.h = 2.0 * kPi / static_cast<double>(n);
    A.diag = -2.0 / (A.h * A.h);
    A.off = 1.0 / (A.h * A.h);
    A.grid.resize(n);
    for (std::size_t j = 0; j < n; ++j) A.grid[j] = static_cast<double>(j + 1) * A.h;
    return A;
}

EigenFactorization eig_theta(const PeriodicTridiagonal& A) {
    const std::size_t n = A.n;
    EigenFactorization E;
    E.Q = Matrix(n, n);
    E.lambdas.assign(n, 0.0);
    E.xi.assign(n, 1.0);
    const double h2 = A.h * A.h;
    const double nd = static_cast<double>(n);
    auto eig = [&](std::size_t k) {
        return (2.0 * std::cos(2.0 * kPi * static_cast<double>(k) / nd) - 2.0) / h2;
    };

    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i) E.Q(i, col) = 1.0 / std::sqrt(nd);
    E.lambdas[col++] = 0.0;
    const double s2 = std::sqrt(2.0 / nd);
    for (std::size_t k = 1; 2 * k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double arg = static_cast<double>(k) * static_cast<double>(i + 1) * A.h;
            E.Q(i, col) = s2 * std::cos(arg);
            E.Q(i, col + 1) = s2 * std::sin(arg);
        }
        E.lambdas[col] = E.lambdas[col + 1] = eig(k);
        col += 2;
    }
    if (n % 2 == 0) {
        for (std::size_t i = 0; i < n; ++i)
            E.Q(i, col) = ((i + 1) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(nd);
        E.lambdas[col] = -4.0 / h2;
    }
    return E;
}

TridiagonalOperator build_rho(int d, std::size_t n, double rho_star) {
    if (d != 2 && d != 3)
        throw Error(ErrorKind::UnsupportedDimension,
                    "build_rho: d = " + std::to_string(d) + " is not 2 or 3");
    require_n(n, 2, "build_rho");
    if (!(rho_star > 0.0)) throw Error(ErrorKind::ParameterRange, "build_rho: rho_star <= 0");

    const double nd = static_cast<double>(n);
    const double h = d == 2 ? rho_star / (nd - 0.5) : rho_star / nd;
    TridiagonalOperator T = blank(n, h, d == 2 ? OperatorKind::Rho2 : OperatorKind::Rho3);
    const double h2 = h * h;
    for (std::size_t i = 0; i < n; ++i) {
        T.a[i] = -2.0 / h2;
        T.grid[i] = d == 2 ? h / 2.0 + static_cast<double>(i) * h : static_cast<double>(i + 1) * h;
    }
    for (std::size_t l = 1; l < n; ++l) {
        const double ld = static_cast<double>(l);
        if (d == 2) {
            T.b[l - 1] = 2.0 * ld / ((2.0 * ld - 1.0) * h2);
            T.c[l - 1] = 2.0 * ld / ((2.0 * ld + 1.0) * h2);
        } else {
            T.b[l - 1] = (ld + 1.0) / (ld * h2);
            T.c[l - 1] = ld / ((ld + 1.0) * h2);
        }
    }
    T.c[n - 2] = 2.0 / h2;
    return T;
}

double sigma_residual(std::size_t n, double x) {
    const double nm1 = static_cast<double>(n - 1);
    const double N = nm1 + 2.0 * x;
    const double y = x * kPi / N;
    return (N / kPi) * (1.0 - 2.0 * x) / x - inv_minus_cot(y);
}

double sigma_lower_bound(std::size_t n) {
    require_n(n, 2, "sigma_lower_bound");
    const double nd = static_cast<double>(n);
    return (nd - 1.0) / (nd - 1.0 + std::sqrt(nd * nd - 1.0));
}

double solve_sigma(std::size_t n, double tol) {
    require_n(n, 2, "solve_sigma");
    if (!(tol > 0.0) || tol > 1e-10)
        throw Error(ErrorKind::ParameterRange, "solve_sigma: tol must lie in (0, 1e-10]");

    const double nm1 = static_cast<double>(n - 1);
    double lo = sigma_lower_bound(n);
    double hi = 0.5;
    auto f = [n](double x) { return sigma_residual(n, x); };
    auto fprime = [nm1](double x) {
        const double N = nm1 + 2.0 * x;
        const double s = std::sin(x * kPi / N);
        return -(4.0 / kPi + nm1 * kPi / (N * N * s * s));
    };

    double x = 0.5 * (lo + hi);
    double best_x = x;
    double best_f = std::abs(f(x));
    constexpr int kMaxIter = 200;
    for (int it = 0; it < kMaxIter; ++it) {
        const double fx = f(x);
        if (std::abs(fx) < best_f) {
            best_f = std::abs(fx);
            best_x = x;
        }
        if (std::abs(fx) <= tol) return x;
        // f is strictly decreasing: positive values lie left of the root.
        if (fx > 0.0)
            lo = x;
        else
            hi = x;
        if (std::nextafter(lo, hi) >= hi) return best_x;
        double next = x - fx / fprime(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    throw Error(ErrorKind::NumericalFailure,
                "solve_sigma: no convergence for n = " + std::to_string(n));
}

std::pair<TridiagonalOperator, double> build_phi_op(std::size_t n) {
    require_n(n, 2, "build_phi_op");
    const double sigma = solve_sigma(n);
    const double h = kPi / (static_cast<double>(n - 1) + 2.0 * sigma);
    TridiagonalOperator T = blank(n, h, OperatorKind::Phi);
    const double h2 = h * h;
    for (std::size_t k = 0; k < n; ++k) {
        T.a[k] = -2.0 / h2;
        T.grid[k] = sigma * h + static_cast<double>(k) * h;
    }
    for (std::size_t l = 1; l < n; ++l) {
        const double ang = (sigma + static_cast<double>(l - 1)) * h;
        T.b[l - 1] = 1.0 / h2 + std::cos(ang) / (std::sin(ang) * 2.0 * h);
    }
    for (std::size_t l = 1; l < n; ++l) T.c[l - 1] = T.b[n - l - 1];
    return {std::move(T), sigma};
}

TridiagonalOperator build_z(std::size_t n, double z_star) {
    require_n(n, 2, "build_z");
    if (!(z_star > 0.0)) throw Error(ErrorKind::ParameterRange, "build_z: z_star <= 0");
    const double h = z_star / static_cast<double>(n);
    TridiagonalOperator T = blank(n, h, OperatorKind::Z);
    const double h2 = h * h;
    for (std::size_t k = 0; k < n; ++k) {
        T.a[k] = -2.0 / h2;
        T.grid[k] = static_cast<double>(k) * h;
    }
    for (std::size_t l = 0; l + 1 < n; ++l) {
        T.b[l] = 1.0 / h2;
        T.c[l] = 1.0 / h2;
    }
    T.b[0] = 2.0 / h2;
    return T;
}

TridiagonalOperator build_lambda(std::size_t n, double rho_star, double lambda) {
    require_n(n, 2, "build_lambda");
    if (!(lambda > -2.0 && lambda <= 0.0))
        throw Error(ErrorKind::ParameterRange, "build_lambda: lambda must lie in (-2, 0]");
    if (!(rho_star > 0.0)) throw Error(ErrorKind::ParameterRange, "build_lambda: rho_star <= 0");

    const double q = (1.0 - lambda) / 2.0;
    const double h = rho_star / (static_cast<double>(n) + q);
    TridiagonalOperator T = blank(n, h, OperatorKind::Lambda);
    T.lambda = lambda;
    const double hp = std::pow(h, 2.0 + lambda);
    for (std::size_t i = 0; i < n; ++i) {
        const double ld = static_cast<double>(i + 1);
        T.grid[i] = q * h + static_cast<double>(i) * h;
        T.a[i] = -2.0 / (std::pow(q + ld - 1.0, lambda) * hp);
    }
    for (std::size_t l = 1; l < n; ++l) {
        const double ld = static_cast<double>(l);
        T.b[l - 1] = (1.0 - lambda + ld - 1.0) / (std::pow(q + ld - 1.0, 1.0 + lambda) * hp);
        T.c[l - 1] = ld / (std::pow(q + ld, 1.0 + lambda) * hp);
    }
    return T;
}

ExplicitEigenpairs explicit_z_eigenpairs(std::size_t n, double z_star) {
    require_n(n, 2, "explicit_z_eigenpairs");
    if (!(z_star > 0.0)) throw Error(ErrorKind::ParameterRange, "explicit_z_eigenpairs: z_star <= 0");
    const double nd = static_cast<double>(n);
    const double h = z_star / nd;
    const double h2 = h * h;
    ExplicitEigenpairs out;
    out.lambdas.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double w = kPi * (static_cast<double>(k) - 0.5) / nd;
        out.lambdas[k - 1] = -2.0 / h2 + (2.0 / h2) * std::cos(w);
        const double s = std::sin(w);
        for (std::size_t i = 1; i < n; ++i)
            out.vectors(i - 1, k - 1) = std::sin((nd - static_cast<double>(i) + 1.0) * w) / s;
        out.vectors(n - 1, k - 1) = 1.0;
    }
    return out;
}

Symmetrization symmetrize(const TridiagonalOperator& T) {
    const std::size_t n = T.n;
    Symmetrization S;
    S.diag = T.a;
    S.off.resize(n - 1);
    S.xi.resize(n);
    S.xi[0] = 1.0;
    double log_ratio = 0.0;
    for (std::size_t l = 0; l + 1 < n; ++l) {
        if (!(T.b[l] > 0.0) || !(T.c[l] > 0.0))
            throw Error(ErrorKind::Structure,
                        "symmetrize: nonpositive off-diagonal at index " + std::to_string(l));
        log_ratio += std::log(T.c[l]) - std::log(T.b[l]);
        S.xi[l + 1] = std::exp(0.5 * log_ratio);
        S.off[l] = std::sqrt(T.b[l] * T.c[l]);
    }
    return S;
}

EigenFactorization eig_tridiag(const TridiagonalOperator& T) {
    Symmetrization S = symmetrize(T);
    auto [lambdas, Q] = symmetric_tridiagonal_eigen(S.diag, S.off);
    EigenFactorization E;
    E.lambdas = std::move(lambdas);
    E.Q = std::move(Q);
    E.xi = std::move(S.xi);
    return E;
}

namespace {
double exp_min_entry(const Matrix& A, double t) {
    if (A.rows() > kExpCheckCap)
        throw Error(ErrorKind::OracleSize, "matrix_exp_nonneg_check: n exceeds 64");
    if (t < 0.0) throw Error(ErrorKind::ParameterRange, "matrix_exp_nonneg_check: t < 0");
    Matrix X = A;
    for (double& v : X.values()) v *= t;
    const Matrix E = expm_taylor(X);
    return *std::min_element(E.values().begin(), E.values().end());
}
}  // namespace

double matrix_exp_nonneg_check(const TridiagonalOperator& T, double t) {
    return exp_min_entry(T.dense(), t);
}

double matrix_exp_nonneg_check(const PeriodicTridiagonal& A, double t) {
    return exp_min_entry(A.dense(), t);
}

}  // namespace curvipat
