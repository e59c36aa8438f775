#include "curvipat/phifun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvipat/error.hpp"

namespace curvipat {

double phi1_scalar(double x) noexcept {
    if (std::abs(x) < 1e-5) {
        // Degree-6 Taylor polynomial sum_{i=0}^{6} x^i / (i+1)!.
        return 1.0 +
               x * (1.0 / 2.0 +
                    x * (1.0 / 6.0 +
                         x * (1.0 / 24.0 +
                              x * (1.0 / 120.0 + x * (1.0 / 720.0 + x * (1.0 / 5040.0))))));
    }
    return std::expm1(x) / x;
}

PhiTensor phi1_outer(double tau_coeff, std::span<const PhiFactor> factors) {
    if (factors.size() < 2 || factors.size() > 3)
        throw Error(ErrorKind::Shape, "phi1_outer: need 2 or 3 factors");
    std::vector<std::size_t> dims;
    std::vector<std::vector<double>> vals;
    for (const PhiFactor& f : factors) {
        const std::size_t n = f.values.empty() ? f.extent : f.values.size();
        if (n == 0) throw Error(ErrorKind::Shape, "phi1_outer: empty factor");
        dims.push_back(n);
        if (f.values.empty())
            vals.emplace_back(n, 1.0);
        else
            vals.emplace_back(f.values.begin(), f.values.end());
    }
    if (dims.size() == 2) {
        dims.push_back(1);
        vals.emplace_back(1, 1.0);
    }
    PhiTensor P;
    P.tau_scale = tau_coeff;
    P.field = Field(std::span<const std::size_t>(dims.data(), factors.size()));
    double* out = P.field.data();
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims[2]; ++k)
        for (std::size_t j = 0; j < dims[1]; ++j)
            for (std::size_t i = 0; i < dims[0]; ++i)
                out[idx++] = phi1_scalar(((tau_coeff * vals[0][i]) * vals[1][j]) * vals[2][k]);
    return P;
}

Matrix phi1_matrix(double tau, const EigenFactorization& E) {
    const std::size_t n = E.size();
    Matrix W = E.Q;
    for (std::size_t j = 0; j < n; ++j) {
        const double p = phi1_scalar(tau * E.lambdas[j]);
        for (std::size_t i = 0; i < n; ++i) W(i, j) *= p;
    }
    Matrix R = matmul(W, E.Q, Trans::No, Trans::Yes);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) R(i, j) *= E.xi[i] / E.xi[j];
    return R;
}

Matrix phi1_dense_oracle(const Matrix& M) {
    if (!M.square()) throw Error(ErrorKind::Shape, "phi1_dense_oracle: matrix not square");
    const std::size_t n = M.rows();
    if (n > kPhiOracleCap)
        throw Error(ErrorKind::OracleSize,
                    "phi1_dense_oracle: n = " + std::to_string(n) + " exceeds cap");
    // Scaling: the augmented matrix has 1-norm max(||M||_1, 1).
    const double nrm = std::max(norm1(M), 1.0);
    int s = std::max(1, static_cast<int>(std::ceil(std::log2(nrm / 0.5))));
    const double scale = std::ldexp(1.0, -s);
    Matrix X = M;
    for (double& v : X.values()) v *= scale;

    // R = sum_{k=1}^{20} X^{k-1}/k! (Horner), so exp(X) = I + X R, phi_1(X) = R.
    constexpr int kTerms = 20;
    Matrix R = Matrix::identity(n);
    for (double& v : R.values()) v /= static_cast<double>(kTerms);
    for (int k = kTerms - 1; k >= 1; --k) {
        Matrix T = matmul(X, R);
        for (double& v : T.values()) v /= k;
        for (std::size_t i = 0; i < n; ++i) T(i, i) += 1.0 / k;
        R = std::move(T);
    }
    Matrix E = matmul(X, R);
    for (std::size_t i = 0; i < n; ++i) E(i, i) += 1.0;
    // Top-right block of the scaled augmented exponential is 2^{-s} phi_1(X).
    Matrix P = std::move(R);
    for (double& v : P.values()) v *= scale;
    // [[E, P], [0, I]]^2 = [[E^2, E P + P], [0, I]].
    for (int i = 0; i < s; ++i) {
        Matrix EP = matmul(E, P);
        for (std::size_t q = 0; q < EP.values().size(); ++q) EP.values()[q] += P.values()[q];
        P = std::move(EP);
        if (i + 1 < s) E = matmul(E, E);
    }
    return P;
}

}  // namespace curvipat
