#include "curvipat/dense.hpp"

#include <algorithm>
#include <cmath>

#include "curvipat/error.hpp"

namespace curvipat {

Matrix Matrix::identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

Matrix Matrix::transposed() const {
    Matrix T(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) T(j, i) = (*this)(i, j);
    return T;
}

namespace {

constexpr std::size_t kBlockK = 128;

// C(:, j) += sum_p opB(p, j) * A(:, p) with op(A) = A; four columns of A per pass.
void gemm_axpy(Trans tb, std::size_t m, std::size_t n, std::size_t k, double alpha,
               const double* A, std::size_t lda, const double* B, std::size_t ldb, double* C,
               std::size_t ldc) {
    auto bval = [&](std::size_t p, std::size_t j) {
        return alpha * (tb == Trans::No ? B[p + j * ldb] : B[j + p * ldb]);
    };
    for (std::size_t p0 = 0; p0 < k; p0 += kBlockK) {
        const std::size_t p1 = std::min(k, p0 + kBlockK);
        for (std::size_t j = 0; j < n; ++j) {
            double* __restrict c = C + j * ldc;
            std::size_t p = p0;
            for (; p + 4 <= p1; p += 4) {
                const double b0 = bval(p, j), b1 = bval(p + 1, j);
                const double b2 = bval(p + 2, j), b3 = bval(p + 3, j);
                const double* __restrict a0 = A + p * lda;
                const double* __restrict a1 = a0 + lda;
                const double* __restrict a2 = a1 + lda;
                const double* __restrict a3 = a2 + lda;
                for (std::size_t i = 0; i < m; ++i)
                    c[i] += b0 * a0[i] + b1 * a1[i] + b2 * a2[i] + b3 * a3[i];
            }
            for (; p < p1; ++p) {
                const double b0 = bval(p, j);
                const double* __restrict a0 = A + p * lda;
                for (std::size_t i = 0; i < m; ++i) c[i] += b0 * a0[i];
            }
        }
    }
}

// C(i, j) += alpha * dot(A(:, i), opB(:, j)) with op(A) = A^T.
void gemm_dot(Trans tb, std::size_t m, std::size_t n, std::size_t k, double alpha,
              const double* A, std::size_t lda, const double* B, std::size_t ldb, double* C,
              std::size_t ldc) {
    std::vector<double> col(k);
    for (std::size_t j = 0; j < n; ++j) {
        const double* bj = B + j * ldb;
        if (tb == Trans::Yes) {
            for (std::size_t p = 0; p < k; ++p) col[p] = B[j + p * ldb];
            bj = col.data();
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double* ai = A + i * lda;
            double s = 0.0;
            for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
            C[i + j * ldc] += alpha * s;
        }
    }
}

}  // namespace

void gemm(Trans ta, Trans tb, std::size_t m, std::size_t n, std::size_t k, double alpha,
          const double* A, std::size_t lda, const double* B, std::size_t ldb, double beta,
          double* C, std::size_t ldc) {
    for (std::size_t j = 0; j < n; ++j) {
        double* c = C + j * ldc;
        if (beta == 0.0)
            std::fill(c, c + m, 0.0);
        else if (beta != 1.0)
            for (std::size_t i = 0; i < m; ++i) c[i] *= beta;
    }
    if (m == 0 || n == 0 || k == 0 || alpha == 0.0) return;
    if (ta == Trans::No)
        gemm_axpy(tb, m, n, k, alpha, A, lda, B, ldb, C, ldc);
    else
        gemm_dot(tb, m, n, k, alpha, A, lda, B, ldb, C, ldc);
}

Matrix matmul(const Matrix& A, const Matrix& B, Trans ta, Trans tb) {
    const std::size_t m = ta == Trans::No ? A.rows() : A.cols();
    const std::size_t k = ta == Trans::No ? A.cols() : A.rows();
    const std::size_t kb = tb == Trans::No ? B.rows() : B.cols();
    const std::size_t n = tb == Trans::No ? B.cols() : B.rows();
    if (k != kb) throw Error(ErrorKind::Shape, "matmul: inner dimensions differ");
    Matrix C(m, n);
    gemm(ta, tb, m, n, k, 1.0, A.data(), std::max<std::size_t>(A.rows(), 1), B.data(),
         std::max<std::size_t>(B.rows(), 1), 0.0, C.data(), std::max<std::size_t>(m, 1));
    return C;
}

std::vector<double> matvec(const Matrix& A, std::span<const double> x) {
    if (x.size() != A.cols()) throw Error(ErrorKind::Shape, "matvec: size mismatch");
    std::vector<double> y(A.rows(), 0.0);
    for (std::size_t j = 0; j < A.cols(); ++j) {
        const double xj = x[j];
        for (std::size_t i = 0; i < A.rows(); ++i) y[i] += A(i, j) * xj;
    }
    return y;
}

double max_abs(std::span<const double> x) noexcept {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const Matrix& A) noexcept { return max_abs(A.values()); }

double norm1(const Matrix& A) noexcept {
    double best = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < A.rows(); ++i) s += std::abs(A(i, j));
        best = std::max(best, s);
    }
    return best;
}

double max_abs_diff(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw Error(ErrorKind::Shape, "max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < A.values().size(); ++i)
        m = std::max(m, std::abs(A.values()[i] - B.values()[i]));
    return m;
}

Matrix expm_taylor(const Matrix& A) {
    if (!A.square()) throw Error(ErrorKind::Shape, "expm_taylor: matrix not square");
    const std::size_t n = A.rows();
    const double nrm = norm1(A);
    int s = 0;
    if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    Matrix X = A;
    const double scale = std::ldexp(1.0, -s);
    for (double& v : X.values()) v *= scale;

    // Horner form of sum_{k=0}^{20} X^k / k!.
    constexpr int kTerms = 20;
    Matrix E = Matrix::identity(n);
    for (int k = kTerms; k >= 1; --k) {
        Matrix T = matmul(X, E);
        for (double& v : T.values()) v /= k;
        for (std::size_t i = 0; i < n; ++i) T(i, i) += 1.0;
        E = std::move(T);
    }
    for (int i = 0; i < s; ++i) E = matmul(E, E);
    return E;
}

}  // namespace curvipat
