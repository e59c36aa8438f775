#include "curvipat/tensor.hpp"

#include <algorithm>
#include <string>

#include "curvipat/error.hpp"

namespace curvipat {

Field::Field(std::initializer_list<std::size_t> dims, double fill) {
    init(std::span<const std::size_t>(dims.begin(), dims.size()), fill);
}

Field::Field(std::span<const std::size_t> dims, double fill) { init(dims, fill); }

void Field::init(std::span<const std::size_t> dims, double fill) {
    if (dims.empty() || dims.size() > 3)
        throw Error(ErrorKind::Shape, "Field: order must be 1, 2 or 3");
    order_ = dims.size();
    std::size_t total = 1;
    for (std::size_t a = 0; a < order_; ++a) {
        if (dims[a] == 0) throw Error(ErrorKind::Shape, "Field: zero extent");
        dims_[a] = dims[a];
        total *= dims[a];
    }
    data_.assign(total, fill);
}

Field Field::unvec(std::span<const double> data, std::span<const std::size_t> dims) {
    Field f(dims);
    if (data.size() != f.size()) throw Error(ErrorKind::Shape, "unvec: length mismatch");
    std::copy(data.begin(), data.end(), f.data_.begin());
    return f;
}

void Field::fill(double value) noexcept { std::fill(data_.begin(), data_.end(), value); }

void mode_product(int mu, const Matrix& L, const Field& T, Field& out, Trans t) {
    if (mu < 1 || static_cast<std::size_t>(mu) > T.order())
        throw Error(ErrorKind::Shape, "mode_product: mode " + std::to_string(mu) +
                                          " invalid for order " + std::to_string(T.order()));
    const std::size_t n1 = T.dim(0), n2 = T.dim(1), n3 = T.dim(2);
    const std::size_t nm = T.dim(static_cast<std::size_t>(mu - 1));
    if (!L.square() || L.rows() != nm)
        throw Error(ErrorKind::Shape, "mode_product: factor is " + std::to_string(L.rows()) +
                                          "x" + std::to_string(L.cols()) + ", mode extent " +
                                          std::to_string(nm));
    if (&out == &T) throw Error(ErrorKind::Shape, "mode_product: output aliases input");
    if (!out.same_shape(T)) out = Field(T.shape());

    const Trans flip = t == Trans::No ? Trans::Yes : Trans::No;
    switch (mu) {
        case 1:
            // out = op(L) * T viewed as n1 x (n2 n3)
            gemm(t, Trans::No, n1, n2 * n3, n1, 1.0, L.data(), n1, T.data(), n1, 0.0,
                 out.data(), n1);
            break;
        case 2:
            // each k-slice: out_k = T_k * op(L)^T
            for (std::size_t k = 0; k < n3; ++k)
                gemm(Trans::No, flip, n1, n2, n2, 1.0, T.data() + k * n1 * n2, n1, L.data(),
                     n2, 0.0, out.data() + k * n1 * n2, n1);
            break;
        default:
            // out = T * op(L)^T viewed as (n1 n2) x n3
            gemm(Trans::No, flip, n1 * n2, n3, n3, 1.0, T.data(), n1 * n2, L.data(), n3, 0.0,
                 out.data(), n1 * n2);
            break;
    }
}

Field mode_product(int mu, const Matrix& L, const Field& T, Trans t) {
    Field out(T.shape());
    mode_product(mu, L, T, out, t);
    return out;
}

Field tucker(const Field& T, std::span<const Matrix* const> factors) {
    if (factors.size() != T.order())
        throw Error(ErrorKind::Shape, "tucker: need one factor slot per mode");
    Field cur = T;
    Field tmp(T.shape());
    for (std::size_t a = 0; a < factors.size(); ++a) {
        if (factors[a] == nullptr) continue;
        mode_product(static_cast<int>(a + 1), *factors[a], cur, tmp);
        std::swap(cur, tmp);
    }
    return cur;
}

Field hadamard(const Field& A, const Field& B) {
    Field out = A;
    hadamard_inplace(out, B);
    return out;
}

void hadamard_inplace(Field& A, const Field& B) {
    if (!A.same_shape(B)) throw Error(ErrorKind::Shape, "hadamard: shapes differ");
    auto a = A.vec();
    auto b = B.vec();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

Matrix kron_assemble(std::span<const Matrix> factors) {
    if (factors.empty()) throw Error(ErrorKind::Shape, "kron_assemble: no factors");
    std::size_t rows = 1, cols = 1;
    for (const Matrix& L : factors) {
        rows *= L.rows();
        cols *= L.cols();
        if (rows > kKronCap || cols > kKronCap)
            throw Error(ErrorKind::OracleSize,
                        "kron_assemble: dimension exceeds " + std::to_string(kKronCap));
    }
    // Build left to right: K <- L_a (x) K.
    Matrix K = factors[0];
    for (std::size_t a = 1; a < factors.size(); ++a) {
        const Matrix& L = factors[a];
        Matrix next(L.rows() * K.rows(), L.cols() * K.cols());
        for (std::size_t q = 0; q < L.cols(); ++q)
            for (std::size_t p = 0; p < L.rows(); ++p) {
                const double l = L(p, q);
                if (l == 0.0) continue;
                for (std::size_t j = 0; j < K.cols(); ++j)
                    for (std::size_t i = 0; i < K.rows(); ++i)
                        next(p * K.rows() + i, q * K.cols() + j) = l * K(i, j);
            }
        K = std::move(next);
    }
    return K;
}

}  // namespace curvipat
