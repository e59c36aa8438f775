#include <cmath>
#include <limits>
#include <string>

#include "curvipat/error.hpp"
#include "curvipat/operators.hpp"

namespace curvipat {

// Implicit-shift QL iteration with Wilkinson-type shift (tql2 family).
std::pair<std::vector<double>, Matrix> symmetric_tridiagonal_eigen(std::span<const double> diag,
                                                                   std::span<const double> off) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diag.size());
    if (n == 0) return {{}, Matrix()};
    if (off.size() + 1 != diag.size())
        throw Error(ErrorKind::Shape, "symmetric_tridiagonal_eigen: band lengths differ");

    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);  // e[i] couples i and i+1
    for (std::ptrdiff_t i = 0; i + 1 < n; ++i) e[i] = off[i];
    Matrix Z = Matrix::identity(static_cast<std::size_t>(n));
    const auto un = static_cast<std::size_t>(n);
    constexpr int kMaxSweeps = 60;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (std::ptrdiff_t l = 0; l < n; ++l) {
        int iter = 0;
        std::ptrdiff_t m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > kMaxSweeps)
                throw Error(ErrorKind::NumericalFailure,
                            "symmetric_tridiagonal_eigen: no convergence at index " +
                                std::to_string(l));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            std::ptrdiff_t i = m - 1;
            bool deflated = false;
            for (; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                double* zi = Z.data() + static_cast<std::size_t>(i) * un;
                double* zi1 = zi + un;
                for (std::size_t k = 0; k < un; ++k) {
                    f = zi1[k];
                    zi1[k] = s * zi[k] + c * f;
                    zi[k] = c * zi[k] - s * f;
                }
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }

    // Selection sort, ascending, carrying eigenvector columns.
    for (std::size_t i = 0; i + 1 < un; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < un; ++j)
            if (d[j] < d[best]) best = j;
        if (best != i) {
            std::swap(d[i], d[best]);
            for (std::size_t k = 0; k < un; ++k) std::swap(Z(k, i), Z(k, best));
        }
    }
    return {std::move(d), std::move(Z)};
}

}  // namespace curvipat
