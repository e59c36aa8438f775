#include "curvipat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "curvipat/error.hpp"

namespace curvipat {

namespace {

std::vector<double> cell_widths(const std::vector<double>& grid, double h, double lo, double hi) {
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        w[i] = std::max(0.0, std::min(hi, grid[i] + h / 2) - std::max(lo, grid[i] - h / 2));
    return w;
}

}  // namespace

Field quadrature_weights(const Discretization& d) {
    Field W = d.zeros();
    const double dth = d.theta->h;
    switch (d.geometry) {
        case Geometry::Disk: {
            const auto& r = d.rho->grid;
            const auto wr = cell_widths(r, d.rho->h, 0.0, d.rho_star);
            for (std::size_t j = 0; j < d.dims[1]; ++j)
                for (std::size_t i = 0; i < d.dims[0]; ++i) W(i, j) = r[i] * wr[i] * dth;
            break;
        }
        case Geometry::Sphere: {
            const auto& p = d.phi->grid;
            const auto wp = cell_widths(p, d.phi->h, 0.0, std::numbers::pi);
            const double r2 = d.rho_star * d.rho_star;
            for (std::size_t k = 0; k < d.dims[1]; ++k)
                for (std::size_t j = 0; j < d.dims[0]; ++j)
                    W(j, k) = r2 * std::sin(p[k]) * wp[k] * dth;
            break;
        }
        case Geometry::Ball: {
            const auto& r = d.rho->grid;
            const auto& p = d.phi->grid;
            const auto wr = cell_widths(r, d.rho->h, 0.0, d.rho_star);
            const auto wp = cell_widths(p, d.phi->h, 0.0, std::numbers::pi);
            for (std::size_t k = 0; k < d.dims[2]; ++k)
                for (std::size_t j = 0; j < d.dims[1]; ++j)
                    for (std::size_t i = 0; i < d.dims[0]; ++i)
                        W(i, j, k) = r[i] * r[i] * wr[i] * std::sin(p[k]) * wp[k] * dth;
            break;
        }
        case Geometry::Cylinder: {
            const auto& r = d.rho->grid;
            const auto wr = cell_widths(r, d.rho->h, 0.0, d.rho_star);
            const auto wz = cell_widths(d.z->grid, d.z->h, 0.0, d.z_star);
            for (std::size_t k = 0; k < d.dims[2]; ++k)
                for (std::size_t j = 0; j < d.dims[1]; ++j)
                    for (std::size_t i = 0; i < d.dims[0]; ++i)
                        W(i, j, k) = r[i] * wr[i] * dth * wz[k];
            break;
        }
    }
    return W;
}

MeanEvaluator::MeanEvaluator(const Discretization& d) : weights_(quadrature_weights(d)) {
    double total = 0.0;
    for (double w : weights_.vec()) total += w;
    for (double& w : weights_.vec()) w /= total;
}

double MeanEvaluator::operator()(const Field& W) const {
    if (!W.same_shape(weights_)) throw Error(ErrorKind::Shape, "integral_mean: shape mismatch");
    const auto w = weights_.vec();
    const auto x = W.vec();
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
    return s;
}

double integral_mean(const Field& W, const Discretization& d) { return MeanEvaluator(d)(W); }

}  // namespace curvipat
