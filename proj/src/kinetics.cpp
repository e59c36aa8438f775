#include <string>

#include "curvipat/error.hpp"
#include "curvipat/models.hpp"

namespace curvipat {

std::pair<double, double> bvam(double u, double v, const BvamParams& p) noexcept {
    const double b = p.alpha1 * u * (1.0 - p.alpha2 * v * v) + v * (1.0 - p.alpha3 * u);
    const double c = p.beta1 * v * (1.0 + p.alpha1 * p.alpha2 / p.beta1 * u * v) +
                     u * (p.beta2 + p.alpha3 * v);
    return {b, c};
}

std::pair<double, double> schnakenberg(double u, double v, const SchnakenbergParams& p) noexcept {
    const double u2v = u * u * v;
    return {p.alpha2 - u + u2v, p.beta1 - u2v};
}

std::pair<double, double> dib(double u, double v, double r, double s, const DibParams& p) noexcept {
    const double pr = p.zeta2 * u * (1.0 - s) * r - p.zeta3 * r * r * r - p.zeta4 * (s - p.zeta5);
    const double qs = p.eta1 * v * (1.0 + p.eta2 * r) * (1.0 - s) * (1.0 - p.eta3 * (1.0 - s)) -
                      p.eta4() * (1.0 + p.eta5 * r) * s * (1.0 + p.eta3 * s);
    return {pr, qs};
}

namespace {

template <class F>
void elementwise(const Field& x, const Field& y, Field& out1, Field& out2, F&& f,
                 const char* who) {
    if (!x.same_shape(y)) throw Error(ErrorKind::Shape, std::string(who) + ": shapes differ");
    if (!out1.same_shape(x)) out1 = Field(x.shape());
    if (!out2.same_shape(x)) out2 = Field(x.shape());
    const auto xs = x.vec();
    const auto ys = y.vec();
    auto o1 = out1.vec();
    auto o2 = out2.vec();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto [a, b] = f(xs[i], ys[i]);
        o1[i] = a;
        o2[i] = b;
    }
}

}  // namespace

void bvam_kinetics(const Field& u, const Field& v, const BvamParams& p, Field& b, Field& c) {
    elementwise(u, v, b, c, [&p](double x, double y) { return bvam(x, y, p); }, "bvam_kinetics");
}

void schnakenberg_kinetics(const Field& u, const Field& v, const SchnakenbergParams& p, Field& b,
                           Field& c) {
    elementwise(u, v, b, c, [&p](double x, double y) { return schnakenberg(x, y, p); },
                "schnakenberg_kinetics");
}

void dib_kinetics(const Field& r, const Field& s, const DibParams& p, Field& pr, Field& qs) {
    elementwise(r, s, pr, qs, [&p](double x, double y) { return dib(1.0, 1.0, x, y, p); },
                "dib_kinetics");
}

BallCoupling bulk_surface_coupling_ball(const Field& u, const Field& v, const Field& r,
                                        const Field& s, const BallCouplingParams& p,
                                        const Discretization& ball) {
    if (ball.geometry != Geometry::Ball)
        throw Error(ErrorKind::Shape, "bulk_surface_coupling_ball: not a ball grid");
    const std::size_t nr = ball.dims[0], nt = ball.dims[1], np = ball.dims[2];
    if (!u.same_shape(ball.zeros()) || !v.same_shape(u))
        throw Error(ErrorKind::Shape, "bulk_surface_coupling_ball: bulk shape mismatch");
    if (r.order() != 2 || r.dim(0) != nt || r.dim(1) != np || !s.same_shape(r))
        throw Error(ErrorKind::Shape, "bulk_surface_coupling_ball: surface grid mismatch");

    const double h = ball.rho->h;
    const double rho_n = ball.rho->grid[nr - 1];
    // Ghost coefficient 1/h^2 + (d-1)/(2 rho_n h) with d = 3.
    const double ghost = 1.0 / (h * h) + 1.0 / (rho_n * h);
    const SchnakenbergParams sp{p.alpha2, p.beta1};

    BallCoupling out{ball.zeros(), ball.zeros(), Field(r.shape()), Field(r.shape())};
    for (std::size_t k = 0; k < np; ++k)
        for (std::size_t j = 0; j < nt; ++j) {
            const double ut = u(nr - 1, j, k);
            const double vt = v(nr - 1, j, k);
            const double exch_u = p.zeta2 * r(j, k) - p.zeta3 * ut;
            const double exch_v = p.eta1 * s(j, k) - p.eta2 * vt;
            // Outward fluxes: du/dn = zeta1 exch_u, delta dv/dn = zeta1 exch_v. The
            // source is coeff * ghost * 2h * (dw/dn), so delta cancels for v.
            out.source_u(nr - 1, j, k) = ghost * 2.0 * h * p.zeta1 * exch_u;
            out.source_v(nr - 1, j, k) = ghost * 2.0 * h * p.zeta1 * exch_v;
            const auto [b, c] = schnakenberg(r(j, k), s(j, k), sp);
            out.p(j, k) = b - exch_u;
            out.q(j, k) = c - exch_v;
        }
    return out;
}

CylinderCoupling bs_cylinder_coupling(const Field& u, const Field& v, const Field& r,
                                      const Field& s, const CylinderCouplingParams& p,
                                      const Discretization& cylinder) {
    if (cylinder.geometry != Geometry::Cylinder)
        throw Error(ErrorKind::Shape, "bs_cylinder_coupling: not a cylinder grid");
    const std::size_t nr = cylinder.dims[0], nt = cylinder.dims[1];
    if (!u.same_shape(cylinder.zeros()) || !v.same_shape(u))
        throw Error(ErrorKind::Shape, "bs_cylinder_coupling: bulk shape mismatch");
    if (r.order() != 2 || r.dim(0) != nr || r.dim(1) != nt || !s.same_shape(r))
        throw Error(ErrorKind::Shape, "bs_cylinder_coupling: surface grid mismatch");

    const double hz = cylinder.z->h;
    const double ghost = 1.0 / (hz * hz);
    CylinderCoupling out{cylinder.zeros(), cylinder.zeros(), Field(r.shape()), Field(r.shape())};
    for (std::size_t j = 0; j < nt; ++j)
        for (std::size_t i = 0; i < nr; ++i) {
            const auto [pp, qq] = dib(u(i, j, 0), v(i, j, 0), r(i, j), s(i, j), p.dib);
            out.p(i, j) = pp;
            out.q(i, j) = qq;
            // Outward normal on the bottom face is -z.
            const double flux_u = -p.zeta1 * p.alpha3 * pp;
            const double flux_v = -p.zeta1 * p.beta3 * qq;
            out.source_u(i, j, 0) = p.coeff_u * ghost * 2.0 * hz * flux_u;
            out.source_v(i, j, 0) = p.coeff_v * ghost * 2.0 * hz * flux_v;
        }
    return out;
}

}  // namespace curvipat
