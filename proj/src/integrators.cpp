#include "curvipat/integrators.hpp"

#include <algorithm>
#include <string>

#include "curvipat/error.hpp"

namespace curvipat {

const char* to_string(Geometry g) noexcept {
    switch (g) {
        case Geometry::Disk: return "disk";
        case Geometry::Sphere: return "sphere";
        case Geometry::Ball: return "ball";
        case Geometry::Cylinder: return "cylinder";
    }
    return "unknown";
}

Stencil Stencil::from(const TridiagonalOperator& T) {
    Stencil s;
    s.di = T.a;
    s.lo.assign(T.n, 0.0);
    s.up.assign(T.n, 0.0);
    for (std::size_t i = 0; i + 1 < T.n; ++i) {
        s.up[i] = T.b[i];
        s.lo[i + 1] = T.c[i];
    }
    return s;
}

Stencil Stencil::from(const PeriodicTridiagonal& A) {
    Stencil s;
    s.di.assign(A.n, A.diag);
    s.lo.assign(A.n, A.off);
    s.up.assign(A.n, A.off);
    s.periodic = true;
    return s;
}

std::size_t Discretization::unknowns() const noexcept {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
}

namespace {

void require_axis(std::size_t n, std::size_t min, const char* axis) {
    if (n < min)
        throw Error(ErrorKind::InvalidDimension,
                    std::string(axis) + " extent must be >= " + std::to_string(min));
}

void set_theta(Discretization& d, std::size_t n_theta) {
    d.theta = build_theta(n_theta);
    d.e_theta = eig_theta(*d.theta);
    d.s_theta = Stencil::from(*d.theta);
}

void set_phi(Discretization& d, std::size_t n_phi) {
    auto [op, sigma] = build_phi_op(n_phi);
    d.sigma = sigma;
    d.d_phi = polar_weights(op.grid);
    d.e_phi = eig_tridiag(op);
    d.s_phi = Stencil::from(op);
    d.phi = std::move(op);
}

void set_rho(Discretization& d, TridiagonalOperator op, double weight_power) {
    d.d_rho = radial_weights(op.grid, weight_power);
    d.e_rho = eig_tridiag(op);
    d.s_rho = Stencil::from(op);
    d.rho = std::move(op);
}

}  // namespace

std::shared_ptr<const Discretization> make_disk(std::size_t n_rho, std::size_t n_theta,
                                                double rho_star, std::optional<double> lambda) {
    require_axis(n_rho, 2, "n_rho");
    require_axis(n_theta, 3, "n_theta");
    auto d = std::make_shared<Discretization>();
    d->geometry = Geometry::Disk;
    d->dims = {n_rho, n_theta};
    d->rho_star = rho_star;
    if (lambda)
        set_rho(*d, build_lambda(n_rho, rho_star, *lambda), 2.0 + *lambda);
    else
        set_rho(*d, build_rho(2, n_rho, rho_star), 2.0);
    set_theta(*d, n_theta);
    return d;
}

std::shared_ptr<const Discretization> make_sphere(std::size_t n_theta, std::size_t n_phi,
                                                  double radius) {
    require_axis(n_theta, 3, "n_theta");
    require_axis(n_phi, 2, "n_phi");
    auto d = std::make_shared<Discretization>();
    d->geometry = Geometry::Sphere;
    d->dims = {n_theta, n_phi};
    d->rho_star = radius;
    set_theta(*d, n_theta);
    set_phi(*d, n_phi);
    return d;
}

std::shared_ptr<const Discretization> make_ball(std::size_t n_rho, std::size_t n_theta,
                                                std::size_t n_phi, double rho_star) {
    require_axis(n_rho, 2, "n_rho");
    require_axis(n_theta, 3, "n_theta");
    require_axis(n_phi, 2, "n_phi");
    auto d = std::make_shared<Discretization>();
    d->geometry = Geometry::Ball;
    d->dims = {n_rho, n_theta, n_phi};
    d->rho_star = rho_star;
    set_rho(*d, build_rho(3, n_rho, rho_star), 2.0);
    set_theta(*d, n_theta);
    set_phi(*d, n_phi);
    d->V_phi = d->e_phi.V();
    d->V_phi_inv = d->e_phi.Vinv();
    return d;
}

std::shared_ptr<const Discretization> make_cylinder(std::size_t n_rho, std::size_t n_theta,
                                                    std::size_t n_z, double rho_star,
                                                    double z_star) {
    require_axis(n_rho, 2, "n_rho");
    require_axis(n_theta, 3, "n_theta");
    require_axis(n_z, 2, "n_z");
    auto d = std::make_shared<Discretization>();
    d->geometry = Geometry::Cylinder;
    d->dims = {n_rho, n_theta, n_z};
    d->rho_star = rho_star;
    d->z_star = z_star;
    set_rho(*d, build_rho(2, n_rho, rho_star), 2.0);
    set_theta(*d, n_theta);
    TridiagonalOperator z = build_z(n_z, z_star);
    d->e_z = eig_tridiag(z);
    d->s_z = Stencil::from(z);
    d->z = std::move(z);
    return d;
}

GeometryOps::GeometryOps(std::shared_ptr<const Discretization> disc, double coeff, double tau)
    : disc_(std::move(disc)), coeff_(coeff), tau_(tau) {
    if (!disc_) throw Error(ErrorKind::Shape, "GeometryOps: null discretization");
    if (!(coeff > 0.0)) throw Error(ErrorKind::ParameterRange, "GeometryOps: coefficient <= 0");
    if (!(tau >= 0.0)) throw Error(ErrorKind::ParameterRange, "GeometryOps: tau < 0");
    const Discretization& d = *disc_;
    const double tc = tau * coeff;
    const std::span<const double> lt = d.e_theta.lambdas;
    switch (d.geometry) {
        case Geometry::Disk: {
            phi1_rho = phi1_matrix(tc, d.e_rho);
            const PhiFactor f[] = {{d.d_rho.values}, {lt}};
            phi_angular = phi1_outer(tc, f);
            break;
        }
        case Geometry::Sphere: {
            phi1_phi = phi1_matrix(tc, d.e_phi);
            const PhiFactor f[] = {{lt}, {d.d_phi.values}};
            phi_angular = phi1_outer(tc, f);
            break;
        }
        case Geometry::Ball: {
            phi1_rho = phi1_matrix(tc, d.e_rho);
            const PhiFactor fp[] = {{d.d_rho.values}, {{}, d.dims[1]}, {d.e_phi.lambdas}};
            phi_polar = phi1_outer(tc, fp);
            const PhiFactor fa[] = {{d.d_rho.values}, {lt}, {d.d_phi.values}};
            phi_angular = phi1_outer(tc, fa);
            break;
        }
        case Geometry::Cylinder: {
            phi1_rho = phi1_matrix(tc, d.e_rho);
            phi1_z = phi1_matrix(tc, d.e_z);
            const PhiFactor f[] = {{d.d_rho.values}, {lt}, {{}, d.dims[2]}};
            phi_angular = phi1_outer(tc, f);
            break;
        }
    }
}

namespace {

void check_shape(const Discretization& d, const Field& W, const char* who) {
    const auto s = W.shape();
    if (s.size() != d.dims.size() || !std::equal(s.begin(), s.end(), d.dims.begin()))
        throw Error(ErrorKind::Shape, std::string(who) + ": field shape does not match the " +
                                          to_string(d.geometry) + " grid");
}

// out += scale * (weights) * (stencil along `mode`) W, where weights[a] (if
// non-null) multiplies along axis a.
void add_term(const Stencil& st, int mode, std::array<const std::vector<double>*, 3> weights,
              double scale, const Field& W, Field& out) {
    const std::size_t n1 = W.dim(0), n2 = W.dim(1), n3 = W.dim(2);
    const double* w = W.data();
    double* o = out.data();
    const double* wi = weights[0] ? weights[0]->data() : nullptr;
    const std::size_t nm = mode == 1 ? n1 : (mode == 2 ? n2 : n3);
    const std::size_t stride = mode == 1 ? 1 : (mode == 2 ? n1 : n1 * n2);

    for (std::size_t k = 0; k < n3; ++k) {
        const double wk = weights[2] ? (*weights[2])[k] : 1.0;
        for (std::size_t j = 0; j < n2; ++j) {
            const double wjk = scale * wk * (weights[1] ? (*weights[1])[j] : 1.0);
            const std::size_t base = n1 * (j + n2 * k);
            if (mode == 1) {
                const double* col = w + base;
                double* oc = o + base;
                for (std::size_t i = 0; i < n1; ++i) {
                    double v = st.di[i] * col[i];
                    if (i > 0)
                        v += st.lo[i] * col[i - 1];
                    else if (st.periodic)
                        v += st.lo[i] * col[n1 - 1];
                    if (i + 1 < n1)
                        v += st.up[i] * col[i + 1];
                    else if (st.periodic)
                        v += st.up[i] * col[0];
                    oc[i] += wjk * (wi ? wi[i] : 1.0) * v;
                }
                continue;
            }
            const std::size_t x = mode == 2 ? j : k;
            const double c0 = wjk * st.di[x];
            const double* cur = w + base;
            const double* prev = nullptr;
            const double* next = nullptr;
            double cm = 0.0, cp = 0.0;
            if (x > 0 || st.periodic) {
                prev = x > 0 ? cur - stride : cur + (nm - 1) * stride;
                cm = wjk * st.lo[x];
            }
            if (x + 1 < nm || st.periodic) {
                next = x + 1 < nm ? cur + stride : cur - (nm - 1) * stride;
                cp = wjk * st.up[x];
            }
            double* oc = o + base;
            for (std::size_t i = 0; i < n1; ++i) {
                double v = c0 * cur[i];
                if (prev) v += cm * prev[i];
                if (next) v += cp * next[i];
                oc[i] += (wi ? wi[i] : 1.0) * v;
            }
        }
    }
}

void finish(double tau, const Field& W_n, const Field& X, Field& W_next) {
    if (!W_next.same_shape(W_n)) W_next = Field(W_n.shape());
    const double* w = W_n.data();
    const double* x = X.data();
    double* o = W_next.data();
    for (std::size_t i = 0; i < W_n.size(); ++i) o[i] = w[i] + tau * x[i];
}

void build_F(const GeometryOps& G, const Field& W_n, const Field& G_n, Field& F) {
    if (!G_n.same_shape(W_n)) throw Error(ErrorKind::Shape, "step: source shape mismatch");
    apply_M(G, W_n, F);
    auto f = F.vec();
    auto g = G_n.vec();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += g[i];
}

void require_geometry(const GeometryOps& G, Geometry g, const char* who) {
    if (G.geometry() != g)
        throw Error(ErrorKind::Shape, std::string(who) + ": operator bundle is for a " +
                                          to_string(G.geometry()));
}

}  // namespace

void apply_M(const GeometryOps& G, const Field& W, Field& out) {
    const Discretization& d = G.disc();
    check_shape(d, W, "apply_M");
    if (&out == &W) throw Error(ErrorKind::Shape, "apply_M: output aliases input");
    if (!out.same_shape(W)) out = Field(W.shape());
    out.fill(0.0);
    const double c = G.coeff();
    const std::vector<double>* dr = &d.d_rho.values;
    const std::vector<double>* dp = &d.d_phi.values;
    switch (d.geometry) {
        case Geometry::Disk:
            add_term(d.s_rho, 1, {nullptr, nullptr, nullptr}, c, W, out);
            add_term(d.s_theta, 2, {dr, nullptr, nullptr}, c, W, out);
            break;
        case Geometry::Sphere:
            add_term(d.s_theta, 1, {nullptr, dp, nullptr}, c, W, out);
            add_term(d.s_phi, 2, {nullptr, nullptr, nullptr}, c, W, out);
            break;
        case Geometry::Ball:
            add_term(d.s_rho, 1, {nullptr, nullptr, nullptr}, c, W, out);
            add_term(d.s_theta, 2, {dr, nullptr, dp}, c, W, out);
            add_term(d.s_phi, 3, {dr, nullptr, nullptr}, c, W, out);
            break;
        case Geometry::Cylinder:
            add_term(d.s_rho, 1, {nullptr, nullptr, nullptr}, c, W, out);
            add_term(d.s_theta, 2, {dr, nullptr, nullptr}, c, W, out);
            add_term(d.s_z, 3, {nullptr, nullptr, nullptr}, c, W, out);
            break;
    }
}

Field apply_M(const GeometryOps& G, const Field& W) {
    Field out(W.shape());
    apply_M(G, W, out);
    return out;
}

void step_split_disk(const GeometryOps& G, const Field& W_n, const Field& G_n, StepWorkspace& ws,
                     Field& W_next) {
    require_geometry(G, Geometry::Disk, "step_split_disk");
    const Matrix& Q = G.disc().e_theta.Q;
    build_F(G, W_n, G_n, ws.F);
    mode_product(2, Q, ws.F, ws.X, Trans::Yes);  // F Q
    hadamard_inplace(ws.X, G.phi_angular.field);
    mode_product(2, Q, ws.X, ws.Y);  // (.) Q^T
    mode_product(1, G.phi1_rho, ws.Y, ws.X);
    finish(G.tau(), W_n, ws.X, W_next);
}

void step_split_sphere(const GeometryOps& G, const Field& W_n, const Field& G_n,
                       StepWorkspace& ws, Field& W_next) {
    require_geometry(G, Geometry::Sphere, "step_split_sphere");
    const Matrix& Q = G.disc().e_theta.Q;
    build_F(G, W_n, G_n, ws.F);
    mode_product(2, G.phi1_phi, ws.F, ws.X);  // F phi1(A_phi)^T
    mode_product(1, Q, ws.X, ws.Y, Trans::Yes);
    hadamard_inplace(ws.Y, G.phi_angular.field);
    mode_product(1, Q, ws.Y, ws.X);
    finish(G.tau(), W_n, ws.X, W_next);
}

void step_split_ball(const GeometryOps& G, const Field& W_n, const Field& G_n, StepWorkspace& ws,
                     Field& W_next) {
    require_geometry(G, Geometry::Ball, "step_split_ball");
    const Discretization& d = G.disc();
    const Matrix& Q = d.e_theta.Q;
    build_F(G, W_n, G_n, ws.F);
    mode_product(3, d.V_phi_inv, ws.F, ws.X);
    hadamard_inplace(ws.X, G.phi_polar.field);
    mode_product(3, d.V_phi, ws.X, ws.Y);
    mode_product(2, Q, ws.Y, ws.X, Trans::Yes);
    hadamard_inplace(ws.X, G.phi_angular.field);
    mode_product(2, Q, ws.X, ws.Y);
    mode_product(1, G.phi1_rho, ws.Y, ws.X);
    finish(G.tau(), W_n, ws.X, W_next);
}

void step_split_cylinder(const GeometryOps& G, const Field& W_n, const Field& G_n,
                         StepWorkspace& ws, Field& W_next) {
    require_geometry(G, Geometry::Cylinder, "step_split_cylinder");
    const Matrix& Q = G.disc().e_theta.Q;
    build_F(G, W_n, G_n, ws.F);
    mode_product(3, G.phi1_z, ws.F, ws.X);
    mode_product(2, Q, ws.X, ws.Y, Trans::Yes);
    hadamard_inplace(ws.Y, G.phi_angular.field);
    mode_product(2, Q, ws.Y, ws.X);
    mode_product(1, G.phi1_rho, ws.X, ws.Y);
    finish(G.tau(), W_n, ws.Y, W_next);
}

void step_split(const GeometryOps& G, const Field& W_n, const Field& G_n, StepWorkspace& ws,
                Field& W_next) {
    switch (G.geometry()) {
        case Geometry::Disk: step_split_disk(G, W_n, G_n, ws, W_next); return;
        case Geometry::Sphere: step_split_sphere(G, W_n, G_n, ws, W_next); return;
        case Geometry::Ball: step_split_ball(G, W_n, G_n, ws, W_next); return;
        case Geometry::Cylinder: step_split_cylinder(G, W_n, G_n, ws, W_next); return;
    }
}

void step_forward_euler(const GeometryOps& G, const Field& W_n, const Field& G_n,
                        StepWorkspace& ws, Field& W_next) {
    build_F(G, W_n, G_n, ws.F);
    finish(G.tau(), W_n, ws.F, W_next);
}

Matrix assemble_operator_matrix(const GeometryOps& G) {
    const Discretization& d = G.disc();
    if (d.unknowns() > kKronCap)
        throw Error(ErrorKind::OracleSize, "assemble_operator_matrix: " +
                                               std::to_string(d.unknowns()) +
                                               " unknowns exceed the dense cap");
    auto I = [](std::size_t n) { return Matrix::identity(n); };
    auto kron = [](std::initializer_list<Matrix> f) {
        return kron_assemble(std::span<const Matrix>(f.begin(), f.size()));
    };
    Matrix M;
    auto add = [&M](const Matrix& T) {
        if (M.rows() == 0) {
            M = T;
            return;
        }
        for (std::size_t i = 0; i < M.values().size(); ++i) M.values()[i] += T.values()[i];
    };
    switch (d.geometry) {
        case Geometry::Disk: {
            const Matrix Ar = d.rho->dense(), At = d.theta->dense(), Dr = d.d_rho.dense();
            add(kron({Ar, I(d.dims[1])}));
            add(kron({Dr, At}));
            break;
        }
        case Geometry::Sphere: {
            const Matrix At = d.theta->dense(), Ap = d.phi->dense(), Dp = d.d_phi.dense();
            add(kron({At, Dp}));
            add(kron({I(d.dims[0]), Ap}));
            break;
        }
        case Geometry::Ball: {
            const Matrix Ar = d.rho->dense(), At = d.theta->dense(), Ap = d.phi->dense();
            const Matrix Dr = d.d_rho.dense(), Dp = d.d_phi.dense();
            add(kron({Ar, I(d.dims[1]), I(d.dims[2])}));
            add(kron({Dr, At, Dp}));
            add(kron({Dr, I(d.dims[1]), Ap}));
            break;
        }
        case Geometry::Cylinder: {
            const Matrix Ar = d.rho->dense(), At = d.theta->dense(), Az = d.z->dense();
            const Matrix Dr = d.d_rho.dense();
            add(kron({Ar, I(d.dims[1]), I(d.dims[2])}));
            add(kron({Dr, At, I(d.dims[2])}));
            add(kron({I(d.dims[0]), I(d.dims[1]), Az}));
            break;
        }
    }
    for (double& v : M.values()) v *= G.coeff();
    return M;
}

std::vector<double> step_exact_ee_reference(const Matrix& M, std::span<const double> w,
                                            std::span<const double> g, double tau) {
    if (M.rows() > kKronCap)
        throw Error(ErrorKind::OracleSize, "step_exact_ee_reference: too many unknowns");
    if (w.size() != M.rows() || g.size() != M.rows())
        throw Error(ErrorKind::Shape, "step_exact_ee_reference: size mismatch");
    Matrix tM = M;
    for (double& v : tM.values()) v *= tau;
    const Matrix P = phi1_dense_oracle(tM);
    std::vector<double> f = matvec(M, w);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += g[i];
    const std::vector<double> pf = matvec(P, f);
    std::vector<double> out(w.begin(), w.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += tau * pf[i];
    return out;
}

DenseExponentialEuler::DenseExponentialEuler(const GeometryOps& G)
    : M_(assemble_operator_matrix(G)), tau_(G.tau()) {
    Matrix tM = M_;
    for (double& v : tM.values()) v *= tau_;
    phi1_ = phi1_dense_oracle(tM);
}

void DenseExponentialEuler::step(const Field& W_n, const Field& G_n, Field& W_next) const {
    if (W_n.size() != M_.rows() || G_n.size() != M_.rows())
        throw Error(ErrorKind::Shape, "DenseExponentialEuler: size mismatch");
    std::vector<double> f = matvec(M_, W_n.vec());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += G_n.vec()[i];
    const std::vector<double> pf = matvec(phi1_, f);
    if (!W_next.same_shape(W_n)) W_next = Field(W_n.shape());
    const auto w = W_n.vec();
    auto o = W_next.vec();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = w[i] + tau_ * pf[i];
}

}  // namespace curvipat
