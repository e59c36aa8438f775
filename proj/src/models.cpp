#include "curvipat/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "curvipat/error.hpp"

namespace curvipat {

const char* to_string(ModelName m) noexcept {
    switch (m) {
        case ModelName::BvamDisk: return "bvam-disk";
        case ModelName::SchnakenbergAnomalousDisk: return "schnakenberg-anomalous-disk";
        case ModelName::DibSphere: return "dib-sphere";
        case ModelName::BulkSurfaceBall: return "bulk-surface-ball";
        case ModelName::BsDibCylinder: return "bsdib-cylinder";
    }
    return "unknown";
}

std::optional<ModelName> parse_model_name(std::string_view s) noexcept {
    for (ModelName m : {ModelName::BvamDisk, ModelName::SchnakenbergAnomalousDisk,
                        ModelName::DibSphere, ModelName::BulkSurfaceBall,
                        ModelName::BsDibCylinder})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

double ModelSpec::param(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end())
        throw Error(ErrorKind::Usage, "model " + std::string(to_string(name)) +
                                          " has no parameter '" + key + "'");
    return it->second;
}

void ModelSpec::set_param(const std::string& key, double value) {
    if (key == "eta4")
        throw Error(ErrorKind::Usage, "eta4 is derived from the other parameters");
    auto it = params.find(key);
    if (it == params.end())
        throw Error(ErrorKind::Usage, "model " + std::string(to_string(name)) +
                                          " has no parameter '" + key + "'");
    if (!std::isfinite(value))
        throw Error(ErrorKind::Usage, "parameter '" + key + "' must be finite");
    it->second = value;
}

ModelSpec default_spec(ModelName name) {
    ModelSpec s;
    s.name = name;
    const Perturbation none{};
    switch (name) {
        case ModelName::BvamDisk:
            s.params = {{"gamma", 3.87e-3}, {"delta", 7.5e-3}, {"alpha1", 0.899},
                        {"alpha2", 0.2},    {"alpha3", 0.2},   {"beta1", -0.91},
                        {"beta2", -0.899},  {"rho_star", 1.0}};
            s.components = {"u", "v"};
            s.perturbations.assign(2, {PerturbationLaw::Uniform, -0.5, 0.5, 0.0});
            s.dim_names = {"n_rho", "n_theta"};
            s.dims = {40, 80};
            s.m = 10000;
            s.t_star = 1600.0;
            break;
        case ModelName::SchnakenbergAnomalousDisk:
            s.params = {{"alpha1", 500.0}, {"alpha2", 0.14},  {"beta1", 1.34},
                        {"delta", 50.0},   {"lambda", -1.95}, {"rho_star", 1.0}};
            s.components = {"u", "v"};
            s.perturbations.assign(2, {PerturbationLaw::Normal, 0.0, 0.0, 1e-5});
            s.dim_names = {"n_rho", "n_theta"};
            s.dims = {80, 80};
            s.m = 6000;
            s.t_star = 2.5;
            break;
        case ModelName::DibSphere:
            s.params = {{"rho_star", 1.1653}, {"zeta1", 10.0}, {"zeta2", 10.0}, {"zeta3", 1.0},
                        {"zeta4", 48.0},      {"zeta5", 0.5},  {"eta1", 5.0},   {"eta2", 2.5},
                        {"eta3", 0.2},        {"eta5", 1.5},   {"epsilon", 20.0}};
            s.components = {"r", "s"};
            s.perturbations.assign(2, {PerturbationLaw::Normal, 0.0, 0.0, 1e-6});
            s.dim_names = {"n_theta", "n_phi"};
            s.dims = {100, 50};
            s.m = 9000;
            s.t_star = 18.0;
            break;
        case ModelName::BulkSurfaceBall:
            s.params = {{"alpha1", 55.0},       {"alpha2", 0.1},        {"beta1", 0.9},
                        {"zeta1", 55.0},        {"zeta2", 5.0 / 12.0},  {"zeta3", 5.0 / 12.0},
                        {"eta1", 5.0},          {"eta2", 5.0},          {"delta", 10.0},
                        {"epsilon", 10.0},      {"rho_star", 1.0}};
            s.components = {"u", "v", "r", "s"};
            s.perturbations.assign(4, {PerturbationLaw::Normal, 0.0, 0.0, 1e-3});
            s.dim_names = {"n_rho", "n_theta", "n_phi"};
            s.dims = {16, 24, 16};
            s.m = 50000;
            s.t_star = 10.0;
            break;
        case ModelName::BsDibCylinder:
            s.params = {{"alpha1", 1.0}, {"alpha2", 1.0},  {"alpha3", 0.15}, {"beta1", 1.0},
                        {"beta2", 1.0},  {"beta3", 0.15},  {"delta", 1.0},   {"epsilon", 20.0},
                        {"zeta1", 1.0},  {"zeta2", 10.0},  {"zeta3", 1.0},   {"zeta4", 66.0},
                        {"zeta5", 0.5},  {"eta1", 3.0},    {"eta2", 2.5},    {"eta3", 0.2},
                        {"eta5", 1.5},   {"rho_star", 25.0}, {"z_star", 25.0}};
            s.components = {"u", "v", "r", "s"};
            s.perturbations = {none, none, {PerturbationLaw::Uniform, 0.0, 1e-2, 0.0},
                               {PerturbationLaw::Uniform, 0.0, 1e-2, 0.0}};
            s.dim_names = {"n_rho", "n_theta", "n_z"};
            s.dims = {48, 48, 12};
            s.m = 2000;
            s.t_star = 50.0;
            break;
    }
    return s;
}

namespace {

void require_dims(const ModelSpec& spec, const std::vector<std::size_t>& dims) {
    if (dims.size() != spec.dim_names.size())
        throw Error(ErrorKind::Usage, std::string(to_string(spec.name)) + " needs " +
                                          std::to_string(spec.dim_names.size()) +
                                          " grid dimensions");
    for (std::size_t a = 0; a < dims.size(); ++a)
        if (dims[a] < 2)
            throw Error(ErrorKind::Usage, spec.dim_names[a] + " must be >= 2");
}

CoupledSystem bvam_system(const ModelSpec& s, const std::vector<std::size_t>& dims) {
    CoupledSystem sys;
    sys.discs.push_back(make_disk(dims[0], dims[1], s.param("rho_star")));
    sys.components = {{"u", 0, s.param("gamma"), 0.0}, {"v", 0, s.param("delta"), 0.0}};
    sys.equilibrium = {0.0, 0.0};
    const BvamParams p{s.param("alpha1"), s.param("alpha2"), s.param("alpha3"), s.param("beta1"),
                       s.param("beta2")};
    sys.reaction = [p](std::span<const Field> w, std::span<Field> g) {
        bvam_kinetics(w[0], w[1], p, g[0], g[1]);
    };
    return sys;
}

CoupledSystem anomalous_system(const ModelSpec& s, const std::vector<std::size_t>& dims) {
    CoupledSystem sys;
    sys.discs.push_back(make_disk(dims[0], dims[1], s.param("rho_star"), s.param("lambda")));
    const SchnakenbergParams p{s.param("alpha2"), s.param("beta1")};
    const double a1 = s.param("alpha1");
    sys.components = {{"u", 0, 1.0, p.u_e()}, {"v", 0, s.param("delta"), p.v_e()}};
    sys.equilibrium = {p.u_e(), p.v_e()};
    sys.reaction = [p, a1](std::span<const Field> w, std::span<Field> g) {
        schnakenberg_kinetics(w[0], w[1], p, g[0], g[1]);
        for (double& x : g[0].vec()) x *= a1;
        for (double& x : g[1].vec()) x *= a1;
    };
    return sys;
}

DibParams dib_params(const ModelSpec& s, double beta2) {
    DibParams p;
    p.zeta2 = s.param("zeta2");
    p.zeta3 = s.param("zeta3");
    p.zeta4 = s.param("zeta4");
    p.zeta5 = s.param("zeta5");
    p.eta1 = s.param("eta1");
    p.eta2 = s.param("eta2");
    p.eta3 = s.param("eta3");
    p.eta5 = s.param("eta5");
    p.beta2 = beta2;
    return p;
}

CoupledSystem dib_system(const ModelSpec& s, const std::vector<std::size_t>& dims) {
    CoupledSystem sys;
    const double rs = s.param("rho_star");
    sys.discs.push_back(make_sphere(dims[0], dims[1], rs));
    const DibParams p = dib_params(s, 1.0);
    const double z1 = s.param("zeta1");
    sys.components = {{"r", 0, 1.0 / (rs * rs), 0.0}, {"s", 0, s.param("epsilon") / (rs * rs), 0.0}};
    sys.equilibrium = {0.0, p.zeta5};
    sys.reaction = [p, z1](std::span<const Field> w, std::span<Field> g) {
        dib_kinetics(w[0], w[1], p, g[0], g[1]);
        for (double& x : g[0].vec()) x *= z1;
        for (double& x : g[1].vec()) x *= z1;
    };
    return sys;
}

CoupledSystem ball_system(const ModelSpec& s, const std::vector<std::size_t>& dims) {
    CoupledSystem sys;
    const double rs = s.param("rho_star");
    sys.discs.push_back(make_ball(dims[0], dims[1], dims[2], rs));
    sys.discs.push_back(make_sphere(dims[1], dims[2], rs));
    const BallCouplingParams cp{s.param("alpha2"), s.param("beta1"), s.param("zeta1"),
                                s.param("zeta2"),  s.param("zeta3"), s.param("eta1"),
                                s.param("eta2")};
    const SchnakenbergParams sp{cp.alpha2, cp.beta1};
    const double a1 = s.param("alpha1");
    sys.components = {{"u", 0, 1.0, 0.0},
                      {"v", 0, s.param("delta"), 0.0},
                      {"r", 1, 1.0 / (rs * rs), 0.0},
                      {"s", 1, s.param("epsilon") / (rs * rs), 0.0}};
    sys.equilibrium = {sp.u_e(), sp.v_e(), sp.u_e(), sp.v_e()};
    auto ball = sys.discs[0];
    sys.reaction = [cp, sp, a1, ball](std::span<const Field> w, std::span<Field> g) {
        schnakenberg_kinetics(w[0], w[1], sp, g[0], g[1]);
        const BallCoupling bc = bulk_surface_coupling_ball(w[0], w[1], w[2], w[3], cp, *ball);
        auto gu = g[0].vec();
        auto gv = g[1].vec();
        const auto su = bc.source_u.vec();
        const auto sv = bc.source_v.vec();
        for (std::size_t i = 0; i < gu.size(); ++i) {
            gu[i] = a1 * gu[i] + su[i];
            gv[i] = a1 * gv[i] + sv[i];
        }
        g[2] = bc.p;
        g[3] = bc.q;
        for (double& x : g[2].vec()) x *= cp.zeta1;
        for (double& x : g[3].vec()) x *= cp.zeta1;
    };
    return sys;
}

CoupledSystem cylinder_system(const ModelSpec& s, const std::vector<std::size_t>& dims) {
    CoupledSystem sys;
    const double rs = s.param("rho_star");
    sys.discs.push_back(make_cylinder(dims[0], dims[1], dims[2], rs, s.param("z_star")));
    sys.discs.push_back(make_disk(dims[0], dims[1], rs));
    const double a1 = s.param("alpha1"), a2 = s.param("alpha2");
    const double b1 = s.param("beta1"), b2 = s.param("beta2");
    const double delta = s.param("delta");
    CylinderCouplingParams cp;
    cp.dib = dib_params(s, b2);
    cp.zeta1 = s.param("zeta1");
    cp.alpha3 = s.param("alpha3");
    cp.beta3 = s.param("beta3");
    cp.coeff_u = 1.0;
    cp.coeff_v = delta;
    sys.components = {{"u", 0, 1.0, a2},
                      {"v", 0, delta, b2},
                      {"r", 1, 1.0, 0.0},
                      {"s", 1, s.param("epsilon"), 0.0}};
    sys.equilibrium = {a2, b2, 0.0, cp.dib.zeta5};
    auto cyl = sys.discs[0];
    sys.reaction = [cp, a1, a2, b1, b2, cyl](std::span<const Field> w, std::span<Field> g) {
        const CylinderCoupling cc = bs_cylinder_coupling(w[0], w[1], w[2], w[3], cp, *cyl);
        const auto u = w[0].vec();
        const auto v = w[1].vec();
        auto gu = g[0].vec();
        auto gv = g[1].vec();
        const auto su = cc.source_u.vec();
        const auto sv = cc.source_v.vec();
        for (std::size_t i = 0; i < gu.size(); ++i) {
            gu[i] = -a1 * (u[i] - a2) + su[i];
            gv[i] = -b1 * (v[i] - b2) + sv[i];
        }
        g[2] = cc.p;
        g[3] = cc.q;
        for (double& x : g[2].vec()) x *= cp.zeta1;
        for (double& x : g[3].vec()) x *= cp.zeta1;
    };
    return sys;
}

// 53-bit uniform in [0, 1) from the raw generator output.
double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Box-Muller; the second variate of each pair is kept for the next call.
class NormalSource {
public:
    explicit NormalSource(std::mt19937_64& gen) : gen_(gen) {}
    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(gen_);  // (0, 1]
        const double u2 = uniform01(gen_);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = rad * std::sin(ang);
        has_spare_ = true;
        return rad * std::cos(ang);
    }

private:
    std::mt19937_64& gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

CoupledSystem build_system(const ModelSpec& spec, const std::vector<std::size_t>& dims) {
    require_dims(spec, dims);
    switch (spec.name) {
        case ModelName::BvamDisk: return bvam_system(spec, dims);
        case ModelName::SchnakenbergAnomalousDisk: return anomalous_system(spec, dims);
        case ModelName::DibSphere: return dib_system(spec, dims);
        case ModelName::BulkSurfaceBall: return ball_system(spec, dims);
        case ModelName::BsDibCylinder: return cylinder_system(spec, dims);
    }
    throw Error(ErrorKind::Usage, "unknown model");
}

std::vector<Field> random_initial_condition(const ModelSpec& spec, const CoupledSystem& system,
                                            std::uint64_t seed, double multiplier) {
    if (spec.perturbations.size() != system.components.size())
        throw Error(ErrorKind::Shape, "random_initial_condition: component count mismatch");
    std::mt19937_64 gen(seed);
    NormalSource normal(gen);
    std::vector<Field> out = system.equilibrium_fields();
    for (std::size_t c = 0; c < out.size(); ++c) {
        const Perturbation& p = spec.perturbations[c];
        for (double& x : out[c].vec()) {
            switch (p.law) {
                case PerturbationLaw::None: break;
                case PerturbationLaw::Uniform:
                    x += multiplier * (p.lo + (p.hi - p.lo) * uniform01(gen));
                    break;
                case PerturbationLaw::Normal: x += multiplier * p.scale * normal(); break;
            }
        }
    }
    return out;
}

double perturbation_scale(const ModelSpec& spec, std::size_t component) {
    const Perturbation& p = spec.perturbations.at(component);
    switch (p.law) {
        case PerturbationLaw::None: return 0.0;
        case PerturbationLaw::Uniform: return std::max(std::abs(p.lo), std::abs(p.hi));
        case PerturbationLaw::Normal: return p.scale;
    }
    return 0.0;
}

}  // namespace curvipat
