#include "curvipat/simulation.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "curvipat/error.hpp"
#include "curvipat/quadrature.hpp"

namespace curvipat {

const char* to_string(Method m) noexcept {
    switch (m) {
        case Method::SplitExponential: return "split";
        case Method::ForwardEuler: return "forward-euler";
        case Method::DenseExponential: return "dense-ee";
    }
    return "unknown";
}

std::vector<Field> CoupledSystem::zeros() const {
    std::vector<Field> out;
    for (std::size_t c = 0; c < components.size(); ++c) out.push_back(disc_of(c).zeros());
    return out;
}

std::vector<Field> CoupledSystem::equilibrium_fields() const {
    std::vector<Field> out = zeros();
    for (std::size_t c = 0; c < out.size(); ++c) out[c].fill(equilibrium.at(c));
    return out;
}

namespace {

void add_constant(const Field& src, double v, Field& dst) {
    if (!dst.same_shape(src)) dst = Field(src.shape());
    const auto s = src.vec();
    auto d = dst.vec();
    for (std::size_t i = 0; i < s.size(); ++i) d[i] = s[i] + v;
}

}  // namespace

SimulationResult run_simulation(const CoupledSystem& system, std::vector<Field> initial,
                                std::size_t m, double t_star, const SimulationOptions& options) {
    const std::size_t nc = system.components.size();
    if (m == 0) throw Error(ErrorKind::Usage, "run_simulation: m must be >= 1");
    if (!(t_star > 0.0)) throw Error(ErrorKind::Usage, "run_simulation: t_star must be > 0");
    if (initial.size() != nc)
        throw Error(ErrorKind::Shape, "run_simulation: one initial field per component");
    if (!system.reaction) throw Error(ErrorKind::Usage, "run_simulation: system has no reaction");

    const double tau = t_star / static_cast<double>(m);
    std::vector<GeometryOps> ops;
    std::vector<StepWorkspace> ws;
    std::vector<std::optional<DenseExponentialEuler>> dense(nc);
    std::vector<MeanEvaluator> means;
    ops.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        const auto& spec = system.components[c];
        ops.emplace_back(system.discs.at(spec.disc), spec.coeff, tau);
        ws.emplace_back(ops.back().disc());
        means.emplace_back(ops.back().disc());
        if (!initial[c].same_shape(ops.back().disc().zeros()))
            throw Error(ErrorKind::Shape, "run_simulation: initial field " + spec.name +
                                              " has the wrong shape");
        if (options.method == Method::DenseExponential) dense[c].emplace(ops.back());
    }

    // Internal state holds lifted values.
    std::vector<Field> state = std::move(initial);
    for (std::size_t c = 0; c < nc; ++c) add_constant(state[c], -system.components[c].lift, state[c]);
    std::vector<Field> values = system.zeros();
    std::vector<Field> sources = system.zeros();
    std::vector<double> row(nc);

    const std::size_t every = options.snapshot_every == 0 ? m : options.snapshot_every;
    SimulationResult result;
    auto refresh_values = [&] {
        for (std::size_t c = 0; c < nc; ++c)
            add_constant(state[c], system.components[c].lift, values[c]);
    };
    auto record = [&](std::size_t step) {
        const double t = t_star * static_cast<double>(step) / static_cast<double>(m);
        for (std::size_t c = 0; c < nc; ++c) row[c] = means[c](values[c]);
        result.series.t.push_back(t);
        result.series.means.push_back(row);
        if (options.on_snapshot) options.on_snapshot(step, t, values, row);
    };

    refresh_values();
    record(0);
    for (std::size_t step = 1; step <= m; ++step) {
        system.reaction(values, sources);
        for (std::size_t c = 0; c < nc; ++c) {
            switch (options.method) {
                case Method::SplitExponential:
                    step_split(ops[c], state[c], sources[c], ws[c], state[c]);
                    break;
                case Method::ForwardEuler:
                    step_forward_euler(ops[c], state[c], sources[c], ws[c], state[c]);
                    break;
                case Method::DenseExponential:
                    dense[c]->step(state[c], sources[c], state[c]);
                    break;
            }
            for (double v : state[c].vec()) {
                if (!std::isfinite(v) || std::abs(v) > options.divergence_bound)
                    throw DivergenceError(step, "divergence in component " +
                                                    system.components[c].name + " at step " +
                                                    std::to_string(step));
            }
        }
        refresh_values();
        if (step % every == 0) record(step);
    }
    result.fields = std::move(values);
    return result;
}

}  // namespace curvipat
