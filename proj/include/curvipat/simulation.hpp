#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "curvipat/integrators.hpp"
#include "curvipat/tensor.hpp"

namespace curvipat {

struct ComponentSpec {
    std::string name;
    std::size_t disc = 0;  ///< index into CoupledSystem::discs
    double coeff = 1.0;    ///< diffusion coefficient
    double lift = 0.0;     ///< constant subtracted before stepping (Dirichlet lifting)
};

/// Fills `sources[c]` with the nonlinear term of component c, boundary
/// sources included, from the unlifted component values.
using ReactionFn = std::function<void(std::span<const Field> values, std::span<Field> sources)>;

struct CoupledSystem {
    std::vector<std::shared_ptr<const Discretization>> discs;
    std::vector<ComponentSpec> components;
    ReactionFn reaction;
    std::vector<double> equilibrium;  ///< per component

    [[nodiscard]] const Discretization& disc_of(std::size_t c) const {
        return *discs.at(components.at(c).disc);
    }
    [[nodiscard]] std::vector<Field> zeros() const;
    [[nodiscard]] std::vector<Field> equilibrium_fields() const;
};

enum class Method { SplitExponential, ForwardEuler, DenseExponential };

[[nodiscard]] const char* to_string(Method m) noexcept;

struct SimulationOptions {
    Method method = Method::SplitExponential;
    /// Record a time-series row every this many steps; 0 means only t = 0 and t = t*.
    std::size_t snapshot_every = 0;
    double divergence_bound = 1e12;
    /// Called at step 0 and at every recorded step with the unlifted fields and
    /// their integral means.
    std::function<void(std::size_t step, double t, std::span<const Field> fields,
                       std::span<const double> means)>
        on_snapshot;
};

struct TimeSeries {
    std::vector<double> t;
    std::vector<std::vector<double>> means;  ///< means[row][component]
};

struct SimulationResult {
    std::vector<Field> fields;
    TimeSeries series;
};

/// Advances `initial` (unlifted values) by m steps of size t_star/m. Throws
/// DivergenceError with the 1-based step index if any entry becomes
/// non-finite or exceeds the divergence bound in magnitude.
SimulationResult run_simulation(const CoupledSystem& system, std::vector<Field> initial,
                                std::size_t m, double t_star, const SimulationOptions& options = {});

}  // namespace curvipat
