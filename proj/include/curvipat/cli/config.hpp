#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvipat/models.hpp"
#include "curvipat/operators.hpp"
#include "curvipat/simulation.hpp"

namespace curvipat::cli {

/// Ordered key -> raw value pairs; later assignments win.
using Settings = std::map<std::string, std::string>;

struct SimConfig {
    ModelSpec spec;                  ///< model defaults with overrides applied
    std::vector<std::size_t> dims;   ///< ordered as spec.dim_names
    std::size_t m = 1;
    double t_star = 1.0;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "out";
    std::size_t snapshot_every = 0;  ///< 0: only t = 0 and t = t*
    bool emit_heatmap = false;
    Method method = Method::SplitExponential;
    double perturbation = 1.0;       ///< multiplier on the model's perturbation law

    // converge
    std::vector<std::size_t> m_list;
    std::size_t m_ref = 0;           ///< 0: 4 * max(m_list)
    bool compare_forward_euler = false;
    bool compare_dense = false;

    // props
    std::vector<OperatorKind> prop_kinds{OperatorKind::Rho2, OperatorKind::Rho3, OperatorKind::Phi,
                                         OperatorKind::Z, OperatorKind::Lambda};
    std::vector<std::size_t> prop_n{8, 16, 32, 64};
    double prop_lambda = -1.95;
};

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
[[nodiscard]] Settings parse_settings(std::string_view text);
[[nodiscard]] Settings load_settings(const std::filesystem::path& path);

/// Splits `key=value` (from --set) into the settings map.
void apply_assignment(Settings& s, std::string_view assignment);

/// Builds a validated configuration. Recognized keys: model, m, t_star,
/// seed, output_dir, snapshot_every, heatmap, method, perturbation, the
/// model's dimension names (n_rho, n_theta, n_phi, n_z), params.<name>,
/// converge.m_list, converge.m_ref, converge.forward_euler, converge.dense,
/// props.kinds, props.n, props.lambda. Throws Error(Usage) otherwise.
[[nodiscard]] SimConfig make_config(const Settings& s);

[[nodiscard]] std::optional<OperatorKind> parse_operator_kind(std::string_view s) noexcept;
[[nodiscard]] std::optional<Method> parse_method(std::string_view s) noexcept;

}  // namespace curvipat::cli
