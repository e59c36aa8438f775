#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "curvipat/cli/config.hpp"
#include "curvipat/operators.hpp"
#include "curvipat/tensor.hpp"

namespace curvipat::cli {

struct RunReport {
    double wall_seconds = 0.0;
    double per_step_seconds = 0.0;
    std::vector<std::string> components;
    std::vector<double> final_means;
    bool diverged = false;
    std::size_t divergence_step = 0;  ///< 1-based, meaningful when diverged
    std::vector<std::filesystem::path> manifest;
};

/// Runs the configured simulation and writes timeseries.csv, per-snapshot
/// field files under snapshots/ and, if enabled, PPM heatmaps. Divergence is
/// reported in the result; files written before it are kept.
RunReport cmd_run(const SimConfig& cfg, std::ostream& log);

struct ConvergeRow {
    std::size_t m = 0;
    double err_split = 0.0;
    std::optional<double> err_forward_euler;  ///< unset if not run or diverged
    std::size_t fe_divergence_step = 0;
    std::optional<double> err_dense;
};

struct ConvergeReport {
    std::size_t m_ref = 0;
    std::vector<ConvergeRow> rows;
    double order = 0.0;  ///< minus the least-squares slope of log(err_split) vs log(m)
    std::optional<double> order_dense;
    bool dense_skipped = false;
};

/// sqrt(sum_c (||W_c - R_c||_F / ||R_c||_F)^2); a zero reference norm falls
/// back to the absolute norm for that component.
[[nodiscard]] double relative_error(std::span<const Field> W, std::span<const Field> R);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Self-convergence study against a split-stepper reference with m_ref steps
/// and the same seed. Independent runs use up to CURVIPAT_THREADS threads.
ConvergeReport cmd_converge(const SimConfig& cfg, std::ostream& log);

struct PropsRow {
    OperatorKind kind{};
    std::size_t n = 0;
    double max_abs = 0.0;          ///< ||A||_max
    double min_offdiag = 0.0;      ///< smallest extra-diagonal entry
    double max_row_sum = 0.0;      ///< max |row sum|
    double max_eigenvalue = 0.0;
    double xi_inv_norm = 0.0;      ///< ||Xi^{-1}||_2 with xi_1 = 1
    double xi_cond = 0.0;          ///< cond_2(Xi)
    std::optional<double> closed_form;  ///< expected ||Xi^{-1}||_2 (Rho2, Rho3) or cond_2 (Z)
    std::optional<double> exp_min;      ///< min over t in {0.1, 1, 10} of min exp(tA), n <= 64
};

[[nodiscard]] PropsRow operator_properties(OperatorKind kind, std::size_t n, double lambda = -1.95);

std::vector<PropsRow> cmd_props(const SimConfig& cfg, std::ostream& log);

/// Thread count from CURVIPAT_THREADS, at least 1; 1 when unset or invalid.
[[nodiscard]] unsigned configured_threads();

}  // namespace curvipat::cli
