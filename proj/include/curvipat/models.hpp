#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvipat/simulation.hpp"
#include "curvipat/tensor.hpp"

namespace curvipat {

// ---------------------------------------------------------------------------
// Kinetics

struct BvamParams {
    double alpha1 = 0.899, alpha2 = 0.2, alpha3 = 0.2, beta1 = -0.91, beta2 = -0.899;
};

/// (b, c) for the BVAM model; (0, 0) is an equilibrium for every parameter set.
[[nodiscard]] std::pair<double, double> bvam(double u, double v, const BvamParams& p) noexcept;

struct SchnakenbergParams {
    double alpha2 = 0.14, beta1 = 1.34;
    [[nodiscard]] double u_e() const noexcept { return alpha2 + beta1; }
    [[nodiscard]] double v_e() const noexcept { return beta1 / (u_e() * u_e()); }
};

/// (alpha2 - u + u^2 v, beta1 - u^2 v), without the alpha1 rate factor.
[[nodiscard]] std::pair<double, double> schnakenberg(double u, double v,
                                                     const SchnakenbergParams& p) noexcept;

/// Parameters shared by the DIB surface kinetics on the sphere and the
/// bottom-surface kinetics of the cylinder model.
struct DibParams {
    double zeta2 = 10.0, zeta3 = 1.0, zeta4 = 48.0, zeta5 = 0.5;
    double eta1 = 5.0, eta2 = 2.5, eta3 = 0.2, eta5 = 1.5;
    double beta2 = 1.0;  ///< bulk level of v; 1 for the pure surface model

    /// Always derived so that q vanishes at (r, s) = (0, zeta5) with v = beta2.
    [[nodiscard]] double eta4() const noexcept {
        return beta2 * eta1 * (1.0 - zeta5) * (1.0 - eta3 + eta3 * zeta5) /
               (zeta5 * (1.0 + eta3 * zeta5));
    }
};

/// (p, q) with bulk factors u and v; the pure surface model uses u = v = 1.
[[nodiscard]] std::pair<double, double> dib(double u, double v, double r, double s,
                                            const DibParams& p) noexcept;

void bvam_kinetics(const Field& u, const Field& v, const BvamParams& p, Field& b, Field& c);
void schnakenberg_kinetics(const Field& u, const Field& v, const SchnakenbergParams& p, Field& b,
                           Field& c);
void dib_kinetics(const Field& r, const Field& s, const DibParams& p, Field& pr, Field& qs);

// ---------------------------------------------------------------------------
// Boundary coupling

struct BallCouplingParams {
    double alpha2 = 0.1, beta1 = 0.9;
    double zeta1 = 55.0, zeta2 = 5.0 / 12.0, zeta3 = 5.0 / 12.0;
    double eta1 = 5.0, eta2 = 5.0;
};

/// Boundary sources for the bulk (same shape as the bulk field, nonzero only
/// on the outer radial layer) and the surface kinetics p, q (without zeta1).
struct BallCoupling {
    Field source_u, source_v;
    Field p, q;
};

/// Robin fluxes folded in by ghost-node elimination at rho = rho*. `u`, `v`
/// are bulk fields on `ball`; `r`, `s` live on the matching (theta, phi) grid.
[[nodiscard]] BallCoupling bulk_surface_coupling_ball(const Field& u, const Field& v,
                                                      const Field& r, const Field& s,
                                                      const BallCouplingParams& p,
                                                      const Discretization& ball);

struct CylinderCouplingParams {
    DibParams dib{.zeta2 = 10.0, .zeta3 = 1.0, .zeta4 = 66.0, .zeta5 = 0.5,
                  .eta1 = 3.0, .eta2 = 2.5, .eta3 = 0.2, .eta5 = 1.5, .beta2 = 1.0};
    double zeta1 = 1.0, alpha3 = 0.15, beta3 = 0.15;
    double coeff_u = 1.0, coeff_v = 1.0;  ///< bulk diffusion coefficients (1 and delta)
};

/// Bottom-face flux sources (nonzero only on the k = 0 layer) and surface
/// kinetics p, q (without zeta1). `r`, `s` live on the (rho, theta) bottom grid.
struct CylinderCoupling {
    Field source_u, source_v;
    Field p, q;
};
[[nodiscard]] CylinderCoupling bs_cylinder_coupling(const Field& u, const Field& v,
                                                    const Field& r, const Field& s,
                                                    const CylinderCouplingParams& p,
                                                    const Discretization& cylinder);

// ---------------------------------------------------------------------------
// Model specifications

enum class ModelName {
    BvamDisk,
    SchnakenbergAnomalousDisk,
    DibSphere,
    BulkSurfaceBall,
    BsDibCylinder,
};

[[nodiscard]] const char* to_string(ModelName m) noexcept;
[[nodiscard]] std::optional<ModelName> parse_model_name(std::string_view s) noexcept;

enum class PerturbationLaw { None, Uniform, Normal };

struct Perturbation {
    PerturbationLaw law = PerturbationLaw::None;
    double lo = 0.0, hi = 0.0;  ///< Uniform(lo, hi) added to the equilibrium
    double scale = 0.0;         ///< Normal(0, 1) * scale added to the equilibrium
};

struct ModelSpec {
    ModelName name = ModelName::BvamDisk;
    std::map<std::string, double> params;
    std::vector<std::string> components;
    std::vector<Perturbation> perturbations;  ///< per component
    std::vector<std::string> dim_names;       ///< e.g. n_rho, n_theta
    std::vector<std::size_t> dims;            ///< default grid
    std::size_t m = 1;
    double t_star = 1.0;

    [[nodiscard]] double param(const std::string& key) const;
    /// Overrides a known parameter; unknown keys and derived ones are rejected.
    void set_param(const std::string& key, double value);
};

[[nodiscard]] ModelSpec default_spec(ModelName name);

/// Assembles discretizations, components and the coupled reaction for the
/// model on the grid `dims` (ordered as spec.dim_names).
[[nodiscard]] CoupledSystem build_system(const ModelSpec& spec, const std::vector<std::size_t>& dims);

/// Equilibrium plus `multiplier` times the model's perturbation. Draws come
/// from std::mt19937_64 seeded with `seed`, component-major then flat index.
[[nodiscard]] std::vector<Field> random_initial_condition(const ModelSpec& spec,
                                                          const CoupledSystem& system,
                                                          std::uint64_t seed,
                                                          double multiplier = 1.0);

/// Perturbation size of one component: max(|lo|, |hi|) or the normal scale.
[[nodiscard]] double perturbation_scale(const ModelSpec& spec, std::size_t component = 0);

}  // namespace curvipat
