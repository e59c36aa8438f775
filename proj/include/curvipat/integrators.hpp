#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "curvipat/dense.hpp"
#include "curvipat/operators.hpp"
#include "curvipat/phifun.hpp"
#include "curvipat/tensor.hpp"

namespace curvipat {

enum class Geometry { Disk, Sphere, Ball, Cylinder };

[[nodiscard]] const char* to_string(Geometry g) noexcept;

/// Three-point stencil along one axis: lo[x] w[x-1] + di[x] w[x] + up[x] w[x+1].
/// For periodic axes the neighbours wrap around.
struct Stencil {
    std::vector<double> lo, di, up;
    bool periodic = false;

    [[nodiscard]] std::size_t size() const noexcept { return di.size(); }
    static Stencil from(const TridiagonalOperator& T);
    static Stencil from(const PeriodicTridiagonal& A);
};

/// Immutable spatial discretization shared by every component living on the
/// same domain. Field shapes: Disk (n_rho, n_theta), Sphere (n_theta, n_phi),
/// Ball (n_rho, n_theta, n_phi), Cylinder (n_rho, n_theta, n_z).
struct Discretization {
    Geometry geometry = Geometry::Disk;
    std::vector<std::size_t> dims;
    double rho_star = 1.0;  ///< disk/ball/cylinder radius, sphere radius
    double z_star = 1.0;
    double sigma = 0.0;  ///< polar grid offset (Sphere, Ball)

    std::optional<TridiagonalOperator> rho;  ///< Rho2, Rho3 or Lambda
    std::optional<PeriodicTridiagonal> theta;
    std::optional<TridiagonalOperator> phi;
    std::optional<TridiagonalOperator> z;

    DiagonalWeights d_rho;  ///< rho^{-2} or rho^{-2-lambda}
    DiagonalWeights d_phi;  ///< sin(phi)^{-2}

    EigenFactorization e_theta, e_rho, e_phi, e_z;
    Matrix V_phi, V_phi_inv;  ///< Ball only

    Stencil s_rho, s_theta, s_phi, s_z;

    [[nodiscard]] std::size_t unknowns() const noexcept;
    [[nodiscard]] Field zeros() const { return Field(std::span<const std::size_t>(dims)); }
};

/// Disk; with `lambda` set, the anomalous radial operator and rho^{-2-lambda} weights.
[[nodiscard]] std::shared_ptr<const Discretization> make_disk(std::size_t n_rho,
                                                              std::size_t n_theta,
                                                              double rho_star = 1.0,
                                                              std::optional<double> lambda = {});
/// `radius` only enters the quadrature; the operator is the unit-sphere one.
[[nodiscard]] std::shared_ptr<const Discretization> make_sphere(std::size_t n_theta,
                                                                std::size_t n_phi,
                                                                double radius = 1.0);
[[nodiscard]] std::shared_ptr<const Discretization> make_ball(std::size_t n_rho,
                                                              std::size_t n_theta,
                                                              std::size_t n_phi,
                                                              double rho_star = 1.0);
[[nodiscard]] std::shared_ptr<const Discretization> make_cylinder(std::size_t n_rho,
                                                                  std::size_t n_theta,
                                                                  std::size_t n_z,
                                                                  double rho_star, double z_star);

/// Per-component operator bundle: the shared discretization, a diffusion
/// coefficient and the phi_1 data for one step size, computed once.
class GeometryOps {
public:
    GeometryOps(std::shared_ptr<const Discretization> disc, double coeff, double tau);

    [[nodiscard]] const Discretization& disc() const noexcept { return *disc_; }
    [[nodiscard]] const std::shared_ptr<const Discretization>& disc_ptr() const noexcept {
        return disc_;
    }
    [[nodiscard]] Geometry geometry() const noexcept { return disc_->geometry; }
    [[nodiscard]] double coeff() const noexcept { return coeff_; }
    [[nodiscard]] double tau() const noexcept { return tau_; }

    /// phi_1(tau coeff A_rho); unused for Sphere.
    Matrix phi1_rho;
    /// phi_1(tau coeff A_phi); Sphere only.
    Matrix phi1_phi;
    /// phi_1(tau coeff A_z); Cylinder only.
    Matrix phi1_z;
    /// Disk: Phi_{rho,theta}; Sphere: Phi_{theta,phi}; Ball: Phi_{rho,theta,phi};
    /// Cylinder: Phi_{rho,theta,.}.
    PhiTensor phi_angular;
    /// Ball only: Phi_{rho,.,phi}.
    PhiTensor phi_polar;

private:
    std::shared_ptr<const Discretization> disc_;
    double coeff_;
    double tau_;
};

struct StepWorkspace {
    Field F, X, Y;
    explicit StepWorkspace(const Discretization& d) : F(d.zeros()), X(d.zeros()), Y(d.zeros()) {}
};

/// out = coeff * M W for the geometry's Kronecker-sum matrix M.
void apply_M(const GeometryOps& G, const Field& W, Field& out);
[[nodiscard]] Field apply_M(const GeometryOps& G, const Field& W);

// Split exponential Euler steps. W_next may alias W_n.
void step_split_disk(const GeometryOps& G, const Field& W_n, const Field& G_n, StepWorkspace& ws,
                     Field& W_next);
void step_split_sphere(const GeometryOps& G, const Field& W_n, const Field& G_n,
                       StepWorkspace& ws, Field& W_next);
void step_split_ball(const GeometryOps& G, const Field& W_n, const Field& G_n, StepWorkspace& ws,
                     Field& W_next);
void step_split_cylinder(const GeometryOps& G, const Field& W_n, const Field& G_n,
                         StepWorkspace& ws, Field& W_next);
/// Dispatches on the geometry.
void step_split(const GeometryOps& G, const Field& W_n, const Field& G_n, StepWorkspace& ws,
                Field& W_next);

void step_forward_euler(const GeometryOps& G, const Field& W_n, const Field& G_n,
                        StepWorkspace& ws, Field& W_next);

/// Dense coeff * M in vec ordering (first index fastest); at most 4096 unknowns.
[[nodiscard]] Matrix assemble_operator_matrix(const GeometryOps& G);

/// w + tau phi_1(tau M)(M w + g) with a dense phi_1; at most 4096 unknowns.
[[nodiscard]] std::vector<double> step_exact_ee_reference(const Matrix& M,
                                                          std::span<const double> w,
                                                          std::span<const double> g, double tau);

/// Classical exponential Euler with phi_1(tau M) computed once.
class DenseExponentialEuler {
public:
    explicit DenseExponentialEuler(const GeometryOps& G);
    void step(const Field& W_n, const Field& G_n, Field& W_next) const;

private:
    Matrix M_;
    Matrix phi1_;
    double tau_;
};

}  // namespace curvipat
