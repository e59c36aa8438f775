#pragma once

#include "curvipat/integrators.hpp"
#include "curvipat/tensor.hpp"

namespace curvipat {

/// Node-centred cell volumes times the Jacobian at the node. Cells have the
/// grid step as width and are clipped to the domain in rho, phi and z.
[[nodiscard]] Field quadrature_weights(const Discretization& d);

/// Domain average with weights normalized by their own sum.
[[nodiscard]] double integral_mean(const Field& W, const Discretization& d);

/// Cached normalized weights for repeated means on one grid.
class MeanEvaluator {
public:
    explicit MeanEvaluator(const Discretization& d);
    [[nodiscard]] double operator()(const Field& W) const;

private:
    Field weights_;
};

}  // namespace curvipat
