// Piecewise constant functions (one value per control volume) and their
// discrete Lp / W^{1,p} norms, seminorms, total variation and mean value.
#ifndef FVINEQ_DISCRETE_FUNCTION_HPP
#define FVINEQ_DISCRETE_FUNCTION_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "fvineq/mesh.hpp"

namespace fvineq {

/// One real value per cell; immutable after creation.
struct DiscreteFunction {
  DiscreteFunction(const Mesh& m, Eigen::VectorXd v);

  const Mesh* mesh;
  Eigen::VectorXd values;
};

struct NormSpec {
  double p = 2.0;
  std::optional<BoundaryTag> gamma0;  // Dirichlet seminorm when present
};

/// ( sum_K m(K) |u_K|^p )^{1/p}
double lp_norm(const DiscreteFunction& u, double p);

/// ( sum_{interior sigma=K|L} m(sigma)/d_sigma^{p-1} |u_L - u_K|^p )^{1/p}
double w1p_seminorm(const DiscreteFunction& u, double p);

/// Seminorm with boundary jumps: D_sigma u = |u_K - u_L| on interior faces,
/// |u_K| on faces in Gamma^0, 0 on the remaining exterior faces.
double w1p_seminorm_dirichlet(const DiscreteFunction& u, double p, const BoundaryTag& gamma0);

/// lp_norm + seminorm (general, or Dirichlet when spec.gamma0 is set).
double w1p_norm(const DiscreteFunction& u, const NormSpec& spec);

/// sum over interior faces of m(sigma) |u_L - u_K|; equals the exact total
/// variation of a piecewise constant function on a polytopal partition, and
/// coincides with w1p_seminorm(u, 1) term by term.
double total_variation(const DiscreteFunction& u);

/// (1/m(Omega)) sum_K m(K) u_K
double mean_value(const DiscreteFunction& u);

/// u_K := f(x_K) at cell centers.
DiscreteFunction sample_scalar_field(const std::function<double(const Vec3&)>& f, const Mesh& mesh);

}  // namespace fvineq

#endif
