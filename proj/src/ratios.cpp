#include "fvineq/ratios.hpp"

#include <cmath>
#include <stdexcept>

namespace fvineq {

namespace {

void require_nonzero(const DiscreteFunction& u) {
  if (u.values.isZero(0.0)) throw std::domain_error("ratio undefined for the zero function");
}

const BoundaryTag& require_gamma0(const BoundaryTag* gamma0) {
  if (gamma0 == nullptr || gamma0->empty())
    throw std::invalid_argument("Dirichlet variant requires a nonempty Gamma^0 tag");
  return *gamma0;
}

}  // namespace

double gns_ratio(const DiscreteFunction& u, const ExponentSet& exps, InequalityVariant variant,
                 const BoundaryTag* gamma0) {
  require_nonzero(u);
  const double num = lp_norm(u, exps.m);
  double grad_part;
  if (variant == InequalityVariant::general) {
    grad_part = w1p_norm(u, NormSpec{exps.p, std::nullopt});
  } else {
    grad_part = w1p_seminorm_dirichlet(u, exps.p, require_gamma0(gamma0));
    if (grad_part == 0.0 && exps.theta > 0.0)
      throw std::domain_error("nonzero function with vanishing Dirichlet seminorm");
  }
  const double den = std::pow(grad_part, exps.theta) * std::pow(lp_norm(u, exps.q), 1.0 - exps.theta);
  if (!(den > 0.0)) throw std::domain_error("vanishing denominator in GNS ratio");
  return num / den;
}

double sp_ratio(const DiscreteFunction& u, double p, double q, InequalityVariant variant,
                const BoundaryTag* gamma0) {
  validate_sp_exponents(p, q, u.mesh->dim());
  require_nonzero(u);
  const double den = (variant == InequalityVariant::general)
                         ? w1p_norm(u, NormSpec{p, std::nullopt})
                         : w1p_seminorm_dirichlet(u, p, require_gamma0(gamma0));
  if (!(den > 0.0)) throw std::domain_error("vanishing denominator in Sobolev-Poincare ratio");
  return lp_norm(u, q) / den;
}

double nash_ratio(const DiscreteFunction& u, InequalityVariant variant, const BoundaryTag* gamma0) {
  require_nonzero(u);
  const int N = u.mesh->dim();
  const double grad_part = (variant == InequalityVariant::general)
                               ? w1p_norm(u, NormSpec{2.0, std::nullopt})
                               : w1p_seminorm_dirichlet(u, 2.0, require_gamma0(gamma0));
  const double den = grad_part * std::pow(lp_norm(u, 1.0), 2.0 / N);
  if (!(den > 0.0)) throw std::domain_error("vanishing denominator in Nash ratio");
  return std::pow(lp_norm(u, 2.0), 1.0 + 2.0 / N) / den;
}

double pw_ratio(const DiscreteFunction& u) {
  const int N = u.mesh->dim();
  const double den = w1p_seminorm(u, 1.0);
  if (!(den > 0.0)) throw std::domain_error("Poincare-Wirtinger ratio undefined for constants");
  DiscreteFunction centered(*u.mesh, u.values.array() - mean_value(u));
  return lp_norm(centered, static_cast<double>(N) / (N - 1)) / den;
}

std::pair<double, double> dirichlet_l1_embedding_check(const DiscreteFunction& u,
                                                       const BoundaryTag& gamma0) {
  if (gamma0.empty()) throw std::invalid_argument("embedding check requires a nonempty Gamma^0 tag");
  const int N = u.mesh->dim();
  return {lp_norm(u, static_cast<double>(N) / (N - 1)), w1p_seminorm_dirichlet(u, 1.0, gamma0)};
}

}  // namespace fvineq
