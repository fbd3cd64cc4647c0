// Power-sum helpers shared by the discrete norms. Exact fast paths for the
// ubiquitous p = 1 and p = 2 cases.
#ifndef FVINEQ_PNORM_HPP
#define FVINEQ_PNORM_HPP

#include <cmath>

namespace fvineq::detail {

inline double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

inline double root(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

}  // namespace fvineq::detail

#endif
