#include "fvineq/exponents.hpp"

#include <sstream>
#include <stdexcept>

namespace fvineq {

double theta_max(double p, double q) { return p / (p + q * (p - 1.0)); }

double sobolev_conjugate(double p, int N) {
  if (!(p < N)) throw std::invalid_argument("p* is defined for p < N only");
  return p * N / (N - p);
}

ExponentSet admissible_exponents(double p, double q, int N, double theta) {
  if (N < 2) throw std::invalid_argument("dimension N must be >= 2");
  if (!(p > 1.0) || !(p <= N)) throw std::invalid_argument("exponent p must satisfy 1 < p <= N");
  if (!(q >= 1.0)) throw std::invalid_argument("exponent q must be >= 1");
  const double bound = theta_max(p, q);
  if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
  if (theta > bound) {
    std::ostringstream os;
    os << "theta exceeds p/(p+q(p-1)) = " << bound;
    throw std::invalid_argument(os.str());
  }
  const double inv_m = (1.0 - theta) / q + theta / p - theta / N;
  if (!(inv_m > 0.0)) throw std::invalid_argument("derived exponent m is not positive");
  ExponentSet e;
  e.p = p;
  e.q = q;
  e.theta = theta;
  e.N = N;
  e.m = 1.0 / inv_m;
  if (!(e.m >= 1.0)) throw std::invalid_argument("derived exponent m is below 1");
  return e;
}

void validate_sp_exponents(double p, double q, int N) {
  if (N < 2) throw std::invalid_argument("dimension N must be >= 2");
  if (!(p >= 1.0)) throw std::invalid_argument("exponent p must be >= 1");
  if (!(q >= 1.0)) throw std::invalid_argument("exponent q must be >= 1");
  if (p < N) {
    const double pstar = sobolev_conjugate(p, N);
    if (q > pstar) {
      std::ostringstream os;
      os << "q exceeds p* = pN/(N-p) = " << pstar;
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace fvineq
