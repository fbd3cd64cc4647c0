// Exponent bookkeeping for the Gagliardo-Nirenberg-Sobolev family:
// theta range 0 <= theta <= p/(p+q(p-1)) and 1/m = (1-theta)/q + theta/p - theta/N.
#ifndef FVINEQ_EXPONENTS_HPP
#define FVINEQ_EXPONENTS_HPP

namespace fvineq {

struct ExponentSet {
  double p = 2.0;
  double q = 1.0;
  double theta = 0.0;
  double m = 1.0;  // derived from (p, q, theta, N)
  int N = 2;
};

/// Upper bound on theta: p / (p + q(p-1)).
double theta_max(double p, double q);

/// Sobolev conjugate p* = pN/(N-p); requires p < N.
double sobolev_conjugate(double p, int N);

/// Validates 1 < p <= N, q >= 1, 0 <= theta <= theta_max and derives m.
ExponentSet admissible_exponents(double p, double q, int N, double theta);

/// Validates the Sobolev-Poincare range: q <= p* when p < N, any q >= 1 otherwise.
void validate_sp_exponents(double p, double q, int N);

}  // namespace fvineq

#endif
