// Left-hand/right-hand side ratios of the discrete functional inequalities.
// Each ratio is the inequality's LHS divided by its RHS without the constant,
// so the maximum over a family of samples is an empirical lower bound on the
// best constant. Degenerate samples (a zero function or a seminorm in whose
// kernel the function lies) raise std::domain_error.
#ifndef FVINEQ_RATIOS_HPP
#define FVINEQ_RATIOS_HPP

#include <utility>

#include "fvineq/discrete_function.hpp"
#include "fvineq/exponents.hpp"

namespace fvineq {

enum class InequalityVariant { general, dirichlet };

/// ||u||_{0,m} / (||u||_{1,p}^theta ||u||_{0,q}^{1-theta}); the Dirichlet
/// variant uses the Gamma^0 seminorm |u|_{1,p,Gamma0} in place of the norm.
double gns_ratio(const DiscreteFunction& u, const ExponentSet& exps, InequalityVariant variant,
                 const BoundaryTag* gamma0 = nullptr);

/// ||u||_{0,q} / ||u||_{1,p} (general) or ||u||_{0,q} / |u|_{1,p,Gamma0}.
double sp_ratio(const DiscreteFunction& u, double p, double q, InequalityVariant variant,
                const BoundaryTag* gamma0 = nullptr);

/// ||u||_{0,2}^{1+2/N} / (||u||_{1,2} ||u||_{0,1}^{2/N}); Dirichlet variant
/// replaces ||u||_{1,2} by |u|_{1,2,Gamma0}.
double nash_ratio(const DiscreteFunction& u, InequalityVariant variant,
                  const BoundaryTag* gamma0 = nullptr);

/// ||u - mean(u)||_{0,N/(N-1)} / |u|_{1,1}.
double pw_ratio(const DiscreteFunction& u);

/// Both sides of the L^1 Dirichlet embedding:
/// (||u||_{0,N/(N-1)}, |u|_{1,1,Gamma0}).
std::pair<double, double> dirichlet_l1_embedding_check(const DiscreteFunction& u,
                                                       const BoundaryTag& gamma0);

}  // namespace fvineq

#endif
