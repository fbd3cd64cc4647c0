// Demo DDFV solver for -div(A grad u) = f with homogeneous Dirichlet values
// on Gamma^0. The discrete divergence is the adjoint of the diamond gradient
// under the half-weighted cell inner products, so the system is symmetric
// positive definite and solved matrix-free by preconditioned CG.
#ifndef FVINEQ_DDFV_SOLVER_HPP
#define FVINEQ_DDFV_SOLVER_HPP

#include <functional>

#include "fvineq/ddfv.hpp"

namespace fvineq {

struct SolveOptions {
  double tol = 1e-10;       // relative residual
  int max_iterations = 50000;
};

struct SolveResult {
  DDFVFunction u;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// A must be SPD on every diamond (evaluated at the diamond barycenter).
/// Throws std::invalid_argument on a non-SPD tensor and std::runtime_error if
/// CG does not reach the tolerance within the iteration cap.
SolveResult solve_anisotropic_laplace(const DDFVMesh& mesh,
                                      const std::function<Eigen::Matrix2d(const Vec2&)>& tensor,
                                      const std::function<double(const Vec2&)>& source,
                                      const BoundaryTag& gamma0, const SolveOptions& options = {});

}  // namespace fvineq

#endif
