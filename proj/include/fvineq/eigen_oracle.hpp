// Independent oracle for the p = q = 2 full-Dirichlet Sobolev-Poincare
// constant on the structured unit-square family: the exact supremum of
// ||u||_{0,2} / |u|_{1,2,Gamma,M} over all u is 1/sqrt(lambda_min) of the
// generalized eigenproblem B u = lambda M u, where B is the quadratic form of
// the squared Dirichlet seminorm and M the cell-measure mass matrix.
#ifndef FVINEQ_EIGEN_ORACLE_HPP
#define FVINEQ_EIGEN_ORACLE_HPP

#include "fvineq/mesh.hpp"

namespace fvineq {

struct EigenOracleResult {
  int n = 0;                  // cells per axis
  double h = 0.0;             // mesh size (max cell diameter)
  double lambda_min = 0.0;
  double best_constant = 0.0; // 1/sqrt(lambda_min)
  int iterations = 0;         // outer inverse-power iterations
};

/// Inverse power iteration (shift 0, Jacobi-preconditioned CG inner solves)
/// on the structured unit-square mesh with n cells per axis, full Gamma^0.
EigenOracleResult poincare_eigen_oracle(int n, double tol = 1e-10);

/// Closed form for this operator on the uniform grid: 8 n^2 sin^2(pi/(2n)).
double structured_lambda_min_closed_form(int n);

/// Dense generalized eigensolve of the same operator on any admissible mesh
/// with full Dirichlet boundary; cross-check for small meshes.
double dirichlet_lambda_min_dense(const Mesh& mesh);

}  // namespace fvineq

#endif
