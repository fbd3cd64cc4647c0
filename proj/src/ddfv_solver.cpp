#include "fvineq/ddfv_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace fvineq {

SolveResult solve_anisotropic_laplace(const DDFVMesh& mesh,
                                      const std::function<Eigen::Matrix2d(const Vec2&)>& tensor,
                                      const std::function<double(const Vec2&)>& source,
                                      const BoundaryTag& gamma0, const SolveOptions& options) {
  const int np = mesh.n_primal();
  const int nd = mesh.n_dual();
  const int ndof = np + nd;
  const Mesh& pm = mesh.primal();

  // Dirichlet mask: degenerate cells in Gamma^0 and dual cells touching it.
  std::vector<char> masked(ndof, 0);
  for (int f : gamma0.faces) {
    if (f < 0 || f >= pm.n_faces() || !pm.face_is_exterior(f))
      throw std::invalid_argument("boundary tag '" + gamma0.name + "' lists a non-exterior face");
    masked[mesh.face_boundary_cell(f)] = 1;
    for (int v : pm.face_vertices(f)) masked[np + v] = 1;
  }

  // Per-diamond data: weighted tensor and the four gradient coefficients.
  const int nD = mesh.n_diamonds();
  std::vector<Eigen::Matrix2d> weighted(nD);
  std::vector<std::array<int, 4>> dofs(nD);
  std::vector<std::array<Vec2, 4>> coeff(nD);
  for (int d = 0; d < nD; ++d) {
    const Diamond& dia = mesh.diamond(d);
    const Vec2 bary = 0.25 * (mesh.primal_center(dia.K) + mesh.primal_center(dia.L) +
                              mesh.dual_center(dia.Kstar) + mesh.dual_center(dia.Lstar));
    const Eigen::Matrix2d A = tensor(bary);
    if ((A - A.transpose()).norm() > 1e-12 * A.norm() || !(A.trace() > 0.0) || !(A.determinant() > 0.0))
      throw std::invalid_argument("diffusion tensor is not symmetric positive definite");
    weighted[d] = dia.measure * A;
    const Vec2 cK = -dia.n_sigma_K / (dia.sin_alpha * dia.m_sigma_star);
    const Vec2 cKstar = -dia.n_sigma_star_K / (dia.sin_alpha * dia.m_sigma);
    dofs[d] = {dia.K, dia.L, np + dia.Kstar, np + dia.Lstar};
    coeff[d] = {cK, -cK, cKstar, -cKstar};
  }

  auto matvec = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.setZero();
    for (int d = 0; d < nD; ++d) {
      Vec2 g = Vec2::Zero();
      for (int i = 0; i < 4; ++i)
        if (!masked[dofs[d][i]]) g += coeff[d][i] * x[dofs[d][i]];
      const Vec2 flux = weighted[d] * g;
      for (int i = 0; i < 4; ++i)
        if (!masked[dofs[d][i]]) y[dofs[d][i]] += flux.dot(coeff[d][i]);
    }
  };

  // Right-hand side: half-weighted source samples; Jacobi diagonal.
  Eigen::VectorXd b = Eigen::VectorXd::Zero(ndof);
  for (int k = 0; k < mesh.n_primal_interior(); ++k)
    b[k] = 0.5 * mesh.primal_measure(k) * source(mesh.primal_center(k));
  for (int v = 0; v < nd; ++v) b[np + v] = 0.5 * mesh.dual_measure(v) * source(mesh.dual_center(v));
  for (int i = 0; i < ndof; ++i)
    if (masked[i]) b[i] = 0.0;

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(ndof);
  for (int d = 0; d < nD; ++d)
    for (int i = 0; i < 4; ++i)
      if (!masked[dofs[d][i]]) diag[dofs[d][i]] += coeff[d][i].dot(weighted[d] * coeff[d][i]);
  for (int i = 0; i < ndof; ++i)
    if (masked[i] || diag[i] <= 0.0) diag[i] = 1.0;

  // Preconditioned conjugate gradient on A x = b.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ndof);
  const double bnorm = b.norm();
  SolveResult result{DDFVFunction(mesh, Eigen::VectorXd::Zero(np), Eigen::VectorXd::Zero(nd)), 0, 0.0};
  if (bnorm == 0.0) return result;

  Eigen::VectorXd r = b;
  Eigen::VectorXd z = r.cwiseQuotient(diag);
  Eigen::VectorXd p = z;
  Eigen::VectorXd Ap(ndof);
  double rz = r.dot(z);
  int it = 0;
  while (true) {
    if (r.norm() <= options.tol * bnorm) break;
    if (it >= options.max_iterations)
      throw std::runtime_error("CG did not converge within " + std::to_string(options.max_iterations) +
                               " iterations");
    matvec(p, Ap);
    const double alpha = rz / p.dot(Ap);
    x += alpha * p;
    r -= alpha * Ap;
    z = r.cwiseQuotient(diag);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
    ++it;
  }

  result.u = DDFVFunction(mesh, x.head(np), x.tail(nd));
  result.iterations = it;
  result.relative_residual = r.norm() / bnorm;
  return result;
}

}  // namespace fvineq
