#include "fvineq/eigen_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fvineq {

namespace {

// y = B x for the quadratic form sum_int (m/d)(u_L-u_K)^2 + sum_bnd (m/d) u_K^2.
void seminorm_matvec(const Mesh& mesh, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.setZero();
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const double w = mesh.face_measure(f) / mesh.face_d_sigma(f);
    const auto [K, L] = mesh.face_cells(f);
    if (L >= 0) {
      const double jump = x[K] - x[L];
      y[K] += w * jump;
      y[L] -= w * jump;
    } else {
      y[K] += w * x[K];
    }
  }
}

Eigen::VectorXd seminorm_diagonal(const Mesh& mesh) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(mesh.n_cells());
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const double w = mesh.face_measure(f) / mesh.face_d_sigma(f);
    const auto [K, L] = mesh.face_cells(f);
    diag[K] += w;
    if (L >= 0) diag[L] += w;
  }
  return diag;
}

// Jacobi-preconditioned CG for B z = rhs.
void solve_cg(const Mesh& mesh, const Eigen::VectorXd& diag, const Eigen::VectorXd& rhs,
              Eigen::VectorXd& z, double tol) {
  const int n = mesh.n_cells();
  z.setZero();
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd w = r.cwiseQuotient(diag);
  Eigen::VectorXd p = w;
  Eigen::VectorXd Ap(n);
  double rw = r.dot(w);
  const double target = tol * rhs.norm();
  for (int it = 0; it < 100 * n + 100; ++it) {
    if (r.norm() <= target) return;
    seminorm_matvec(mesh, p, Ap);
    const double alpha = rw / p.dot(Ap);
    z += alpha * p;
    r -= alpha * Ap;
    w = r.cwiseQuotient(diag);
    const double rw_new = r.dot(w);
    p = w + (rw_new / rw) * p;
    rw = rw_new;
  }
  throw std::runtime_error("eigen oracle: inner CG did not converge");
}

}  // namespace

double structured_lambda_min_closed_form(int n) {
  const double s = std::sin(std::numbers::pi / (2.0 * n));
  return 8.0 * n * n * s * s;
}

EigenOracleResult poincare_eigen_oracle(int n, double tol) {
  if (n < 1) throw std::invalid_argument("eigen oracle: n must be >= 1");
  const Mesh mesh = structured_mesh(2, n, Vec3::Zero(), Vec3(1, 1, 0));
  const int nc = mesh.n_cells();

  Eigen::VectorXd mass(nc);
  for (int k = 0; k < nc; ++k) mass[k] = mesh.cell_measure(k);
  const Eigen::VectorXd diag = seminorm_diagonal(mesh);

  // Inverse power iteration on B u = lambda M u.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(nc);
  x /= std::sqrt(x.dot(mass.cwiseProduct(x)));
  Eigen::VectorXd z(nc), rhs(nc);
  double lambda = 0.0;
  int it = 0;
  const int max_outer = 10000;
  for (; it < max_outer; ++it) {
    rhs = mass.cwiseProduct(x);
    solve_cg(mesh, diag, rhs, z, 1e-13);
    // B z = M x, so z.(M x) = z.(B z): the Rayleigh quotient of z.
    const double new_lambda = z.dot(rhs) / z.dot(mass.cwiseProduct(z));
    const bool done = it > 0 && std::abs(new_lambda - lambda) <= tol * new_lambda;
    lambda = new_lambda;
    x = z / std::sqrt(z.dot(mass.cwiseProduct(z)));
    if (done) break;
  }
  if (it == max_outer) throw std::runtime_error("eigen oracle: inverse power iteration did not converge");

  EigenOracleResult result;
  result.n = n;
  result.h = quality(mesh).h;
  result.lambda_min = lambda;
  result.best_constant = 1.0 / std::sqrt(lambda);
  result.iterations = it + 1;
  return result;
}

double dirichlet_lambda_min_dense(const Mesh& mesh) {
  const int nc = mesh.n_cells();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nc, nc);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nc, nc);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const double w = mesh.face_measure(f) / mesh.face_d_sigma(f);
    const auto [K, L] = mesh.face_cells(f);
    if (L >= 0) {
      B(K, K) += w;
      B(L, L) += w;
      B(K, L) -= w;
      B(L, K) -= w;
    } else {
      B(K, K) += w;
    }
  }
  for (int k = 0; k < nc; ++k) M(k, k) = mesh.cell_measure(k);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(B, M);
  return solver.eigenvalues().minCoeff();
}

}  // namespace fvineq
