#include "fvineq/discrete_function.hpp"

#include <cmath>
#include <stdexcept>

namespace fvineq {

namespace {

// |x|^p with exact fast paths for p = 1, 2.
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

void require_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent p must be >= 1");
}

std::vector<char> gamma0_mask(const Mesh& mesh, const BoundaryTag& gamma0) {
  std::vector<char> in(mesh.n_faces(), 0);
  for (int f : gamma0.faces) {
    if (f < 0 || f >= mesh.n_faces() || !mesh.face_is_exterior(f))
      throw std::invalid_argument("boundary tag '" + gamma0.name + "' lists a non-exterior face");
    in[f] = 1;
  }
  return in;
}

}  // namespace

DiscreteFunction::DiscreteFunction(const Mesh& m, Eigen::VectorXd v) : mesh(&m), values(std::move(v)) {
  if (values.size() != m.n_cells())
    throw std::invalid_argument("discrete function value count does not match cell count");
  if (!values.allFinite()) throw std::invalid_argument("discrete function has non-finite values");
}

double lp_norm(const DiscreteFunction& u, double p) {
  require_p(p);
  const Mesh& mesh = *u.mesh;
  double s = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k) s += mesh.cell_measure(k) * abs_pow(u.values[k], p);
  return root(s, p);
}

double w1p_seminorm(const DiscreteFunction& u, double p) {
  require_p(p);
  const Mesh& mesh = *u.mesh;
  double s = 0.0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (mesh.face_is_exterior(f)) continue;
    const auto [K, L] = mesh.face_cells(f);
    const double w = mesh.face_measure(f) / abs_pow(mesh.face_d_sigma(f), p - 1.0);
    s += w * abs_pow(u.values[L] - u.values[K], p);
  }
  return root(s, p);
}

double w1p_seminorm_dirichlet(const DiscreteFunction& u, double p, const BoundaryTag& gamma0) {
  require_p(p);
  const Mesh& mesh = *u.mesh;
  const auto in_gamma0 = gamma0_mask(mesh, gamma0);
  double s = 0.0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const auto [K, L] = mesh.face_cells(f);
    double jump;
    if (L >= 0)
      jump = u.values[L] - u.values[K];
    else if (in_gamma0[f])
      jump = u.values[K];
    else
      continue;
    s += mesh.face_measure(f) / abs_pow(mesh.face_d_sigma(f), p - 1.0) * abs_pow(jump, p);
  }
  return root(s, p);
}

double w1p_norm(const DiscreteFunction& u, const NormSpec& spec) {
  const double semi =
      spec.gamma0 ? w1p_seminorm_dirichlet(u, spec.p, *spec.gamma0) : w1p_seminorm(u, spec.p);
  return lp_norm(u, spec.p) + semi;
}

double total_variation(const DiscreteFunction& u) {
  const Mesh& mesh = *u.mesh;
  double s = 0.0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (mesh.face_is_exterior(f)) continue;
    const auto [K, L] = mesh.face_cells(f);
    s += mesh.face_measure(f) * std::abs(u.values[L] - u.values[K]);
  }
  return s;
}

double mean_value(const DiscreteFunction& u) {
  const Mesh& mesh = *u.mesh;
  double s = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k) s += mesh.cell_measure(k) * u.values[k];
  return s / mesh.domain_measure();
}

DiscreteFunction sample_scalar_field(const std::function<double(const Vec3&)>& f, const Mesh& mesh) {
  Eigen::VectorXd v(mesh.n_cells());
  for (int k = 0; k < mesh.n_cells(); ++k) v[k] = f(mesh.cell_center(k));
  return DiscreteFunction(mesh, std::move(v));
}

}  // namespace fvineq
