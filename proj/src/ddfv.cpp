#include "fvineq/ddfv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fvineq/mesh_io.hpp"
#include "fvineq/pnorm.hpp"

namespace fvineq {

using detail::abs_pow;
using detail::root;

namespace {

void require_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent p must be >= 1");
}

std::vector<char> gamma0_face_mask(const Mesh& primal, const BoundaryTag& gamma0) {
  std::vector<char> in(primal.n_faces(), 0);
  for (int f : gamma0.faces) {
    if (f < 0 || f >= primal.n_faces() || !primal.face_is_exterior(f))
      throw std::invalid_argument("boundary tag '" + gamma0.name + "' lists a non-exterior face");
    in[f] = 1;
  }
  return in;
}

}  // namespace

DDFVMesh build_ddfv(const Mesh& primal, CenterPolicy policy) {
  if (primal.dim() != 2) throw std::invalid_argument("build_ddfv: primal mesh must be 2-D");

  DDFVMesh m;
  m.primal_ = primal;
  const Mesh& pm = m.primal_;
  const int nc = pm.n_cells();
  const int nv = pm.n_nodes();

  // Primal centers per policy.
  m.primal_center_.resize(nc);
  for (int k = 0; k < nc; ++k) {
    const auto verts = pm.cell_vertices(k);
    switch (policy) {
      case CenterPolicy::stored:
        m.primal_center_[k] = pm.cell_center(k).head<2>();
        break;
      case CenterPolicy::circumcenter:
        if (verts.size() != 3)
          throw std::invalid_argument("build_ddfv: circumcenter policy requires triangle cells");
        m.primal_center_[k] = circumcenter(pm.node(verts[0]).head<2>(), pm.node(verts[1]).head<2>(),
                                           pm.node(verts[2]).head<2>());
        break;
      case CenterPolicy::centroid: {
        std::vector<Vec2> loop;
        loop.reserve(verts.size());
        for (int v : verts) loop.push_back(pm.node(v).head<2>());
        m.primal_center_[k] = polygon_centroid(loop);
        break;
      }
    }
  }

  // Star-shapedness of every primal cell with respect to its center.
  for (int k = 0; k < nc; ++k) {
    const auto verts = pm.cell_vertices(k);
    const Vec2 c = m.primal_center_[k];
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Vec2 a = pm.node(verts[i]).head<2>();
      const Vec2 b = pm.node(verts[(i + 1) % verts.size()]).head<2>();
      if (cross2(a - c, b - c) <= 0.0)
        throw std::invalid_argument("build_ddfv: cell " + std::to_string(k) +
                                    " is not star-shaped w.r.t. its center");
    }
  }

  // Degenerate boundary cells, one per boundary face, centered at midpoints.
  m.face_to_boundary_cell_.assign(pm.n_faces(), -1);
  for (int f : pm.boundary_faces()) {
    m.face_to_boundary_cell_[f] = nc + static_cast<int>(m.boundary_cell_face_.size());
    m.boundary_cell_face_.push_back(f);
    m.primal_center_.push_back(pm.face_center(f).head<2>());
  }

  // Dual cells around vertices.
  std::vector<std::vector<int>> vert_cells(nv), vert_bfaces(nv);
  for (int k = 0; k < nc; ++k)
    for (int v : pm.cell_vertices(k)) vert_cells[v].push_back(k);
  for (int f : pm.boundary_faces())
    for (int v : pm.face_vertices(f)) vert_bfaces[v].push_back(f);

  m.dual_center_.resize(nv);
  m.dual_measure_.assign(nv, 0.0);
  m.dual_boundary_.assign(nv, 0);
  m.dual_polygon_.resize(nv);
  for (int v = 0; v < nv; ++v) {
    const Vec2 xv = pm.node(v).head<2>();
    m.dual_center_[v] = xv;
    if (vert_cells[v].empty()) throw std::invalid_argument("build_ddfv: isolated vertex");
    const bool boundary = !vert_bfaces[v].empty();
    m.dual_boundary_[v] = boundary ? 1 : 0;
    if (boundary && vert_bfaces[v].size() != 2)
      throw std::invalid_argument("build_ddfv: boundary vertex " + std::to_string(v) +
                                  " has " + std::to_string(vert_bfaces[v].size()) + " boundary edges");

    // Surrounding points (cell centers, plus boundary edge midpoints), in
    // angular order around the vertex.
    std::vector<std::pair<double, Vec2>> around;
    for (int k : vert_cells[v]) {
      const Vec2 d = m.primal_center_[k] - xv;
      around.emplace_back(std::atan2(d.y(), d.x()), m.primal_center_[k]);
    }
    for (int f : vert_bfaces[v]) {
      const Vec2 p = pm.face_center(f).head<2>();
      const Vec2 d = p - xv;
      around.emplace_back(std::atan2(d.y(), d.x()), p);
    }
    std::sort(around.begin(), around.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Vec2> loop;
    if (!boundary) {
      for (const auto& [ang, p] : around) loop.push_back(p);
    } else {
      // Cut the cyclic order at the widest angular gap (the exterior sector)
      // and put the vertex itself at the seam.
      const std::size_t n = around.size();
      std::size_t cut = 0;
      double widest = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double next = around[(i + 1) % n].first + (i + 1 == n ? 2.0 * std::numbers::pi : 0.0);
        const double gap = next - around[i].first;
        if (gap > widest) {
          widest = gap;
          cut = (i + 1) % n;
        }
      }
      loop.push_back(xv);
      for (std::size_t i = 0; i < n; ++i) loop.push_back(around[(cut + i) % n].second);
    }
    double area = polygon_signed_area(loop);
    if (area < 0.0) {
      std::reverse(loop.begin(), loop.end());
      area = -area;
    }
    if (!(area > 0.0))
      throw std::invalid_argument("build_ddfv: degenerate dual cell at vertex " + std::to_string(v));
    m.dual_measure_[v] = area;
    m.dual_polygon_[v] = std::move(loop);
  }

  // One diamond per primal edge.
  m.primal_cell_diamonds_.assign(nc, {});
  m.dual_cell_diamonds_.assign(nv, {});
  for (int f = 0; f < pm.n_faces(); ++f) {
    Diamond d;
    const auto fv = pm.face_vertices(f);
    int A = fv[0], B = fv[1];
    d.K = pm.face_cells(f)[0];
    d.boundary = pm.face_is_exterior(f);
    d.L = d.boundary ? m.face_to_boundary_cell_[f] : pm.face_cells(f)[1];

    const Vec2 xK = m.primal_center_[d.K];
    const Vec2 xL = m.primal_center_[d.L];
    Vec2 xA = pm.node(A).head<2>(), xB = pm.node(B).head<2>();
    if (cross2(xB - xA, xL - xK) < 0.0) {
      std::swap(A, B);
      std::swap(xA, xB);
    }
    d.Kstar = A;
    d.Lstar = B;
    d.m_sigma = (xB - xA).norm();
    d.m_sigma_star = (xL - xK).norm();
    if (!(d.m_sigma_star > 0.0))
      throw std::invalid_argument("build_ddfv: coincident centers across face " + std::to_string(f));
    d.tau_primal = (xB - xA) / d.m_sigma;
    d.tau_dual = (xL - xK) / d.m_sigma_star;
    d.sin_alpha = cross2(d.tau_primal, d.tau_dual);
    if (!(d.sin_alpha > 1e-12))
      throw std::invalid_argument("build_ddfv: flat diamond at primal face " + std::to_string(f));
    d.n_sigma_K = rot90(d.tau_primal);
    d.n_sigma_star_K = -rot90(d.tau_dual);
    d.measure = 0.5 * std::abs(cross2(xA - xK, xB - xK)) + 0.5 * std::abs(cross2(xB - xL, xA - xL));
    if (d.boundary) {
      d.d_Kstar_L = (xA - xL).norm();
      d.d_Lstar_L = (xB - xL).norm();
    }

    const int id = static_cast<int>(m.diamonds_.size());
    m.primal_cell_diamonds_[d.K].push_back(id);
    if (!d.boundary) m.primal_cell_diamonds_[d.L].push_back(id);
    m.dual_cell_diamonds_[d.Kstar].push_back(id);
    m.dual_cell_diamonds_[d.Lstar].push_back(id);
    m.diamonds_.push_back(d);
  }
  return m;
}

DDFVQuality ddfv_quality(const DDFVMesh& mesh) {
  DDFVQuality q;
  q.sin_alpha = 1.0;
  for (const Diamond& d : mesh.diamonds()) q.sin_alpha = std::min(q.sin_alpha, std::abs(d.sin_alpha));
  q.zeta = std::numeric_limits<double>::infinity();
  for (int k = 0; k < mesh.n_primal_interior(); ++k) {
    double s = 0.0;
    for (int d : mesh.primal_cell_diamonds(k))
      s += mesh.diamond(d).m_sigma * mesh.diamond(d).m_sigma_star;
    q.zeta = std::min(q.zeta, mesh.primal_measure(k) / s);
  }
  for (int v = 0; v < mesh.n_dual(); ++v) {
    double s = 0.0;
    for (int d : mesh.dual_cell_diamonds(v))
      s += mesh.diamond(d).m_sigma * mesh.diamond(d).m_sigma_star;
    q.zeta = std::min(q.zeta, mesh.dual_measure(v) / s);
  }
  return q;
}

DDFVFunction::DDFVFunction(const DDFVMesh& m, Eigen::VectorXd primal_values, Eigen::VectorXd dual_values)
    : mesh(&m), primal(std::move(primal_values)), dual(std::move(dual_values)) {
  if (primal.size() != m.n_primal() || dual.size() != m.n_dual())
    throw std::invalid_argument("DDFV function size does not match the triple mesh");
  if (!primal.allFinite() || !dual.allFinite())
    throw std::invalid_argument("DDFV function has non-finite values");
}

DiamondGradient discrete_gradient(const DDFVFunction& u) {
  const DDFVMesh& m = *u.mesh;
  DiamondGradient g{&m, {}};
  g.values.reserve(m.n_diamonds());
  for (const Diamond& d : m.diamonds()) {
    const Vec2 v = ((u.primal[d.L] - u.primal[d.K]) / d.m_sigma_star * d.n_sigma_K +
                    (u.dual[d.Lstar] - u.dual[d.Kstar]) / d.m_sigma * d.n_sigma_star_K) /
                   d.sin_alpha;
    g.values.push_back(v);
  }
  return g;
}

double ddfv_lp_norm(const DDFVFunction& u, double p) {
  require_p(p);
  const DDFVMesh& m = *u.mesh;
  double s = 0.0;
  for (int k = 0; k < m.n_primal_interior(); ++k) s += 0.5 * m.primal_measure(k) * abs_pow(u.primal[k], p);
  for (int v = 0; v < m.n_dual(); ++v) s += 0.5 * m.dual_measure(v) * abs_pow(u.dual[v], p);
  return root(s, p);
}

double ddfv_w1p_seminorm(const DDFVFunction& u, double p) {
  require_p(p);
  const DDFVMesh& m = *u.mesh;
  const DiamondGradient g = discrete_gradient(u);
  double s = 0.0;
  for (int d = 0; d < m.n_diamonds(); ++d) s += m.diamond(d).measure * abs_pow(g.values[d].norm(), p);
  return root(s, p);
}

double ddfv_w1p_norm(const DDFVFunction& u, double p) {
  return ddfv_lp_norm(u, p) + ddfv_w1p_seminorm(u, p);
}

double ddfv_mean_primal(const DDFVFunction& u) {
  const DDFVMesh& m = *u.mesh;
  double s = 0.0;
  for (int k = 0; k < m.n_primal_interior(); ++k) s += m.primal_measure(k) * u.primal[k];
  return s / m.domain_measure();
}

double ddfv_mean_dual(const DDFVFunction& u) {
  const DDFVMesh& m = *u.mesh;
  double s = 0.0;
  for (int v = 0; v < m.n_dual(); ++v) s += m.dual_measure(v) * u.dual[v];
  return s / m.domain_measure();
}

DDFVFunction ddfv_project_zero_mean(const DDFVFunction& u) {
  return DDFVFunction(*u.mesh, u.primal.array() - ddfv_mean_primal(u),
                      u.dual.array() - ddfv_mean_dual(u));
}

DDFVFunction apply_dirichlet_mask(const DDFVFunction& u, const BoundaryTag& gamma0) {
  const DDFVMesh& m = *u.mesh;
  const auto in = gamma0_face_mask(m.primal(), gamma0);
  Eigen::VectorXd primal = u.primal, dual = u.dual;
  for (int f : gamma0.faces) {
    primal[m.face_boundary_cell(f)] = 0.0;
    for (int v : m.primal().face_vertices(f)) dual[v] = 0.0;
  }
  return DDFVFunction(m, std::move(primal), std::move(dual));
}

bool ddfv_mask_applied(const DDFVFunction& u, const BoundaryTag& gamma0) {
  const DDFVMesh& m = *u.mesh;
  for (int f : gamma0.faces) {
    if (u.primal[m.face_boundary_cell(f)] != 0.0) return false;
    for (int v : m.primal().face_vertices(f))
      if (u.dual[v] != 0.0) return false;
  }
  return true;
}

namespace {

void require_nonzero(const DDFVFunction& u) {
  if (u.primal.isZero(0.0) && u.dual.isZero(0.0))
    throw std::domain_error("ratio undefined for the zero function");
}

}  // namespace

double ddfv_gns_ratio(const DDFVFunction& u, const ExponentSet& exps, InequalityVariant variant,
                      const BoundaryTag* gamma0) {
  if (exps.N != 2) throw std::invalid_argument("DDFV inequalities are two-dimensional");
  if (!(exps.p <= 2.0)) throw std::invalid_argument("DDFV GNS requires 1 < p <= 2");
  require_nonzero(u);
  double grad_part;
  if (variant == InequalityVariant::general) {
    grad_part = ddfv_w1p_norm(u, exps.p);
  } else {
    if (gamma0 == nullptr || gamma0->empty())
      throw std::invalid_argument("Dirichlet variant requires a nonempty Gamma^0 tag");
    if (!ddfv_mask_applied(u, *gamma0))
      throw std::invalid_argument("Dirichlet mask not applied to the sample");
    grad_part = ddfv_w1p_seminorm(u, exps.p);
    if (grad_part == 0.0 && exps.theta > 0.0)
      throw std::domain_error("nonzero function with vanishing seminorm");
  }
  const double den = std::pow(grad_part, exps.theta) * std::pow(ddfv_lp_norm(u, exps.q), 1.0 - exps.theta);
  if (!(den > 0.0)) throw std::domain_error("vanishing denominator in DDFV GNS ratio");
  return ddfv_lp_norm(u, exps.m) / den;
}

double ddfv_sp_ratio(const DDFVFunction& u, double p, double q) {
  validate_sp_exponents(p, q, 2);
  require_nonzero(u);
  const double den = ddfv_w1p_norm(u, p);
  if (!(den > 0.0)) throw std::domain_error("vanishing denominator in DDFV Sobolev-Poincare ratio");
  return ddfv_lp_norm(u, q) / den;
}

double ddfv_pw_ratio(const DDFVFunction& u) {
  require_nonzero(u);
  const double scale = std::max(u.primal.cwiseAbs().maxCoeff(), u.dual.cwiseAbs().maxCoeff());
  const double tol = 1e-10 * u.mesh->domain_measure() * scale;
  if (std::abs(ddfv_mean_primal(u) * u.mesh->domain_measure()) > tol ||
      std::abs(ddfv_mean_dual(u) * u.mesh->domain_measure()) > tol)
    throw std::invalid_argument("double zero-mean condition violated");
  const double den = ddfv_w1p_seminorm(u, 2.0);
  if (!(den > 0.0)) throw std::domain_error("vanishing DDFV seminorm");
  return ddfv_lp_norm(u, 2.0) / den;
}

DDFVFunction ddfv_draw_sample(const DDFVMesh& mesh, const SamplerSpec& spec, std::uint64_t seed,
                              int index) {
  if (spec.mix.empty()) throw std::invalid_argument("empty sampler mix");
  const SampleKind kind = spec.mix[static_cast<std::size_t>(index) % spec.mix.size()];
  SplitMix64 rng(hash_combine(seed, static_cast<std::uint64_t>(index)));
  Eigen::VectorXd primal = Eigen::VectorXd::Zero(mesh.n_primal());
  Eigen::VectorXd dual = Eigen::VectorXd::Zero(mesh.n_dual());

  switch (kind) {
    case SampleKind::iid_uniform:
      for (int k = 0; k < mesh.n_primal(); ++k) primal[k] = rng.uniform(-1.0, 1.0);
      for (int v = 0; v < mesh.n_dual(); ++v) dual[v] = rng.uniform(-1.0, 1.0);
      break;
    case SampleKind::smooth: {
      const TrigField f = TrigField::draw(rng, 2);
      for (int k = 0; k < mesh.n_primal(); ++k)
        primal[k] = f(Vec3(mesh.primal_center(k).x(), mesh.primal_center(k).y(), 0.0));
      for (int v = 0; v < mesh.n_dual(); ++v)
        dual[v] = f(Vec3(mesh.dual_center(v).x(), mesh.dual_center(v).y(), 0.0));
      break;
    }
    case SampleKind::indicator:
      if (rng.below(2) == 0)
        primal[static_cast<int>(rng.below(static_cast<std::uint64_t>(mesh.n_primal_interior())))] = 1.0;
      else
        dual[static_cast<int>(rng.below(static_cast<std::uint64_t>(mesh.n_dual())))] = 1.0;
      break;
    case SampleKind::checkerboard: {
      double mean_diam = 0.0;
      for (int k = 0; k < mesh.n_primal_interior(); ++k) mean_diam += mesh.primal().cell_diameter(k);
      mean_diam /= mesh.n_primal_interior();
      const double w = mean_diam / std::sqrt(2.0);
      for (int k = 0; k < mesh.n_primal(); ++k) {
        const Vec2& c = mesh.primal_center(k);
        primal[k] = checkerboard_value(Vec3(c.x(), c.y(), 0.0), 2, w);
      }
      for (int v = 0; v < mesh.n_dual(); ++v) {
        const Vec2 c = mesh.dual_center(v) + Vec2(0.5 * w, 0.5 * w);
        dual[v] = checkerboard_value(Vec3(c.x(), c.y(), 0.0), 2, w);
      }
      break;
    }
    case SampleKind::constant: {
      const double c = rng.uniform(0.5, 2.0);
      primal.setConstant(c);
      dual.setConstant(c);
      break;
    }
  }
  return DDFVFunction(mesh, std::move(primal), std::move(dual));
}

DDFVFunction ddfv_sample_field(const DDFVMesh& mesh, const std::function<double(const Vec2&)>& f) {
  Eigen::VectorXd primal(mesh.n_primal()), dual(mesh.n_dual());
  for (int k = 0; k < mesh.n_primal(); ++k) primal[k] = f(mesh.primal_center(k));
  for (int v = 0; v < mesh.n_dual(); ++v) dual[v] = f(mesh.dual_center(v));
  return DDFVFunction(mesh, std::move(primal), std::move(dual));
}

void save_ddfv(std::ostream& os, const DDFVMesh& mesh) {
  std::ostringstream primal;
  save_mesh(primal, mesh.primal());
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(primal.str());

  nlohmann::json duals = nlohmann::json::array();
  for (int v = 0; v < mesh.n_dual(); ++v) {
    nlohmann::json d;
    d["center"] = {mesh.dual_center(v).x(), mesh.dual_center(v).y()};
    nlohmann::json loop = nlohmann::json::array();
    for (const Vec2& p : mesh.dual_polygon(v)) loop.push_back({p.x(), p.y()});
    d["verts"] = std::move(loop);
    duals.push_back(std::move(d));
  }
  j["dual_cells"] = std::move(duals);

  nlohmann::json diamonds = nlohmann::json::array();
  for (const Diamond& d : mesh.diamonds())
    diamonds.push_back({{"K", d.K}, {"L", d.L}, {"Kstar", d.Kstar}, {"Lstar", d.Lstar}});
  j["diamonds"] = std::move(diamonds);
  os << j.dump(1, '\t') << '\n';
}

void save_ddfv(const std::string& path, const DDFVMesh& mesh) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_ddfv(os, mesh);
}

DDFVMesh load_ddfv(std::istream& is, CenterPolicy policy) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("ddfv json parse error: ") + e.what());
  }
  const std::size_t n_diamonds = j.contains("diamonds") ? j["diamonds"].size() : 0;
  j.erase("dual_cells");
  j.erase("diamonds");
  std::istringstream primal(j.dump());
  DDFVMesh mesh = build_ddfv(load_mesh(primal), policy);
  if (n_diamonds != 0 && static_cast<int>(n_diamonds) != mesh.n_diamonds())
    throw std::runtime_error("ddfv json: diamond count does not match the rebuilt triple mesh");
  return mesh;
}

DDFVMesh load_ddfv(const std::string& path, CenterPolicy policy) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  return load_ddfv(is, policy);
}

void save_ddfv_function(std::ostream& os, const DDFVFunction& u) {
  char buf[48];
  for (int k = 0; k < u.primal.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", u.primal[k]);
    os << "primal," << k << ',' << buf << '\n';
  }
  for (int v = 0; v < u.dual.size(); ++v) {
    std::snprintf(buf, sizeof(buf), "%.17g", u.dual[v]);
    os << "dual," << v << ',' << buf << '\n';
  }
}

DDFVFunction load_ddfv_function(std::istream& is, const DDFVMesh& mesh) {
  Eigen::VectorXd primal = Eigen::VectorXd::Zero(mesh.n_primal());
  Eigen::VectorXd dual = Eigen::VectorXd::Zero(mesh.n_dual());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind, id, value;
    if (!std::getline(ls, kind, ',') || !std::getline(ls, id, ',') || !std::getline(ls, value))
      throw std::runtime_error("ddfv function csv: malformed line '" + line + "'");
    const int i = std::stoi(id);
    const double x = std::stod(value);
    if (kind == "primal" && i >= 0 && i < mesh.n_primal()) primal[i] = x;
    else if (kind == "dual" && i >= 0 && i < mesh.n_dual()) dual[i] = x;
    else throw std::runtime_error("ddfv function csv: bad entry '" + line + "'");
  }
  return DDFVFunction(mesh, std::move(primal), std::move(dual));
}

}  // namespace fvineq
