#include "fvineq/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fvineq/rng.hpp"

namespace fvineq {

namespace {

std::string entity_name(const char* kind, int id) {
  std::ostringstream os;
  os << kind << ' ' << id;
  return os.str();
}

Vec3 face_plane_normal(int dim, std::span<const Vec3> nodes, std::span<const int> verts) {
  if (dim == 2) {
    const Vec3 t = nodes[verts[1]] - nodes[verts[0]];
    return Vec3(-t.y(), t.x(), 0.0);  // not normalized
  }
  // Newell normal; |n| = 2 * area for a planar polygon.
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Vec3& p = nodes[verts[i]];
    const Vec3& q = nodes[verts[(i + 1) % verts.size()]];
    n += p.cross(q);
  }
  return n;
}

}  // namespace

Mesh Mesh::from_data(int dim, std::vector<Vec3> nodes, std::vector<std::vector<int>> cell_verts,
                     std::vector<Vec3> cell_centers, std::vector<std::vector<int>> face_verts,
                     std::vector<std::array<int, 2>> face_cells,
                     std::map<std::string, std::vector<int>> tags, double domain_measure) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("mesh dimension must be 2 or 3");
  if (cell_verts.size() != cell_centers.size())
    throw std::invalid_argument("cell center count does not match cell count");
  const int nv = static_cast<int>(nodes.size());
  for (const Vec3& p : nodes)
    if (!p.allFinite()) throw std::invalid_argument("non-finite node coordinates");
  for (const Vec3& c : cell_centers)
    if (!c.allFinite()) throw std::invalid_argument("non-finite cell center");
  auto check_ids = [&](const std::vector<int>& ids, std::size_t min_count, const char* what) {
    if (ids.size() < min_count) throw std::invalid_argument(std::string(what) + ": too few vertices");
    for (int v : ids)
      if (v < 0 || v >= nv) throw std::invalid_argument(std::string(what) + ": vertex id out of range");
  };
  for (const auto& cv : cell_verts) check_ids(cv, dim == 2 ? 3u : 4u, "cell");
  for (const auto& fv : face_verts) check_ids(fv, dim == 2 ? 2u : 3u, "face");
  const int nc = static_cast<int>(cell_verts.size());
  for (const auto& fc : face_cells) {
    if (fc[0] < 0 || fc[0] >= nc || fc[1] >= nc)
      throw std::invalid_argument("face incident cell id out of range");
    if (fc[1] == fc[0]) throw std::invalid_argument("face incident to the same cell twice");
  }
  if (face_cells.size() != face_verts.size())
    throw std::invalid_argument("face incidence count does not match face count");

  Mesh m;
  m.dim_ = dim;
  m.nodes_ = std::move(nodes);
  m.cell_verts_ = std::move(cell_verts);
  m.cell_center_ = std::move(cell_centers);
  m.face_verts_ = std::move(face_verts);
  m.face_cells_ = std::move(face_cells);
  m.tags_ = std::move(tags);

  // Normalize 2-D cell loops to CCW so the shoelace measure is positive.
  if (dim == 2) {
    for (auto& cv : m.cell_verts_) {
      std::vector<Vec2> loop;
      loop.reserve(cv.size());
      for (int v : cv) loop.push_back(m.nodes_[v].head<2>());
      if (polygon_signed_area(loop) < 0.0) std::reverse(cv.begin(), cv.end());
    }
  }
  m.compute_geometry();
  m.domain_measure_ = domain_measure;
  if (domain_measure < 0.0) {
    double s = 0.0;
    for (double v : m.cell_measure_) s += v;
    m.domain_measure_ = s;
  }
  return m;
}

void Mesh::compute_geometry() {
  const int nc = n_cells();
  const int nf = n_faces();

  cell_faces_.assign(nc, {});
  for (int f = 0; f < nf; ++f) {
    cell_faces_[face_cells_[f][0]].push_back(f);
    if (face_cells_[f][1] >= 0) cell_faces_[face_cells_[f][1]].push_back(f);
  }

  // Cell measures and diameters, independent of centers and faces.
  cell_measure_.resize(nc);
  cell_diam_.resize(nc);
  std::vector<Vec3> pts;
  for (int k = 0; k < nc; ++k) {
    pts.clear();
    for (int v : cell_verts_[k]) pts.push_back(nodes_[v]);
    cell_diam_[k] = diameter(pts);
    if (dim_ == 2) {
      std::vector<Vec2> loop;
      loop.reserve(pts.size());
      for (const Vec3& p : pts) loop.push_back(p.head<2>());
      cell_measure_[k] = polygon_signed_area(loop);
    }
  }

  face_measure_.resize(nf);
  face_center_.resize(nf);
  face_normal_.resize(nf);
  face_d_sigma_.resize(nf);
  face_dK_.resize(nf);
  face_dL_.resize(nf);
  boundary_faces_.clear();

  for (int f = 0; f < nf; ++f) {
    const auto& verts = face_verts_[f];
    Vec3 n = face_plane_normal(dim_, nodes_, verts);
    const double nn = n.norm();
    face_measure_[f] = (dim_ == 2) ? (nodes_[verts[1]] - nodes_[verts[0]]).norm() : 0.5 * nn;
    if (!(face_measure_[f] > 0.0) || !(nn > 0.0))
      throw std::invalid_argument("degenerate face " + std::to_string(f));
    n /= nn;
    Vec3 c = Vec3::Zero();
    for (int v : verts) c += nodes_[v];
    c /= static_cast<double>(verts.size());
    face_center_[f] = c;

    const int K = face_cells_[f][0];
    const int L = face_cells_[f][1];
    // Orient the normal from K across sigma.
    const Vec3 toward = (L >= 0) ? (cell_center_[L] - cell_center_[K]) : (c - cell_center_[K]);
    if (n.dot(toward) < 0.0) n = -n;
    face_normal_[f] = n;

    face_dK_[f] = std::abs(n.dot(c - cell_center_[K]));
    if (L >= 0) {
      face_dL_[f] = std::abs(n.dot(c - cell_center_[L]));
      face_d_sigma_[f] = (cell_center_[L] - cell_center_[K]).norm();
    } else {
      face_dL_[f] = 0.0;
      face_d_sigma_[f] = face_dK_[f];
      boundary_faces_.push_back(f);
    }
  }

  // 3-D cell volumes by the divergence theorem, using the vertex centroid as
  // origin and convexity to orient each face outward.
  if (dim_ == 3) {
    for (int k = 0; k < nc; ++k) {
      Vec3 a = Vec3::Zero();
      for (int v : cell_verts_[k]) a += nodes_[v];
      a /= static_cast<double>(cell_verts_[k].size());
      double vol = 0.0;
      for (int f : cell_faces_[k]) {
        const double s = face_normal_[f].dot(face_center_[f] - a);
        vol += face_measure_[f] * std::abs(s);
      }
      cell_measure_[k] = vol / 3.0;
    }
  }
}

ValidationReport check_admissible(const Mesh& mesh, double tol) {
  ValidationReport report;
  auto flag = [&](const std::string& what, const std::string& entity, double mag) {
    report.violations.push_back({what, entity, mag});
  };
  const int N = mesh.dim();

  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (!(mesh.face_measure(f) > 0.0)) flag("face-measure", entity_name("face", f), mesh.face_measure(f));
    if (!(mesh.face_d_sigma(f) > 0.0)) flag("d-sigma", entity_name("face", f), mesh.face_d_sigma(f));
    if (!(mesh.face_d_cell(f, 0) > 0.0)) flag("center-distance", entity_name("face", f), mesh.face_d_cell(f, 0));
    if (!mesh.face_is_exterior(f)) {
      if (!(mesh.face_d_cell(f, 1) > 0.0)) flag("center-distance", entity_name("face", f), mesh.face_d_cell(f, 1));
      const auto [K, L] = mesh.face_cells(f);
      const Vec3 u = mesh.cell_center(L) - mesh.cell_center(K);
      const double un = u.norm();
      const Vec3 tang = u - u.dot(mesh.face_normal(f)) * mesh.face_normal(f);
      if (tang.norm() > tol * un) flag("orthogonality", entity_name("face", f), tang.norm() / un);
    }
  }

  double total = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const double mk = mesh.cell_measure(k);
    total += mk;
    if (!(mk > 0.0)) {
      flag("cell-measure", entity_name("cell", k), mk);
      continue;
    }
    double pyramid = 0.0;
    for (int f : mesh.cell_faces(k)) {
      const int side = (mesh.face_cells(f)[0] == k) ? 0 : 1;
      const Vec3 out = (side == 0) ? mesh.face_normal(f) : Vec3(-mesh.face_normal(f));
      const double s = out.dot(mesh.face_center(f) - mesh.cell_center(k));
      if (s <= 0.0) flag("star-shape", entity_name("cell", k), s);
      pyramid += mesh.face_measure(f) * std::abs(s);
    }
    const double target = N * mk;
    if (std::abs(pyramid - target) > tol * target)
      flag("pyramid-identity", entity_name("cell", k), std::abs(pyramid - target) / target);
  }
  if (std::abs(total - mesh.domain_measure()) > tol * mesh.domain_measure())
    flag("partition-measure", "mesh", std::abs(total - mesh.domain_measure()) / mesh.domain_measure());

  // Faces must cover each 2-D cell boundary exactly once.
  if (mesh.dim() == 2) {
    for (int k = 0; k < mesh.n_cells(); ++k) {
      std::multiset<std::pair<int, int>> boundary, faces;
      const auto loop = mesh.cell_vertices(k);
      for (std::size_t i = 0; i < loop.size(); ++i) {
        int a = loop[i], b = loop[(i + 1) % loop.size()];
        boundary.emplace(std::min(a, b), std::max(a, b));
      }
      for (int f : mesh.cell_faces(k)) {
        const auto fv = mesh.face_vertices(f);
        faces.emplace(std::min(fv[0], fv[1]), std::max(fv[0], fv[1]));
      }
      if (boundary != faces) flag("face-partition", entity_name("cell", k), 0.0);
    }
  } else {
    for (int k = 0; k < mesh.n_cells(); ++k) {
      Vec3 closure = Vec3::Zero();
      double area = 0.0;
      for (int f : mesh.cell_faces(k)) {
        const int side = (mesh.face_cells(f)[0] == k) ? 0 : 1;
        closure += mesh.face_measure(f) * ((side == 0) ? mesh.face_normal(f) : Vec3(-mesh.face_normal(f)));
        area += mesh.face_measure(f);
      }
      if (closure.norm() > tol * area) flag("face-closure", entity_name("cell", k), closure.norm() / area);
    }
  }
  return report;
}

MeshQuality quality(const Mesh& mesh) {
  MeshQuality q;
  q.xi = 1.0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    q.xi = std::min(q.xi, mesh.face_d_cell(f, 0) / mesh.face_d_sigma(f));
    if (!mesh.face_is_exterior(f)) q.xi = std::min(q.xi, mesh.face_d_cell(f, 1) / mesh.face_d_sigma(f));
  }
  for (int k = 0; k < mesh.n_cells(); ++k) q.h = std::max(q.h, mesh.cell_diameter(k));
  return q;
}

Mesh structured_mesh(int dim, int n, const Vec3& lo, const Vec3& hi) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("structured_mesh: dimension must be 2 or 3");
  if (n < 1) throw std::invalid_argument("structured_mesh: need at least one cell per axis");
  for (int d = 0; d < dim; ++d)
    if (!(hi[d] > lo[d])) throw std::invalid_argument("structured_mesh: degenerate box");

  const int np = n + 1;
  Vec3 delta = Vec3::Zero();
  for (int d = 0; d < dim; ++d) delta[d] = (hi[d] - lo[d]) / n;

  std::vector<Vec3> nodes;
  std::vector<std::vector<int>> cells, faces;
  std::vector<Vec3> centers;
  std::vector<std::array<int, 2>> face_cells;

  if (dim == 2) {
    auto vid = [&](int i, int j) { return j * np + i; };
    auto cid = [&](int i, int j) { return j * n + i; };
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) nodes.emplace_back(lo.x() + i * delta.x(), lo.y() + j * delta.y(), 0.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
        centers.emplace_back(lo.x() + (i + 0.5) * delta.x(), lo.y() + (j + 0.5) * delta.y(), 0.0);
      }
    for (int i = 0; i <= n; ++i)  // faces with x-normal
      for (int j = 0; j < n; ++j) {
        faces.push_back({vid(i, j), vid(i, j + 1)});
        face_cells.push_back({i == 0 ? cid(0, j) : cid(i - 1, j), (i == 0 || i == n) ? -1 : cid(i, j)});
      }
    for (int j = 0; j <= n; ++j)  // faces with y-normal
      for (int i = 0; i < n; ++i) {
        faces.push_back({vid(i, j), vid(i + 1, j)});
        face_cells.push_back({j == 0 ? cid(i, 0) : cid(i, j - 1), (j == 0 || j == n) ? -1 : cid(i, j)});
      }
  } else {
    auto vid = [&](int i, int j, int k) { return (k * np + j) * np + i; };
    auto cid = [&](int i, int j, int k) { return (k * n + j) * n + i; };
    for (int k = 0; k < np; ++k)
      for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i)
          nodes.emplace_back(lo.x() + i * delta.x(), lo.y() + j * delta.y(), lo.z() + k * delta.z());
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          cells.push_back({vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j + 1, k), vid(i, j + 1, k),
                           vid(i, j, k + 1), vid(i + 1, j, k + 1), vid(i + 1, j + 1, k + 1), vid(i, j + 1, k + 1)});
          centers.emplace_back(lo.x() + (i + 0.5) * delta.x(), lo.y() + (j + 0.5) * delta.y(),
                               lo.z() + (k + 0.5) * delta.z());
        }
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          faces.push_back({vid(i, j, k), vid(i, j + 1, k), vid(i, j + 1, k + 1), vid(i, j, k + 1)});
          face_cells.push_back({i == 0 ? cid(0, j, k) : cid(i - 1, j, k), (i == 0 || i == n) ? -1 : cid(i, j, k)});
        }
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
          faces.push_back({vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j, k + 1), vid(i, j, k + 1)});
          face_cells.push_back({j == 0 ? cid(i, 0, k) : cid(i, j - 1, k), (j == 0 || j == n) ? -1 : cid(i, j, k)});
        }
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          faces.push_back({vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j + 1, k), vid(i, j + 1, k)});
          face_cells.push_back({k == 0 ? cid(i, j, 0) : cid(i, j, k - 1), (k == 0 || k == n) ? -1 : cid(i, j, k)});
        }
  }

  double volume = 1.0;
  for (int d = 0; d < dim; ++d) volume *= hi[d] - lo[d];
  return Mesh::from_data(dim, std::move(nodes), std::move(cells), std::move(centers), std::move(faces),
                         std::move(face_cells), {}, volume);
}

namespace {

struct Tri {
  Vec2 a, b, c;
};

void red_refine(std::vector<Tri>& tris) {
  std::vector<Tri> out;
  out.reserve(4 * tris.size());
  for (const Tri& t : tris) {
    const Vec2 ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c), ca = 0.5 * (t.c + t.a);
    out.push_back({t.a, ab, ca});
    out.push_back({ab, t.b, bc});
    out.push_back({ca, bc, t.c});
    out.push_back({ab, bc, ca});
  }
  tris.swap(out);
}

Mesh mesh_from_triangles(const std::vector<Tri>& tris, double domain_measure) {
  std::map<std::pair<double, double>, int> vindex;
  std::vector<Vec3> nodes;
  auto node_id = [&](const Vec2& p) {
    auto [it, inserted] = vindex.try_emplace({p.x(), p.y()}, static_cast<int>(nodes.size()));
    if (inserted) nodes.emplace_back(p.x(), p.y(), 0.0);
    return it->second;
  };

  std::vector<std::vector<int>> cells;
  std::vector<Vec3> centers;
  std::map<std::pair<int, int>, std::array<int, 2>> edge_cells;
  for (std::size_t k = 0; k < tris.size(); ++k) {
    Tri t = tris[k];
    if (cross2(t.b - t.a, t.c - t.a) < 0.0) std::swap(t.b, t.c);
    if (!triangle_is_acute(t.a, t.b, t.c)) {
      std::ostringstream os;
      os << "acute_triangulation: triangle " << k << " with vertices (" << t.a.transpose() << "), ("
         << t.b.transpose() << "), (" << t.c.transpose() << ") is not acute";
      throw std::invalid_argument(os.str());
    }
    const int va = node_id(t.a), vb = node_id(t.b), vc = node_id(t.c);
    cells.push_back({va, vb, vc});
    const Vec2 cc = circumcenter(t.a, t.b, t.c);
    centers.emplace_back(cc.x(), cc.y(), 0.0);
    for (auto [u, v] : {std::pair{va, vb}, std::pair{vb, vc}, std::pair{vc, va}}) {
      auto key = std::pair{std::min(u, v), std::max(u, v)};
      auto [it, inserted] = edge_cells.try_emplace(key, std::array<int, 2>{static_cast<int>(k), -1});
      if (!inserted) it->second[1] = static_cast<int>(k);
    }
  }

  std::vector<std::vector<int>> faces;
  std::vector<std::array<int, 2>> face_cells;
  for (const auto& [edge, kl] : edge_cells) {
    faces.push_back({edge.first, edge.second});
    face_cells.push_back(kl);
  }
  return Mesh::from_data(2, std::move(nodes), std::move(cells), std::move(centers), std::move(faces),
                         std::move(face_cells), {}, domain_measure);
}

// Acute base pattern for the unit square: 8 triangles around two interior
// points, all angles below 85.5 degrees. Red refinement yields children
// similar to their parents, so acuteness is preserved at every level.
std::vector<Tri> unit_square_acute_pattern() {
  const Vec2 c1(0, 0), c2(1, 0), c3(1, 1), c4(0, 1);
  const Vec2 mb(0.5, 0), mt(0.5, 1), p(0.435, 0.19), q(0.565, 0.19);
  return {{c4, c1, p}, {c1, mb, p}, {mb, q, p}, {mb, c2, q}, {c2, c3, q}, {c3, mt, q}, {mt, p, q}, {mt, c4, p}};
}

}  // namespace

Mesh acute_triangulation(int level, std::span<const Vec2> domain_polygon) {
  if (level < 0) throw std::invalid_argument("acute_triangulation: level must be >= 0");
  const std::size_t nv = domain_polygon.size();
  if (nv < 3) throw std::invalid_argument("acute_triangulation: polygon needs at least 3 vertices");
  double area = polygon_signed_area(domain_polygon);
  std::vector<Vec2> poly(domain_polygon.begin(), domain_polygon.end());
  if (area < 0.0) {
    std::reverse(poly.begin(), poly.end());
    area = -area;
  }
  for (std::size_t i = 0; i < nv; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % nv];
    const Vec2& c = poly[(i + 2) % nv];
    if (cross2(b - a, c - b) <= 0.0) throw std::invalid_argument("acute_triangulation: domain must be convex");
  }

  std::vector<Tri> tris;
  bool is_square = false;
  if (nv == 4) {
    const Vec2 e1 = poly[1] - poly[0], e2 = poly[3] - poly[0], d = poly[2] - poly[1];
    is_square = std::abs(e1.norm() - e2.norm()) < 1e-12 * e1.norm() &&
                std::abs(e1.dot(e2)) < 1e-12 * e1.squaredNorm() && (d - e2).norm() < 1e-12 * e1.norm();
    if (is_square) {
      const Vec2 o = poly[0], u = e1, v = rot90(e1);
      for (const Tri& t : unit_square_acute_pattern())
        tris.push_back({o + t.a.x() * u + t.a.y() * v, o + t.b.x() * u + t.b.y() * v, o + t.c.x() * u + t.c.y() * v});
    }
  }
  if (tris.empty()) {
    if (nv == 3) {
      tris.push_back({poly[0], poly[1], poly[2]});
    } else {
      const Vec2 c = polygon_centroid(poly);
      for (std::size_t i = 0; i < nv; ++i) tris.push_back({poly[i], poly[(i + 1) % nv], c});
    }
  }
  for (int l = 0; l < level; ++l) red_refine(tris);
  return mesh_from_triangles(tris, area);
}

Mesh perturbed_quad_mesh(int n, double amplitude, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("perturbed_quad_mesh: need at least one cell per axis");
  Mesh base = structured_mesh(2, n, Vec3::Zero(), Vec3(1, 1, 0));
  std::vector<Vec3> nodes(base.nodes().begin(), base.nodes().end());
  const double delta = 1.0 / n;
  const int np = n + 1;
  for (int j = 1; j < n; ++j)
    for (int i = 1; i < n; ++i) {
      const int v = j * np + i;
      SplitMix64 rng(hash_combine(seed, static_cast<std::uint64_t>(v)));
      nodes[v].x() += amplitude * delta * (2.0 * rng.uniform() - 1.0);
      nodes[v].y() += amplitude * delta * (2.0 * rng.uniform() - 1.0);
    }

  std::vector<std::vector<int>> cells, faces;
  std::vector<std::array<int, 2>> face_cells;
  std::vector<Vec3> centers;
  for (int k = 0; k < base.n_cells(); ++k) {
    cells.emplace_back(base.cell_vertices(k).begin(), base.cell_vertices(k).end());
    std::vector<Vec2> loop;
    for (int v : cells.back()) loop.push_back(nodes[v].head<2>());
    const Vec2 c = polygon_centroid(loop);
    centers.emplace_back(c.x(), c.y(), 0.0);
  }
  for (int f = 0; f < base.n_faces(); ++f) {
    faces.emplace_back(base.face_vertices(f).begin(), base.face_vertices(f).end());
    face_cells.push_back(base.face_cells(f));
  }
  return Mesh::from_data(2, std::move(nodes), std::move(cells), std::move(centers), std::move(faces),
                         std::move(face_cells), {}, 1.0);
}

Mesh refine_family(MeshFamily family, int level) {
  if (level < 0) throw std::invalid_argument("refine_family: level must be >= 0");
  const int n = 1 << level;
  switch (family) {
    case MeshFamily::structured_square:
      return structured_mesh(2, n, Vec3::Zero(), Vec3(1, 1, 0));
    case MeshFamily::structured_cube:
      return structured_mesh(3, n, Vec3::Zero(), Vec3(1, 1, 1));
    case MeshFamily::acute_square: {
      const Vec2 sq[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      return acute_triangulation(level, sq);
    }
    case MeshFamily::acute_triangle: {
      const Vec2 tri[3] = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
      return acute_triangulation(level, tri);
    }
    case MeshFamily::perturbed_quad:
      return perturbed_quad_mesh(n, 0.15, 42);
  }
  throw std::invalid_argument("refine_family: unsupported family");
}

MeshFamily family_from_name(const std::string& name) {
  if (name == "square") return MeshFamily::structured_square;
  if (name == "cube") return MeshFamily::structured_cube;
  if (name == "acute-square") return MeshFamily::acute_square;
  if (name == "acute-triangle") return MeshFamily::acute_triangle;
  if (name == "perturbed") return MeshFamily::perturbed_quad;
  throw std::invalid_argument("unknown mesh family '" + name + "'");
}

std::string family_name(MeshFamily family) {
  switch (family) {
    case MeshFamily::structured_square: return "square";
    case MeshFamily::structured_cube: return "cube";
    case MeshFamily::acute_square: return "acute-square";
    case MeshFamily::acute_triangle: return "acute-triangle";
    case MeshFamily::perturbed_quad: return "perturbed";
  }
  return "?";
}

BoundaryTag boundary_tag(const Mesh& mesh, const std::string& selector) {
  BoundaryTag tag;
  tag.name = selector;
  if (selector == "none") return tag;
  if (selector == "all") {
    tag.faces.assign(mesh.boundary_faces().begin(), mesh.boundary_faces().end());
    return tag;
  }
  Vec3 lo = mesh.node(0), hi = mesh.node(0);
  for (const Vec3& p : mesh.nodes()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  int axis;
  bool low_side;
  if (selector == "left") { axis = 0; low_side = true; }
  else if (selector == "right") { axis = 0; low_side = false; }
  else if (selector == "bottom") { axis = 1; low_side = true; }
  else if (selector == "top") { axis = 1; low_side = false; }
  else if (selector == "back") { axis = 2; low_side = true; }
  else if (selector == "front") { axis = 2; low_side = false; }
  else throw std::invalid_argument("unknown boundary selector '" + selector + "'");
  const double plane = low_side ? lo[axis] : hi[axis];
  const double tol = 1e-9 * (hi - lo).norm();
  for (int f : mesh.boundary_faces()) {
    bool on_plane = true;
    for (int v : mesh.face_vertices(f)) on_plane = on_plane && std::abs(mesh.node(v)[axis] - plane) <= tol;
    if (on_plane) tag.faces.push_back(f);
  }
  return tag;
}

}  // namespace fvineq
