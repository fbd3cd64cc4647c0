// Finite volume meshes with two-point-flux (center-orthogonal) geometry.
//
// A mesh stores control volumes, their faces and one center point per cell.
// All derived quantities (measures, center-to-face distances, d_sigma) are
// computed at construction and immutable afterwards; queries are pure and
// safe for concurrent readers.
#ifndef FVINEQ_MESH_HPP
#define FVINEQ_MESH_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvineq/geometry.hpp"

namespace fvineq {

/// Named subset of exterior faces (a Gamma^0 selection).
struct BoundaryTag {
  std::string name;
  std::vector<int> faces;

  bool empty() const { return faces.empty(); }
};

/// Regularity parameters: xi = min d(x_K,sigma)/d_sigma, h = max cell diameter.
struct MeshQuality {
  double xi = 0.0;
  double h = 0.0;
};

/// One failed mesh property, naming the offending entity.
struct Violation {
  std::string what;    // e.g. "orthogonality", "pyramid-identity"
  std::string entity;  // e.g. "face 12", "cell 3"
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

class Mesh {
 public:
  Mesh() = default;

  /// Builds a mesh from raw connectivity. Cell vertex lists must trace the
  /// cell boundary in order for dim==2; for dim==3 cells must be convex.
  /// Measures, normals and distances are always recomputed here, never
  /// taken from the caller. domain_measure < 0 means "sum of cell measures".
  static Mesh from_data(int dim, std::vector<Vec3> nodes,
                        std::vector<std::vector<int>> cell_verts,
                        std::vector<Vec3> cell_centers,
                        std::vector<std::vector<int>> face_verts,
                        std::vector<std::array<int, 2>> face_cells,
                        std::map<std::string, std::vector<int>> tags = {},
                        double domain_measure = -1.0);

  int dim() const { return dim_; }
  int n_nodes() const { return static_cast<int>(nodes_.size()); }
  int n_cells() const { return static_cast<int>(cell_verts_.size()); }
  int n_faces() const { return static_cast<int>(face_verts_.size()); }
  double domain_measure() const { return domain_measure_; }

  const Vec3& node(int v) const { return nodes_[v]; }
  std::span<const Vec3> nodes() const { return nodes_; }

  std::span<const int> cell_vertices(int k) const { return cell_verts_[k]; }
  std::span<const int> cell_faces(int k) const { return cell_faces_[k]; }
  const Vec3& cell_center(int k) const { return cell_center_[k]; }
  double cell_measure(int k) const { return cell_measure_[k]; }
  double cell_diameter(int k) const { return cell_diam_[k]; }

  std::span<const int> face_vertices(int f) const { return face_verts_[f]; }
  /// Incident cells {K,L}; L == -1 for an exterior face.
  std::array<int, 2> face_cells(int f) const { return face_cells_[f]; }
  bool face_is_exterior(int f) const { return face_cells_[f][1] < 0; }
  double face_measure(int f) const { return face_measure_[f]; }
  const Vec3& face_center(int f) const { return face_center_[f]; }
  /// Unit normal oriented from cell K (first incident cell) across the face.
  const Vec3& face_normal(int f) const { return face_normal_[f]; }
  /// Center-to-center distance (interior) or center-to-face distance (exterior).
  double face_d_sigma(int f) const { return face_d_sigma_[f]; }
  /// Orthogonal distance d(x_K, sigma) from the center of side 0 or 1.
  double face_d_cell(int f, int side) const { return side == 0 ? face_dK_[f] : face_dL_[f]; }

  std::span<const int> boundary_faces() const { return boundary_faces_; }
  const std::map<std::string, std::vector<int>>& tags() const { return tags_; }

 private:
  void compute_geometry();

  int dim_ = 2;
  double domain_measure_ = 0.0;
  std::vector<Vec3> nodes_;
  std::vector<std::vector<int>> cell_verts_;
  std::vector<Vec3> cell_center_;
  std::vector<double> cell_measure_;
  std::vector<double> cell_diam_;
  std::vector<std::vector<int>> cell_faces_;
  std::vector<std::vector<int>> face_verts_;
  std::vector<std::array<int, 2>> face_cells_;
  std::vector<double> face_measure_;
  std::vector<Vec3> face_center_;
  std::vector<Vec3> face_normal_;
  std::vector<double> face_d_sigma_;
  std::vector<double> face_dK_, face_dL_;
  std::vector<int> boundary_faces_;
  std::map<std::string, std::vector<int>> tags_;
};

/// Uniform tensor grid of n cells per axis on an axis-aligned box.
/// Centers are cell centroids, so center orthogonality is exact.
Mesh structured_mesh(int dim, int n, const Vec3& lo, const Vec3& hi);

/// Acute triangulation of a convex polygon, red-refined `level` times.
/// Cell centers are circumcenters, which makes the center segments orthogonal
/// to the shared edges by construction. Squares use a dedicated 8-triangle
/// acute base pattern; other polygons are fanned from the centroid and
/// rejected if any triangle fails to be acute.
Mesh acute_triangulation(int level, std::span<const Vec2> domain_polygon);

/// n x n quad mesh of the unit square with interior nodes jittered by
/// `amplitude` times the cell width (deterministic in `seed`); centers are
/// centroids. Not admissible in general; intended as a DDFV primal family.
Mesh perturbed_quad_mesh(int n, double amplitude, std::uint64_t seed);

enum class MeshFamily { structured_square, structured_cube, acute_square, acute_triangle, perturbed_quad };

/// Deterministic refinement families: h roughly halves per level while the
/// regularity parameter xi stays bounded below.
Mesh refine_family(MeshFamily family, int level);

MeshFamily family_from_name(const std::string& name);
std::string family_name(MeshFamily family);

/// Checks orthogonality, positivity, star-shapedness, face closure and the
/// pyramid identity sum m(sigma) d(x_K,sigma) = N m(K). Violations are data.
ValidationReport check_admissible(const Mesh& mesh, double tol = 1e-9);

/// Largest xi satisfying d(x_K,sigma) >= xi d_sigma, and h = max diameter.
MeshQuality quality(const Mesh& mesh);

/// Builds a named exterior-face tag. Selectors: "all", "none", or a
/// coordinate side "left|right|bottom|top|back|front" of the bounding box.
BoundaryTag boundary_tag(const Mesh& mesh, const std::string& selector);

}  // namespace fvineq

#endif
