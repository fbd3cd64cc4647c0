// Discrete duality finite volume (DDFV) machinery in 2-D: the triple of
// primal mesh (interior cells plus degenerate boundary cells), vertex-centered
// dual mesh, and diamond cells carrying the discrete gradient.
//
// Primal unknowns are indexed 0..n_primal_interior-1 for interior cells
// (matching the primal Mesh cell ids) followed by one degenerate cell per
// boundary face, in boundary_faces() order. Dual unknowns are indexed by
// primal mesh vertex id.
#ifndef FVINEQ_DDFV_HPP
#define FVINEQ_DDFV_HPP

#include <Eigen/Dense>
#include <iosfwd>

#include "fvineq/exponents.hpp"
#include "fvineq/mesh.hpp"
#include "fvineq/ratios.hpp"
#include "fvineq/rng.hpp"
#include "fvineq/samplers.hpp"

namespace fvineq {

enum class CenterPolicy { stored, centroid, circumcenter };

/// Diamond cell over one primal edge sigma; its diagonals are sigma (from
/// vertex Kstar to Lstar) and the dual edge sigma* (from center K to L).
/// (tau_primal, n_sigma_K) and (n_sigma_star_K, tau_dual) are direct bases.
struct Diamond {
  int K = -1;      // primal dof of the first incident cell (interior)
  int L = -1;      // primal dof across sigma (interior or degenerate)
  int Kstar = -1;  // dual dof (vertex id)
  int Lstar = -1;
  bool boundary = false;
  double m_sigma = 0.0;       // |x_Lstar - x_Kstar|
  double m_sigma_star = 0.0;  // |x_L - x_K|
  double measure = 0.0;       // area of the diamond polygon
  double sin_alpha = 0.0;     // angle between the diagonals, in (0, 1]
  Vec2 n_sigma_K;             // unit normal to sigma, outward from K
  Vec2 n_sigma_star_K;        // unit normal to sigma*, outward from Kstar
  Vec2 tau_primal;            // unit tangent of sigma, Kstar -> Lstar
  Vec2 tau_dual;              // unit tangent of sigma*, K -> L
  double d_Kstar_L = 0.0;     // boundary diamonds only (Figure-style lengths)
  double d_Lstar_L = 0.0;
};

struct DDFVQuality {
  double sin_alpha = 1.0;  // min |sin(alpha_D)| over diamonds
  double zeta = 0.0;       // tightest constant in the m_sigma m_sigma* bound
};

class DDFVMesh {
 public:
  const Mesh& primal() const { return primal_; }
  double domain_measure() const { return primal_.domain_measure(); }

  int n_primal_interior() const { return primal_.n_cells(); }
  int n_primal() const { return n_primal_interior() + static_cast<int>(boundary_cell_face_.size()); }
  int n_dual() const { return primal_.n_nodes(); }
  int n_diamonds() const { return static_cast<int>(diamonds_.size()); }

  const Vec2& primal_center(int k) const { return primal_center_[k]; }
  /// Zero for degenerate boundary cells.
  double primal_measure(int k) const { return k < n_primal_interior() ? primal_.cell_measure(k) : 0.0; }
  /// Boundary face of the primal mesh carried by a degenerate cell.
  int boundary_cell_face(int k) const { return boundary_cell_face_[k - n_primal_interior()]; }
  /// Degenerate-cell dof for a boundary face id.
  int face_boundary_cell(int f) const { return face_to_boundary_cell_[f]; }

  const Vec2& dual_center(int v) const { return dual_center_[v]; }
  double dual_measure(int v) const { return dual_measure_[v]; }
  bool dual_is_boundary(int v) const { return dual_boundary_[v] != 0; }
  const std::vector<Vec2>& dual_polygon(int v) const { return dual_polygon_[v]; }

  const Diamond& diamond(int d) const { return diamonds_[d]; }
  std::span<const Diamond> diamonds() const { return diamonds_; }
  /// Diamonds whose primal edge bounds interior cell k.
  std::span<const int> primal_cell_diamonds(int k) const { return primal_cell_diamonds_[k]; }
  /// Diamonds whose primal edge is incident to vertex v.
  std::span<const int> dual_cell_diamonds(int v) const { return dual_cell_diamonds_[v]; }

  friend DDFVMesh build_ddfv(const Mesh& primal, CenterPolicy policy);

 private:
  Mesh primal_;
  std::vector<Vec2> primal_center_;       // interior cells then degenerate cells
  std::vector<int> boundary_cell_face_;   // degenerate dof -> boundary face
  std::vector<int> face_to_boundary_cell_;
  std::vector<Vec2> dual_center_;
  std::vector<double> dual_measure_;
  std::vector<char> dual_boundary_;
  std::vector<std::vector<Vec2>> dual_polygon_;
  std::vector<Diamond> diamonds_;
  std::vector<std::vector<int>> primal_cell_diamonds_;
  std::vector<std::vector<int>> dual_cell_diamonds_;
};

/// Builds the triple mesh from a 2-D polygonal primal mesh whose cells are
/// star-shaped with respect to the chosen centers. Throws on flat diamonds
/// and non-star-shaped cells.
DDFVMesh build_ddfv(const Mesh& primal, CenterPolicy policy = CenterPolicy::stored);

DDFVQuality ddfv_quality(const DDFVMesh& mesh);

/// Element of Z(T): values on all primal cells (including degenerate boundary
/// cells) and on all dual cells; the represented function is the half sum of
/// the two piecewise constant reconstructions.
struct DDFVFunction {
  DDFVFunction(const DDFVMesh& m, Eigen::VectorXd primal_values, Eigen::VectorXd dual_values);

  const DDFVMesh* mesh;
  Eigen::VectorXd primal;
  Eigen::VectorXd dual;
};

/// Per-diamond gradient vectors.
struct DiamondGradient {
  const DDFVMesh* mesh;
  std::vector<Vec2> values;
};

DiamondGradient discrete_gradient(const DDFVFunction& u);

/// ( 1/2 sum_M m_K |u_K|^p + 1/2 sum_{dual} m_K* |u_K*|^p )^{1/p}
double ddfv_lp_norm(const DDFVFunction& u, double p);
/// ( sum_D m_D |grad_D u|^p )^{1/p}
double ddfv_w1p_seminorm(const DDFVFunction& u, double p);
double ddfv_w1p_norm(const DDFVFunction& u, double p);

double ddfv_mean_primal(const DDFVFunction& u);
double ddfv_mean_dual(const DDFVFunction& u);
/// Subtracts the primal and dual means separately.
DDFVFunction ddfv_project_zero_mean(const DDFVFunction& u);

/// Gamma^0 as a set of boundary faces of the primal mesh.
/// Zeroes degenerate cells inside Gamma^0 and boundary dual cells whose
/// closure meets Gamma^0. Idempotent.
DDFVFunction apply_dirichlet_mask(const DDFVFunction& u, const BoundaryTag& gamma0);
bool ddfv_mask_applied(const DDFVFunction& u, const BoundaryTag& gamma0);

/// GNS ratio with N = 2 exponents; the Dirichlet variant requires u to
/// satisfy the mask (throws std::invalid_argument otherwise).
double ddfv_gns_ratio(const DDFVFunction& u, const ExponentSet& exps, InequalityVariant variant,
                      const BoundaryTag* gamma0 = nullptr);
double ddfv_sp_ratio(const DDFVFunction& u, double p, double q);
/// Requires the double zero-mean condition on both reconstructions.
double ddfv_pw_ratio(const DDFVFunction& u);

/// Samples analogous to the primal-mesh sampler mix; pw sweeps project them.
DDFVFunction ddfv_draw_sample(const DDFVMesh& mesh, const SamplerSpec& spec, std::uint64_t seed,
                              int index);

DDFVFunction ddfv_sample_field(const DDFVMesh& mesh, const std::function<double(const Vec2&)>& f);

void save_ddfv(std::ostream& os, const DDFVMesh& mesh);
void save_ddfv(const std::string& path, const DDFVMesh& mesh);
/// Reads the primal part and rebuilds the triple mesh with the given policy.
DDFVMesh load_ddfv(std::istream& is, CenterPolicy policy = CenterPolicy::stored);
DDFVMesh load_ddfv(const std::string& path, CenterPolicy policy = CenterPolicy::stored);

/// `kind(primal|dual),id,value` lines.
void save_ddfv_function(std::ostream& os, const DDFVFunction& u);
DDFVFunction load_ddfv_function(std::istream& is, const DDFVMesh& mesh);

}  // namespace fvineq

#endif
