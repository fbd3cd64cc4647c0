// Refinement sweeps for the DDFV inequalities (GNS, Sobolev-Poincare,
// Poincare-Wirtinger and the Dirichlet GNS variant).
#ifndef FVINEQ_DDFV_SWEEP_HPP
#define FVINEQ_DDFV_SWEEP_HPP

#include <iosfwd>

#include "fvineq/ddfv.hpp"

namespace fvineq {

enum class DDFVInequalityKind { gns, sp, pw, gns_dirichlet };

DDFVInequalityKind ddfv_kind_from_name(const std::string& name);
std::string ddfv_kind_name(DDFVInequalityKind kind);

struct DDFVSweepConfig {
  DDFVInequalityKind kind = DDFVInequalityKind::sp;
  double p = 2.0;
  double q = 2.0;
  double theta = 0.0;  // gns kinds
  MeshFamily family = MeshFamily::structured_square;
  CenterPolicy centers = CenterPolicy::stored;
  int level_begin = 1;
  int level_end = 1;
  int samples = 100;
  std::uint64_t seed = 0;
  std::string gamma0 = "none";
  SamplerSpec sampler = SamplerSpec::default_mix();
};

struct DDFVReport {
  DDFVInequalityKind kind;
  int level = 0;
  double h = 0.0;
  double sin_alpha = 1.0;
  double zeta = 0.0;
  double p = 0.0, q = 0.0, theta = 0.0, m = 0.0;
  int samples = 0;
  int skipped = 0;
  double c_emp = 0.0;
  std::uint64_t seed = 0;
  /// Predicted (sin alpha_T, zeta) scaling of the constant.
  double regularity_factor = 1.0;
  std::vector<double> ratios;
};

/// Poincare-Wirtinger samples are projected to the double zero-mean space,
/// Dirichlet samples have the Gamma^0 mask applied, before the ratio.
std::vector<DDFVReport> ddfv_estimate_constant(const DDFVSweepConfig& config);

/// `kind,level,h,sin_alpha,zeta,p,q,theta,m,samples,skipped,C_emp,seed` rows.
void write_ddfv_reports_csv(std::ostream& os, const std::vector<DDFVReport>& reports);
void write_ddfv_reports_json(std::ostream& os, const std::vector<DDFVReport>& reports);

}  // namespace fvineq

#endif
