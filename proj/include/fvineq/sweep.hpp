// Refinement sweeps: evaluate an inequality ratio over sampled functions on
// each level of a mesh family and report the empirical constant
// C_emp = max ratio, a lower bound on the best constant.
#ifndef FVINEQ_SWEEP_HPP
#define FVINEQ_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fvineq/mesh.hpp"
#include "fvineq/ratios.hpp"
#include "fvineq/samplers.hpp"

namespace fvineq {

enum class InequalityKind {
  gns_general,
  sp_general,
  nash_general,
  poincare_wirtinger,
  gns_dirichlet,
  sp_dirichlet,
  nash_dirichlet,
};

InequalityKind kind_from_name(const std::string& name);
std::string kind_name(InequalityKind kind);
bool kind_is_dirichlet(InequalityKind kind);

struct SweepConfig {
  InequalityKind kind = InequalityKind::sp_general;
  double p = 2.0;
  double q = 2.0;
  double theta = 0.0;  // GNS kinds only
  MeshFamily family = MeshFamily::structured_square;
  int level_begin = 1;
  int level_end = 1;
  int samples = 100;
  std::uint64_t seed = 0;
  std::string gamma0 = "none";  // boundary selector for Dirichlet kinds
  SamplerSpec sampler = SamplerSpec::default_mix();
};

/// Per-level outcome of a sweep. `ratios` has one entry per sample; skipped
/// (degenerate) samples are recorded as NaN and excluded from C_emp.
struct InequalityReport {
  InequalityKind kind;
  int level = 0;
  double h = 0.0;
  double xi = 0.0;
  double p = 0.0, q = 0.0;
  double theta = 0.0, m = 0.0;  // NaN for kinds without theta
  int samples = 0;
  int skipped = 0;
  double c_emp = 0.0;
  std::uint64_t seed = 0;
  /// Predicted regularity scaling of the constant (xi to the theorem's power),
  /// emitted so cross-family comparisons can normalize.
  double regularity_factor = 1.0;
  std::vector<double> ratios;
};

/// Validates the configuration (throws std::invalid_argument) and runs one
/// report per level. Samples are evaluated concurrently; results depend only
/// on the configuration and seed. FVINEQ_THREADS caps the worker count.
std::vector<InequalityReport> estimate_constant(const SweepConfig& config);

/// `kind,level,h,xi,p,q,theta,m,samples,skipped,C_emp,seed` rows,
/// floats with 17 significant digits.
void write_reports_csv(std::ostream& os, const std::vector<InequalityReport>& reports);
void write_reports_json(std::ostream& os, const std::vector<InequalityReport>& reports);

/// Worker count: FVINEQ_THREADS if set, otherwise min(hardware, 8), at least 1.
int sweep_thread_count();

}  // namespace fvineq

#endif
