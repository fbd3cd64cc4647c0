// Sample generators for the inequality sweeps. The default mix combines
// iid cellwise noise, smooth trigonometric fields, single-cell indicators and
// a +-1 checkerboard; indicators and checkerboards probe the BV-extremal
// regime, smooth fields the interpolation regime.
#ifndef FVINEQ_SAMPLERS_HPP
#define FVINEQ_SAMPLERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fvineq/discrete_function.hpp"
#include "fvineq/rng.hpp"

namespace fvineq {

enum class SampleKind { iid_uniform, smooth, indicator, checkerboard, constant };

struct SamplerSpec {
  std::vector<SampleKind> mix;

  /// iid, smooth, indicator, checkerboard with equal weights.
  static SamplerSpec default_mix();
  /// Parses a comma-separated list, e.g. "smooth,constant".
  static SamplerSpec parse(const std::string& names);
};

/// Product of randomly scaled sines, evaluable at any point of the domain.
struct TrigField {
  double amplitude = 1.0;
  Vec3 freq = Vec3::Zero();
  Vec3 phase = Vec3::Zero();
  int dim = 2;

  double operator()(const Vec3& x) const;
  static TrigField draw(SplitMix64& rng, int dim);
};

/// +-1 by the sign of prod_d sin(pi x_d / width); alternates per cell on a
/// uniform grid of that cell width. Zero-sign ties resolve to +1.
double checkerboard_value(const Vec3& x, int dim, double width);

/// Deterministic: the sample depends only on (mesh, spec, seed, index).
DiscreteFunction draw_sample(const Mesh& mesh, const SamplerSpec& spec, std::uint64_t seed, int index);

}  // namespace fvineq

#endif
