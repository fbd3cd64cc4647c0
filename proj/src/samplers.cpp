#include "fvineq/samplers.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fvineq {

SamplerSpec SamplerSpec::default_mix() {
  return {{SampleKind::iid_uniform, SampleKind::smooth, SampleKind::indicator, SampleKind::checkerboard}};
}

SamplerSpec SamplerSpec::parse(const std::string& names) {
  SamplerSpec spec;
  std::istringstream is(names);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item == "iid") spec.mix.push_back(SampleKind::iid_uniform);
    else if (item == "smooth") spec.mix.push_back(SampleKind::smooth);
    else if (item == "indicator") spec.mix.push_back(SampleKind::indicator);
    else if (item == "checkerboard") spec.mix.push_back(SampleKind::checkerboard);
    else if (item == "constant") spec.mix.push_back(SampleKind::constant);
    else if (item == "default") for (SampleKind k : default_mix().mix) spec.mix.push_back(k);
    else throw std::invalid_argument("unknown sampler '" + item + "'");
  }
  if (spec.mix.empty()) throw std::invalid_argument("empty sampler mix");
  return spec;
}

double TrigField::operator()(const Vec3& x) const {
  double v = amplitude;
  for (int d = 0; d < dim; ++d) v *= std::sin(freq[d] * x[d] + phase[d]);
  return v;
}

TrigField TrigField::draw(SplitMix64& rng, int dim) {
  TrigField f;
  f.dim = dim;
  f.amplitude = rng.uniform(0.5, 2.0);
  for (int d = 0; d < dim; ++d) {
    f.freq[d] = std::numbers::pi * static_cast<double>(1 + rng.below(3));
    f.phase[d] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return f;
}

double checkerboard_value(const Vec3& x, int dim, double width) {
  double v = 1.0;
  for (int d = 0; d < dim; ++d) v *= std::sin(std::numbers::pi * x[d] / width);
  return v < 0.0 ? -1.0 : 1.0;
}

DiscreteFunction draw_sample(const Mesh& mesh, const SamplerSpec& spec, std::uint64_t seed, int index) {
  if (spec.mix.empty()) throw std::invalid_argument("empty sampler mix");
  const SampleKind kind = spec.mix[static_cast<std::size_t>(index) % spec.mix.size()];
  SplitMix64 rng(hash_combine(seed, static_cast<std::uint64_t>(index)));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mesh.n_cells());

  switch (kind) {
    case SampleKind::iid_uniform:
      for (int k = 0; k < mesh.n_cells(); ++k) v[k] = rng.uniform(-1.0, 1.0);
      break;
    case SampleKind::smooth: {
      const TrigField f = TrigField::draw(rng, mesh.dim());
      for (int k = 0; k < mesh.n_cells(); ++k) v[k] = f(mesh.cell_center(k));
      break;
    }
    case SampleKind::indicator:
      v[static_cast<int>(rng.below(static_cast<std::uint64_t>(mesh.n_cells())))] = 1.0;
      break;
    case SampleKind::checkerboard: {
      double mean_diam = 0.0;
      for (int k = 0; k < mesh.n_cells(); ++k) mean_diam += mesh.cell_diameter(k);
      mean_diam /= mesh.n_cells();
      const double width = mean_diam / std::sqrt(static_cast<double>(mesh.dim()));
      for (int k = 0; k < mesh.n_cells(); ++k)
        v[k] = checkerboard_value(mesh.cell_center(k), mesh.dim(), width);
      break;
    }
    case SampleKind::constant:
      v.setConstant(rng.uniform(0.5, 2.0));
      break;
  }
  return DiscreteFunction(mesh, std::move(v));
}

}  // namespace fvineq
