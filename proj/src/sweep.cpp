#include "fvineq/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace fvineq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

InequalityKind kind_from_name(const std::string& name) {
  if (name == "gns_general") return InequalityKind::gns_general;
  if (name == "sp_general") return InequalityKind::sp_general;
  if (name == "nash_general") return InequalityKind::nash_general;
  if (name == "pw") return InequalityKind::poincare_wirtinger;
  if (name == "gns_dirichlet") return InequalityKind::gns_dirichlet;
  if (name == "sp_dirichlet") return InequalityKind::sp_dirichlet;
  if (name == "nash_dirichlet") return InequalityKind::nash_dirichlet;
  throw std::invalid_argument("unknown inequality kind '" + name + "'");
}

std::string kind_name(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::gns_general: return "gns_general";
    case InequalityKind::sp_general: return "sp_general";
    case InequalityKind::nash_general: return "nash_general";
    case InequalityKind::poincare_wirtinger: return "pw";
    case InequalityKind::gns_dirichlet: return "gns_dirichlet";
    case InequalityKind::sp_dirichlet: return "sp_dirichlet";
    case InequalityKind::nash_dirichlet: return "nash_dirichlet";
  }
  return "?";
}

bool kind_is_dirichlet(InequalityKind kind) {
  return kind == InequalityKind::gns_dirichlet || kind == InequalityKind::sp_dirichlet ||
         kind == InequalityKind::nash_dirichlet;
}

int sweep_thread_count() {
  if (const char* env = std::getenv("FVINEQ_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

std::vector<InequalityReport> estimate_constant(const SweepConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("sample count must be >= 1");
  if (config.level_begin < 0 || config.level_end < config.level_begin)
    throw std::invalid_argument("invalid level range");

  const bool dirichlet = kind_is_dirichlet(config.kind);

  std::vector<InequalityReport> reports;
  for (int level = config.level_begin; level <= config.level_end; ++level) {
    const Mesh mesh = refine_family(config.family, level);
    const int N = mesh.dim();

    // Resolve and validate exponents against this mesh's dimension.
    std::optional<ExponentSet> exps;
    double rep_p = kNaN, rep_q = kNaN, rep_theta = kNaN, rep_m = kNaN;
    switch (config.kind) {
      case InequalityKind::gns_general:
      case InequalityKind::gns_dirichlet:
        exps = admissible_exponents(config.p, config.q, N, config.theta);
        rep_p = exps->p; rep_q = exps->q; rep_theta = exps->theta; rep_m = exps->m;
        break;
      case InequalityKind::sp_general:
      case InequalityKind::sp_dirichlet:
        validate_sp_exponents(config.p, config.q, N);
        rep_p = config.p; rep_q = config.q;
        break;
      case InequalityKind::nash_general:
      case InequalityKind::nash_dirichlet:
        rep_p = 2.0; rep_q = 1.0;
        break;
      case InequalityKind::poincare_wirtinger:
        rep_p = 1.0; rep_q = static_cast<double>(N) / (N - 1);
        break;
    }

    BoundaryTag gamma0 = boundary_tag(mesh, dirichlet ? config.gamma0 : "none");
    if (dirichlet && gamma0.empty())
      throw std::invalid_argument("Dirichlet inequality kinds require a nonempty Gamma^0");

    InequalityReport rep;
    rep.kind = config.kind;
    rep.level = level;
    const MeshQuality mq = quality(mesh);
    rep.h = mq.h;
    rep.xi = mq.xi;
    rep.p = rep_p; rep.q = rep_q; rep.theta = rep_theta; rep.m = rep_m;
    rep.samples = config.samples;
    rep.seed = config.seed;
    rep.ratios.assign(config.samples, kNaN);

    switch (config.kind) {
      case InequalityKind::gns_general:
      case InequalityKind::gns_dirichlet:
        rep.regularity_factor = std::pow(mq.xi, -(rep_p - 1.0) * rep_theta / rep_p);
        break;
      case InequalityKind::sp_general:
      case InequalityKind::sp_dirichlet:
        rep.regularity_factor = std::pow(mq.xi, -(rep_p - 1.0) / rep_p);
        break;
      default:  // Nash and Poincare-Wirtinger scale with 1/sqrt(xi)
        rep.regularity_factor = 1.0 / std::sqrt(mq.xi);
        break;
    }

    auto evaluate = [&](int index) -> double {
      const DiscreteFunction u = draw_sample(mesh, config.sampler, config.seed, index);
      try {
        switch (config.kind) {
          case InequalityKind::gns_general:
            return gns_ratio(u, *exps, InequalityVariant::general);
          case InequalityKind::gns_dirichlet:
            return gns_ratio(u, *exps, InequalityVariant::dirichlet, &gamma0);
          case InequalityKind::sp_general:
            return sp_ratio(u, config.p, config.q, InequalityVariant::general);
          case InequalityKind::sp_dirichlet:
            return sp_ratio(u, config.p, config.q, InequalityVariant::dirichlet, &gamma0);
          case InequalityKind::nash_general:
            return nash_ratio(u, InequalityVariant::general);
          case InequalityKind::nash_dirichlet:
            return nash_ratio(u, InequalityVariant::dirichlet, &gamma0);
          case InequalityKind::poincare_wirtinger:
            return pw_ratio(u);
        }
      } catch (const std::domain_error&) {
        return kNaN;  // degenerate sample: skipped, not an error
      }
      return kNaN;
    };

    const int workers = std::min(sweep_thread_count(), config.samples);
    if (workers <= 1) {
      for (int i = 0; i < config.samples; ++i) rep.ratios[i] = evaluate(i);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (int i = w; i < config.samples; i += workers) rep.ratios[i] = evaluate(i);
        });
      for (auto& t : pool) t.join();
    }

    double c_emp = kNaN;
    int skipped = 0;
    for (double r : rep.ratios) {
      if (std::isnan(r)) {
        ++skipped;
        continue;
      }
      if (std::isnan(c_emp) || r > c_emp) c_emp = r;
    }
    rep.skipped = skipped;
    rep.c_emp = c_emp;
    reports.push_back(std::move(rep));
  }
  return reports;
}

void write_reports_csv(std::ostream& os, const std::vector<InequalityReport>& reports) {
  os << "kind,level,h,xi,p,q,theta,m,samples,skipped,C_emp,seed\n";
  for (const InequalityReport& r : reports) {
    os << kind_name(r.kind) << ',' << r.level << ',' << fmt17(r.h) << ',' << fmt17(r.xi) << ','
       << fmt17(r.p) << ',' << fmt17(r.q) << ',' << fmt17(r.theta) << ',' << fmt17(r.m) << ','
       << r.samples << ',' << r.skipped << ',' << fmt17(r.c_emp) << ',' << r.seed << '\n';
  }
}

void write_reports_json(std::ostream& os, const std::vector<InequalityReport>& reports) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const InequalityReport& r : reports) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(r.kind);
    j["level"] = r.level;
    j["h"] = r.h;
    j["xi"] = r.xi;
    j["p"] = r.p;
    j["q"] = r.q;
    j["theta"] = r.theta;
    j["m"] = r.m;
    j["samples"] = r.samples;
    j["skipped"] = r.skipped;
    j["C_emp"] = r.c_emp;
    j["seed"] = r.seed;
    j["regularity_factor"] = r.regularity_factor;
    j["ratios"] = r.ratios;
    out.push_back(std::move(j));
  }
  os << out.dump(2) << '\n';
}

}  // namespace fvineq
