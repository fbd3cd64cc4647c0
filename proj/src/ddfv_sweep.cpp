#include "fvineq/ddfv_sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "fvineq/sweep.hpp"

namespace fvineq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DDFVInequalityKind ddfv_kind_from_name(const std::string& name) {
  if (name == "gns") return DDFVInequalityKind::gns;
  if (name == "sp") return DDFVInequalityKind::sp;
  if (name == "pw") return DDFVInequalityKind::pw;
  if (name == "gns_dirichlet") return DDFVInequalityKind::gns_dirichlet;
  throw std::invalid_argument("unknown DDFV inequality kind '" + name + "'");
}

std::string ddfv_kind_name(DDFVInequalityKind kind) {
  switch (kind) {
    case DDFVInequalityKind::gns: return "gns";
    case DDFVInequalityKind::sp: return "sp";
    case DDFVInequalityKind::pw: return "pw";
    case DDFVInequalityKind::gns_dirichlet: return "gns_dirichlet";
  }
  return "?";
}

std::vector<DDFVReport> ddfv_estimate_constant(const DDFVSweepConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("sample count must be >= 1");
  if (config.level_begin < 0 || config.level_end < config.level_begin)
    throw std::invalid_argument("invalid level range");

  std::vector<DDFVReport> reports;
  for (int level = config.level_begin; level <= config.level_end; ++level) {
    const DDFVMesh mesh = build_ddfv(refine_family(config.family, level), config.centers);

    std::optional<ExponentSet> exps;
    double rep_p = kNaN, rep_q = kNaN, rep_theta = kNaN, rep_m = kNaN;
    switch (config.kind) {
      case DDFVInequalityKind::gns:
      case DDFVInequalityKind::gns_dirichlet:
        exps = admissible_exponents(config.p, config.q, 2, config.theta);
        if (!(exps->p <= 2.0)) throw std::invalid_argument("DDFV GNS requires 1 < p <= 2");
        rep_p = exps->p; rep_q = exps->q; rep_theta = exps->theta; rep_m = exps->m;
        break;
      case DDFVInequalityKind::sp:
        validate_sp_exponents(config.p, config.q, 2);
        rep_p = config.p; rep_q = config.q;
        break;
      case DDFVInequalityKind::pw:
        rep_p = 2.0; rep_q = 2.0;
        break;
    }

    const bool dirichlet = config.kind == DDFVInequalityKind::gns_dirichlet;
    BoundaryTag gamma0 = boundary_tag(mesh.primal(), dirichlet ? config.gamma0 : "none");
    if (dirichlet && gamma0.empty())
      throw std::invalid_argument("DDFV Dirichlet GNS requires a nonempty Gamma^0");

    DDFVReport rep;
    rep.kind = config.kind;
    rep.level = level;
    rep.h = quality(mesh.primal()).h;
    const DDFVQuality dq = ddfv_quality(mesh);
    rep.sin_alpha = dq.sin_alpha;
    rep.zeta = dq.zeta;
    rep.p = rep_p; rep.q = rep_q; rep.theta = rep_theta; rep.m = rep_m;
    rep.samples = config.samples;
    rep.seed = config.seed;
    rep.ratios.assign(config.samples, kNaN);

    switch (config.kind) {
      case DDFVInequalityKind::gns:
      case DDFVInequalityKind::gns_dirichlet:
        rep.regularity_factor = std::pow(dq.sin_alpha, -rep_theta / rep_p) *
                                std::pow(dq.zeta, -rep_theta * (rep_p - 1.0) / rep_p);
        break;
      case DDFVInequalityKind::sp:
        rep.regularity_factor =
            std::pow(dq.sin_alpha, -1.0 / rep_p) * std::pow(dq.zeta, -(rep_p - 1.0) / rep_p);
        break;
      case DDFVInequalityKind::pw:
        rep.regularity_factor = 1.0 / dq.sin_alpha;
        break;
    }

    auto evaluate = [&](int index) -> double {
      DDFVFunction u = ddfv_draw_sample(mesh, config.sampler, config.seed, index);
      try {
        switch (config.kind) {
          case DDFVInequalityKind::gns:
            return ddfv_gns_ratio(u, *exps, InequalityVariant::general);
          case DDFVInequalityKind::gns_dirichlet:
            return ddfv_gns_ratio(apply_dirichlet_mask(u, gamma0), *exps,
                                  InequalityVariant::dirichlet, &gamma0);
          case DDFVInequalityKind::sp:
            return ddfv_sp_ratio(u, config.p, config.q);
          case DDFVInequalityKind::pw:
            return ddfv_pw_ratio(ddfv_project_zero_mean(u));
        }
      } catch (const std::domain_error&) {
        return kNaN;  // degenerate sample: skipped
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
      if (std::isnan(r)) { ++skipped; continue; }
      if (std::isnan(c_emp) || r > c_emp) c_emp = r;
    }
    rep.skipped = skipped;
    rep.c_emp = c_emp;
    reports.push_back(std::move(rep));
  }
  return reports;
}

void write_ddfv_reports_csv(std::ostream& os, const std::vector<DDFVReport>& reports) {
  os << "kind,level,h,sin_alpha,zeta,p,q,theta,m,samples,skipped,C_emp,seed\n";
  for (const DDFVReport& r : reports) {
    os << ddfv_kind_name(r.kind) << ',' << r.level << ',' << fmt17(r.h) << ',' << fmt17(r.sin_alpha)
       << ',' << fmt17(r.zeta) << ',' << fmt17(r.p) << ',' << fmt17(r.q) << ',' << fmt17(r.theta)
       << ',' << fmt17(r.m) << ',' << r.samples << ',' << r.skipped << ',' << fmt17(r.c_emp) << ','
       << r.seed << '\n';
  }
}

void write_ddfv_reports_json(std::ostream& os, const std::vector<DDFVReport>& reports) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const DDFVReport& r : reports) {
    nlohmann::ordered_json j;
    j["kind"] = ddfv_kind_name(r.kind);
    j["level"] = r.level;
    j["h"] = r.h;
    j["sin_alpha"] = r.sin_alpha;
    j["zeta"] = r.zeta;
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
