// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code; timings are printed per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <vector>

#include "fvineq/ddfv.hpp"
#include "fvineq/ddfv_solver.hpp"
#include "fvineq/ddfv_sweep.hpp"
#include "fvineq/eigen_oracle.hpp"
#include "fvineq/mesh_io.hpp"
#include "fvineq/sweep.hpp"

using namespace fvineq;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {
    start_ = std::chrono::steady_clock::now();
  }

  void require(bool ok, const std::string& detail) {
    if (!ok && first_failure_.empty()) first_failure_ = detail;
    ok_ = ok_ && ok;
  }

  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }

  ~Criterion() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::printf("[%s] criterion %d: %s (%.2fs%s%s)\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str(),
                seconds, notes_.empty() ? "" : "; ", notes_.c_str());
    if (!ok_) {
      std::printf("       first failure: %s\n", first_failure_.c_str());
      ++failures;
    }
  }

 private:
  int id_;
  std::string title_;
  std::string notes_;
  std::string first_failure_;
  bool ok_ = true;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double pyramid_residual(const Mesh& mesh) {
  double worst = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k) {
    double sum = 0.0;
    for (int f : mesh.cell_faces(k)) {
      const int side = mesh.face_cells(f)[0] == k ? 0 : 1;
      sum += mesh.face_measure(f) * mesh.face_d_cell(f, side);
    }
    const double target = mesh.dim() * mesh.cell_measure(k);
    worst = std::max(worst, std::abs(sum - target) / target);
  }
  return worst;
}

DiscreteFunction random_function(const Mesh& mesh, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::VectorXd v(mesh.n_cells());
  for (int k = 0; k < mesh.n_cells(); ++k) v[k] = rng.uniform(-2.0, 2.0);
  return DiscreteFunction(mesh, v);
}

void criterion_1() {
  Criterion c(1, "pyramid identity on all generated meshes");
  double worst = 0.0;
  for (int level = 0; level <= 5; ++level) {
    worst = std::max(worst, pyramid_residual(refine_family(MeshFamily::structured_square, level)));
    worst = std::max(worst, pyramid_residual(refine_family(MeshFamily::structured_cube, level)));
  }
  for (int level = 0; level <= 3; ++level) {
    worst = std::max(worst, pyramid_residual(refine_family(MeshFamily::acute_square, level)));
    worst = std::max(worst, pyramid_residual(refine_family(MeshFamily::acute_triangle, level)));
  }
  c.require(worst <= 1e-10, "worst relative residual " + fmt(worst));
  c.note("worst residual " + fmt(worst));
}

void criterion_2() {
  Criterion c(2, "total variation equals the p=1 seminorm");
  const Mesh meshes[] = {refine_family(MeshFamily::structured_square, 3),
                         refine_family(MeshFamily::structured_cube, 2),
                         refine_family(MeshFamily::acute_square, 2)};
  double worst = 0.0;
  for (const Mesh& mesh : meshes) {
    for (int i = 0; i < 1000; ++i) {
      const DiscreteFunction u = random_function(mesh, 1000 + i);
      const double tv = total_variation(u);
      const double semi = w1p_seminorm(u, 1.0);
      worst = std::max(worst, std::abs(tv - semi) / std::max(semi, 1e-300));
    }
  }
  c.require(worst <= 1e-12, "worst relative deviation " + fmt(worst));
}

void criterion_3() {
  Criterion c(3, "exponent bookkeeping reproduces the worked case");
  const ExponentSet e = admissible_exponents(2.0, 1.0, 2, 0.5);
  c.require(e.m == 2.0, "m = " + fmt(e.m) + ", expected exactly 2");
  bool rejected = false;
  std::string message;
  try {
    admissible_exponents(2.0, 1.0, 2, 0.7);
  } catch (const std::invalid_argument& ex) {
    rejected = true;
    message = ex.what();
  }
  c.require(rejected, "theta = 0.7 was not rejected");
  if (rejected)
    c.require(message.find("theta exceeds") != std::string::npos, "unexpected message: " + message);
}

void criterion_4() {
  Criterion c(4, "eigenvalue oracle: closed form, cross-checks, limit proximity");
  const double continuous = 1.0 / (std::numbers::pi * std::sqrt(2.0));
  double previous_gap = std::numeric_limits<double>::infinity();
  double prev_constant = std::numeric_limits<double>::infinity();
  double last_constant = 0.0;
  bool decreasing = true;
  for (int n : {8, 16, 32, 64}) {
    const EigenOracleResult r = poincare_eigen_oracle(n);
    const double closed = structured_lambda_min_closed_form(n);
    c.require(std::abs(r.lambda_min - closed) <= 1e-9 * closed,
              "n=" + std::to_string(n) + ": oracle " + fmt(r.lambda_min) + " vs closed form " +
                  fmt(closed));
    const double gap = std::abs(r.best_constant - continuous);
    c.require(gap < previous_gap, "n=" + std::to_string(n) + ": approach to the limit not monotone");
    decreasing = decreasing && r.best_constant < prev_constant;
    prev_constant = r.best_constant;
    previous_gap = gap;
    last_constant = r.best_constant;
  }
  const Mesh m8 = structured_mesh(2, 8, Vec3::Zero(), Vec3(1, 1, 0));
  const double dense = dirichlet_lambda_min_dense(m8);
  c.require(std::abs(poincare_eigen_oracle(8).lambda_min - dense) <= 1e-8 * dense,
            "power iteration disagrees with the dense eigensolve at n=8");
  c.require(std::abs(last_constant - continuous) <= 0.05 * continuous,
            "n=64 constant " + fmt(last_constant) + " not within 5% of " + fmt(continuous));
  c.note("constants approach 1/(pi*sqrt(2)) monotonically from above (decreasing: " +
         std::string(decreasing ? "yes" : "no") + "), C(64) = " + fmt(last_constant));
}

void criterion_5() {
  Criterion c(5, "mesh-independence of empirical constants, levels 1..5");
  struct Setup {
    InequalityKind kind;
    double p, q, theta;
    const char* sampler;
  };
  const Setup setups[] = {
      {InequalityKind::gns_general, 2.0, 1.0, 0.5, "default,constant"},
      {InequalityKind::sp_general, 2.0, 2.0, 0.0, "default,constant"},
      {InequalityKind::nash_general, 2.0, 1.0, 0.0, "default,constant"},
      {InequalityKind::poincare_wirtinger, 1.0, 2.0, 0.0, "default"},
  };
  for (const Setup& setup : setups) {
    SweepConfig config;
    config.kind = setup.kind;
    config.p = setup.p;
    config.q = setup.q;
    config.theta = setup.theta;
    config.family = MeshFamily::structured_square;
    config.level_begin = 1;
    config.level_end = 5;
    config.samples = 500;
    config.seed = 7;
    config.sampler = SamplerSpec::parse(setup.sampler);
    const auto reports = estimate_constant(config);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const InequalityReport& r : reports) {
      lo = std::min(lo, r.c_emp);
      hi = std::max(hi, r.c_emp);
    }
    c.require(hi <= 2.0 * lo, kind_name(setup.kind) + ": C_emp range [" + fmt(lo) + ", " + fmt(hi) +
                                  "] exceeds factor 2");
    c.note(kind_name(setup.kind) + " spread " + fmt(hi / lo));
  }
}

void criterion_6() {
  Criterion c(6, "scale and translation invariance of all ratios");
  const Mesh mesh = refine_family(MeshFamily::structured_square, 3);
  const BoundaryTag all = boundary_tag(mesh, "all");
  const ExponentSet exps = admissible_exponents(2.0, 1.0, 2, 0.5);
  const DDFVMesh dmesh = build_ddfv(refine_family(MeshFamily::structured_square, 3));
  SplitMix64 rng(2024);
  double worst = 0.0;
  auto check = [&](double a, double b) { worst = std::max(worst, std::abs(a / b - 1.0)); };
  for (int trial = 0; trial < 25; ++trial) {
    const DiscreteFunction u = random_function(mesh, 5000 + trial);
    const double lambda = rng.uniform(0.1, 10.0);
    const DiscreteFunction lu(mesh, lambda * u.values);
    check(gns_ratio(lu, exps, InequalityVariant::general),
          gns_ratio(u, exps, InequalityVariant::general));
    check(gns_ratio(lu, exps, InequalityVariant::dirichlet, &all),
          gns_ratio(u, exps, InequalityVariant::dirichlet, &all));
    check(sp_ratio(lu, 2.0, 2.0, InequalityVariant::general),
          sp_ratio(u, 2.0, 2.0, InequalityVariant::general));
    check(sp_ratio(lu, 2.0, 2.0, InequalityVariant::dirichlet, &all),
          sp_ratio(u, 2.0, 2.0, InequalityVariant::dirichlet, &all));
    check(nash_ratio(lu, InequalityVariant::general), nash_ratio(u, InequalityVariant::general));
    check(nash_ratio(lu, InequalityVariant::dirichlet, &all),
          nash_ratio(u, InequalityVariant::dirichlet, &all));
    check(pw_ratio(lu), pw_ratio(u));
    const double shift = rng.uniform(-5.0, 5.0);
    check(pw_ratio(DiscreteFunction(mesh, u.values.array() + shift)), pw_ratio(u));

    const DDFVFunction du = ddfv_draw_sample(dmesh, SamplerSpec::parse("iid"), 77, trial);
    const DDFVFunction dl(dmesh, lambda * du.primal, lambda * du.dual);
    check(ddfv_gns_ratio(dl, exps, InequalityVariant::general),
          ddfv_gns_ratio(du, exps, InequalityVariant::general));
    check(ddfv_sp_ratio(dl, 2.0, 2.0), ddfv_sp_ratio(du, 2.0, 2.0));
    const DDFVFunction zm = ddfv_project_zero_mean(du);
    const DDFVFunction zl(dmesh, lambda * zm.primal, lambda * zm.dual);
    check(ddfv_pw_ratio(zl), ddfv_pw_ratio(zm));
  }
  c.require(worst <= 1e-12, "worst relative drift " + fmt(worst));
  c.note("worst drift " + fmt(worst));
}

void criterion_7() {
  Criterion c(7, "DDFV structural identities on Cartesian and perturbed families");
  std::vector<DDFVMesh> meshes;
  for (int level = 1; level <= 5; ++level)
    meshes.push_back(build_ddfv(refine_family(MeshFamily::structured_square, level)));
  for (int n : {4, 8, 16}) meshes.push_back(build_ddfv(perturbed_quad_mesh(n, 0.15, 42)));

  for (std::size_t i = 0; i < meshes.size(); ++i) {
    const DDFVMesh& mesh = meshes[i];
    const std::string tag = "mesh " + std::to_string(i);
    double worst_diamond = 0.0;
    double diamonds = 0.0, primal = 0.0, dual = 0.0;
    for (const Diamond& d : mesh.diamonds()) {
      worst_diamond =
          std::max(worst_diamond,
                   std::abs(2.0 * d.measure - d.m_sigma * d.m_sigma_star * d.sin_alpha) / d.measure);
      diamonds += d.measure;
    }
    for (int k = 0; k < mesh.n_primal_interior(); ++k) primal += mesh.primal_measure(k);
    for (int v = 0; v < mesh.n_dual(); ++v) dual += mesh.dual_measure(v);
    const double target = mesh.domain_measure();
    c.require(worst_diamond <= 1e-10, tag + ": diamond identity residual " + fmt(worst_diamond));
    c.require(std::abs(diamonds - target) <= 1e-10 * target, tag + ": diamond partition");
    c.require(std::abs(primal - target) <= 1e-10 * target, tag + ": primal partition");
    c.require(std::abs(dual - target) <= 1e-10 * target, tag + ": dual partition");

    const DDFVFunction u = ddfv_draw_sample(mesh, SamplerSpec::parse("iid"), 99, static_cast<int>(i));
    const DiamondGradient g = discrete_gradient(u);
    double worst_tangential = 0.0;
    for (int d = 0; d < mesh.n_diamonds(); ++d) {
      const Diamond& dia = mesh.diamond(d);
      const double scale = std::max(1.0, g.values[d].norm());
      worst_tangential =
          std::max(worst_tangential, std::abs(g.values[d].dot(dia.tau_primal) -
                                              (u.dual[dia.Lstar] - u.dual[dia.Kstar]) / dia.m_sigma) /
                                         scale);
      worst_tangential =
          std::max(worst_tangential, std::abs(g.values[d].dot(dia.tau_dual) -
                                              (u.primal[dia.L] - u.primal[dia.K]) / dia.m_sigma_star) /
                                         scale);
    }
    c.require(worst_tangential <= 1e-10, tag + ": tangential identity residual " + fmt(worst_tangential));

    const DDFVFunction affine =
        ddfv_sample_field(mesh, [](const Vec2& x) { return 1.5 * x.x() - 0.75 * x.y() + 0.25; });
    const DiamondGradient ga = discrete_gradient(affine);
    double worst_affine = 0.0;
    for (const Vec2& v : ga.values) worst_affine = std::max(worst_affine, (v - Vec2(1.5, -0.75)).norm());
    c.require(worst_affine <= 1e-10, tag + ": affine exactness residual " + fmt(worst_affine));
  }
}

void criterion_8() {
  Criterion c(8, "DDFV inequality boundedness, Cartesian levels 1..4");
  for (const bool is_pw : {false, true}) {
    DDFVSweepConfig config;
    config.kind = is_pw ? DDFVInequalityKind::pw : DDFVInequalityKind::sp;
    config.p = 2.0;
    config.q = 2.0;
    config.family = MeshFamily::structured_square;
    config.level_begin = 1;
    config.level_end = 4;
    config.samples = 200;
    config.seed = 7;
    config.sampler = SamplerSpec::parse(is_pw ? "default" : "default,constant");
    const auto reports = ddfv_estimate_constant(config);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const DDFVReport& r : reports) {
      lo = std::min(lo, r.c_emp);
      hi = std::max(hi, r.c_emp);
    }
    c.require(hi <= 2.0 * lo, std::string(is_pw ? "pw" : "sp") + ": C_emp range [" + fmt(lo) + ", " +
                                  fmt(hi) + "] exceeds factor 2");
    c.note(std::string(is_pw ? "pw" : "sp") + " spread " + fmt(hi / lo));
  }
  const DDFVMesh mesh = build_ddfv(refine_family(MeshFamily::structured_square, 3));
  double worst_mean = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DDFVFunction u = ddfv_draw_sample(mesh, SamplerSpec::default_mix(), 7, i);
    const DDFVFunction zm = ddfv_project_zero_mean(u);
    const double scale = std::max({1.0, zm.primal.cwiseAbs().maxCoeff(), zm.dual.cwiseAbs().maxCoeff()});
    worst_mean = std::max(worst_mean, std::abs(ddfv_mean_primal(zm)) / scale);
    worst_mean = std::max(worst_mean, std::abs(ddfv_mean_dual(zm)) / scale);
  }
  c.require(worst_mean <= 1e-12, "projected mean residual " + fmt(worst_mean));
}

void criterion_9() {
  Criterion c(9, "demo solver: manufactured solution convergence");
  const double pi = std::numbers::pi;
  auto exact = [&](const Vec2& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); };
  auto source = [&](const Vec2& x) { return 2.0 * pi * pi * exact(x); };
  auto tensor = [](const Vec2&) { return Eigen::Matrix2d::Identity().eval(); };
  std::vector<double> errors;
  for (int level = 2; level <= 5; ++level) {
    const DDFVMesh mesh = build_ddfv(refine_family(MeshFamily::structured_square, level));
    const SolveResult r =
        solve_anisotropic_laplace(mesh, tensor, source, boundary_tag(mesh.primal(), "all"));
    c.require(r.relative_residual <= 1e-10,
              "level " + std::to_string(level) + ": residual " + fmt(r.relative_residual));
    const DDFVFunction ref = ddfv_sample_field(mesh, exact);
    errors.push_back(
        ddfv_lp_norm(DDFVFunction(mesh, r.u.primal - ref.primal, r.u.dual - ref.dual), 2.0));
  }
  std::string rates;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    c.require(errors[i] < errors[i - 1], "error not monotone at step " + std::to_string(i));
    const double rate = std::log2(errors[i - 1] / errors[i]);
    c.require(rate >= 1.5, "observed order " + fmt(rate) + " below 1.5");
    rates += (i > 1 ? ", " : "") + fmt(rate);
  }
  c.note("orders " + rates);
}

void criterion_10() {
  Criterion c(10, "determinism: equal seeds give byte-identical CSV");
  SweepConfig config;
  config.kind = InequalityKind::gns_dirichlet;
  config.p = 2.0;
  config.q = 1.0;
  config.theta = 0.5;
  config.gamma0 = "all";
  config.level_begin = 1;
  config.level_end = 3;
  config.samples = 100;
  config.seed = 123;
  std::ostringstream a, b;
  write_reports_csv(a, estimate_constant(config));
  setenv("FVINEQ_THREADS", "3", 1);
  write_reports_csv(b, estimate_constant(config));
  unsetenv("FVINEQ_THREADS");
  c.require(a.str() == b.str(), "plain sweep CSV differs between runs/thread counts");

  DDFVSweepConfig dconfig;
  dconfig.kind = DDFVInequalityKind::gns_dirichlet;
  dconfig.p = 2.0;
  dconfig.q = 1.0;
  dconfig.theta = 0.5;
  dconfig.gamma0 = "all";
  dconfig.level_begin = 1;
  dconfig.level_end = 2;
  dconfig.samples = 60;
  dconfig.seed = 9;
  std::ostringstream da, db;
  write_ddfv_reports_csv(da, ddfv_estimate_constant(dconfig));
  write_ddfv_reports_csv(db, ddfv_estimate_constant(dconfig));
  c.require(da.str() == db.str(), "ddfv sweep CSV differs between runs");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
