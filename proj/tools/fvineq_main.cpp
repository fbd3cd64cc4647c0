// Command-line front end: mesh generation/validation, norm evaluation,
// inequality sweeps, the Dirichlet eigenvalue oracle and DDFV experiments.
//
// Exit codes: 0 success, 64 configuration error, 65 invariant violation,
// 2 I/O or parse error.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "fvineq/ddfv.hpp"
#include "fvineq/ddfv_solver.hpp"
#include "fvineq/ddfv_sweep.hpp"
#include "fvineq/discrete_function.hpp"
#include "fvineq/eigen_oracle.hpp"
#include "fvineq/mesh_io.hpp"
#include "fvineq/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 64;
constexpr int kExitInvariant = 65;

struct invariant_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

fvineq::CenterPolicy parse_centers(const std::string& name) {
  if (name == "stored") return fvineq::CenterPolicy::stored;
  if (name == "centroid") return fvineq::CenterPolicy::centroid;
  if (name == "circumcenter") return fvineq::CenterPolicy::circumcenter;
  throw std::invalid_argument("unknown center policy '" + name + "'");
}

std::pair<int, int> parse_levels(const std::string& spec) {
  const auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      const int level = std::stoi(spec);
      return {level, level};
    }
    return {std::stoi(spec.substr(0, dots)), std::stoi(spec.substr(dots + 2))};
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse level range '" + spec + "'");
  }
}

void write_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw io_error("cannot open '" + out + "' for writing");
  os << text;
  if (!os) throw io_error("failed writing '" + out + "'");
}

fvineq::Mesh load_mesh_or_throw(const std::string& path) {
  try {
    return fvineq::load_mesh(path);
  } catch (const std::runtime_error& e) {
    throw io_error(e.what());
  }
}

// ---------------------------------------------------------------- mesh ----

int run_mesh_gen(const std::string& family, int level, const std::string& gamma0,
                 const std::string& out) {
  fvineq::Mesh mesh = fvineq::refine_family(fvineq::family_from_name(family), level);
  if (gamma0 != "none") {
    // Rebuild with the tag stored so it survives serialization.
    const fvineq::BoundaryTag tag = fvineq::boundary_tag(mesh, gamma0);
    std::map<std::string, std::vector<int>> tags = mesh.tags();
    tags["gamma0"] = tag.faces;
    std::vector<std::vector<int>> cv, fv;
    std::vector<fvineq::Vec3> cc;
    std::vector<std::array<int, 2>> fc;
    for (int k = 0; k < mesh.n_cells(); ++k) {
      cv.emplace_back(mesh.cell_vertices(k).begin(), mesh.cell_vertices(k).end());
      cc.push_back(mesh.cell_center(k));
    }
    for (int f = 0; f < mesh.n_faces(); ++f) {
      fv.emplace_back(mesh.face_vertices(f).begin(), mesh.face_vertices(f).end());
      fc.push_back(mesh.face_cells(f));
    }
    mesh = fvineq::Mesh::from_data(mesh.dim(), {mesh.nodes().begin(), mesh.nodes().end()},
                                   std::move(cv), std::move(cc), std::move(fv), std::move(fc),
                                   std::move(tags), mesh.domain_measure());
  }
  std::ostringstream os;
  fvineq::save_mesh(os, mesh);
  write_text(out, os.str());
  return kExitOk;
}

int run_mesh_check(const std::string& path, double tol) {
  const fvineq::Mesh mesh = load_mesh_or_throw(path);
  const fvineq::ValidationReport report = fvineq::check_admissible(mesh, tol);
  const fvineq::MeshQuality q = fvineq::quality(mesh);
  std::cout << "cells," << mesh.n_cells() << "\nfaces," << mesh.n_faces() << "\nxi," << fmt17(q.xi)
            << "\nh," << fmt17(q.h) << "\nviolations," << report.violations.size() << '\n';
  for (const fvineq::Violation& v : report.violations)
    std::cout << "violation," << v.what << ',' << v.entity << ',' << fmt17(v.magnitude) << '\n';
  if (!report.ok()) throw invariant_violation("mesh fails admissibility checks");
  return kExitOk;
}

// ---------------------------------------------------------------- norms ---

int run_norms(const std::string& mesh_path, const std::string& values_path, double p,
              const std::string& gamma0_sel, const std::string& out) {
  const fvineq::Mesh mesh = load_mesh_or_throw(mesh_path);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(mesh.n_cells());
  {
    std::ifstream is(values_path);
    if (!is) throw io_error("cannot open '" + values_path + "' for reading");
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string id, value;
      if (!std::getline(ls, id, ',') || !std::getline(ls, value))
        throw io_error("values csv: malformed line '" + line + "'");
      const int k = std::stoi(id);
      if (k < 0 || k >= mesh.n_cells()) throw io_error("values csv: cell id out of range");
      values[k] = std::stod(value);
    }
  }
  const fvineq::DiscreteFunction u(mesh, std::move(values));
  std::ostringstream os;
  os << "lp," << fmt17(p) << ',' << fmt17(fvineq::lp_norm(u, p)) << '\n';
  os << "w1p_seminorm," << fmt17(p) << ',' << fmt17(fvineq::w1p_seminorm(u, p)) << '\n';
  if (gamma0_sel != "none") {
    const fvineq::BoundaryTag tag = fvineq::boundary_tag(mesh, gamma0_sel);
    os << "w1p_seminorm_dirichlet," << fmt17(p) << ','
       << fmt17(fvineq::w1p_seminorm_dirichlet(u, p, tag)) << '\n';
    os << "w1p_norm," << fmt17(p) << ',' << fmt17(fvineq::w1p_norm(u, {p, tag})) << '\n';
  } else {
    os << "w1p_norm," << fmt17(p) << ',' << fmt17(fvineq::w1p_norm(u, {p, std::nullopt})) << '\n';
  }
  os << "total_variation,1," << fmt17(fvineq::total_variation(u)) << '\n';
  os << "mean_value,1," << fmt17(fvineq::mean_value(u)) << '\n';
  write_text(out, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- verify --

int run_verify(const fvineq::SweepConfig& config, const std::string& format, const std::string& out) {
  // Structural gate: every level of an admissible family must validate.
  for (int level = config.level_begin; level <= config.level_end; ++level) {
    const fvineq::Mesh mesh = fvineq::refine_family(config.family, level);
    if (config.family != fvineq::MeshFamily::perturbed_quad &&
        !fvineq::check_admissible(mesh, 1e-9).ok())
      throw invariant_violation("mesh family fails admissibility at level " + std::to_string(level));
  }
  const std::vector<fvineq::InequalityReport> reports = fvineq::estimate_constant(config);
  for (const fvineq::InequalityReport& r : reports) {
    for (double ratio : r.ratios)
      if (!std::isnan(ratio) && !std::isfinite(ratio))
        throw invariant_violation("non-finite sampled ratio at level " + std::to_string(r.level));
    if (r.skipped == r.samples)
      throw invariant_violation("all samples degenerate at level " + std::to_string(r.level));
  }
  std::ostringstream os;
  if (format == "json")
    fvineq::write_reports_json(os, reports);
  else
    fvineq::write_reports_csv(os, reports);
  write_text(out, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- eigen ---

int run_eigen(int n, const std::string& format, const std::string& out) {
  const fvineq::EigenOracleResult r = fvineq::poincare_eigen_oracle(n);
  std::ostringstream os;
  if (format == "json") {
    os << "{\n  \"n\": " << r.n << ",\n  \"h\": " << fmt17(r.h) << ",\n  \"lambda_min\": "
       << fmt17(r.lambda_min) << ",\n  \"best_constant\": " << fmt17(r.best_constant) << "\n}\n";
  } else {
    os << "n,h,lambda_min,best_constant\n"
       << r.n << ',' << fmt17(r.h) << ',' << fmt17(r.lambda_min) << ',' << fmt17(r.best_constant)
       << '\n';
  }
  write_text(out, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- ddfv ----

int run_ddfv_gen(const std::string& family, int level, const std::string& centers,
                 const std::string& out) {
  const fvineq::CenterPolicy policy = parse_centers(centers);
  const fvineq::DDFVMesh mesh =
      fvineq::build_ddfv(fvineq::refine_family(fvineq::family_from_name(family), level), policy);
  std::ostringstream os;
  fvineq::save_ddfv(os, mesh);
  write_text(out, os.str());
  return kExitOk;
}

int run_ddfv_verify(const fvineq::DDFVSweepConfig& config, const std::string& format,
                    const std::string& out) {
  const std::vector<fvineq::DDFVReport> reports = fvineq::ddfv_estimate_constant(config);
  for (const fvineq::DDFVReport& r : reports) {
    for (double ratio : r.ratios)
      if (!std::isnan(ratio) && !std::isfinite(ratio))
        throw invariant_violation("non-finite sampled ratio at level " + std::to_string(r.level));
    if (r.skipped == r.samples)
      throw invariant_violation("all samples degenerate at level " + std::to_string(r.level));
  }
  std::ostringstream os;
  if (format == "json")
    fvineq::write_ddfv_reports_json(os, reports);
  else
    fvineq::write_ddfv_reports_csv(os, reports);
  write_text(out, os.str());
  return kExitOk;
}

int run_ddfv_solve(const std::string& tensor_name, const std::string& mms, const std::string& family,
                   int level_begin, int level_end, const std::string& gamma0, const std::string& out) {
  std::function<Eigen::Matrix2d(const fvineq::Vec2&)> tensor;
  double coef = 0.0;
  if (tensor_name == "iso") {
    tensor = [](const fvineq::Vec2&) { return Eigen::Matrix2d::Identity().eval(); };
    coef = 2.0;
  } else if (tensor_name == "aniso") {
    tensor = [](const fvineq::Vec2&) {
      Eigen::Matrix2d a;
      a << 1.0, 0.0, 0.0, 100.0;
      return a;
    };
    coef = 101.0;
  } else {
    throw std::invalid_argument("unknown tensor '" + tensor_name + "' (use iso|aniso)");
  }
  if (mms != "sin") throw std::invalid_argument("unknown manufactured solution '" + mms + "'");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  auto exact = [](const fvineq::Vec2& x) {
    return std::sin(std::numbers::pi * x.x()) * std::sin(std::numbers::pi * x.y());
  };
  auto source = [=](const fvineq::Vec2& x) { return coef * pi2 * exact(x); };

  std::ostringstream os;
  os << "level,n,h,dofs,iterations,residual,l2_error,rate\n";
  double previous_error = 0.0;
  for (int level = level_begin; level <= level_end; ++level) {
    const fvineq::DDFVMesh mesh =
        fvineq::build_ddfv(fvineq::refine_family(fvineq::family_from_name(family), level));
    const fvineq::BoundaryTag tag = fvineq::boundary_tag(mesh.primal(), gamma0);
    const fvineq::SolveResult result = fvineq::solve_anisotropic_laplace(mesh, tensor, source, tag);
    const fvineq::DDFVFunction reference = fvineq::ddfv_sample_field(mesh, exact);
    const fvineq::DDFVFunction error(mesh, result.u.primal - reference.primal,
                                     result.u.dual - reference.dual);
    const double l2 = fvineq::ddfv_lp_norm(error, 2.0);
    const double rate = previous_error > 0.0 ? std::log2(previous_error / l2) : 0.0;
    previous_error = l2;
    os << level << ',' << (1 << level) << ',' << fmt17(fvineq::quality(mesh.primal()).h) << ','
       << mesh.n_primal() + mesh.n_dual() << ',' << result.iterations << ','
       << fmt17(result.relative_residual) << ',' << fmt17(l2) << ',' << fmt17(rate) << '\n';
  }
  write_text(out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite volume mesh and discrete functional inequality toolkit"};
  app.require_subcommand(1);

  // mesh ------------------------------------------------------------------
  CLI::App* mesh = app.add_subcommand("mesh", "generate, check and refine meshes");
  mesh->require_subcommand(1);
  std::string mesh_family = "square", mesh_out, mesh_gamma0 = "none", mesh_path;
  int mesh_level = 0;
  double mesh_tol = 1e-9;

  CLI::App* mesh_gen = mesh->add_subcommand("gen", "write a mesh of a refinement family");
  mesh_gen->add_option("--family", mesh_family, "square|cube|acute-square|acute-triangle|perturbed");
  mesh_gen->add_option("--level", mesh_level, "refinement level")->required();
  mesh_gen->add_option("--gamma0", mesh_gamma0, "store a gamma0 tag (all|left|right|bottom|top|none)");
  mesh_gen->add_option("--out", mesh_out, "output path (default stdout)");

  CLI::App* mesh_check = mesh->add_subcommand("check", "validate admissibility of a mesh file");
  mesh_check->add_option("file", mesh_path, "mesh json")->required();
  mesh_check->add_option("--tol", mesh_tol, "relative tolerance");

  CLI::App* mesh_refine = mesh->add_subcommand("refine", "generate a deeper level of a family");
  mesh_refine->add_option("--family", mesh_family, "family name");
  mesh_refine->add_option("--level", mesh_level, "target level")->required();
  mesh_refine->add_option("--out", mesh_out, "output path (default stdout)");

  // norms -----------------------------------------------------------------
  CLI::App* norms = app.add_subcommand("norms", "evaluate discrete norms of a values csv");
  std::string norms_mesh, norms_values, norms_gamma0 = "none", norms_out;
  double norms_p = 2.0;
  norms->add_option("--mesh", norms_mesh, "mesh json")->required();
  norms->add_option("--values", norms_values, "csv of cellId,value lines")->required();
  norms->add_option("--p", norms_p, "norm exponent");
  norms->add_option("--gamma0", norms_gamma0, "boundary selector for the Dirichlet seminorm");
  norms->add_option("--out", norms_out, "output path (default stdout)");

  // verify ----------------------------------------------------------------
  CLI::App* verify = app.add_subcommand("verify", "run an inequality sweep over a mesh family");
  std::string verify_kind = "sp_general", verify_family = "square", verify_levels = "1..3";
  std::string verify_gamma0 = "none", verify_sampler = "default", verify_format = "csv", verify_out;
  double verify_p = 2.0, verify_q = 2.0, verify_theta = 0.0;
  int verify_samples = 100;
  std::uint64_t verify_seed = 0;
  verify->add_option("--kind", verify_kind,
                     "gns_general|sp_general|nash_general|pw|gns_dirichlet|sp_dirichlet|nash_dirichlet");
  verify->add_option("--p", verify_p, "exponent p");
  verify->add_option("--q", verify_q, "exponent q");
  verify->add_option("--theta", verify_theta, "interpolation exponent (GNS kinds)");
  verify->add_option("--family", verify_family, "mesh family");
  verify->add_option("--levels", verify_levels, "level range a..b");
  verify->add_option("--samples", verify_samples, "samples per level");
  verify->add_option("--seed", verify_seed, "rng seed");
  verify->add_option("--gamma0", verify_gamma0, "boundary selector for Dirichlet kinds");
  verify->add_option("--sampler", verify_sampler, "comma list: iid,smooth,indicator,checkerboard,constant");
  verify->add_option("--format", verify_format, "csv|json");
  verify->add_option("--out", verify_out, "output path (default stdout)");

  // eigen -----------------------------------------------------------------
  CLI::App* eigen = app.add_subcommand("eigen", "Dirichlet Poincare eigenvalue oracle (p=q=2)");
  int eigen_n = 8;
  std::string eigen_format = "csv", eigen_out;
  eigen->add_option("--n", eigen_n, "cells per axis of the structured unit square");
  eigen->add_option("--format", eigen_format, "csv|json");
  eigen->add_option("--out", eigen_out, "output path (default stdout)");

  // ddfv ------------------------------------------------------------------
  CLI::App* ddfv = app.add_subcommand("ddfv", "DDFV meshes, sweeps and the demo solver");
  ddfv->require_subcommand(1);
  std::string ddfv_family = "square", ddfv_centers = "stored", ddfv_out;
  int ddfv_level = 1;

  CLI::App* ddfv_gen = ddfv->add_subcommand("gen", "write a DDFV triple mesh");
  ddfv_gen->add_option("--family", ddfv_family, "primal family (square|perturbed|acute-square)");
  ddfv_gen->add_option("--level", ddfv_level, "refinement level")->required();
  ddfv_gen->add_option("--centers", ddfv_centers, "stored|centroid|circumcenter");
  ddfv_gen->add_option("--out", ddfv_out, "output path (default stdout)");

  CLI::App* ddfv_verify = ddfv->add_subcommand("verify", "run a DDFV inequality sweep");
  std::string dv_kind = "sp", dv_family = "square", dv_levels = "1..3", dv_gamma0 = "none";
  std::string dv_sampler = "default", dv_format = "csv", dv_out, dv_centers = "stored";
  double dv_p = 2.0, dv_q = 2.0, dv_theta = 0.0;
  int dv_samples = 100;
  std::uint64_t dv_seed = 0;
  ddfv_verify->add_option("--kind", dv_kind, "gns|sp|pw|gns_dirichlet");
  ddfv_verify->add_option("--p", dv_p, "exponent p");
  ddfv_verify->add_option("--q", dv_q, "exponent q");
  ddfv_verify->add_option("--theta", dv_theta, "interpolation exponent (gns kinds)");
  ddfv_verify->add_option("--family", dv_family, "primal family");
  ddfv_verify->add_option("--centers", dv_centers, "stored|centroid|circumcenter");
  ddfv_verify->add_option("--levels", dv_levels, "level range a..b");
  ddfv_verify->add_option("--samples", dv_samples, "samples per level");
  ddfv_verify->add_option("--seed", dv_seed, "rng seed");
  ddfv_verify->add_option("--gamma0", dv_gamma0, "boundary selector for the Dirichlet kind");
  ddfv_verify->add_option("--sampler", dv_sampler, "sampler mix");
  ddfv_verify->add_option("--format", dv_format, "csv|json");
  ddfv_verify->add_option("--out", dv_out, "output path (default stdout)");

  CLI::App* ddfv_solve = ddfv->add_subcommand("solve", "anisotropic Laplace demo, manufactured solution");
  std::string ds_tensor = "iso", ds_mms = "sin", ds_family = "square", ds_levels = "2..5";
  std::string ds_gamma0 = "all", ds_out;
  ddfv_solve->add_option("--A", ds_tensor, "iso|aniso");
  ddfv_solve->add_option("--mms", ds_mms, "manufactured solution (sin)");
  ddfv_solve->add_option("--family", ds_family, "primal family");
  ddfv_solve->add_option("--levels", ds_levels, "level range a..b");
  ddfv_solve->add_option("--gamma0", ds_gamma0, "Dirichlet part of the boundary");
  ddfv_solve->add_option("--out", ds_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (mesh_gen->parsed()) return run_mesh_gen(mesh_family, mesh_level, mesh_gamma0, mesh_out);
    if (mesh_check->parsed()) return run_mesh_check(mesh_path, mesh_tol);
    if (mesh_refine->parsed()) return run_mesh_gen(mesh_family, mesh_level, "none", mesh_out);
    if (norms->parsed()) return run_norms(norms_mesh, norms_values, norms_p, norms_gamma0, norms_out);
    if (verify->parsed()) {
      fvineq::SweepConfig config;
      config.kind = fvineq::kind_from_name(verify_kind);
      config.p = verify_p;
      config.q = verify_q;
      config.theta = verify_theta;
      config.family = fvineq::family_from_name(verify_family);
      std::tie(config.level_begin, config.level_end) = parse_levels(verify_levels);
      config.samples = verify_samples;
      config.seed = verify_seed;
      config.gamma0 = verify_gamma0;
      config.sampler = fvineq::SamplerSpec::parse(verify_sampler);
      return run_verify(config, verify_format, verify_out);
    }
    if (eigen->parsed()) return run_eigen(eigen_n, eigen_format, eigen_out);
    if (ddfv_gen->parsed()) return run_ddfv_gen(ddfv_family, ddfv_level, ddfv_centers, ddfv_out);
    if (ddfv_verify->parsed()) {
      fvineq::DDFVSweepConfig config;
      config.kind = fvineq::ddfv_kind_from_name(dv_kind);
      config.p = dv_p;
      config.q = dv_q;
      config.theta = dv_theta;
      config.family = fvineq::family_from_name(dv_family);
      config.centers = parse_centers(dv_centers);
      std::tie(config.level_begin, config.level_end) = parse_levels(dv_levels);
      config.samples = dv_samples;
      config.seed = dv_seed;
      config.gamma0 = dv_gamma0;
      config.sampler = fvineq::SamplerSpec::parse(dv_sampler);
      return run_ddfv_verify(config, dv_format, dv_out);
    }
    if (ddfv_solve->parsed()) {
      const auto [begin, end] = parse_levels(ds_levels);
      return run_ddfv_solve(ds_tensor, ds_mms, ds_family, begin, end, ds_gamma0, ds_out);
    }
  } catch (const invariant_violation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
