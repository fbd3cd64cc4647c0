#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fvineq/ratios.hpp"
#include "fvineq/rng.hpp"

using namespace fvineq;

namespace {

Mesh grid2() { return structured_mesh(2, 2, Vec3::Zero(), Vec3(1, 1, 0)); }

DiscreteFunction indicator(const Mesh& mesh, int cell) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mesh.n_cells());
  v[cell] = 1.0;
  return DiscreteFunction(mesh, v);
}

DiscreteFunction random_function(const Mesh& mesh, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::VectorXd v(mesh.n_cells());
  for (int k = 0; k < mesh.n_cells(); ++k) v[k] = rng.uniform(-2.0, 2.0);
  return DiscreteFunction(mesh, v);
}

}  // namespace

TEST_CASE("exponent bookkeeping") {
  const ExponentSet worked = admissible_exponents(2.0, 1.0, 2, 0.5);
  CHECK(worked.m == doctest::Approx(2.0).epsilon(1e-15));

  // theta = 0 collapses m to q.
  CHECK(admissible_exponents(2.0, 3.0, 2, 0.0).m == doctest::Approx(3.0).epsilon(1e-15));

  // Direct substitution at the theta bound.
  CHECK(theta_max(2.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(admissible_exponents(2.0, 1.0, 2, 2.0 / 3.0).m == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(admissible_exponents(2.0, 1.0, 2, 0.7), doctest::Contains("theta exceeds"),
                       std::invalid_argument);
  CHECK_THROWS_AS(admissible_exponents(1.0, 1.0, 2, 0.1), std::invalid_argument);  // needs p > 1
  CHECK_THROWS_AS(admissible_exponents(2.5, 1.0, 2, 0.1), std::invalid_argument);  // needs p <= N
  CHECK_THROWS_AS(admissible_exponents(2.0, 0.5, 2, 0.1), std::invalid_argument);  // needs q >= 1

  CHECK(sobolev_conjugate(1.0, 2) == doctest::Approx(2.0));
  CHECK_NOTHROW(validate_sp_exponents(1.0, 2.0, 2));
  CHECK_THROWS_WITH_AS(validate_sp_exponents(1.0, 2.5, 2), doctest::Contains("q exceeds p*"),
                       std::invalid_argument);
  CHECK_NOTHROW(validate_sp_exponents(2.0, 50.0, 2));  // p >= N: any q
}

TEST_CASE("GNS ratio oracles") {
  const Mesh mesh = grid2();
  const ExponentSet exps = admissible_exponents(2.0, 1.0, 2, 0.5);

  // Hand evaluation for the one-cell indicator:
  // ||u||_{0,2} = 0.5, ||u||_{1,2} = 0.5 + sqrt(2), ||u||_{0,1} = 0.25.
  const DiscreteFunction u = indicator(mesh, 0);
  const double expected = 0.5 / (std::sqrt(0.5 + std::sqrt(2.0)) * std::sqrt(0.25));
  CHECK(gns_ratio(u, exps, InequalityVariant::general) == doctest::Approx(expected).epsilon(1e-14));

  // theta = 0 degeneracy: the ratio is identically 1.
  const ExponentSet theta0 = admissible_exponents(2.0, 1.5, 2, 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    CHECK(gns_ratio(random_function(mesh, seed + 1), theta0, InequalityVariant::general) ==
          doctest::Approx(1.0).epsilon(1e-13));

  // Constant with full-boundary Dirichlet seminorm stays finite.
  const BoundaryTag all = boundary_tag(mesh, "all");
  const DiscreteFunction c(mesh, Eigen::VectorXd::Constant(4, 2.0));
  CHECK(std::isfinite(gns_ratio(c, exps, InequalityVariant::dirichlet, &all)));

  const DiscreteFunction zero(mesh, Eigen::VectorXd::Zero(4));
  CHECK_THROWS_AS(gns_ratio(zero, exps, InequalityVariant::general), std::domain_error);
  CHECK_THROWS_AS(gns_ratio(u, exps, InequalityVariant::dirichlet, nullptr), std::invalid_argument);
}

TEST_CASE("Sobolev-Poincare ratio oracles") {
  const Mesh mesh = grid2();
  const DiscreteFunction ones(mesh, Eigen::VectorXd::Ones(4));
  CHECK(sp_ratio(ones, 2.0, 2.0, InequalityVariant::general) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sp_ratio(ones, 1.0, 2.0, InequalityVariant::general) == doctest::Approx(1.0).epsilon(1e-14));

  // Dirichlet variant, p = 2, q = 4, full boundary, one-cell indicator:
  // |u|_{1,2,Gamma} = sqrt(2*1*1 + 2*2*1) = sqrt(6).
  const BoundaryTag all = boundary_tag(mesh, "all");
  const DiscreteFunction u = indicator(mesh, 0);
  CHECK(sp_ratio(u, 2.0, 4.0, InequalityVariant::dirichlet, &all) ==
        doctest::Approx(std::pow(0.25, 0.25) / std::sqrt(6.0)).epsilon(1e-14));

  CHECK_THROWS_AS(sp_ratio(u, 1.0, 3.0, InequalityVariant::general), std::invalid_argument);
}

TEST_CASE("Nash ratio and its GNS identity in 2-D") {
  const Mesh mesh = grid2();
  const DiscreteFunction ones(mesh, Eigen::VectorXd::Ones(4));
  CHECK(nash_ratio(ones, InequalityVariant::general) == doctest::Approx(1.0).epsilon(1e-14));

  // In 2-D the Nash quotient is the square of the GNS quotient at
  // p=2, q=1, theta=1/2, m=2 (squaring the GNS bound gives the Nash bound).
  const ExponentSet exps = admissible_exponents(2.0, 1.0, 2, 0.5);
  const BoundaryTag all = boundary_tag(mesh, "all");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DiscreteFunction u = random_function(mesh, 40 + seed);
    const double g = gns_ratio(u, exps, InequalityVariant::general);
    CHECK(nash_ratio(u, InequalityVariant::general) == doctest::Approx(g * g).epsilon(1e-12));
    const double gd = gns_ratio(u, exps, InequalityVariant::dirichlet, &all);
    CHECK(nash_ratio(u, InequalityVariant::dirichlet, &all) ==
          doctest::Approx(gd * gd).epsilon(1e-12));
  }

  // Scaling leaves the ratio unchanged.
  const DiscreteFunction u = indicator(mesh, 2);
  const DiscreteFunction two_u(mesh, 2.0 * u.values);
  CHECK(nash_ratio(two_u, InequalityVariant::general) ==
        doctest::Approx(nash_ratio(u, InequalityVariant::general)).epsilon(1e-14));
}

TEST_CASE("Poincare-Wirtinger ratio oracles") {
  const Mesh mesh = grid2();
  Eigen::VectorXd v(4);
  v << 1, 2, 3, 4;
  const DiscreteFunction u(mesh, v);
  CHECK(pw_ratio(u) == doctest::Approx(std::sqrt(1.25) / 3.0).epsilon(1e-14));

  const DiscreteFunction ind = indicator(mesh, 0);
  CHECK(pw_ratio(ind) == doctest::Approx(std::sqrt(0.1875)).epsilon(1e-14));

  // Translation invariance.
  const DiscreteFunction shifted(mesh, u.values.array() + 17.5);
  CHECK(pw_ratio(shifted) == doctest::Approx(pw_ratio(u)).epsilon(1e-12));

  const DiscreteFunction c(mesh, Eigen::VectorXd::Constant(4, 3.0));
  CHECK_THROWS_AS(pw_ratio(c), std::domain_error);
}

TEST_CASE("ratios are scale invariant") {
  const Mesh mesh = structured_mesh(2, 4, Vec3::Zero(), Vec3(1, 1, 0));
  const ExponentSet exps = admissible_exponents(2.0, 1.0, 2, 0.5);
  const BoundaryTag all = boundary_tag(mesh, "all");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DiscreteFunction u = random_function(mesh, 100 + seed);
    const double lambda = 0.125 + 5.0 * SplitMix64(seed).uniform();
    const DiscreteFunction lu(mesh, lambda * u.values);
    CHECK(gns_ratio(lu, exps, InequalityVariant::general) ==
          doctest::Approx(gns_ratio(u, exps, InequalityVariant::general)).epsilon(1e-12));
    CHECK(sp_ratio(lu, 2.0, 2.0, InequalityVariant::general) ==
          doctest::Approx(sp_ratio(u, 2.0, 2.0, InequalityVariant::general)).epsilon(1e-12));
    CHECK(nash_ratio(lu, InequalityVariant::dirichlet, &all) ==
          doctest::Approx(nash_ratio(u, InequalityVariant::dirichlet, &all)).epsilon(1e-12));
    CHECK(pw_ratio(lu) == doctest::Approx(pw_ratio(u)).epsilon(1e-12));
  }
}

TEST_CASE("L1 Dirichlet embedding check") {
  const Mesh mesh = grid2();
  const BoundaryTag all = boundary_tag(mesh, "all");
  const BoundaryTag left = boundary_tag(mesh, "left");

  const DiscreteFunction zero(mesh, Eigen::VectorXd::Zero(4));
  const auto [z_lhs, z_rhs] = dirichlet_l1_embedding_check(zero, all);
  CHECK(z_lhs == 0.0);
  CHECK(z_rhs == 0.0);

  // u = 1: rhs is the perimeter.
  const DiscreteFunction ones(mesh, Eigen::VectorXd::Ones(4));
  const auto [o_lhs, o_rhs] = dirichlet_l1_embedding_check(ones, all);
  CHECK(o_lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(o_rhs == doctest::Approx(4.0).epsilon(1e-14));

  // Corner-cell indicator with Gamma0 = left edge.
  const DiscreteFunction ind = indicator(mesh, 0);
  const auto [i_lhs, i_rhs] = dirichlet_l1_embedding_check(ind, left);
  CHECK(i_lhs == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(i_rhs == doctest::Approx(1.5).epsilon(1e-14));

  CHECK_THROWS_AS(dirichlet_l1_embedding_check(ones, boundary_tag(mesh, "none")),
                  std::invalid_argument);

  // The embedding with a mesh-independent constant across a family.
  for (int level = 1; level <= 4; ++level) {
    const Mesh m = refine_family(MeshFamily::structured_square, level);
    const BoundaryTag tag = boundary_tag(m, "all");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const DiscreteFunction u = random_function(m, 500 + seed);
      const auto [lhs, rhs] = dirichlet_l1_embedding_check(u, tag);
      CHECK(lhs <= 1.0 * rhs);  // c(Omega) = 1 comfortably covers the unit square
    }
  }
}
