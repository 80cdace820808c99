#include "doctest.h"

#include <cmath>

#include "gencol/oracle.hpp"
#include "gencol/plan.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"

using namespace gencol;
using gencol::testing::brute_force_lp;
using gencol::testing::random_two_marginal;

TEST_CASE("plan_marginals: single atom") {
  SparsePlan plan;
  plan.set(Configuration{0, 0}, 1.0);
  const auto marginals = plan_marginals(plan, {2, 2});
  CHECK(marginals[0] == std::vector<double>{1.0, 0.0});
  CHECK(marginals[1] == std::vector<double>{1.0, 0.0});
}

TEST_CASE("plan_marginals: cyclic three-marginal plan is uniform") {
  SparsePlan plan;
  plan.set(Configuration{0, 1, 2}, 1.0 / 3.0);
  plan.set(Configuration{1, 2, 0}, 1.0 / 3.0);
  plan.set(Configuration{2, 0, 1}, 1.0 / 3.0);
  for (const auto& axis : plan_marginals(plan, {3, 3, 3})) {
    for (double w : axis) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("plan_marginals: symmetric two-atom plan") {
  SparsePlan plan;
  plan.set(Configuration{0, 1}, 0.5);
  plan.set(Configuration{1, 0}, 0.5);
  const auto marginals = plan_marginals(plan, {2, 2});
  CHECK(marginals[0] == std::vector<double>{0.5, 0.5});
  CHECK(marginals[1] == std::vector<double>{0.5, 0.5});
}

TEST_CASE("plan_marginals: out-of-range index is rejected") {
  SparsePlan plan;
  plan.set(Configuration{0, 5}, 1.0);
  CHECK_THROWS_AS(plan_marginals(plan, {2, 2}), ValidationError);
}

TEST_CASE("plan_cost on the 0/1/2 cost") {
  const CostSpec cost = [] {
    std::vector<double> table;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          if (a == b && b == c) table.push_back(0.0);
          else if (a != b && a != c && b != c) table.push_back(1.0);
          else table.push_back(2.0);
        }
    return CostSpec::from_table({3, 3, 3}, table);
  }();

  SparsePlan gamma0;
  gamma0.set(Configuration{0, 1, 2}, 1.0 / 3.0);
  gamma0.set(Configuration{1, 2, 0}, 1.0 / 3.0);
  gamma0.set(Configuration{2, 0, 1}, 1.0 / 3.0);
  CHECK(plan_cost(gamma0, cost) == doctest::Approx(1.0).epsilon(1e-12));

  SparsePlan gamma_star;
  gamma_star.set(Configuration{0, 0, 0}, 1.0 / 3.0);
  gamma_star.set(Configuration{1, 1, 1}, 1.0 / 3.0);
  gamma_star.set(Configuration{2, 2, 2}, 1.0 / 3.0);
  CHECK(plan_cost(gamma_star, cost) == 0.0);

  const CostSpec zero = CostSpec::from_function(
      {3, 3, 3}, [](const Configuration&) { return 0.0; });
  CHECK(plan_cost(gamma0, zero) == 0.0);
}

TEST_CASE("plan_cost is linear under plan mixing") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mass(0.1, 1.0);
  const CostSpec cost = CostSpec::from_function(
      {4, 4}, [](const Configuration& r) { return 3.0 * r[0] - 1.5 * r[1]; });

  for (int trial = 0; trial < 20; ++trial) {
    SparsePlan a;
    SparsePlan b;
    for (int i = 0; i < 4; ++i) {
      a.set(Configuration{i, (i + 1) % 4}, mass(rng));
      b.set(Configuration{i, (i + 2) % 4}, mass(rng));
      b.set(Configuration{i, i}, mass(rng));
    }
    const double alpha = 0.25 * (trial + 1) / 21.0;

    SparsePlan mixed;
    for (const auto& [r, m] : a.entries()) mixed.set(r, alpha * m);
    for (const auto& [r, m] : b.entries()) {
      const double combined = mixed.mass(r) + (1.0 - alpha) * m;
      mixed.set(r, combined);
    }
    const double expected =
        alpha * plan_cost(a, cost) + (1.0 - alpha) * plan_cost(b, cost);
    CHECK(plan_cost(mixed, cost) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("gain arithmetic") {
  const CostSpec one = CostSpec::from_function(
      {2, 2}, [](const Configuration&) { return 1.0; });

  DualPotentials zero{{{0.0, 0.0}, {0.0, 0.0}}};
  CHECK(gain(zero, Configuration{0, 1}, one) == -1.0);

  DualPotentials u{{{1.0, 0.0}, {0.0, 1.0}}};
  CHECK(gain(u, Configuration{0, 1}, one) == doctest::Approx(1.0));
}

TEST_CASE("gain vanishes on the support of a dense optimum") {
  const Problem problem = random_two_marginal(4, 4, 42);
  const DenseSolution sol = solve_dense_lp(problem);

  // Independent route to the same optimum.
  const auto brute = brute_force_lp(problem);
  REQUIRE(brute.has_value());
  CHECK(std::abs(sol.objective - brute->objective) <= 1e-9);

  const double tol = problem.tolerances().lp;
  for (const auto& [r, mass] : sol.plan.entries()) {
    CHECK(std::abs(gain(sol.potentials, r, problem.cost())) <= tol);
  }
}

TEST_CASE("dual_objective basics") {
  DualPotentials zero{{{0.0, 0.0}, {0.0}}};
  std::vector<DiscreteMarginal> marginals{DiscreteMarginal({0.5, 0.5}),
                                          DiscreteMarginal({1.0})};
  CHECK(dual_objective(zero, marginals) == 0.0);

  DualPotentials flat{{{3.0, 3.0, 3.0}}};
  std::vector<DiscreteMarginal> uniform{
      DiscreteMarginal({1.0 / 3, 1.0 / 3, 1.0 / 3})};
  CHECK(dual_objective(flat, uniform) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("strong duality at a dense optimum") {
  const Problem problem = random_two_marginal(5, 5, 99);
  const DenseSolution sol = solve_dense_lp(problem);
  const double dual = dual_objective(sol.potentials, problem.marginals());
  CHECK(std::abs(dual - sol.objective) <= problem.tolerances().lp);
}

TEST_CASE("gauge normalization fixes leading potentials at zero") {
  DualPotentials u{{{2.0, 3.0}, {1.5, -1.0}, {0.25, 4.0}}};
  const DualPotentials fixed = gauge_normalized(u);
  CHECK(fixed.values[0][0] == 0.0);
  CHECK(fixed.values[1][0] == 0.0);

  const CostSpec cost = CostSpec::from_function(
      {2, 2, 2}, [](const Configuration& r) { return r[0] + r[1] + r[2]; });
  const Configuration probe{1, 0, 1};
  CHECK(gain(fixed, probe, cost) ==
        doctest::Approx(gain(u, probe, cost)).epsilon(1e-12));
}

TEST_CASE("marginal validation") {
  CHECK_THROWS_AS(DiscreteMarginal({0.5, 0.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(DiscreteMarginal({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(DiscreteMarginal({}), ValidationError);
  CHECK_NOTHROW(DiscreteMarginal({0.5, 0.5}));
}

TEST_CASE("sparse plan rejects nonpositive masses and duplicates") {
  SparsePlan plan;
  CHECK_THROWS_AS(plan.set(Configuration{0, 0}, 0.0), ValidationError);
  CHECK_THROWS_AS(plan.set(Configuration{0, 0}, -1.0), ValidationError);
  CHECK_THROWS_AS(
      SparsePlan::from_entries({{Configuration{0, 0}, 0.5},
                                {Configuration{0, 0}, 0.5}}),
      ValidationError);
}

TEST_CASE("cost table must agree with its shape") {
  CHECK_THROWS_AS(CostSpec::from_table({2, 2}, {1.0, 2.0, 3.0}),
                  ValidationError);
  const CostSpec cost = CostSpec::from_table({2, 2}, {1.0, 2.0, 3.0, 4.0});
  CHECK(cost(Configuration{1, 0}) == 3.0);
  CHECK(cost.max_abs() == 4.0);
  CHECK_THROWS_AS(cost(Configuration{2, 0}), ValidationError);
}
