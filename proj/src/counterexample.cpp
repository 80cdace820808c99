#include "gencol/counterexample.hpp"

#include <cmath>
#include <set>

#include "gencol/gencol.hpp"
#include "gencol/reduced_lp.hpp"

namespace gencol {

CostSpec counterexample_cost() {
  const std::vector<int> sizes{3, 3, 3};
  std::vector<double> table;
  table.reserve(27);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        double value = 2.0;
        if (a == b && b == c) {
          value = 0.0;
        } else if (a != b && a != c && b != c) {
          value = 1.0;
        }
        table.push_back(value);
      }
    }
  }
  return CostSpec::from_table(sizes, std::move(table));
}

CounterexampleFixture build_fixture() {
  const std::vector<double> uniform{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  std::vector<DiscreteMarginal> marginals{DiscreteMarginal(uniform),
                                          DiscreteMarginal(uniform),
                                          DiscreteMarginal(uniform)};

  SparsePlan gamma0;
  gamma0.set(Configuration{0, 1, 2}, 1.0 / 3.0);
  gamma0.set(Configuration{1, 2, 0}, 1.0 / 3.0);
  gamma0.set(Configuration{2, 0, 1}, 1.0 / 3.0);

  SparsePlan gamma_star;
  gamma_star.set(Configuration{0, 0, 0}, 1.0 / 3.0);
  gamma_star.set(Configuration{1, 1, 1}, 1.0 / 3.0);
  gamma_star.set(Configuration{2, 2, 2}, 1.0 / 3.0);

  std::set<Configuration> proposals;
  const std::vector<int> sizes{3, 3, 3};
  for (const auto& [parent, mass] : gamma0.entries()) {
    for (auto& child :
         enumerate_children(parent, SearchRule::single_entry, sizes)) {
      if (!gamma0.contains(child)) proposals.insert(std::move(child));
    }
  }

  return CounterexampleFixture{
      Problem(std::move(marginals), counterexample_cost()),
      std::move(gamma0),
      std::move(gamma_star),
      {proposals.begin(), proposals.end()},
  };
}

bool verify_stationarity(const CounterexampleFixture& fixture) {
  const std::vector<int>& sizes = fixture.problem.sizes();
  std::set<Configuration> allowed(fixture.one_entry_proposals.begin(),
                                  fixture.one_entry_proposals.end());
  for (const auto& [r, mass] : fixture.gamma0.entries()) allowed.insert(r);

  // (a) The one-entry mutation closure of supp(gamma0) stays inside the
  // proposal list plus supp(gamma0).
  for (const auto& [parent, mass] : fixture.gamma0.entries()) {
    for (const auto& child :
         enumerate_children(parent, SearchRule::single_entry, sizes)) {
      if (allowed.count(child) == 0) return false;
    }
  }

  // (b) Every proposal costs exactly 2.
  for (const auto& r : fixture.one_entry_proposals) {
    if (std::abs(fixture.problem.cost()(r) - 2.0) > 1e-12) return false;
  }

  // (c) Adding every proposal at once does not move the reduced optimum.
  ActiveSet omega;
  for (const auto& [r, mass] : fixture.gamma0.entries()) omega.insert(r);
  for (const auto& r : fixture.one_entry_proposals) omega.insert(r);
  const ReducedSolution sol = solve_reduced(omega, fixture.problem);

  const double tol = fixture.problem.tolerances().lp;
  const double gamma0_cost = plan_cost(fixture.gamma0, fixture.problem.cost());
  if (std::abs(sol.objective - gamma0_cost) > tol) return false;
  if (sol.plan.support_size() != fixture.gamma0.support_size()) return false;
  for (const auto& [r, mass] : fixture.gamma0.entries()) {
    if (std::abs(sol.plan.mass(r) - mass) > tol) return false;
  }
  return true;
}

}  // namespace gencol
