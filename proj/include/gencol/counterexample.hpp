#pragma once

#include <vector>

#include "gencol/plan.hpp"
#include "gencol/problem.hpp"

namespace gencol {

/// The three-marginal instance on which the single-entry search rule
/// stalls: three uniform marginals on three points with cost 0 when all
/// entries agree, 1 when all are pairwise distinct, 2 otherwise. gamma0
/// (the cyclic plan) is stationary under single-entry proposals while the
/// diagonal plan gamma_star is the global optimum.
struct CounterexampleFixture {
  Problem problem;
  SparsePlan gamma0;
  SparsePlan gamma_star;
  /// Every configuration reachable from supp(gamma0) by changing exactly
  /// one entry; all of them cost 2.
  std::vector<Configuration> one_entry_proposals;
};

/// The 0/1/2 cost on {0,1,2}^3.
CostSpec counterexample_cost();

CounterexampleFixture build_fixture();

/// True iff (a) the one-entry mutation closure of supp(gamma0) lies inside
/// one_entry_proposals plus supp(gamma0), (b) every proposal costs exactly
/// 2, and (c) re-solving the reduced problem on supp(gamma0) plus all
/// proposals returns gamma0 at unchanged objective.
bool verify_stationarity(const CounterexampleFixture& fixture);

}  // namespace gencol
