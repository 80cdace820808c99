#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gencol/plan.hpp"
#include "gencol/problem.hpp"

namespace gencol {

/// Exact optimum of the full problem.
struct DenseSolution {
  SparsePlan plan;
  DualPotentials potentials;
  double objective = 0.0;
};

/// Solves the full transport LP by posing the reduced solver on the entire
/// product space. Throws SizeGuardError when the product exceeds the dense
/// guard. The returned plan is an extreme point.
DenseSolution solve_dense_lp(const Problem& problem);

/// Witness that a support is not c-cyclically monotone: a cycle of support
/// points whose second coordinates can be rotated at strictly lower cost.
struct CcmViolation {
  std::vector<Configuration> points;   // in cycle order
  std::vector<int> permutation;        // sigma; point i pairs with y of points[sigma[i]]
  double original_cost = 0.0;
  double permuted_cost = 0.0;
};

/// Exhaustive c-cyclical-monotonicity check for two-marginal supports.
/// Searches subsets of size k <= max_k in increasing k, lexicographic
/// subsets, canonical cycle order, and returns the first strict violation
/// (beyond tol) or nothing. Single cycles suffice: any violating permutation
/// contains a violating cycle. Throws ValidationError unless arity is 2.
std::optional<CcmViolation> check_ccm(const std::vector<Configuration>& support,
                                      const CostSpec& cost, int max_k,
                                      double tol);

/// Scans the whole product space for the configuration with maximal gain.
/// Returns it when the gain exceeds accept_tol (the potentials then violate
/// the dual of the full problem); returns nothing when the potentials are
/// admissible, which certifies optimality of the matching primal plan.
/// Throws SizeGuardError beyond the dense guard.
std::optional<std::pair<Configuration, double>> certify_full_dual_feasibility(
    const DualPotentials& u, const CostSpec& cost, double accept_tol);

/// True iff |supp(plan)| <= 1 + sum_i (l_i - 1).
bool audit_sparsity(const SparsePlan& plan, const std::vector<int>& sizes);

}  // namespace gencol
