// Test-only ground truth: exact optimum of the transport LP by enumerating
// every basic solution of the full equality system. Builds its own
// constraint matrix (all rows, nothing dropped) and solves candidate bases
// with a rank-revealing QR, so it shares no code path with the simplex.
#pragma once

#include <optional>
#include <vector>

#include "gencol/plan.hpp"
#include "gencol/problem.hpp"

namespace gencol::testing {

struct BruteForceOptimum {
  double objective = 0.0;
  SparsePlan plan;  // one optimal vertex (first found in enumeration order)
};

/// Optimum over plans supported on `columns`; std::nullopt when infeasible.
/// Cost grows as C(|columns|, rank), so keep instances tiny.
std::optional<BruteForceOptimum> brute_force_lp(
    const Problem& problem, const std::vector<Configuration>& columns);

/// Optimum of the full problem (all configurations as columns).
std::optional<BruteForceOptimum> brute_force_lp(const Problem& problem);

/// All configurations of the product space in lexicographic order.
std::vector<Configuration> product_configurations(const std::vector<int>& sizes);

}  // namespace gencol::testing
