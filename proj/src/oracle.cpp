#include "gencol/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "gencol/reduced_lp.hpp"

namespace gencol {

namespace {

void check_dense_guard(std::int64_t product) {
  if (product > kDenseGuard) {
    throw SizeGuardError("product space has more than " +
                         std::to_string(kDenseGuard) +
                         " configurations; dense enumeration refused");
  }
}

std::vector<Configuration> all_configurations(const std::vector<int>& sizes) {
  std::vector<Configuration> out;
  Configuration r(std::vector<std::int32_t>(sizes.size(), 0));
  while (true) {
    out.push_back(r);
    int axis = static_cast<int>(sizes.size()) - 1;
    while (axis >= 0) {
      if (++r[axis] < sizes[axis]) break;
      r[axis] = 0;
      --axis;
    }
    if (axis < 0) return out;
  }
}

}  // namespace

DenseSolution solve_dense_lp(const Problem& problem) {
  check_dense_guard(problem.product_size());
  const std::vector<Configuration> columns =
      all_configurations(problem.sizes());
  ReducedSolution reduced = solve_on_columns(problem, columns);
  DenseSolution dense;
  dense.plan = std::move(reduced.plan);
  dense.potentials = std::move(reduced.potentials);
  dense.objective = reduced.objective;
  return dense;
}

std::optional<CcmViolation> check_ccm(const std::vector<Configuration>& support,
                                      const CostSpec& cost, int max_k,
                                      double tol) {
  if (cost.arity() != 2) {
    throw ValidationError("the c-cyclical-monotonicity check is only "
                          "supported for two marginals");
  }
  if (max_k < 2) throw ValidationError("max_k must be at least 2");

  std::vector<Configuration> points = support;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const int s = static_cast<int>(points.size());

  const auto pair_cost = [&](const Configuration& a, const Configuration& b) {
    return cost(Configuration{a[0], b[1]});
  };

  for (int k = 2; k <= std::min(max_k, s); ++k) {
    // Lexicographic k-subsets of the sorted support.
    std::vector<int> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      // Canonical cycles: first element fixed, remaining order permuted.
      std::vector<int> rest(subset.begin() + 1, subset.end());
      do {
        std::vector<int> cycle;
        cycle.reserve(k);
        cycle.push_back(subset[0]);
        cycle.insert(cycle.end(), rest.begin(), rest.end());

        double original = 0.0;
        double permuted = 0.0;
        for (int i = 0; i < k; ++i) {
          const Configuration& from = points[cycle[i]];
          const Configuration& to = points[cycle[(i + 1) % k]];
          original += cost(from);
          permuted += pair_cost(from, to);
        }
        if (permuted < original - tol) {
          CcmViolation violation;
          violation.points.reserve(k);
          for (int i = 0; i < k; ++i) violation.points.push_back(points[cycle[i]]);
          violation.permutation.resize(k);
          for (int i = 0; i < k; ++i) violation.permutation[i] = (i + 1) % k;
          violation.original_cost = original;
          violation.permuted_cost = permuted;
          return violation;
        }
      } while (std::next_permutation(rest.begin(), rest.end()));

      // Advance the subset.
      int pos = k - 1;
      while (pos >= 0 && subset[pos] == s - k + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int q = pos + 1; q < k; ++q) subset[q] = subset[q - 1] + 1;
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Configuration, double>> certify_full_dual_feasibility(
    const DualPotentials& u, const CostSpec& cost, double accept_tol) {
  const std::vector<int>& sizes = cost.sizes();
  if (u.arity() != cost.arity()) {
    throw ValidationError("potentials arity does not match the cost");
  }
  for (int axis = 0; axis < u.arity(); ++axis) {
    if (static_cast<int>(u.values[axis].size()) != sizes[axis]) {
      throw ValidationError("potential vector " + std::to_string(axis) +
                            " has the wrong length");
    }
  }
  check_dense_guard(cost.product_size());

  std::optional<std::pair<Configuration, double>> best;
  Configuration r(std::vector<std::int32_t>(sizes.size(), 0));
  while (true) {
    const double g = gain(u, r, cost);
    if (g > accept_tol && (!best.has_value() || g > best->second)) {
      best = {r, g};
    }
    int axis = static_cast<int>(sizes.size()) - 1;
    while (axis >= 0) {
      if (++r[axis] < sizes[axis]) break;
      r[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return best;
}

bool audit_sparsity(const SparsePlan& plan, const std::vector<int>& sizes) {
  int bound = 1;
  for (int s : sizes) bound += s - 1;
  return plan.support_size() <= bound;
}

}  // namespace gencol
