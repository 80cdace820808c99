#pragma once

#include <map>
#include <vector>

#include "gencol/problem.hpp"

namespace gencol {

/// A finitely supported nonnegative measure on configurations. Entries are
/// strictly positive; a configuration absent from the map carries zero mass.
class SparsePlan {
 public:
  using Map = std::map<Configuration, double>;

  SparsePlan() = default;

  /// Builds a plan from (configuration, mass) pairs, rejecting nonpositive
  /// masses and duplicate configurations.
  static SparsePlan from_entries(
      const std::vector<std::pair<Configuration, double>>& entries);

  /// Inserts or overwrites one entry; the mass must be strictly positive.
  void set(const Configuration& r, double mass);

  double mass(const Configuration& r) const;
  bool contains(const Configuration& r) const { return entries_.count(r) > 0; }

  int support_size() const { return static_cast<int>(entries_.size()); }
  double total_mass() const;

  /// Support in lexicographic configuration order.
  std::vector<Configuration> support() const;

  const Map& entries() const { return entries_; }
  bool operator==(const SparsePlan&) const = default;

 private:
  Map entries_;
};

/// Kantorovich potentials: one real vector per marginal. Only determined up
/// to constant shifts summing to zero.
struct DualPotentials {
  std::vector<std::vector<double>> values;

  int arity() const { return static_cast<int>(values.size()); }
  bool operator==(const DualPotentials&) const = default;
};

/// Axis-wise projections of a plan. Each returned vector has length sizes[i]
/// and sums to the plan's total mass. Throws ValidationError when any plan
/// index is out of range.
std::vector<std::vector<double>> plan_marginals(const SparsePlan& plan,
                                                const std::vector<int>& sizes);

/// Total transport cost sum_r c(r) * mass(r).
double plan_cost(const SparsePlan& plan, const CostSpec& cost);

/// gain(u, r) = sum_i u_i(r_i) - c(r). Positive gain means r violates the
/// dual constraint of the full problem.
double gain(const DualPotentials& u, const Configuration& r,
            const CostSpec& cost);

/// sum_i <mu_i, u_i>.
double dual_objective(const DualPotentials& u,
                      const std::vector<DiscreteMarginal>& marginals);

/// Fixes the shift gauge: u_i(0) = 0 for every axis but the last, with the
/// slack absorbed into the last axis. Gains and the dual objective (for
/// probability marginals) are unchanged.
DualPotentials gauge_normalized(DualPotentials u);

}  // namespace gencol
