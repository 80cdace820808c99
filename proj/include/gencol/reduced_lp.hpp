#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "gencol/plan.hpp"
#include "gencol/problem.hpp"

namespace gencol {

/// The ordered pool of feasible configurations the reduced problem is posed
/// on, with per-configuration age metadata for tail clearing. Insertion
/// order is preserved across removals.
class ActiveSet {
 public:
  ActiveSet() = default;

  /// Builds an active set from explicit configurations and verifies via a
  /// phase-1 solve that it can carry a transport plan for the marginals.
  /// Throws FeasibilityError otherwise.
  static ActiveSet checked(std::vector<Configuration> configs,
                           const std::vector<DiscreteMarginal>& marginals);

  /// Inserts a configuration with the given age stamp. Returns false and
  /// leaves the set unchanged when the configuration is already present.
  bool insert(const Configuration& r, std::int64_t iteration = 0);

  /// Marks a configuration as active in the given iteration.
  void touch(const Configuration& r, std::int64_t iteration);

  /// Removes every configuration in `victims`; survivors keep their
  /// insertion order and metadata.
  void erase(const std::set<Configuration>& victims);

  bool contains(const Configuration& r) const { return meta_.count(r) > 0; }
  int size() const { return static_cast<int>(configs_.size()); }
  const std::vector<Configuration>& configs() const { return configs_; }

  std::int64_t last_active(const Configuration& r) const;
  std::int64_t insertion_serial(const Configuration& r) const;

 private:
  struct Meta {
    std::int64_t serial = 0;
    std::int64_t last_active = 0;
  };

  std::vector<Configuration> configs_;
  std::map<Configuration, Meta> meta_;
  std::int64_t next_serial_ = 0;
};

/// One basic column of the simplex basis: either a real configuration or a
/// phase-1 artificial pinned at zero for one constraint row.
struct BasisColumn {
  Configuration config;
  std::int32_t artificial_row = -1;

  bool is_artificial() const { return artificial_row >= 0; }
  static BasisColumn real(Configuration r) { return {std::move(r), -1}; }
  static BasisColumn artificial(std::int32_t row) { return {{}, row}; }
};

/// The current simplex basis in position order. Together with the previous
/// plan's masses this is sufficient state to warm-start the next solve.
struct Basis {
  std::vector<BasisColumn> columns;

  bool empty() const { return columns.empty(); }
  int size() const { return static_cast<int>(columns.size()); }
};

/// Primal-dual solution of the reduced problem: an extreme-point plan, dual
/// potentials with complementary slackness on the plan's support, and the
/// basis needed to warm-start.
struct ReducedSolution {
  SparsePlan plan;
  DualPotentials potentials;
  Basis basis;
  double objective = 0.0;
  std::int64_t phase1_pivots = 0;
  std::int64_t phase2_pivots = 0;
};

/// Solves the transport LP restricted to an explicit column list with a
/// revised primal simplex (two-phase on cold starts). When a warm basis is
/// supplied and still optimal the returned plan is bitwise the previous
/// plan. Throws FeasibilityError when the columns carry no transport plan.
/// tol_base scales the optimality tolerance as tol_base * (1 + |c|_inf).
ReducedSolution solve_on_columns(const Problem& problem,
                                 const std::vector<Configuration>& columns,
                                 const Basis* warm = nullptr,
                                 const SparsePlan* warm_plan = nullptr,
                                 double tol_base = 1e-9);

/// Same solver posed on an active set.
ReducedSolution solve_reduced(const ActiveSet& omega, const Problem& problem,
                              const Basis* warm = nullptr,
                              const SparsePlan* warm_plan = nullptr,
                              double tol_base = 1e-9);

/// Greedy northwest-corner sweep (sequential multi-axis analogue for three
/// or more marginals): repeatedly place the minimum remaining mass on the
/// current index tuple and advance every exhausted axis. The result is a
/// feasible plan supported on at most 1 + sum_i (l_i - 1) configurations.
SparsePlan northwest_corner_plan(const std::vector<DiscreteMarginal>& marginals);

/// Active set carrying the northwest-corner plan.
ActiveSet initial_feasible_set(const std::vector<DiscreteMarginal>& marginals);

/// Inserts a column into the active set. Returns false (no-op) when the
/// configuration is already present.
bool add_column(ActiveSet& omega, const Configuration& r,
                std::int64_t iteration = 0);

/// Phase-1 feasibility test: can a plan with the given marginals be
/// supported inside `configs`?
bool is_feasible_support(const std::vector<Configuration>& configs,
                         const std::vector<DiscreteMarginal>& marginals);

/// Number of linearly independent marginal constraints,
/// 1 + sum_i (l_i - 1); equals the basis size and the extreme-point
/// support bound.
int constraint_rank(const std::vector<int>& sizes);

}  // namespace gencol
