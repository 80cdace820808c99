#include "gencol/gencol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gencol/oracle.hpp"

namespace gencol {

std::string to_string(SearchRule rule) {
  switch (rule) {
    case SearchRule::two_marginal: return "two-marginal";
    case SearchRule::single_entry: return "single-entry";
    case SearchRule::many_entry: return "many-entry";
  }
  return "?";
}

SearchRule parse_rule(const std::string& name) {
  if (name == "two-marginal" || name == "two_marginal") {
    return SearchRule::two_marginal;
  }
  if (name == "single-entry" || name == "single_entry") {
    return SearchRule::single_entry;
  }
  if (name == "many-entry" || name == "many_entry") {
    return SearchRule::many_entry;
  }
  throw ValidationError("unknown search rule '" + name + "'");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::exhausted_proposals: return "exhausted_proposals";
    case Termination::max_iterations: return "max_iterations";
  }
  return "?";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::certified_optimal: return "certified_optimal";
    case Certificate::uncertified: return "uncertified";
    case Certificate::stationary_under_rule: return "stationary_under_rule";
  }
  return "?";
}

SearchRule GenColConfig::resolved_rule(int arity) const {
  if (rule.has_value()) return *rule;
  return arity == 2 ? SearchRule::two_marginal : SearchRule::single_entry;
}

void GenColConfig::validate(const Problem& problem) const {
  if (!(beta > 1.0)) {
    throw ValidationError("beta must be greater than 1");
  }
  if (resolved_rule(problem.arity()) == SearchRule::two_marginal &&
      problem.arity() != 2) {
    throw ValidationError(
        "the two-marginal rule needs exactly two marginals; use "
        "single-entry or many-entry");
  }
  if (max_outer_iterations < 0) {
    throw ValidationError("max_outer_iterations must be nonnegative");
  }
}

namespace {

// Uniform integer in [0, n) by rejection; bit-identical across platforms.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

template <typename T>
void shuffle_in_place(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_index(rng, i)]);
  }
}

}  // namespace

std::vector<Configuration> enumerate_children(const Configuration& parent,
                                              SearchRule rule,
                                              const std::vector<int>& sizes) {
  const int n = static_cast<int>(sizes.size());
  if (parent.arity() != n) {
    throw ValidationError("parent arity does not match the marginal count");
  }
  if (!parent.in_range(sizes)) {
    throw ValidationError("parent " + parent.to_string() + " is out of range");
  }
  if (rule == SearchRule::two_marginal && n != 2) {
    throw ValidationError("the two-marginal rule needs exactly two marginals");
  }

  if (rule == SearchRule::two_marginal || rule == SearchRule::single_entry) {
    // Change exactly one entry; distinct axes never collide.
    std::vector<Configuration> children;
    for (int axis = 0; axis < n; ++axis) {
      for (int v = 0; v < sizes[axis]; ++v) {
        if (v == parent[axis]) continue;
        Configuration child = parent;
        child[axis] = v;
        children.push_back(std::move(child));
      }
    }
    return children;
  }

  // many-entry: keep one entry, vary all others; slabs overlap, so collect
  // into a set and drop the parent.
  std::set<Configuration> children;
  for (int fixed = 0; fixed < n; ++fixed) {
    Configuration child(std::vector<std::int32_t>(n, 0));
    child[fixed] = parent[fixed];
    while (true) {
      if (child != parent) children.insert(child);
      int axis = n - 1;
      while (axis >= 0) {
        if (axis == fixed) {
          --axis;
          continue;
        }
        if (++child[axis] < sizes[axis]) break;
        child[axis] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return {children.begin(), children.end()};
}

std::vector<Configuration> propose_children(const Configuration& parent,
                                            SearchRule rule,
                                            const std::vector<int>& sizes,
                                            std::mt19937_64& rng) {
  std::vector<Configuration> children = enumerate_children(parent, rule, sizes);
  shuffle_in_place(children, rng);
  return children;
}

std::int64_t active_set_bound(double beta, const std::vector<int>& sizes) {
  double sum = 0.0;
  for (int s : sizes) sum += s;
  return static_cast<std::int64_t>(std::ceil(beta * sum));
}

int tail_clear(ActiveSet& omega, const SparsePlan& current_plan, double beta,
               const std::vector<int>& sizes,
               const std::vector<Configuration>& protected_configs) {
  if (omega.size() <= active_set_bound(beta, sizes)) return 0;

  std::set<Configuration> keep;
  for (const auto& [r, mass] : current_plan.entries()) keep.insert(r);
  for (const auto& r : protected_configs) keep.insert(r);

  // Oldest first: by last_active, then by insertion order.
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, Configuration>>
      removable;
  for (const auto& r : omega.configs()) {
    if (keep.count(r) > 0) continue;
    removable.push_back({{omega.last_active(r), omega.insertion_serial(r)}, r});
  }
  std::sort(removable.begin(), removable.end());

  std::int64_t batch = 0;
  for (int s : sizes) batch += s;
  std::set<Configuration> victims;
  for (const auto& [age, r] : removable) {
    if (static_cast<std::int64_t>(victims.size()) >= batch) break;
    victims.insert(r);
  }
  omega.erase(victims);
  return static_cast<int>(victims.size());
}

GenColSolver::GenColSolver(const Problem& problem, GenColConfig config)
    : GenColSolver(problem, std::move(config),
                   initial_feasible_set(problem.marginals())) {}

GenColSolver::GenColSolver(const Problem& problem, GenColConfig config,
                           ActiveSet initial)
    : problem_(problem),
      config_(std::move(config)),
      rule_(config_.resolved_rule(problem.arity())),
      omega_(std::move(initial)),
      rng_(config_.seed) {
  config_.validate(problem_);
  accept_tol_ = config_.accept_tol >= 0.0
                    ? config_.accept_tol
                    : problem_.tolerances(config_.tol_base).accept;
  bound_ = active_set_bound(config_.beta, problem_.sizes());
  if (omega_.size() == 0) {
    throw FeasibilityError("initial active set is empty");
  }
  initial_solve();
}

void GenColSolver::initial_solve() {
  solution_ = solve_reduced(omega_, problem_, nullptr, nullptr,
                            config_.tol_base);
  for (const auto& [r, mass] : solution_.plan.entries()) {
    omega_.touch(r, iteration_);
  }
  record();
}

void GenColSolver::record() {
  trajectory_.emplace_back(iteration_, solution_.objective);
  sizes_log_.push_back(omega_.size());
  max_support_ = std::max(max_support_, solution_.plan.support_size());
  if (!audit_sparsity(solution_.plan, problem_.sizes())) {
    throw InternalError("reduced solution violates the extreme-point "
                        "support bound");
  }
}

bool GenColSolver::step() {
  if (exhausted_) return false;

  // A seeded random permutation of every (parent, child) proposal of the
  // current solution; invalidated by the re-solve at the end of the step.
  std::vector<std::pair<Configuration, Configuration>> schedule;
  for (const auto& [parent, mass] : solution_.plan.entries()) {
    for (auto& child : enumerate_children(parent, rule_, problem_.sizes())) {
      if (omega_.contains(child)) continue;
      schedule.emplace_back(parent, std::move(child));
    }
  }
  shuffle_in_place(schedule, rng_);

  for (const auto& [parent, child] : schedule) {
    if (gain(solution_.potentials, child, problem_.cost()) <= accept_tol_) {
      continue;
    }

    ++iteration_;
    omega_.insert(child, iteration_);
    if (omega_.size() > bound_) {
      std::vector<Configuration> protected_configs;
      protected_configs.push_back(child);
      for (const auto& column : solution_.basis.columns) {
        if (!column.is_artificial()) protected_configs.push_back(column.config);
      }
      tail_clear(omega_, solution_.plan, config_.beta, problem_.sizes(),
                 protected_configs);
    }

    solution_ = solve_reduced(omega_, problem_, &solution_.basis,
                              &solution_.plan, config_.tol_base);
    for (const auto& [r, mass] : solution_.plan.entries()) {
      omega_.touch(r, iteration_);
    }
    record();
    return true;
  }

  exhausted_ = true;
  return false;
}

SolveReport GenColSolver::run() {
  while (iteration_ < config_.max_outer_iterations) {
    if (!step()) break;
  }

  SolveReport report;
  report.final_plan = solution_.plan;
  report.final_potentials = solution_.potentials;
  report.final_objective = solution_.objective;
  report.objective_trajectory = trajectory_;
  report.active_set_sizes = sizes_log_;
  report.termination = exhausted_ ? Termination::exhausted_proposals
                                  : Termination::max_iterations;
  report.rng_seed = config_.seed;
  report.max_support_size = max_support_;

  report.certificate = Certificate::uncertified;
  if (config_.request_certificate &&
      problem_.product_size() <= kDenseGuard) {
    const auto violator = certify_full_dual_feasibility(
        solution_.potentials, problem_.cost(), accept_tol_);
    if (!violator.has_value()) {
      report.certificate = Certificate::certified_optimal;
    } else if (exhausted_) {
      report.certificate = Certificate::stationary_under_rule;
    }
  }
  return report;
}

SolveReport run_gencol(const Problem& problem, const GenColConfig& config) {
  return GenColSolver(problem, config).run();
}

SolveReport run_gencol(const Problem& problem, const GenColConfig& config,
                       ActiveSet initial) {
  return GenColSolver(problem, config, std::move(initial)).run();
}

}  // namespace gencol
