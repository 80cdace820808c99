#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gencol/reduced_lp.hpp"

namespace gencol {

/// Child proposal rule. For two marginals all three rules generate the same
/// candidate set: the row and column of the parent.
enum class SearchRule {
  two_marginal,  // (supp(mu1) x {y}) u ({x} x supp(mu2)); N = 2 only
  single_entry,  // change exactly one entry of the parent
  many_entry,    // keep exactly one entry of the parent, vary the rest
};

std::string to_string(SearchRule rule);
SearchRule parse_rule(const std::string& name);

enum class Termination { exhausted_proposals, max_iterations };
enum class Certificate { certified_optimal, uncertified, stationary_under_rule };

std::string to_string(Termination t);
std::string to_string(Certificate c);

struct GenColConfig {
  double beta = 3.0;
  std::optional<SearchRule> rule;  // default: two_marginal for N=2, else single_entry
  std::uint64_t seed = 0;
  std::int64_t max_outer_iterations = 100000;
  double accept_tol = -1.0;  // negative: derive as 1e-9 * (1 + |c|_inf)
  double tol_base = 1e-9;
  bool request_certificate = true;

  SearchRule resolved_rule(int arity) const;
  /// The convergence guarantee needs beta >= 2; smaller values run but are
  /// flagged as uncertified.
  bool certified_beta() const { return beta >= 2.0; }
  void validate(const Problem& problem) const;
};

struct SolveReport {
  SparsePlan final_plan;
  DualPotentials final_potentials;
  double final_objective = 0.0;
  std::vector<std::pair<std::int64_t, double>> objective_trajectory;
  std::vector<std::int64_t> active_set_sizes;
  Termination termination = Termination::exhausted_proposals;
  Certificate certificate = Certificate::uncertified;
  std::uint64_t rng_seed = 0;
  int max_support_size = 0;
};

/// All candidates of the rule for one parent, deduplicated, excluding the
/// parent itself, in a deterministic order.
std::vector<Configuration> enumerate_children(const Configuration& parent,
                                              SearchRule rule,
                                              const std::vector<int>& sizes);

/// The same candidates in a seeded uniformly random order.
std::vector<Configuration> propose_children(const Configuration& parent,
                                            SearchRule rule,
                                            const std::vector<int>& sizes,
                                            std::mt19937_64& rng);

/// ceil(beta * sum_i l_i), the active-set size bound.
std::int64_t active_set_bound(double beta, const std::vector<int>& sizes);

/// Removes up to sum_i l_i of the oldest unused configurations (by
/// last_active, ties by insertion order) when the bound is exceeded. Never
/// removes the plan's support or anything in `protected_configs`. Returns
/// the number of configurations removed.
int tail_clear(ActiveSet& omega, const SparsePlan& current_plan, double beta,
               const std::vector<int>& sizes,
               const std::vector<Configuration>& protected_configs = {});

/// The outer loop: solve the reduced problem, walk a seeded random
/// permutation of all (parent, child) proposals of the current solution,
/// accept the first child with positive gain, tail-clear, re-solve; stop on
/// exhaustion or the iteration cap.
class GenColSolver {
 public:
  GenColSolver(const Problem& problem, GenColConfig config);
  GenColSolver(const Problem& problem, GenColConfig config, ActiveSet initial);

  /// One accepted child plus re-solve. Returns false when every proposal of
  /// the current solution was tried without acceptance (exhaustion).
  bool step();

  SolveReport run();

  const ReducedSolution& solution() const { return solution_; }
  const ActiveSet& omega() const { return omega_; }
  std::int64_t iteration() const { return iteration_; }
  bool exhausted() const { return exhausted_; }
  double accept_tol() const { return accept_tol_; }

 private:
  void initial_solve();
  void record();

  const Problem& problem_;
  GenColConfig config_;
  SearchRule rule_;
  double accept_tol_ = 0.0;
  std::int64_t bound_ = 0;

  ActiveSet omega_;
  ReducedSolution solution_;
  std::int64_t iteration_ = 0;
  bool exhausted_ = false;
  std::mt19937_64 rng_;

  std::vector<std::pair<std::int64_t, double>> trajectory_;
  std::vector<std::int64_t> sizes_log_;
  int max_support_ = 0;
};

/// Runs GenCol from the northwest-corner initial set.
SolveReport run_gencol(const Problem& problem, const GenColConfig& config);

/// Runs GenCol from a caller-supplied feasible initial set.
SolveReport run_gencol(const Problem& problem, const GenColConfig& config,
                       ActiveSet initial);

}  // namespace gencol
