// Command-line front end: solve | oracle | verify | counterexample.
//
// Exit codes: 0 success (solve: terminated by exhaustion; verify: all checks
// pass), 1 input/validation error, 2 solve hit the iteration cap or a
// verification check failed, 3 dense size guard exceeded.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gencol/counterexample.hpp"
#include "gencol/gencol.hpp"
#include "gencol/io.hpp"
#include "gencol/oracle.hpp"

namespace {

using gencol::Configuration;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitCapOrCheckFailed = 2;
constexpr int kExitSizeGuard = 3;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%FT%TZ", std::gmtime(&t));
  return buffer;
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gencol::ValidationError("cannot write '" + out_path + "'");
  out << doc.dump(2) << "\n";
}

struct SolveOptions {
  std::string problem_path;
  std::string out_path;
  std::string trajectory_path;
  std::string init = "northwest";
  std::string rule = "auto";
  double beta = 3.0;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::int64_t max_iter = 100000;
};

int run_solve(const SolveOptions& opt) {
  const gencol::Problem problem = gencol::load_problem(opt.problem_path);

  gencol::GenColConfig config;
  config.beta = opt.beta;
  config.seed = opt.seed;
  config.max_outer_iterations = opt.max_iter;
  config.tol_base = opt.tol;
  if (opt.rule != "auto") config.rule = gencol::parse_rule(opt.rule);

  if (!config.certified_beta()) {
    std::cerr << "warning: beta = " << config.beta
              << " is below 2; the convergence guarantee does not apply\n";
  }

  gencol::ActiveSet initial;
  if (opt.init == "northwest") {
    initial = gencol::initial_feasible_set(problem.marginals());
  } else {
    initial = gencol::ActiveSet::checked(gencol::load_configs(opt.init),
                                         problem.marginals());
  }

  const gencol::SolveReport report =
      gencol::run_gencol(problem, config, std::move(initial));

  json doc = gencol::report_to_json(report, config.beta,
                                    config.resolved_rule(problem.arity()));
  doc["timestamp"] = iso_timestamp();
  emit(doc, opt.out_path);

  if (!opt.trajectory_path.empty()) {
    std::ofstream csv(opt.trajectory_path, std::ios::binary);
    if (!csv) {
      throw gencol::ValidationError("cannot write '" + opt.trajectory_path +
                                    "'");
    }
    gencol::write_trajectory_csv(csv, report);
  }

  return report.termination == gencol::Termination::exhausted_proposals
             ? kExitOk
             : kExitCapOrCheckFailed;
}

int run_oracle(const std::string& problem_path, const std::string& out_path) {
  const gencol::Problem problem = gencol::load_problem(problem_path);
  const gencol::DenseSolution sol = gencol::solve_dense_lp(problem);

  json doc;
  doc["objective"] = sol.objective;
  json plan = json::array();
  for (const auto& [r, mass] : sol.plan.entries()) {
    plan.push_back({{"indices", r.indices()}, {"mass", mass}});
  }
  doc["plan"] = std::move(plan);
  doc["potentials"] = sol.potentials.values;
  doc["timestamp"] = iso_timestamp();
  emit(doc, out_path);
  return kExitOk;
}

struct VerifyOptions {
  std::string result_path;
  std::string problem_path;
  std::string out_path;
  int ccm_k = 0;      // 0: skip the c-CM search
  bool dual_cert = false;
};

int run_verify(const VerifyOptions& opt) {
  const gencol::Problem problem = gencol::load_problem(opt.problem_path);
  const gencol::ResultDoc result = gencol::load_result(opt.result_path);
  const gencol::Tolerances tol = problem.tolerances();

  json checks = json::array();
  bool all_pass = true;
  const auto add_check = [&](const std::string& name, bool pass,
                             const std::string& detail) {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    all_pass = all_pass && pass;
  };

  // Shape consistency is a hard error, not a failed check.
  for (const auto& [r, mass] : result.plan.entries()) {
    if (!r.in_range(problem.sizes())) {
      throw gencol::ValidationError("result plan does not match the problem "
                                    "shape at " + r.to_string());
    }
  }
  if (result.potentials.arity() != problem.arity()) {
    throw gencol::ValidationError("result potentials do not match the "
                                  "problem arity");
  }

  {
    const bool pass = gencol::audit_sparsity(result.plan, problem.sizes());
    add_check("sparsity", pass,
              "support " + std::to_string(result.plan.support_size()) +
                  ", bound " +
                  std::to_string(gencol::constraint_rank(problem.sizes())));
  }

  {
    double worst = 0.0;
    const auto marginals = gencol::plan_marginals(result.plan, problem.sizes());
    for (int axis = 0; axis < problem.arity(); ++axis) {
      for (int j = 0; j < problem.sizes()[axis]; ++j) {
        worst = std::max(worst, std::abs(marginals[axis][j] -
                                         problem.marginal(axis)[j]));
      }
    }
    add_check("marginal_feasibility", worst <= tol.mass,
              "max deviation " + std::to_string(worst));
  }

  {
    const double recomputed = gencol::plan_cost(result.plan, problem.cost());
    const bool pass = std::abs(recomputed - result.objective) <= tol.lp;
    add_check("objective_consistency", pass,
              "recomputed " + std::to_string(recomputed));
  }

  if (opt.ccm_k >= 2) {
    if (problem.arity() != 2) {
      throw gencol::ValidationError("--ccm-k needs a two-marginal problem");
    }
    const auto violation = gencol::check_ccm(result.plan.support(),
                                             problem.cost(), opt.ccm_k, tol.lp);
    std::string detail = "no violation up to k=" + std::to_string(opt.ccm_k);
    if (violation.has_value()) {
      detail = "cycle of length " +
               std::to_string(violation->points.size()) + " improves cost " +
               std::to_string(violation->original_cost) + " -> " +
               std::to_string(violation->permuted_cost);
    }
    add_check("ccm", !violation.has_value(), detail);
  }

  if (opt.dual_cert) {
    const auto violator = gencol::certify_full_dual_feasibility(
        result.potentials, problem.cost(), tol.accept);
    std::string detail = "potentials admissible for the full dual";
    if (violator.has_value()) {
      detail = "violator " + violator->first.to_string() + " with gain " +
               std::to_string(violator->second);
    }
    add_check("dual_feasibility", !violator.has_value(), detail);
  }

  json doc;
  doc["checks"] = std::move(checks);
  doc["pass"] = all_pass;
  emit(doc, opt.out_path);
  return all_pass ? kExitOk : kExitCapOrCheckFailed;
}

int run_counterexample(const std::string& out_path,
                       const std::string& omega_path, bool verify) {
  const gencol::CounterexampleFixture fixture = gencol::build_fixture();

  if (verify) {
    const bool stationary = gencol::verify_stationarity(fixture);
    std::cout << (stationary
                      ? "stationarity verified: every one-entry proposal "
                        "costs 2 and the reduced optimum stays put\n"
                      : "stationarity check FAILED\n");
    return stationary ? kExitOk : kExitCapOrCheckFailed;
  }

  json doc = gencol::problem_to_json(fixture.problem);
  doc["cost"] = {{"type", "counterexample"}};
  emit(doc, out_path);

  if (!omega_path.empty()) {
    emit(gencol::configs_to_json(fixture.gamma0.support()), omega_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Genetic column generation for discrete (multi-marginal) optimal "
      "transport"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "Run the genetic column generation solver on a problem file");
  solve->add_option("problem", solve_opt.problem_path, "problem JSON file")
      ->required();
  solve->add_option("--beta", solve_opt.beta,
                    "active-set size multiplier (bound beta * sum of "
                    "marginal sizes)");
  solve->add_option("--rule", solve_opt.rule,
                    "proposal rule: auto | two-marginal | single-entry | "
                    "many-entry");
  solve->add_option("--seed", solve_opt.seed, "RNG seed");
  solve->add_option("--max-iter", solve_opt.max_iter,
                    "cap on accepted children");
  solve->add_option("--tol", solve_opt.tol,
                    "relative tolerance base (scaled by 1 + |c|_inf)");
  solve->add_option("--init", solve_opt.init,
                    "'northwest' or a configuration-list JSON file");
  solve->add_option("--out", solve_opt.out_path,
                    "result JSON path (default: stdout)");
  solve->add_option("--trajectory-out", solve_opt.trajectory_path,
                    "objective trajectory CSV path");

  std::string oracle_problem;
  std::string oracle_out;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Solve the full problem exactly by dense enumeration");
  oracle->add_option("problem", oracle_problem, "problem JSON file")
      ->required();
  oracle->add_option("--out", oracle_out, "result JSON path (default: stdout)");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check a result file against its problem");
  verify->add_option("result", verify_opt.result_path, "result JSON file")
      ->required();
  verify->add_option("problem", verify_opt.problem_path, "problem JSON file")
      ->required();
  verify->add_option("--ccm-k", verify_opt.ccm_k,
                     "search c-cyclical-monotonicity violations up to cycle "
                     "length k (two-marginal only)");
  verify->add_flag("--dual-cert", verify_opt.dual_cert,
                   "certify the potentials against the full dual");
  verify->add_option("--out", verify_opt.out_path,
                     "report JSON path (default: stdout)");

  std::string cx_out;
  std::string cx_omega;
  bool cx_verify = false;
  CLI::App* cx = app.add_subcommand(
      "counterexample",
      "Emit the three-marginal instance on which the single-entry rule "
      "stalls");
  cx->add_option("--out", cx_out, "problem JSON path (default: stdout)");
  cx->add_option("--omega0-out", cx_omega,
                 "also write the stalled plan's support as an --init file");
  cx->add_flag("--verify", cx_verify, "run the stationarity check instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(solve_opt);
    if (oracle->parsed()) return run_oracle(oracle_problem, oracle_out);
    if (verify->parsed()) return run_verify(verify_opt);
    if (cx->parsed()) return run_counterexample(cx_out, cx_omega, cx_verify);
  } catch (const gencol::SizeGuardError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitSizeGuard;
  } catch (const gencol::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
