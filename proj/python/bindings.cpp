// Python bindings for the solver: problem construction, the genetic
// column-generation run, the dense oracle, and the verification helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "gencol/counterexample.hpp"
#include "gencol/gencol.hpp"
#include "gencol/io.hpp"
#include "gencol/oracle.hpp"

namespace py = pybind11;

namespace {

using namespace gencol;

using PlanEntries = std::vector<std::pair<std::vector<std::int32_t>, double>>;

Configuration to_config(const std::vector<std::int32_t>& indices) {
  return Configuration(indices);
}

PlanEntries plan_to_entries(const SparsePlan& plan) {
  PlanEntries entries;
  entries.reserve(plan.entries().size());
  for (const auto& [r, mass] : plan.entries()) {
    entries.emplace_back(r.indices(), mass);
  }
  return entries;
}

SparsePlan entries_to_plan(const PlanEntries& entries) {
  SparsePlan plan;
  for (const auto& [indices, mass] : entries) plan.set(to_config(indices), mass);
  return plan;
}

Problem make_problem(const std::vector<std::vector<double>>& marginals,
                     const std::vector<double>& cost_flat) {
  std::vector<DiscreteMarginal> mu;
  std::vector<int> sizes;
  for (const auto& weights : marginals) {
    mu.emplace_back(weights);
    sizes.push_back(mu.back().size());
  }
  return Problem(std::move(mu), CostSpec::from_table(sizes, cost_flat));
}

Problem make_quadratic_problem(
    const std::vector<std::vector<double>>& marginals,
    const std::vector<std::vector<std::vector<double>>>& points) {
  std::vector<DiscreteMarginal> mu;
  for (const auto& weights : marginals) mu.emplace_back(weights);
  return Problem(std::move(mu), quadratic_cost(points));
}

Problem make_counterexample_problem() {
  return build_fixture().problem;
}

GenColConfig make_config(double beta, const std::string& rule,
                         std::uint64_t seed, std::int64_t max_iter) {
  GenColConfig config;
  config.beta = beta;
  config.seed = seed;
  config.max_outer_iterations = max_iter;
  if (rule != "auto") config.rule = parse_rule(rule);
  return config;
}

py::dict report_to_dict(const SolveReport& report) {
  py::dict out;
  out["objective"] = report.final_objective;
  out["plan"] = plan_to_entries(report.final_plan);
  out["potentials"] = report.final_potentials.values;
  out["trajectory"] = report.objective_trajectory;
  out["active_set_sizes"] = report.active_set_sizes;
  out["termination"] = to_string(report.termination);
  out["certificate"] = to_string(report.certificate);
  out["seed"] = report.rng_seed;
  out["max_support_size"] = report.max_support_size;
  return out;
}

py::dict solve(const Problem& problem, double beta, const std::string& rule,
               std::uint64_t seed, std::int64_t max_iter,
               const std::optional<std::vector<std::vector<std::int32_t>>>&
                   init) {
  const GenColConfig config = make_config(beta, rule, seed, max_iter);
  SolveReport report;
  if (init.has_value()) {
    std::vector<Configuration> configs;
    configs.reserve(init->size());
    for (const auto& indices : *init) configs.push_back(to_config(indices));
    report = run_gencol(problem, config,
                        ActiveSet::checked(std::move(configs),
                                           problem.marginals()));
  } else {
    report = run_gencol(problem, config);
  }
  return report_to_dict(report);
}

py::dict oracle(const Problem& problem) {
  const DenseSolution sol = solve_dense_lp(problem);
  py::dict out;
  out["objective"] = sol.objective;
  out["plan"] = plan_to_entries(sol.plan);
  out["potentials"] = sol.potentials.values;
  return out;
}

py::object check_ccm_py(const Problem& problem,
                        const std::vector<std::vector<std::int32_t>>& support,
                        int max_k) {
  std::vector<Configuration> configs;
  configs.reserve(support.size());
  for (const auto& indices : support) configs.push_back(to_config(indices));
  const auto violation = check_ccm(configs, problem.cost(), max_k,
                                   problem.tolerances().lp);
  if (!violation.has_value()) return py::none();
  py::dict out;
  std::vector<std::vector<std::int32_t>> points;
  for (const auto& r : violation->points) points.push_back(r.indices());
  out["points"] = points;
  out["permutation"] = violation->permutation;
  out["original_cost"] = violation->original_cost;
  out["permuted_cost"] = violation->permuted_cost;
  return out;
}

py::object certify(const Problem& problem,
                   const std::vector<std::vector<double>>& potentials) {
  DualPotentials u{potentials};
  const auto violator = certify_full_dual_feasibility(
      u, problem.cost(), problem.tolerances().accept);
  if (!violator.has_value()) return py::none();
  return py::make_tuple(violator->first.indices(), violator->second);
}

}  // namespace

PYBIND11_MODULE(pygencol, m) {
  m.doc() = "Genetic column generation for discrete multi-marginal optimal "
            "transport";

  py::register_exception<ValidationError>(m, "GencolValidationError",
                                          PyExc_ValueError);
  py::register_exception<FeasibilityError>(m, "GencolFeasibilityError",
                                           PyExc_ValueError);
  py::register_exception<SizeGuardError>(m, "GencolSizeGuardError",
                                         PyExc_RuntimeError);

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("arity", &Problem::arity)
      .def_property_readonly("sizes", &Problem::sizes)
      .def("cost_at",
           [](const Problem& p, const std::vector<std::int32_t>& indices) {
             return p.cost()(to_config(indices));
           })
      .def("marginal_weights", [](const Problem& p, int axis) {
        return p.marginal(axis).weights();
      });

  m.def("make_problem", &make_problem, py::arg("marginals"),
        py::arg("cost_flat"),
        "Problem from marginal weight vectors and a row-major flat cost "
        "table");
  m.def("make_quadratic_problem", &make_quadratic_problem,
        py::arg("marginals"), py::arg("points"),
        "Problem with the pairwise squared-distance cost on point "
        "coordinates");
  m.def("counterexample_problem", &make_counterexample_problem,
        "Three uniform marginals with the 0/1/2 agreement cost");

  m.def("solve", &solve, py::arg("problem"), py::arg("beta") = 3.0,
        py::arg("rule") = "auto", py::arg("seed") = 0,
        py::arg("max_iter") = 100000, py::arg("init") = py::none(),
        "Run genetic column generation; returns the solve report as a dict");
  m.def("oracle", &oracle, py::arg("problem"),
        "Exact optimum by dense enumeration (size-guarded)");

  m.def("northwest_plan",
        [](const Problem& problem) {
          return plan_to_entries(northwest_corner_plan(problem.marginals()));
        },
        py::arg("problem"), "Feasible northwest-corner starting plan");
  m.def("plan_cost",
        [](const Problem& problem, const PlanEntries& entries) {
          return plan_cost(entries_to_plan(entries), problem.cost());
        },
        py::arg("problem"), py::arg("plan"));
  m.def("plan_marginals",
        [](const Problem& problem, const PlanEntries& entries) {
          return plan_marginals(entries_to_plan(entries), problem.sizes());
        },
        py::arg("problem"), py::arg("plan"));
  m.def("gain",
        [](const Problem& problem,
           const std::vector<std::vector<double>>& potentials,
           const std::vector<std::int32_t>& indices) {
          return gain(DualPotentials{potentials}, to_config(indices),
                      problem.cost());
        },
        py::arg("problem"), py::arg("potentials"), py::arg("config"));
  m.def("audit_sparsity",
        [](const Problem& problem, const PlanEntries& entries) {
          return audit_sparsity(entries_to_plan(entries), problem.sizes());
        },
        py::arg("problem"), py::arg("plan"));
  m.def("check_ccm", &check_ccm_py, py::arg("problem"), py::arg("support"),
        py::arg("max_k"),
        "First c-cyclical-monotonicity violation up to cycle length max_k, "
        "or None");
  m.def("certify", &certify, py::arg("problem"), py::arg("potentials"),
        "Maximal-gain dual violator over the whole product, or None");
  m.def("verify_counterexample_stationarity",
        [] { return verify_stationarity(build_fixture()); });
}
