#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "gencol/gencol.hpp"
#include "gencol/problem.hpp"

namespace gencol {

/// Problem document: marginals as weight arrays plus a cost, either a dense
/// nested array (guarded at kTableGuard entries) or a named builtin
/// generator ("counterexample", or "quadratic" with point coordinates).
Problem problem_from_json(const nlohmann::json& doc);
Problem load_problem(const std::string& path);
nlohmann::json problem_to_json(const Problem& problem);

/// Pairwise squared-Euclidean cost on supplied support coordinates
/// (points[i] has one coordinate row per support point of marginal i).
/// For two marginals this is |x - y|^2.
CostSpec quadratic_cost(const std::vector<std::vector<std::vector<double>>>& points);

/// Result document for a finished solve.
nlohmann::json report_to_json(const SolveReport& report, double beta,
                              SearchRule rule);

/// The solve fields a verification pass needs back from a result document.
struct ResultDoc {
  SparsePlan plan;
  DualPotentials potentials;
  double objective = 0.0;
  std::string termination;
  std::string certificate;
};

ResultDoc result_from_json(const nlohmann::json& doc);
ResultDoc load_result(const std::string& path);

/// Configuration list document ({"configs": [[...], ...]}).
std::vector<Configuration> configs_from_json(const nlohmann::json& doc);
std::vector<Configuration> load_configs(const std::string& path);
nlohmann::json configs_to_json(const std::vector<Configuration>& configs);

/// CSV with header iter,objective,omega_size; one row per reduced solve.
void write_trajectory_csv(std::ostream& out, const SolveReport& report);

/// Parses a JSON document, rethrowing parse failures as ValidationError
/// with a line-anchored diagnostic.
nlohmann::json parse_json_text(const std::string& text,
                               const std::string& origin);
nlohmann::json load_json_file(const std::string& path);

}  // namespace gencol
