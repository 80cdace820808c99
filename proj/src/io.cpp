#include "gencol/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gencol/counterexample.hpp"

namespace gencol {

using nlohmann::json;

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    // nlohmann reports a byte offset; anchor the diagnostic to a line.
    std::size_t line = 1;
    const std::size_t stop = std::min<std::size_t>(err.byte, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ValidationError(origin + ":" + std::to_string(line) + ": " +
                          err.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

namespace {

std::vector<double> flatten_cost(const json& node, const std::vector<int>& sizes,
                                 std::size_t axis) {
  if (!node.is_array()) {
    throw ValidationError("cost table nesting does not match the marginals");
  }
  if (static_cast<int>(node.size()) != sizes[axis]) {
    throw ValidationError("cost table axis " + std::to_string(axis) + " has " +
                          std::to_string(node.size()) + " entries, expected " +
                          std::to_string(sizes[axis]));
  }
  std::vector<double> flat;
  if (axis + 1 == sizes.size()) {
    for (const auto& v : node) {
      if (!v.is_number()) {
        throw ValidationError("cost table entries must be numbers");
      }
      flat.push_back(v.get<double>());
    }
    return flat;
  }
  for (const auto& sub : node) {
    auto nested = flatten_cost(sub, sizes, axis + 1);
    flat.insert(flat.end(), nested.begin(), nested.end());
  }
  return flat;
}

json nest_cost(const std::vector<double>& flat, const std::vector<int>& sizes,
               std::size_t axis, std::size_t& offset) {
  json node = json::array();
  if (axis + 1 == sizes.size()) {
    for (int i = 0; i < sizes[axis]; ++i) node.push_back(flat[offset++]);
    return node;
  }
  for (int i = 0; i < sizes[axis]; ++i) {
    node.push_back(nest_cost(flat, sizes, axis + 1, offset));
  }
  return node;
}

}  // namespace

CostSpec quadratic_cost(
    const std::vector<std::vector<std::vector<double>>>& points) {
  if (points.size() < 2) {
    throw ValidationError("quadratic cost needs points for at least two "
                          "marginals");
  }
  std::vector<int> sizes;
  std::size_t dim = 0;
  for (const auto& axis_points : points) {
    if (axis_points.empty()) {
      throw ValidationError("quadratic cost: empty point list");
    }
    for (const auto& p : axis_points) {
      if (dim == 0) dim = p.size();
      if (p.size() != dim || dim == 0) {
        throw ValidationError("quadratic cost: inconsistent point dimension");
      }
    }
    sizes.push_back(static_cast<int>(axis_points.size()));
  }
  return CostSpec::from_function(
      sizes, [points, dim](const Configuration& r) {
        double total = 0.0;
        for (int i = 0; i < r.arity(); ++i) {
          for (int j = i + 1; j < r.arity(); ++j) {
            const auto& a = points[i][r[i]];
            const auto& b = points[j][r[j]];
            for (std::size_t d = 0; d < dim; ++d) {
              const double diff = a[d] - b[d];
              total += diff * diff;
            }
          }
        }
        return total;
      });
}

Problem problem_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("problem document must be an object");
  if (!doc.contains("marginals") || !doc["marginals"].is_array()) {
    throw ValidationError("problem document needs a 'marginals' array");
  }
  std::vector<DiscreteMarginal> marginals;
  std::vector<int> sizes;
  for (const auto& weights : doc["marginals"]) {
    if (!weights.is_array() || weights.empty()) {
      throw ValidationError("each marginal must be a nonempty weight array");
    }
    marginals.emplace_back(weights.get<std::vector<double>>());
    sizes.push_back(marginals.back().size());
  }

  if (!doc.contains("cost")) {
    throw ValidationError("problem document needs a 'cost'");
  }
  const json& cost_node = doc["cost"];

  if (cost_node.is_array()) {
    return Problem(std::move(marginals),
                   CostSpec::from_table(sizes, flatten_cost(cost_node, sizes, 0)));
  }

  if (!cost_node.is_object() || !cost_node.contains("type")) {
    throw ValidationError("'cost' must be a nested array or an object with a "
                          "'type'");
  }
  const std::string type = cost_node["type"].get<std::string>();
  if (type == "dense") {
    if (!cost_node.contains("table")) {
      throw ValidationError("dense cost needs a 'table'");
    }
    return Problem(std::move(marginals),
                   CostSpec::from_table(
                       sizes, flatten_cost(cost_node["table"], sizes, 0)));
  }
  if (type == "counterexample") {
    return Problem(std::move(marginals), counterexample_cost());
  }
  if (type == "quadratic") {
    if (!cost_node.contains("points")) {
      throw ValidationError("quadratic cost needs 'points'");
    }
    auto points =
        cost_node["points"].get<std::vector<std::vector<std::vector<double>>>>();
    CostSpec cost = quadratic_cost(points);
    if (cost.sizes() != sizes) {
      throw ValidationError("quadratic cost points do not match the marginal "
                            "sizes");
    }
    return Problem(std::move(marginals), std::move(cost));
  }
  throw ValidationError("unknown cost type '" + type + "'");
}

Problem load_problem(const std::string& path) {
  return problem_from_json(load_json_file(path));
}

json problem_to_json(const Problem& problem) {
  json doc;
  doc["marginals"] = json::array();
  for (const auto& marginal : problem.marginals()) {
    doc["marginals"].push_back(marginal.weights());
  }
  if (problem.cost().has_table()) {
    std::size_t offset = 0;
    doc["cost"] = {
        {"type", "dense"},
        {"table", nest_cost(problem.cost().table(), problem.sizes(), 0, offset)},
    };
  } else {
    throw ValidationError("only dense-cost problems can be serialized");
  }
  return doc;
}

namespace {

json plan_to_json(const SparsePlan& plan) {
  json out = json::array();
  for (const auto& [r, mass] : plan.entries()) {
    out.push_back({{"indices", r.indices()}, {"mass", mass}});
  }
  return out;
}

SparsePlan plan_from_json(const json& node) {
  SparsePlan plan;
  for (const auto& entry : node) {
    plan.set(Configuration(entry.at("indices").get<std::vector<std::int32_t>>()),
             entry.at("mass").get<double>());
  }
  return plan;
}

}  // namespace

json report_to_json(const SolveReport& report, double beta, SearchRule rule) {
  json doc;
  doc["objective"] = report.final_objective;
  doc["plan"] = plan_to_json(report.final_plan);
  doc["potentials"] = report.final_potentials.values;
  json trajectory = json::array();
  for (const auto& [iter, objective] : report.objective_trajectory) {
    trajectory.push_back({iter, objective});
  }
  doc["trajectory"] = std::move(trajectory);
  doc["active_set_sizes"] = report.active_set_sizes;
  doc["termination"] = to_string(report.termination);
  doc["certificate"] = to_string(report.certificate);
  doc["seed"] = report.rng_seed;
  doc["beta"] = beta;
  doc["rule"] = to_string(rule);
  doc["max_support_size"] = report.max_support_size;
  return doc;
}

ResultDoc result_from_json(const json& doc) {
  ResultDoc result;
  result.plan = plan_from_json(doc.at("plan"));
  result.potentials.values =
      doc.at("potentials").get<std::vector<std::vector<double>>>();
  result.objective = doc.at("objective").get<double>();
  if (doc.contains("termination")) {
    result.termination = doc["termination"].get<std::string>();
  }
  if (doc.contains("certificate")) {
    result.certificate = doc["certificate"].get<std::string>();
  }
  return result;
}

ResultDoc load_result(const std::string& path) {
  try {
    return result_from_json(load_json_file(path));
  } catch (const json::exception& err) {
    throw ValidationError(path + ": malformed result document: " + err.what());
  }
}

std::vector<Configuration> configs_from_json(const json& doc) {
  std::vector<Configuration> configs;
  for (const auto& idx : doc.at("configs")) {
    configs.emplace_back(idx.get<std::vector<std::int32_t>>());
  }
  return configs;
}

std::vector<Configuration> load_configs(const std::string& path) {
  try {
    return configs_from_json(load_json_file(path));
  } catch (const json::exception& err) {
    throw ValidationError(path + ": malformed configuration list: " +
                          err.what());
  }
}

json configs_to_json(const std::vector<Configuration>& configs) {
  json list = json::array();
  for (const auto& r : configs) list.push_back(r.indices());
  return json{{"configs", std::move(list)}};
}

void write_trajectory_csv(std::ostream& out, const SolveReport& report) {
  out << "iter,objective,omega_size\n";
  char buffer[64];
  for (std::size_t i = 0; i < report.objective_trajectory.size(); ++i) {
    const auto& [iter, objective] = report.objective_trajectory[i];
    std::snprintf(buffer, sizeof(buffer), "%.17g", objective);
    out << iter << ',' << buffer << ',' << report.active_set_sizes[i] << '\n';
  }
}

}  // namespace gencol
