#include "gencol/plan.hpp"

#include <cmath>

namespace gencol {

SparsePlan SparsePlan::from_entries(
    const std::vector<std::pair<Configuration, double>>& entries) {
  SparsePlan plan;
  for (const auto& [r, mass] : entries) {
    if (plan.contains(r)) {
      throw ValidationError("duplicate plan entry " + r.to_string());
    }
    plan.set(r, mass);
  }
  return plan;
}

void SparsePlan::set(const Configuration& r, double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw ValidationError("plan mass at " + r.to_string() +
                          " must be strictly positive and finite");
  }
  entries_[r] = mass;
}

double SparsePlan::mass(const Configuration& r) const {
  auto it = entries_.find(r);
  return it == entries_.end() ? 0.0 : it->second;
}

double SparsePlan::total_mass() const {
  double total = 0.0;
  for (const auto& [r, mass] : entries_) total += mass;
  return total;
}

std::vector<Configuration> SparsePlan::support() const {
  std::vector<Configuration> configs;
  configs.reserve(entries_.size());
  for (const auto& [r, mass] : entries_) configs.push_back(r);
  return configs;
}

std::vector<std::vector<double>> plan_marginals(const SparsePlan& plan,
                                                const std::vector<int>& sizes) {
  std::vector<std::vector<double>> out;
  out.reserve(sizes.size());
  for (int s : sizes) out.emplace_back(s, 0.0);
  for (const auto& [r, mass] : plan.entries()) {
    if (!r.in_range(sizes)) {
      throw ValidationError("malformed plan: configuration " + r.to_string() +
                            " is out of range");
    }
    for (std::size_t axis = 0; axis < sizes.size(); ++axis) {
      out[axis][r[static_cast<int>(axis)]] += mass;
    }
  }
  return out;
}

double plan_cost(const SparsePlan& plan, const CostSpec& cost) {
  double total = 0.0;
  for (const auto& [r, mass] : plan.entries()) total += cost(r) * mass;
  return total;
}

double gain(const DualPotentials& u, const Configuration& r,
            const CostSpec& cost) {
  double sum = 0.0;
  for (int axis = 0; axis < r.arity(); ++axis) {
    sum += u.values[axis][r[axis]];
  }
  return sum - cost(r);
}

double dual_objective(const DualPotentials& u,
                      const std::vector<DiscreteMarginal>& marginals) {
  double total = 0.0;
  for (std::size_t axis = 0; axis < marginals.size(); ++axis) {
    const auto& weights = marginals[axis].weights();
    for (std::size_t j = 0; j < weights.size(); ++j) {
      total += weights[j] * u.values[axis][j];
    }
  }
  return total;
}

DualPotentials gauge_normalized(DualPotentials u) {
  const int n = u.arity();
  if (n < 2) return u;
  double carried = 0.0;
  for (int axis = 0; axis + 1 < n; ++axis) {
    const double shift = u.values[axis][0];
    for (double& v : u.values[axis]) v -= shift;
    carried += shift;
  }
  for (double& v : u.values[n - 1]) v += carried;
  return u;
}

}  // namespace gencol
