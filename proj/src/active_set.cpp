#include <algorithm>

#include "gencol/reduced_lp.hpp"

namespace gencol {

ActiveSet ActiveSet::checked(std::vector<Configuration> configs,
                             const std::vector<DiscreteMarginal>& marginals) {
  if (!is_feasible_support(configs, marginals)) {
    throw FeasibilityError(
        "configuration set cannot carry a plan with the given marginals");
  }
  ActiveSet omega;
  for (auto& r : configs) omega.insert(std::move(r), 0);
  return omega;
}

bool ActiveSet::insert(const Configuration& r, std::int64_t iteration) {
  auto [it, inserted] = meta_.try_emplace(r, Meta{next_serial_, iteration});
  if (!inserted) return false;
  ++next_serial_;
  configs_.push_back(r);
  return true;
}

void ActiveSet::touch(const Configuration& r, std::int64_t iteration) {
  auto it = meta_.find(r);
  if (it == meta_.end()) {
    throw InternalError("touched configuration " + r.to_string() +
                        " is not in the active set");
  }
  it->second.last_active = iteration;
}

void ActiveSet::erase(const std::set<Configuration>& victims) {
  if (victims.empty()) return;
  std::erase_if(configs_,
                [&](const Configuration& r) { return victims.count(r) > 0; });
  for (const auto& r : victims) meta_.erase(r);
}

std::int64_t ActiveSet::last_active(const Configuration& r) const {
  auto it = meta_.find(r);
  if (it == meta_.end()) {
    throw InternalError("configuration " + r.to_string() +
                        " is not in the active set");
  }
  return it->second.last_active;
}

std::int64_t ActiveSet::insertion_serial(const Configuration& r) const {
  auto it = meta_.find(r);
  if (it == meta_.end()) {
    throw InternalError("configuration " + r.to_string() +
                        " is not in the active set");
  }
  return it->second.serial;
}

SparsePlan northwest_corner_plan(
    const std::vector<DiscreteMarginal>& marginals) {
  const int n = static_cast<int>(marginals.size());
  if (n < 2) throw ValidationError("need at least two marginals");

  std::vector<std::vector<double>> remaining;
  remaining.reserve(n);
  for (const auto& marginal : marginals) remaining.push_back(marginal.weights());
  std::vector<int> cursor(n, 0);

  SparsePlan plan;
  while (true) {
    double placed = remaining[0][cursor[0]];
    for (int axis = 1; axis < n; ++axis) {
      placed = std::min(placed, remaining[axis][cursor[axis]]);
    }

    std::vector<std::int32_t> idx(n);
    for (int axis = 0; axis < n; ++axis) idx[axis] = cursor[axis];
    if (placed > 0.0) plan.set(Configuration(std::move(idx)), placed);

    // The axes achieving the minimum are consumed exactly; any other axis
    // keeps a strictly positive rest.
    for (int axis = 0; axis < n; ++axis) {
      double& rest = remaining[axis][cursor[axis]];
      rest = rest <= placed ? 0.0 : rest - placed;
    }

    bool all_last = true;
    for (int axis = 0; axis < n; ++axis) {
      if (cursor[axis] + 1 < static_cast<int>(remaining[axis].size())) {
        all_last = false;
        break;
      }
    }
    if (all_last) break;

    bool advanced = false;
    for (int axis = 0; axis < n; ++axis) {
      if (remaining[axis][cursor[axis]] == 0.0 &&
          cursor[axis] + 1 < static_cast<int>(remaining[axis].size())) {
        ++cursor[axis];
        advanced = true;
      }
    }
    // Possible only when the marginal totals disagree inside the mass
    // tolerance; the leftover dust stays unplaced.
    if (!advanced) break;
  }
  return plan;
}

ActiveSet initial_feasible_set(
    const std::vector<DiscreteMarginal>& marginals) {
  const SparsePlan plan = northwest_corner_plan(marginals);
  ActiveSet omega;
  for (const auto& [r, mass] : plan.entries()) omega.insert(r, 0);
  return omega;
}

bool add_column(ActiveSet& omega, const Configuration& r,
                std::int64_t iteration) {
  return omega.insert(r, iteration);
}

}  // namespace gencol
