#include "gencol/problem.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace gencol {

bool Configuration::in_range(const std::vector<int>& sizes) const {
  if (indices_.size() != sizes.size()) return false;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0 || indices_[i] >= sizes[i]) return false;
  }
  return true;
}

std::string Configuration::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out << ',';
    out << indices_[i];
  }
  out << ')';
  return out.str();
}

DiscreteMarginal::DiscreteMarginal(std::vector<double> weights, double mass_tol)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw ValidationError("marginal must have at least one support point");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w)) {
      throw ValidationError("marginal weight " + std::to_string(i) +
                            " is not finite");
    }
    if (w <= 0.0) {
      throw ValidationError("marginal weight " + std::to_string(i) +
                            " is not strictly positive; strip zero-mass "
                            "points before construction");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > mass_tol) {
    throw ValidationError("marginal weights sum to " + std::to_string(total) +
                          ", expected 1 within tolerance");
  }
}

namespace {

std::vector<std::int64_t> make_strides(const std::vector<int>& sizes) {
  std::vector<std::int64_t> strides(sizes.size(), 1);
  for (int i = static_cast<int>(sizes.size()) - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * sizes[i + 1];
  }
  return strides;
}

std::int64_t saturating_product(const std::vector<int>& sizes,
                                std::int64_t cap) {
  std::int64_t p = 1;
  for (int s : sizes) {
    if (p > cap / s) return cap + 1;
    p *= s;
  }
  return p;
}

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) {
    throw ValidationError("cost needs at least two marginals");
  }
  for (int s : sizes) {
    if (s <= 0) throw ValidationError("marginal sizes must be positive");
  }
}

// Odometer over the product space in lexicographic order.
template <typename Fn>
void for_each_configuration(const std::vector<int>& sizes, Fn&& fn) {
  Configuration r(std::vector<std::int32_t>(sizes.size(), 0));
  while (true) {
    fn(r);
    int axis = static_cast<int>(sizes.size()) - 1;
    while (axis >= 0) {
      if (++r[axis] < sizes[axis]) break;
      r[axis] = 0;
      --axis;
    }
    if (axis < 0) return;
  }
}

}  // namespace

CostSpec CostSpec::from_table(std::vector<int> sizes,
                              std::vector<double> values) {
  check_sizes(sizes);
  CostSpec spec;
  spec.sizes_ = std::move(sizes);
  spec.strides_ = make_strides(spec.sizes_);
  const std::int64_t cells = saturating_product(spec.sizes_, kTableGuard);
  if (cells > kTableGuard) {
    throw SizeGuardError("dense cost table would exceed the ingestion guard");
  }
  if (static_cast<std::int64_t>(values.size()) != cells) {
    throw ValidationError("cost table has " + std::to_string(values.size()) +
                          " entries, expected " + std::to_string(cells));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ValidationError("cost table contains a non-finite value");
    }
  }
  spec.table_ = std::move(values);
  return spec;
}

CostSpec CostSpec::from_function(std::vector<int> sizes, Evaluator fn) {
  check_sizes(sizes);
  if (!fn) throw ValidationError("cost evaluator must not be empty");
  CostSpec spec;
  spec.sizes_ = std::move(sizes);
  spec.strides_ = make_strides(spec.sizes_);
  spec.fn_ = std::move(fn);
  return spec;
}

double CostSpec::operator()(const Configuration& r) const {
  if (!r.in_range(sizes_)) {
    throw ValidationError("configuration " + r.to_string() +
                          " is out of range for the cost");
  }
  double value;
  if (has_table()) {
    std::int64_t flat = 0;
    for (int i = 0; i < arity(); ++i) flat += strides_[i] * r[i];
    value = table_[flat];
  } else {
    value = fn_(r);
  }
  if (!std::isfinite(value)) {
    throw ValidationError("cost is not finite at " + r.to_string());
  }
  return value;
}

std::int64_t CostSpec::product_size() const {
  return saturating_product(sizes_, kTableGuard);
}

double CostSpec::max_abs() const {
  if (max_abs_cache_ >= 0.0) return max_abs_cache_;
  double best = 0.0;
  if (has_table()) {
    for (double v : table_) best = std::max(best, std::abs(v));
  } else if (product_size() <= kDenseGuard) {
    for_each_configuration(sizes_, [&](const Configuration& r) {
      best = std::max(best, std::abs((*this)(r)));
    });
  } else {
    // Deterministic sample: clamped diagonal plus a fixed LCG sweep.
    const int n = arity();
    int max_len = 0;
    for (int s : sizes_) max_len = std::max(max_len, s);
    for (int j = 0; j < max_len; ++j) {
      Configuration r(std::vector<std::int32_t>(n, 0));
      for (int i = 0; i < n; ++i) r[i] = std::min(j, sizes_[i] - 1);
      best = std::max(best, std::abs((*this)(r)));
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int probe = 0; probe < 4096; ++probe) {
      Configuration r(std::vector<std::int32_t>(n, 0));
      for (int i = 0; i < n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        r[i] = static_cast<std::int32_t>((state >> 33) % sizes_[i]);
      }
      best = std::max(best, std::abs((*this)(r)));
    }
  }
  max_abs_cache_ = best;
  return best;
}

void CostSpec::validate() const {
  if (product_size() > kDenseGuard) {
    throw SizeGuardError("cost validation needs a product space within the "
                         "dense guard");
  }
  for_each_configuration(sizes_, [&](const Configuration& r) {
    double value = (*this)(r);
    if (has_table() && fn_) {
      const double from_fn = fn_(r);
      if (value != from_fn) {
        throw ValidationError("cost table disagrees with the evaluator at " +
                              r.to_string());
      }
    }
  });
}

Problem::Problem(std::vector<DiscreteMarginal> marginals, CostSpec cost)
    : marginals_(std::move(marginals)), cost_(std::move(cost)) {
  if (marginals_.size() < 2) {
    throw ValidationError("a problem needs at least two marginals");
  }
  if (static_cast<int>(marginals_.size()) != cost_.arity()) {
    throw ValidationError("cost arity " + std::to_string(cost_.arity()) +
                          " does not match " +
                          std::to_string(marginals_.size()) + " marginals");
  }
  for (std::size_t i = 0; i < marginals_.size(); ++i) {
    sizes_.push_back(marginals_[i].size());
    if (marginals_[i].size() != cost_.sizes()[i]) {
      throw ValidationError("marginal " + std::to_string(i) + " has " +
                            std::to_string(marginals_[i].size()) +
                            " points but the cost expects " +
                            std::to_string(cost_.sizes()[i]));
    }
  }
  size_sum_ = std::accumulate(sizes_.begin(), sizes_.end(), 0);
}

Tolerances Problem::tolerances(double base) const {
  Tolerances tol;
  tol.mass = kMassTol;
  tol.lp = base * (1.0 + cost_.max_abs());
  tol.accept = tol.lp;
  return tol;
}

}  // namespace gencol
