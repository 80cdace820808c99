#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gencol {

/// Base class of every exception thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad shapes, indices out of range, broken normalization.
struct ValidationError : Error {
  using Error::Error;
};

/// The given configuration set cannot carry any transport plan.
struct FeasibilityError : Error {
  using Error::Error;
};

/// A dense enumeration was refused because the product space is too large.
struct SizeGuardError : Error {
  using Error::Error;
};

/// An internal invariant failed; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

/// Absolute tolerance on total probability mass.
inline constexpr double kMassTol = 1e-9;

/// Largest product-space size the dense oracle will enumerate.
inline constexpr std::int64_t kDenseGuard = 1'000'000;

/// Largest dense cost table accepted at ingestion.
inline constexpr std::int64_t kTableGuard = 10'000'000;

/// An index tuple naming one cell of the product of the marginal supports.
/// One configuration corresponds to one variable of the transport LP.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<std::int32_t> indices)
      : indices_(std::move(indices)) {}
  Configuration(std::initializer_list<std::int32_t> indices)
      : indices_(indices) {}

  int arity() const { return static_cast<int>(indices_.size()); }
  std::int32_t operator[](int axis) const { return indices_[axis]; }
  std::int32_t& operator[](int axis) { return indices_[axis]; }
  const std::vector<std::int32_t>& indices() const { return indices_; }

  /// True when every index lies in [0, sizes[axis]).
  bool in_range(const std::vector<int>& sizes) const;

  auto operator<=>(const Configuration&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int32_t> indices_;
};

/// A probability vector over a finite support. Weights are strictly
/// positive and sum to one within the mass tolerance; zero-mass points
/// must be stripped before construction.
class DiscreteMarginal {
 public:
  explicit DiscreteMarginal(std::vector<double> weights,
                            double mass_tol = kMassTol);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Cost function over the product space, either a dense row-major table
/// or an arbitrary evaluator. Every value must be finite.
class CostSpec {
 public:
  using Evaluator = std::function<double(const Configuration&)>;

  static CostSpec from_table(std::vector<int> sizes,
                             std::vector<double> values);
  static CostSpec from_function(std::vector<int> sizes, Evaluator fn);

  int arity() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  bool has_table() const { return !table_.empty(); }
  const std::vector<double>& table() const { return table_; }

  /// Evaluates the cost of one configuration. Throws ValidationError on an
  /// out-of-range index or a non-finite value.
  double operator()(const Configuration& r) const;

  /// Upper bound on |c| used for relative tolerances. Exact when a table is
  /// present or the product space is small; otherwise estimated from a
  /// deterministic sample of configurations.
  double max_abs() const;

  /// Checks finiteness on the whole product (size-guarded) and, when both a
  /// table and an evaluator are present, their agreement on all cells.
  void validate() const;

  std::int64_t product_size() const;  // saturates at kTableGuard + 1

 private:
  CostSpec() = default;

  std::vector<int> sizes_;
  std::vector<std::int64_t> strides_;
  std::vector<double> table_;
  Evaluator fn_;
  mutable double max_abs_cache_ = -1.0;
};

/// Tolerances used by the solvers; lp and accept scale with the cost.
struct Tolerances {
  double mass = kMassTol;
  double lp = 1e-9;
  double accept = 1e-9;
};

/// A discrete transport problem: N marginals plus a cost of matching arity.
class Problem {
 public:
  Problem(std::vector<DiscreteMarginal> marginals, CostSpec cost);

  int arity() const { return static_cast<int>(marginals_.size()); }
  const std::vector<DiscreteMarginal>& marginals() const { return marginals_; }
  const DiscreteMarginal& marginal(int axis) const { return marginals_[axis]; }
  const CostSpec& cost() const { return cost_; }

  const std::vector<int>& sizes() const { return sizes_; }
  int size_sum() const { return size_sum_; }
  std::int64_t product_size() const { return cost_.product_size(); }

  /// tol_lp = tol_accept = base * (1 + |c|_inf), tol_mass fixed.
  Tolerances tolerances(double base = 1e-9) const;

 private:
  std::vector<DiscreteMarginal> marginals_;
  CostSpec cost_;
  std::vector<int> sizes_;
  int size_sum_ = 0;
};

}  // namespace gencol
