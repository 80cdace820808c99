// Revised primal simplex for the transport LP on an explicit column set.
//
// Rows: one equality per marginal support point, with the last row of every
// axis but the first dropped (those are linear combinations of the rest), so
// the system has full row rank 1 + sum_i (l_i - 1). Columns: one per
// configuration, each hitting one row per axis. Cold starts run a phase-1
// with artificial columns; warm starts reuse the previous basis and plan
// values, so an already-optimal basis performs zero pivots and returns the
// previous plan bitwise.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gencol/reduced_lp.hpp"

namespace gencol {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kDegenerateStep = 1e-13;
constexpr int kBlandTrigger = 25;
constexpr int kRefactorEvery = 128;
constexpr std::int64_t kMaxPivots = 2'000'000;
constexpr double kPlanZero = 1e-13;

struct RowLayout {
  std::vector<int> sizes;
  std::vector<int> offset;
  int rows = 0;

  static RowLayout make(const std::vector<int>& sizes) {
    RowLayout layout;
    layout.sizes = sizes;
    layout.offset.resize(sizes.size());
    int next = 0;
    for (std::size_t axis = 0; axis < sizes.size(); ++axis) {
      layout.offset[axis] = next;
      next += axis == 0 ? sizes[axis] : sizes[axis] - 1;
    }
    layout.rows = next;
    return layout;
  }

  // -1 for dropped rows.
  int row_of(int axis, int idx) const {
    if (axis > 0 && idx == sizes[axis] - 1) return -1;
    return offset[axis] + idx;
  }
};

class Simplex {
 public:
  Simplex(const Problem& problem, const std::vector<Configuration>& columns,
          double lp_tol)
      : problem_(problem),
        columns_(columns),
        lp_tol_(lp_tol),
        layout_(RowLayout::make(problem.sizes())) {
    m_ = layout_.rows;
    n_ = static_cast<int>(columns_.size());

    b_.resize(m_);
    const auto& sizes = problem_.sizes();
    for (std::size_t axis = 0; axis < sizes.size(); ++axis) {
      for (int j = 0; j < sizes[axis]; ++j) {
        const int row = layout_.row_of(static_cast<int>(axis), j);
        if (row >= 0) b_[row] = problem_.marginal(static_cast<int>(axis))[j];
      }
    }

    col_rows_.resize(n_);
    col_cost_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      const Configuration& r = columns_[j];
      if (!r.in_range(sizes)) {
        throw ValidationError("configuration " + r.to_string() +
                              " is out of range for the problem");
      }
      for (int axis = 0; axis < r.arity(); ++axis) {
        const int row = layout_.row_of(axis, r[axis]);
        if (row >= 0) col_rows_[j].push_back(row);
      }
      col_cost_[j] = problem_.cost()(r);
    }

    col_position_.assign(n_, -1);
    art_position_.assign(m_, -1);
    basis_.assign(m_, 0);
    x_ = Eigen::VectorXd::Zero(m_);
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
  }

  void cold_start() {
    for (int row = 0; row < m_; ++row) {
      basis_[row] = encode_artificial(row);
      art_position_[row] = row;
    }
    x_ = b_;
    binv_.setIdentity();
    phase_ = 1;
  }

  void warm_start(const Basis& warm, const SparsePlan& plan) {
    if (warm.size() != m_) {
      throw InternalError("warm basis has " + std::to_string(warm.size()) +
                          " columns, expected " + std::to_string(m_));
    }
    std::map<Configuration, int> index;
    for (int j = 0; j < n_; ++j) index.emplace(columns_[j], j);
    for (int pos = 0; pos < m_; ++pos) {
      const BasisColumn& entry = warm.columns[pos];
      if (entry.is_artificial()) {
        if (entry.artificial_row >= m_) {
          throw InternalError("warm basis references a nonexistent row");
        }
        basis_[pos] = encode_artificial(entry.artificial_row);
        art_position_[entry.artificial_row] = pos;
        x_[pos] = 0.0;
      } else {
        auto it = index.find(entry.config);
        if (it == index.end()) {
          throw InternalError("warm basis column " + entry.config.to_string() +
                              " is not in the active set");
        }
        basis_[pos] = it->second;
        col_position_[it->second] = pos;
        x_[pos] = plan.mass(entry.config);
      }
    }
    refactorize();
    phase_ = 2;
  }

  void run_phase1() {
    optimize();
    double infeasibility = 0.0;
    for (int pos = 0; pos < m_; ++pos) {
      if (is_artificial(basis_[pos])) infeasibility += std::max(x_[pos], 0.0);
    }
    if (infeasibility > kMassTol * (1.0 + problem_.arity())) {
      throw FeasibilityError(
          "the configuration set carries no transport plan (phase-1 "
          "infeasibility " +
          std::to_string(infeasibility) + ")");
    }
    phase_ = 2;
    bland_ = false;
    consecutive_degenerate_ = 0;
  }

  void run_phase2() { optimize(); }

  bool phase1_feasible() {
    optimize();
    double infeasibility = 0.0;
    for (int pos = 0; pos < m_; ++pos) {
      if (is_artificial(basis_[pos])) infeasibility += std::max(x_[pos], 0.0);
    }
    return infeasibility <= kMassTol * (1.0 + problem_.arity());
  }

  ReducedSolution extract() const {
    ReducedSolution sol;
    for (int pos = 0; pos < m_; ++pos) {
      const int code = basis_[pos];
      if (!is_artificial(code) && x_[pos] > kPlanZero) {
        sol.plan.set(columns_[code], x_[pos]);
      }
    }
    double objective = 0.0;
    for (int pos = 0; pos < m_; ++pos) {
      if (!is_artificial(basis_[pos])) {
        objective += col_cost_[basis_[pos]] * x_[pos];
      }
    }
    sol.objective = objective;

    const Eigen::VectorXd y = duals();
    const auto& sizes = problem_.sizes();
    sol.potentials.values.resize(sizes.size());
    for (std::size_t axis = 0; axis < sizes.size(); ++axis) {
      sol.potentials.values[axis].assign(sizes[axis], 0.0);
      for (int j = 0; j < sizes[axis]; ++j) {
        const int row = layout_.row_of(static_cast<int>(axis), j);
        if (row >= 0) sol.potentials.values[axis][j] = y[row];
      }
    }
    sol.potentials = gauge_normalized(std::move(sol.potentials));

    sol.basis.columns.reserve(m_);
    for (int pos = 0; pos < m_; ++pos) {
      const int code = basis_[pos];
      if (is_artificial(code)) {
        sol.basis.columns.push_back(
            BasisColumn::artificial(decode_artificial(code)));
      } else {
        sol.basis.columns.push_back(BasisColumn::real(columns_[code]));
      }
    }
    sol.phase1_pivots = phase1_pivots_;
    sol.phase2_pivots = phase2_pivots_;
    return sol;
  }

 private:
  static int encode_artificial(int row) { return -1 - row; }
  static bool is_artificial(int code) { return code < 0; }
  static int decode_artificial(int code) { return -1 - code; }

  double basic_cost(int code) const {
    if (phase_ == 1) return is_artificial(code) ? 1.0 : 0.0;
    return is_artificial(code) ? 0.0 : col_cost_[code];
  }

  // Serial used by Bland's rule; artificials sort after all real columns.
  int serial(int code) const {
    return is_artificial(code) ? n_ + decode_artificial(code) : code;
  }

  Eigen::VectorXd duals() const {
    Eigen::VectorXd cb(m_);
    for (int pos = 0; pos < m_; ++pos) cb[pos] = basic_cost(basis_[pos]);
    return binv_.transpose() * cb;
  }

  double reduced_cost(int j, const Eigen::VectorXd& y) const {
    double dot = 0.0;
    for (int row : col_rows_[j]) dot += y[row];
    return (phase_ == 1 ? 0.0 : col_cost_[j]) - dot;
  }

  // Phase-1 data is all unit-scale; only phase 2 prices against the cost.
  double pricing_tol() const { return phase_ == 1 ? 1e-11 : lp_tol_; }

  // Entering column: most negative reduced cost, ties to the lowest
  // insertion index; Bland's rule (first eligible) while stalled on
  // degenerate pivots. Returns -1 at optimality.
  int price(const Eigen::VectorXd& y) const {
    const double tol = pricing_tol();
    int best = -1;
    double best_rc = -tol;
    for (int j = 0; j < n_; ++j) {
      if (col_position_[j] >= 0) continue;
      const double rc = reduced_cost(j, y);
      if (rc < -tol && bland_) return j;
      if (rc < best_rc) {
        best_rc = rc;
        best = j;
      }
    }
    return best;
  }

  void refactorize() {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
    for (int pos = 0; pos < m_; ++pos) {
      const int code = basis_[pos];
      if (is_artificial(code)) {
        basis_matrix(decode_artificial(code), pos) = 1.0;
      } else {
        for (int row : col_rows_[code]) basis_matrix(row, pos) = 1.0;
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!lu.isInvertible()) {
      throw InternalError("simplex basis became singular");
    }
    binv_ = lu.inverse();
  }

  // Leaving position for entering direction d. Degenerate artificials with a
  // nonzero component must pivot out first so they stay at zero.
  int choose_leaving(const Eigen::VectorXd& d) const {
    if (phase_ == 2) {
      int forced = -1;
      double forced_mag = kPivotTol;
      for (int pos = 0; pos < m_; ++pos) {
        if (!is_artificial(basis_[pos])) continue;
        const double mag = std::abs(d[pos]);
        if (mag > forced_mag) {
          forced_mag = mag;
          forced = pos;
        }
      }
      if (forced >= 0) return forced;
    }

    int leave = -1;
    double best_ratio = 0.0;
    for (int pos = 0; pos < m_; ++pos) {
      const double dp = d[pos];
      if (dp <= kPivotTol) continue;
      const double ratio = std::max(x_[pos], 0.0) / dp;
      if (leave < 0) {
        best_ratio = ratio;
        leave = pos;
        continue;
      }
      const double window = 1e-12 * (1.0 + best_ratio);
      if (ratio < best_ratio - window) {
        best_ratio = ratio;
        leave = pos;
      } else if (ratio <= best_ratio + window) {
        if (bland_) {
          if (serial(basis_[pos]) < serial(basis_[leave])) leave = pos;
        } else if (dp > d[leave] ||
                   (dp == d[leave] &&
                    serial(basis_[pos]) < serial(basis_[leave]))) {
          leave = pos;
        }
      }
    }
    return leave;
  }

  void pivot(int entering, int leave, const Eigen::VectorXd& d) {
    const double step = std::max(x_[leave], 0.0) / d[leave];
    const double t = d[leave] > kPivotTol ? step : 0.0;
    if (t != 0.0) {
      for (int pos = 0; pos < m_; ++pos) {
        x_[pos] -= t * d[pos];
        if (x_[pos] < 0.0 && x_[pos] > -1e-11) x_[pos] = 0.0;
      }
    }
    x_[leave] = t;

    const int old = basis_[leave];
    if (is_artificial(old)) {
      art_position_[decode_artificial(old)] = -1;
    } else {
      col_position_[old] = -1;
    }
    basis_[leave] = entering;
    col_position_[entering] = leave;

    const double dp = d[leave];
    binv_.row(leave) /= dp;
    for (int pos = 0; pos < m_; ++pos) {
      if (pos == leave) continue;
      const double factor = d[pos];
      if (factor != 0.0) binv_.row(pos) -= factor * binv_.row(leave);
    }

    if (t <= kDegenerateStep) {
      if (++consecutive_degenerate_ >= kBlandTrigger) bland_ = true;
    } else {
      consecutive_degenerate_ = 0;
      bland_ = false;
    }
  }

  void optimize() {
    std::int64_t pivots_here = 0;
    while (true) {
      const Eigen::VectorXd y = duals();
      const int entering = price(y);
      if (entering < 0) return;

      Eigen::VectorXd d = Eigen::VectorXd::Zero(m_);
      for (int row : col_rows_[entering]) d += binv_.col(row);

      const int leave = choose_leaving(d);
      if (leave < 0) {
        throw InternalError(
            "transport LP reported an unbounded direction; the polytope is "
            "compact, so this is a solver bug");
      }
      pivot(entering, leave, d);
      if (phase_ == 1) ++phase1_pivots_; else ++phase2_pivots_;
      if (++pivots_here % kRefactorEvery == 0) refactorize();
      if (pivots_here > kMaxPivots) {
        throw InternalError("simplex exceeded the pivot budget");
      }
    }
  }

  const Problem& problem_;
  const std::vector<Configuration>& columns_;
  double lp_tol_;
  RowLayout layout_;
  int m_ = 0;
  int n_ = 0;

  Eigen::VectorXd b_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<double> col_cost_;

  std::vector<int> basis_;         // per position: column id or encoded artificial
  std::vector<int> col_position_;  // column id -> basis position or -1
  std::vector<int> art_position_;  // row -> basis position or -1
  Eigen::VectorXd x_;
  Eigen::MatrixXd binv_;

  int phase_ = 1;
  bool bland_ = false;
  int consecutive_degenerate_ = 0;
  std::int64_t phase1_pivots_ = 0;
  std::int64_t phase2_pivots_ = 0;
};

}  // namespace

int constraint_rank(const std::vector<int>& sizes) {
  int rank = 1;
  for (int s : sizes) rank += s - 1;
  return rank;
}

ReducedSolution solve_on_columns(const Problem& problem,
                                 const std::vector<Configuration>& columns,
                                 const Basis* warm, const SparsePlan* warm_plan,
                                 double tol_base) {
  if (columns.empty()) {
    throw FeasibilityError("empty configuration set");
  }
  Simplex simplex(problem, columns, problem.tolerances(tol_base).lp);
  if (warm != nullptr && !warm->empty()) {
    simplex.warm_start(*warm, warm_plan != nullptr ? *warm_plan : SparsePlan{});
  } else {
    simplex.cold_start();
    simplex.run_phase1();
  }
  simplex.run_phase2();
  return simplex.extract();
}

ReducedSolution solve_reduced(const ActiveSet& omega, const Problem& problem,
                              const Basis* warm, const SparsePlan* warm_plan,
                              double tol_base) {
  return solve_on_columns(problem, omega.configs(), warm, warm_plan, tol_base);
}

bool is_feasible_support(const std::vector<Configuration>& configs,
                         const std::vector<DiscreteMarginal>& marginals) {
  if (configs.empty()) return false;
  std::vector<int> sizes;
  sizes.reserve(marginals.size());
  for (const auto& marginal : marginals) sizes.push_back(marginal.size());
  // Feasibility does not depend on the cost.
  Problem probe(marginals,
                CostSpec::from_function(
                    sizes, [](const Configuration&) { return 0.0; }));
  Simplex simplex(probe, configs, probe.tolerances().lp);
  simplex.cold_start();
  return simplex.phase1_feasible();
}

}  // namespace gencol
