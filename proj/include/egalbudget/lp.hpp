// Dense two-phase simplex with Bland's rule.
//
// Desk-scale problems only: every formulation in this project has at most a
// few hundred variables and a few dozen rows, so a dense tableau is adequate
// and easy to audit. The solver is templated on the scalar type; the default
// is double, and an exact-rational instantiation (e.g. boost cpp_rational)
// works for certificate-grade runs.
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "egalbudget/core.hpp"

namespace egb {

enum class Rel { Le, Eq, Ge };
enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct SimplexTraits {
  // Exact arithmetic: no tolerances.
  static T pivot_tol() { return T(0); }
  static T feas_tol() { return T(0); }
};

template <>
struct SimplexTraits<double> {
  static double pivot_tol() { return 1e-9; }
  static double feas_tol() { return 1e-8; }
};

template <class T>
struct BasicLinearProgram {
  struct Row {
    std::vector<T> coeffs;
    Rel rel;
    T rhs;
  };

  int num_vars = 0;
  std::vector<T> objective;    // maximize objective . x
  std::vector<Row> rows;
  std::vector<bool> free_var;  // default: x_j >= 0

  explicit BasicLinearProgram(int n)
      : num_vars(n), objective(n, T(0)), free_var(n, false) {}

  void add_row(std::vector<T> coeffs, Rel rel, T rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars)
      throw InputError("LP row width does not match variable count");
    rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
  }
};

template <class T>
struct BasicSolveStatus {
  LpStatus status;
  T value;            // meaningful when Optimal
  std::vector<T> x;   // meaningful when Optimal
};

using LinearProgram = BasicLinearProgram<double>;
using SolveStatus = BasicSolveStatus<double>;

namespace detail {

template <class T>
class SimplexTableau {
 public:
  explicit SimplexTableau(const BasicLinearProgram<T>& lp) : lp_(lp) {
    build();
  }

  BasicSolveStatus<T> solve() {
    const T ftol = SimplexTraits<T>::feas_tol();
    if (num_artificial_ > 0) {
      std::vector<T> phase1_cost(num_cols_, T(0));
      for (int j = first_artificial_; j < num_cols_; ++j) phase1_cost[j] = T(-1);
      if (!run(phase1_cost, /*allow_artificial=*/true))
        throw SolverError("phase-1 simplex reported an unbounded problem");
      T infeas = T(0);
      for (size_t r = 0; r < rows_.size(); ++r)
        if (basis_[r] >= first_artificial_) infeas += rhs_[r];
      if (infeas > ftol) return {LpStatus::Infeasible, T(0), {}};
      purge_artificials();
    }
    std::vector<T> cost(num_cols_, T(0));
    for (int j = 0; j < lp_.num_vars; ++j) {
      cost[var_pos_[j]] = lp_.objective[j];
      if (neg_pos_[j] >= 0) cost[neg_pos_[j]] = -lp_.objective[j];
    }
    if (!run(cost, /*allow_artificial=*/false))
      return {LpStatus::Unbounded, T(0), {}};
    return extract();
  }

 private:
  void build() {
    const int n = lp_.num_vars;
    var_pos_.resize(n);
    neg_pos_.assign(n, -1);
    int col = 0;
    for (int j = 0; j < n; ++j) {
      var_pos_[j] = col++;
      if (lp_.free_var[j]) neg_pos_[j] = col++;
    }
    // One slack per inequality row, then artificials.
    std::vector<int> slack_col(lp_.rows.size(), -1);
    for (size_t r = 0; r < lp_.rows.size(); ++r)
      if (lp_.rows[r].rel != Rel::Eq) slack_col[r] = col++;
    first_artificial_ = col;

    for (size_t r = 0; r < lp_.rows.size(); ++r) {
      const auto& src = lp_.rows[r];
      // Normalize to non-negative rhs.
      const bool flip = src.rhs < T(0);
      Rel rel = src.rel;
      if (flip) {
        if (rel == Rel::Le)
          rel = Rel::Ge;
        else if (rel == Rel::Ge)
          rel = Rel::Le;
      }
      std::vector<T> row(first_artificial_, T(0));
      for (int j = 0; j < n; ++j) {
        const T v = flip ? -src.coeffs[j] : src.coeffs[j];
        row[var_pos_[j]] = v;
        if (neg_pos_[j] >= 0) row[neg_pos_[j]] = -v;
      }
      if (slack_col[r] >= 0) row[slack_col[r]] = (rel == Rel::Le) ? T(1) : T(-1);
      rows_.push_back(std::move(row));
      rhs_.push_back(flip ? -src.rhs : src.rhs);
      if (rel == Rel::Le) {
        basis_.push_back(slack_col[r]);
        needs_artificial_.push_back(false);
      } else {
        basis_.push_back(-1);  // assigned below
        needs_artificial_.push_back(true);
      }
    }
    num_artificial_ = 0;
    for (size_t r = 0; r < rows_.size(); ++r)
      if (needs_artificial_[r]) ++num_artificial_;
    num_cols_ = first_artificial_ + num_artificial_;
    int art = first_artificial_;
    for (size_t r = 0; r < rows_.size(); ++r) {
      rows_[r].resize(num_cols_, T(0));
      if (needs_artificial_[r]) {
        rows_[r][art] = T(1);
        basis_[r] = art++;
      }
    }
  }

  // Bland's rule simplex on the current tableau. Returns false on
  // unboundedness.
  bool run(const std::vector<T>& cost, bool allow_artificial) {
    const T tol = SimplexTraits<T>::pivot_tol();
    std::vector<T> obj(num_cols_, T(0));  // reduced costs: c_B B^-1 A - c
    for (int j = 0; j < num_cols_; ++j) obj[j] = -cost[j];
    for (size_t r = 0; r < rows_.size(); ++r) {
      const T cb = cost[basis_[r]];
      if (cb != T(0))
        for (int j = 0; j < num_cols_; ++j) obj[j] += cb * rows_[r][j];
    }
    const int limit_cols = allow_artificial ? num_cols_ : first_artificial_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit_cols; ++j) {
        if (obj[j] < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      T best_ratio = T(0);
      for (size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][enter] > tol) {
          const T ratio = rhs_[r] / rows_[r][enter];
          if (leave < 0 || ratio < best_ratio ||
              (ratio == best_ratio && basis_[r] < basis_[leave])) {
            leave = static_cast<int>(r);
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter, &obj);
    }
  }

  void pivot(int leave, int enter, std::vector<T>* obj) {
    const T p = rows_[leave][enter];
    basis_[leave] = enter;
    for (int j = 0; j < num_cols_; ++j) rows_[leave][j] /= p;
    rhs_[leave] /= p;
    rows_[leave][enter] = T(1);  // kill roundoff on the pivot column
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (static_cast<int>(r) == leave) continue;
      const T f = rows_[r][enter];
      if (f == T(0)) continue;
      for (int j = 0; j < num_cols_; ++j) rows_[r][j] -= f * rows_[leave][j];
      rows_[r][enter] = T(0);
      rhs_[r] -= f * rhs_[leave];
      if (rhs_[r] < T(0) && rhs_[r] > -SimplexTraits<T>::feas_tol()) rhs_[r] = T(0);
    }
    if (obj) {
      const T f = (*obj)[enter];
      if (f != T(0)) {
        for (int j = 0; j < num_cols_; ++j) (*obj)[j] -= f * rows_[leave][j];
        (*obj)[enter] = T(0);
      }
    }
  }

  // After a feasible phase 1, pivot basic artificials out or drop their
  // (redundant) rows, then truncate the artificial columns.
  void purge_artificials() {
    const T tol = SimplexTraits<T>::pivot_tol();
    for (size_t r = 0; r < rows_.size();) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        const T v = rows_[r][j] < T(0) ? -rows_[r][j] : rows_[r][j];
        if (v > tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(static_cast<int>(r), col, nullptr);
        ++r;
      } else {
        rows_.erase(rows_.begin() + r);
        rhs_.erase(rhs_.begin() + r);
        basis_.erase(basis_.begin() + r);
      }
    }
    num_cols_ = first_artificial_;
    num_artificial_ = 0;
    for (auto& row : rows_) row.resize(num_cols_);
  }

  BasicSolveStatus<T> extract() const {
    std::vector<T> full(num_cols_, T(0));
    for (size_t r = 0; r < rows_.size(); ++r) full[basis_[r]] = rhs_[r];
    std::vector<T> x(lp_.num_vars, T(0));
    T value = T(0);
    for (int j = 0; j < lp_.num_vars; ++j) {
      x[j] = full[var_pos_[j]];
      if (neg_pos_[j] >= 0) x[j] -= full[neg_pos_[j]];
      value += lp_.objective[j] * x[j];
    }
    return {LpStatus::Optimal, value, std::move(x)};
  }

  const BasicLinearProgram<T>& lp_;
  std::vector<std::vector<T>> rows_;
  std::vector<T> rhs_;
  std::vector<int> basis_;
  std::vector<bool> needs_artificial_;
  std::vector<int> var_pos_;
  std::vector<int> neg_pos_;
  int first_artificial_ = 0;
  int num_artificial_ = 0;
  int num_cols_ = 0;
};

}  // namespace detail

template <class T>
BasicSolveStatus<T> solve_lp(const BasicLinearProgram<T>& lp) {
  for (const auto& row : lp.rows)
    for (const T& c : row.coeffs)
      if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(static_cast<double>(c)))
          throw InputError("LP has non-finite coefficients");
      }
  detail::SimplexTableau<T> tab(lp);
  return tab.solve();
}

inline SolveStatus solve_lp(const LinearProgram& lp) {
  return solve_lp<double>(lp);
}

}  // namespace egb
