// Independent test oracles. Everything here is deliberately brute force and
// shares no code with the implementation paths it cross-checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "egalbudget/core.hpp"
#include "egalbudget/lp.hpp"

namespace oracle {

// Exhaustive vertex enumeration for small LPs: collect all constraints
// (rows plus x_j >= 0 for non-free vars), solve every n-subset as a linear
// system by Gaussian elimination, keep feasible vertices, take the best
// objective. Assumes the optimum is attained at a vertex (bounded feasible
// region in our usage).
inline std::optional<double> lp_vertex_optimum(const egb::LinearProgram& lp) {
  const int n = lp.num_vars;
  struct C {
    std::vector<double> a;
    double b;
    bool eq;
  };
  std::vector<C> cons;  // a.x <= b (Ge rows negated), equalities flagged
  for (const auto& row : lp.rows) {
    if (row.rel == egb::Rel::Le) {
      cons.push_back({row.coeffs, row.rhs, false});
    } else if (row.rel == egb::Rel::Ge) {
      auto a = row.coeffs;
      for (double& v : a) v = -v;
      cons.push_back({std::move(a), -row.rhs, false});
    } else {
      cons.push_back({row.coeffs, row.rhs, true});
    }
  }
  for (int j = 0; j < n; ++j) {
    if (lp.free_var[j]) continue;
    std::vector<double> a(n, 0.0);
    a[j] = -1.0;
    cons.push_back({std::move(a), 0.0, false});
  }
  const int nc = static_cast<int>(cons.size());
  if (nc < n) return std::nullopt;

  auto feasible = [&](const std::vector<double>& x) {
    for (const auto& c : cons) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += c.a[j] * x[j];
      if (c.eq ? std::fabs(v - c.b) > 1e-7 : v > c.b + 1e-7) return false;
    }
    return true;
  };

  std::optional<double> best;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int idx, int start) {
    if (idx == n) {
      // Solve the square system.
      std::vector<std::vector<double>> A(n, std::vector<double>(n + 1));
      for (int r = 0; r < n; ++r) {
        for (int j = 0; j < n; ++j) A[r][j] = cons[pick[r]].a[j];
        A[r][n] = cons[pick[r]].b;
      }
      for (int col = 0; col < n; ++col) {
        int piv = -1;
        double mag = 1e-10;
        for (int r = col; r < n; ++r)
          if (std::fabs(A[r][col]) > mag) {
            mag = std::fabs(A[r][col]);
            piv = r;
          }
        if (piv < 0) return;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < n; ++r) {
          if (r == col) continue;
          const double f = A[r][col] / A[col][col];
          for (int j = col; j <= n; ++j) A[r][j] -= f * A[col][j];
        }
      }
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = A[j][n] / A[j][j];
      if (!feasible(x)) return;
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += lp.objective[j] * x[j];
      if (!best || v > *best) best = v;
      return;
    }
    for (int c = start; c <= nc - (n - idx); ++c) {
      pick[idx] = c;
      rec(idx + 1, c + 1);
    }
  };
  rec(0, 0);
  return best;
}

// 2^n subset scan of the GFS definition.
inline bool gfs_naive(const egb::Instance& inst, const egb::Distribution& x,
                      double eps = egb::kEps) {
  const int n = inst.num_agents();
  for (std::uint64_t s = 1; s < (1ull << n); ++s) {
    std::vector<bool> in_union(inst.num_projects(), false);
    int size = 0;
    for (int i = 0; i < n; ++i)
      if (s & (1ull << i)) {
        ++size;
        for (int j : inst.approval_set(i)) in_union[j] = true;
      }
    double mass = 0.0;
    for (int j = 0; j < inst.num_projects(); ++j)
      if (in_union[j]) mass += x[j];
    if (mass < static_cast<double>(size) / n - eps) return false;
  }
  return true;
}

// 2^n subset scan of the AFS definition (only subsets with a commonly
// approved project are constrained).
inline bool afs_naive(const egb::Instance& inst, const egb::Distribution& x,
                      double eps = egb::kEps) {
  const int n = inst.num_agents();
  const auto u = egb::utility_profile(inst, x);
  for (std::uint64_t s = 1; s < (1ull << n); ++s) {
    int size = 0;
    double total = 0.0;
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (s & (1ull << i)) {
        ++size;
        total += u[i];
        members.push_back(i);
      }
    bool common = false;
    for (int j = 0; j < inst.num_projects() && !common; ++j) {
      bool all = true;
      for (int i : members)
        if (!inst.approves(i, j)) all = false;
      common = all;
    }
    if (!common) continue;
    if (total / size < static_cast<double>(size) / n - eps) return false;
  }
  return true;
}

// Grid search for a blocking coalition: for every S, scan deviations z on
// the 1/60 grid with total |S|/n and ask whether every member strictly
// improves (by more than the checker's margin).
inline bool cfs_grid_blocked(const egb::Instance& inst, const egb::Distribution& x,
                             int steps = 60, double strict = 1e-7) {
  const int n = inst.num_agents();
  const int m = inst.num_projects();
  const auto u = egb::utility_profile(inst, x);
  for (std::uint64_t s = 1; s < (1ull << n); ++s) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (s & (1ull << i)) members.push_back(i);
    const long budget_ticks =
        static_cast<long>(members.size()) * steps / n;
    if (static_cast<long>(members.size()) * steps % n != 0) continue;  // off grid
    std::vector<long> ticks(m, 0);
    bool found = false;
    std::function<void(int, long)> rec = [&](int j, long left) {
      if (found) return;
      if (j == m - 1) {
        ticks[j] = left;
        for (int i : members) {
          double uz = 0.0;
          for (int p : inst.approval_set(i))
            uz += static_cast<double>(ticks[p]) / steps;
          if (uz <= u[i] + strict) return;
        }
        found = true;
        return;
      }
      for (long t = 0; t <= left && !found; ++t) {
        ticks[j] = t;
        rec(j + 1, left - t);
      }
    };
    rec(0, budget_ticks);
    if (found) return true;
  }
  return false;
}

// Discretized search for an approval-supported decomposition: each agent's
// distribution on a 1/steps grid over her approval set.
inline bool decomposition_grid_feasible(const egb::Instance& inst,
                                        const egb::Distribution& x, int steps,
                                        double tol) {
  const int n = inst.num_agents();
  const int m = inst.num_projects();
  std::vector<double> acc(m, 0.0);
  std::function<bool(int)> per_agent = [&](int i) -> bool {
    if (i == n) {
      for (int j = 0; j < m; ++j)
        if (std::fabs(acc[j] / n - x[j]) > tol) return false;
      return true;
    }
    const auto& a = inst.approval_set(i);
    std::vector<long> ticks(a.size(), 0);
    std::function<bool(std::size_t, long)> spread = [&](std::size_t idx,
                                                        long left) -> bool {
      if (idx == a.size() - 1) {
        ticks[idx] = left;
        for (std::size_t t = 0; t < a.size(); ++t)
          acc[a[t]] += static_cast<double>(ticks[t]) / steps;
        const bool ok = per_agent(i + 1);
        for (std::size_t t = 0; t < a.size(); ++t)
          acc[a[t]] -= static_cast<double>(ticks[t]) / steps;
        return ok;
      }
      for (long t = 0; t <= left; ++t) {
        ticks[idx] = t;
        if (spread(idx + 1, left - t)) return true;
      }
      return false;
    };
    return spread(0, steps);
  };
  return per_agent(0);
}

}  // namespace oracle
