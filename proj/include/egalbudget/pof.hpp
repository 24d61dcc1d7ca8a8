// Per-instance price of fairness: the best achievable egalitarian welfare
// subject to each fairness axiom, normalized by the optimal welfare, plus
// structural welfare bounds and per-rule efficiency ratios.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "egalbudget/axioms.hpp"
#include "egalbudget/core.hpp"
#include "egalbudget/lp.hpp"
#include "egalbudget/rules.hpp"
#include "egalbudget/solver.hpp"

namespace egb {

enum class Exactness { Exact, LowerBound };

struct PofResult {
  AxiomId axiom;
  double best_fair_welfare;
  double sw_star;
  double ratio;
  Distribution achieving;
  Exactness exactness;
};

struct WelfareBounds {
  int cover_number;   // m': fewest projects covering all agents
  int min_support;    // m*: smallest support of an optimal distribution
  double lower;       // 1/m'
  double upper;       // (m*-1)/m*, or 1 when m* = 1
  int score_floor;    // floor(n * sw*)
  double sw_star;
};

namespace detail {

// Distinct approval-set unions with the size of the largest coalition whose
// sets all fit inside each union.
struct UnionConstraint {
  std::uint64_t projects;
  int coalition_size;
};

inline std::vector<UnionConstraint> distinct_unions(const Instance& inst,
                                                    int subset_cap) {
  const int n = inst.num_agents();
  if (n > subset_cap)
    throw CapExceeded("GFS union enumeration: too many agents");
  if (inst.num_projects() > 64)
    throw CapExceeded("GFS union enumeration: more than 64 projects");
  std::vector<std::uint64_t> approval_mask(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : inst.approval_set(i)) approval_mask[i] |= 1ull << j;
  std::vector<std::uint64_t> union_of(std::size_t(1) << n, 0);
  std::set<std::uint64_t> seen;
  std::vector<UnionConstraint> out;
  for (std::uint64_t s = 1; s < (1ull << n); ++s) {
    const int low = static_cast<int>(__builtin_ctzll(s));
    const std::uint64_t u = union_of[s & (s - 1)] | approval_mask[low];
    union_of[s] = u;
    if (!seen.insert(u).second) continue;
    int count = 0;
    for (int i = 0; i < n; ++i)
      if ((approval_mask[i] & ~u) == 0) ++count;
    out.push_back({u, count});
  }
  return out;
}

// Max-min LP over x with extra row constraints already present in lp.
// Expects variables (x_0..x_{m-1}, t) and lp missing the simplex row and
// the u_i >= t rows; adds them and solves.
inline SolveStatus solve_maxmin(const Instance& inst, LinearProgram lp) {
  const int m = inst.num_projects();
  lp.objective.assign(m + 1, 0.0);
  lp.objective[m] = 1.0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    auto row = utility_row(inst, i, m + 1);
    row[m] = -1.0;
    lp.add_row(std::move(row), Rel::Ge, 0.0);
  }
  lp.add_row(simplex_row(m, m + 1), Rel::Eq, 1.0);
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw SolverError("restricted max-min LP did not solve to optimality");
  return sol;
}

inline void enumerate_grid(int m, int steps,
                           const std::function<void(const Distribution&)>& fn);

}  // namespace detail

/// Best egalitarian welfare over UFS-satisfying distributions (exact LP).
inline SolveStatus best_ufs_lp(const Instance& inst) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  LinearProgram lp(m + 1);
  for (const auto& cls : detail::approval_classes(inst)) {
    auto row = detail::utility_row(inst, cls.front(), m + 1);
    lp.add_row(std::move(row), Rel::Ge, static_cast<double>(cls.size()) / n);
  }
  return detail::solve_maxmin(inst, std::move(lp));
}

inline PofResult best_fair_welfare(const Instance& inst, AxiomId axiom,
                                   int gfs_cap = kGfsSubsetCap,
                                   int cfs_cap = kCfsCoalitionCap) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  const auto [egal_x, sw_star] = optimal_egalitarian(inst);

  auto make = [&](double best, Distribution d, Exactness e) {
    return PofResult{axiom, best, sw_star, best / sw_star, std::move(d), e};
  };

  switch (axiom) {
    case AxiomId::IFS:
      // The egalitarian optimum itself satisfies IFS, so the best IFS
      // welfare is sw* and the ratio is 1.
      return make(sw_star, leximin(inst), Exactness::Exact);

    case AxiomId::UFS: {
      auto sol = best_ufs_lp(inst);
      return make(sol.value, detail::to_distribution(sol.x, m), Exactness::Exact);
    }

    case AxiomId::GFS: {
      LinearProgram lp(m + 1);
      for (const auto& uc : detail::distinct_unions(inst, gfs_cap)) {
        std::vector<double> row(m + 1, 0.0);
        for (int j = 0; j < m; ++j)
          if (uc.projects & (1ull << j)) row[j] = 1.0;
        lp.add_row(std::move(row), Rel::Ge,
                   static_cast<double>(uc.coalition_size) / n);
      }
      auto sol = detail::solve_maxmin(inst, std::move(lp));
      return make(sol.value, detail::to_distribution(sol.x, m), Exactness::Exact);
    }

    case AxiomId::IMP: {
      // Joint variables: arcs y_{i,j} over approved pairs, then x_j =
      // sum_i y_{i,j}, plus t. Maximize t = min utility.
      std::vector<std::pair<int, int>> arcs;
      for (int i = 0; i < n; ++i)
        for (int j : inst.approval_set(i)) arcs.emplace_back(i, j);
      const int na = static_cast<int>(arcs.size());
      LinearProgram lp(na + 1);
      lp.objective[na] = 1.0;
      for (int i = 0; i < n; ++i) {
        std::vector<double> budget_row(na + 1, 0.0);
        std::vector<double> util_row(na + 1, 0.0);
        for (int a = 0; a < na; ++a) {
          if (arcs[a].first == i) budget_row[a] = 1.0;
          if (inst.approves(i, arcs[a].second)) util_row[a] = 1.0;
        }
        util_row[na] = -1.0;
        lp.add_row(std::move(budget_row), Rel::Eq, 1.0 / n);
        lp.add_row(std::move(util_row), Rel::Ge, 0.0);
      }
      auto sol = solve_lp(lp);
      if (sol.status != LpStatus::Optimal)
        throw SolverError("IMP max-min LP did not solve to optimality");
      std::vector<double> x(m, 0.0);
      for (int a = 0; a < na; ++a) x[arcs[a].second] += std::max(0.0, sol.x[a]);
      return make(sol.value, detail::to_distribution(x, m), Exactness::Exact);
    }

    case AxiomId::AFS: {
      // Cutting planes over the finite family of constraints
      // sum_{i in S} u_i >= |S|^2 / n for S inside some N(p); the
      // separation oracle is the same prefix scan as check_afs.
      std::set<std::vector<int>> pool;
      for (int round = 0; round < 1000; ++round) {
        LinearProgram lp(m + 1);
        for (const auto& s : pool) {
          std::vector<double> row(m + 1, 0.0);
          for (int i : s)
            for (int j : inst.approval_set(i)) row[j] += 1.0;
          lp.add_row(std::move(row), Rel::Ge,
                     static_cast<double>(s.size()) * s.size() / n);
        }
        auto sol = detail::solve_maxmin(inst, std::move(lp));
        Distribution d = detail::to_distribution(sol.x, m);
        const auto u = utility_profile(inst, d);
        bool violated = false;
        for (int j = 0; j < m; ++j) {
          auto members = inst.approvers(j);
          std::sort(members.begin(), members.end(), [&](int a, int b) {
            return u[a] != u[b] ? u[a] < u[b] : a < b;
          });
          double prefix = 0.0;
          for (std::size_t k = 1; k <= members.size(); ++k) {
            prefix += u[members[k - 1]];
            if (prefix < static_cast<double>(k) * k / n - kEps) {
              std::vector<int> s(members.begin(), members.begin() + k);
              std::sort(s.begin(), s.end());
              if (pool.insert(std::move(s)).second) violated = true;
            }
          }
        }
        if (!violated) return make(sol.value, std::move(d), Exactness::Exact);
      }
      throw SolverError("AFS cutting-plane loop did not converge in 1000 rounds");
    }

    case AxiomId::CFS: {
      // The CFS-feasible set is not convex in general; report a lower
      // bound: best of the NASH outcome and (on tiny instances) a simplex
      // grid filtered by the verifier.
      double best = -1.0;
      std::optional<Distribution> best_x;
      auto consider = [&](const Distribution& d) {
        const double w = egalitarian_welfare(inst, d);
        if (w > best && check_cfs(inst, d, cfs_cap).holds) {
          best = w;
          best_x = d;
        }
      };
      consider(nash_rule(inst));
      const int steps = 12 * m;
      // Grid only when the point count stays small; the result is flagged
      // as a lower bound either way.
      double points = 1.0;
      for (int t = 1; t < m; ++t) points *= static_cast<double>(steps + t) / t;
      if (n <= cfs_cap && points <= 3000.0) {
        detail::enumerate_grid(m, steps, consider);
      }
      if (!best_x) throw SolverError("no CFS candidate found (unexpected)");
      return make(best, std::move(*best_x), Exactness::LowerBound);
    }
  }
  throw InputError("unknown axiom");
}

namespace detail {

inline void enumerate_grid(int m, int steps,
                           const std::function<void(const Distribution&)>& fn) {
  std::vector<double> x(m, 0.0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == m - 1) {
      x[j] = static_cast<double>(left) / steps;
      fn(Distribution(x));
      return;
    }
    for (int take = 0; take <= left; ++take) {
      x[j] = static_cast<double>(take) / steps;
      rec(j + 1, left - take);
    }
  };
  rec(0, steps);
}

}  // namespace detail

inline double pof(const Instance& inst, AxiomId axiom) {
  return best_fair_welfare(inst, axiom).ratio;
}

/// Normalized welfare of a rule's output on this instance.
inline double efficiency_ratio(const Instance& inst, RuleId rule,
                               int rp_cap = kRpDefaultCap) {
  const auto [x_opt, sw_star] = optimal_egalitarian(inst);
  const Distribution d = run_rule(rule, inst, rp_cap);
  return normalized_welfare(inst, d, sw_star);
}

inline constexpr int kCoverCap = 20;
inline constexpr int kSupportCap = 15;

inline WelfareBounds welfare_bounds(const Instance& inst, int cover_cap = kCoverCap,
                                    int support_cap = kSupportCap) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  if (m > cover_cap)
    throw CapExceeded("welfare_bounds: project count exceeds the cover-search cap");
  const auto [x_opt, sw_star] = optimal_egalitarian(inst);

  // m': exhaustive minimum set cover over projects.
  int cover = -1;
  for (int size = 1; size <= m && cover < 0; ++size) {
    std::vector<int> comb(size);
    std::function<bool(int, int)> rec = [&](int idx, int start) -> bool {
      if (idx == size) {
        for (int i = 0; i < n; ++i) {
          bool covered = false;
          for (int j : comb)
            if (inst.approves(i, j)) covered = true;
          if (!covered) return false;
        }
        return true;
      }
      for (int j = start; j <= m - (size - idx); ++j) {
        comb[idx] = j;
        if (rec(idx + 1, j + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) cover = size;
  }
  if (cover < 0)
    throw SolverError("no project cover exists (unreachable: approvals non-empty)");

  // m*: smallest support on which the optimum is still attained, found by a
  // restricted max-min LP per candidate support in lexicographic order.
  if (m > support_cap)
    throw CapExceeded("welfare_bounds: project count exceeds the support-search cap");
  int min_support = -1;
  for (int size = 1; size <= m && min_support < 0; ++size) {
    std::vector<int> comb(size);
    std::function<bool(int, int)> rec = [&](int idx, int start) -> bool {
      if (idx == size) {
        LinearProgram lp(m + 1);
        for (int j = 0; j < m; ++j) {
          if (std::find(comb.begin(), comb.end(), j) != comb.end()) continue;
          std::vector<double> row(m + 1, 0.0);
          row[j] = 1.0;
          lp.add_row(std::move(row), Rel::Eq, 0.0);
        }
        auto sol = detail::solve_maxmin(inst, std::move(lp));
        return sol.value >= sw_star - kEps;
      }
      for (int j = start; j <= m - (size - idx); ++j) {
        comb[idx] = j;
        if (rec(idx + 1, j + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) min_support = size;
  }

  WelfareBounds out;
  out.cover_number = cover;
  out.min_support = min_support;
  out.lower = 1.0 / cover;
  out.upper = (min_support <= 1) ? 1.0
                                 : static_cast<double>(min_support - 1) / min_support;
  out.score_floor = static_cast<int>(std::floor(n * sw_star + 1e-6));
  out.sw_star = sw_star;
  return out;
}

}  // namespace egb
