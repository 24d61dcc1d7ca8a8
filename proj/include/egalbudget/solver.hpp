// Optimization kernels shared by the voting rules and the price-of-fairness
// computations: max-min LP, leximin refinement, staged lexicographic
// maximization, the Nash product program, and transportation-style
// decomposition feasibility.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "egalbudget/core.hpp"
#include "egalbudget/lp.hpp"

namespace egb {

// Saturation decisions in leximin / lexicographic stages.
inline constexpr double kFreezeTol = 1e-7;

namespace detail {

// Row of utility coefficients for agent i over x-variables 0..m-1 inside a
// wider variable block of size width.
inline std::vector<double> utility_row(const Instance& inst, int i, int width) {
  std::vector<double> row(width, 0.0);
  for (int j : inst.approval_set(i)) row[j] = 1.0;
  return row;
}

inline std::vector<double> simplex_row(int m, int width) {
  std::vector<double> row(width, 0.0);
  for (int j = 0; j < m; ++j) row[j] = 1.0;
  return row;
}

inline Distribution to_distribution(std::vector<double> x, int m) {
  x.resize(m);
  double sum = 0.0;
  for (double& v : x) {
    if (v < 0.0 && v > -1e-9) v = 0.0;
    sum += v;
  }
  // The simplex constraint holds within solver tolerance; renormalize the
  // residual so Distribution's stricter invariant is met.
  if (sum > 0.0)
    for (double& v : x) v /= sum;
  return Distribution(std::move(x));
}

}  // namespace detail

/// max over the simplex of min_i u_i(x). Variables (x_0..x_{m-1}, t).
inline std::pair<Distribution, double> optimal_egalitarian(const Instance& inst) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  LinearProgram lp(m + 1);
  lp.objective[m] = 1.0;
  for (int i = 0; i < n; ++i) {
    auto row = detail::utility_row(inst, i, m + 1);
    row[m] = -1.0;
    lp.add_row(std::move(row), Rel::Ge, 0.0);
  }
  lp.add_row(detail::simplex_row(m, m + 1), Rel::Eq, 1.0);
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw SolverError("egalitarian LP did not solve to optimality");
  return {detail::to_distribution(sol.x, m), sol.value};
}

/// Leximin refinement: iteratively maximize the minimum over unfrozen
/// agents, freeze those that cannot exceed the stage bound, repeat.
inline Distribution leximin(const Instance& inst) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  std::vector<bool> frozen(n, false);
  std::vector<double> bound(n, 0.0);
  std::vector<double> last_x;

  auto base_lp = [&](int width) {
    LinearProgram lp(width);
    lp.add_row(detail::simplex_row(m, width), Rel::Eq, 1.0);
    for (int i = 0; i < n; ++i)
      if (frozen[i])
        lp.add_row(detail::utility_row(inst, i, width), Rel::Eq, bound[i]);
    return lp;
  };

  int remaining = n;
  while (remaining > 0) {
    // Stage LP: max t s.t. u_i >= t for unfrozen i.
    LinearProgram lp = base_lp(m + 1);
    lp.objective[m] = 1.0;
    for (int i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      auto row = detail::utility_row(inst, i, m + 1);
      row[m] = -1.0;
      lp.add_row(std::move(row), Rel::Ge, 0.0);
    }
    auto stage = solve_lp(lp);
    if (stage.status != LpStatus::Optimal)
      throw SolverError("leximin stage LP did not solve to optimality");
    const double t = stage.value;
    last_x = stage.x;

    // An unfrozen agent is saturated when it cannot exceed t while all
    // other unfrozen agents keep at least t.
    bool any_frozen = false;
    for (int i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      LinearProgram probe = base_lp(m);
      probe.objective = detail::utility_row(inst, i, m);
      for (int k = 0; k < n; ++k)
        if (!frozen[k])
          probe.add_row(detail::utility_row(inst, k, m), Rel::Ge, t - 1e-10);
      auto best = solve_lp(probe);
      if (best.status != LpStatus::Optimal)
        throw SolverError("leximin saturation probe failed");
      if (best.value <= t + kFreezeTol) {
        frozen[i] = true;
        bound[i] = t;
        --remaining;
        any_frozen = true;
        last_x = best.x;
      }
    }
    if (!any_frozen)
      throw SolverError("leximin made no progress (unexpected)");
  }
  return detail::to_distribution(last_x, m);
}

/// Staged lexicographic maximization for a fixed agent ordering: stage s
/// maximizes u_{order[s]} subject to the earlier stages' optima.
inline Distribution lexicographic_max(const Instance& inst,
                                      const std::vector<int>& order) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  {
    std::vector<bool> seen(n, false);
    if (static_cast<int>(order.size()) != n)
      throw InputError("lexicographic order must list every agent exactly once");
    for (int i : order) {
      if (i < 0 || i >= n || seen[i])
        throw InputError("lexicographic order is not a permutation of the agents");
      seen[i] = true;
    }
  }
  std::vector<double> stage_value(n, 0.0);
  std::vector<double> x;
  for (int s = 0; s < n; ++s) {
    LinearProgram lp(m);
    lp.objective = detail::utility_row(inst, order[s], m);
    lp.add_row(detail::simplex_row(m, m), Rel::Eq, 1.0);
    for (int t = 0; t < s; ++t)
      lp.add_row(detail::utility_row(inst, order[t], m), Rel::Ge,
                 stage_value[t] - 1e-10);
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
      throw SolverError("lexicographic stage LP did not solve to optimality");
    stage_value[s] = sol.value;
    x = sol.x;
  }
  return detail::to_distribution(x, m);
}

struct NashResult {
  Distribution x;
  double kkt_residual;  // max over the per-project certificate defects
  long iterations;
  bool converged;
};

namespace detail {

// Per-project certificate defect for the Nash program: at an optimum,
// sum_{i in N(p_j)} 1/u_i <= n for every project, with equality on projects
// holding budget.
inline double nash_kkt_residual(const Instance& inst, const std::vector<double>& x,
                                const std::vector<double>& u) {
  const int n = inst.num_agents();
  double res = 0.0;
  for (int j = 0; j < inst.num_projects(); ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      if (inst.approves(i, j)) s += 1.0 / u[i];
    res = std::max(res, s - n);
    if (x[j] > 1e-8) res = std::max(res, std::fabs(s - n));
  }
  return res;
}

}  // namespace detail

/// Maximize prod_i u_i(x) over the simplex by the multiplicative update
/// x_j <- x_j * (sum_{i in N(p_j)} 1/u_i) / n, starting from the equal
/// shares distribution. The update is normalization-preserving and
/// monotonically increases the product (Baum-Eagon), so the iteration
/// converges to the KKT point the certificate below accepts.
inline NashResult nash_solve(const Instance& inst, long max_iters = 100000,
                             double target_residual = 1e-6) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  std::vector<double> x(m, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& a = inst.approval_set(i);
    for (int j : a) x[j] += 1.0 / (static_cast<double>(n) * a.size());
  }
  std::vector<double> u(n), score(m);
  std::array<std::vector<double>, 3> snaps;
  long snap_count = 0;
  long it = 0;
  double residual = 0.0;
  const double target = 0.5 * target_residual * n;
  for (; it < max_iters; ++it) {
    for (int i = 0; i < n; ++i) {
      u[i] = 0.0;
      for (int j : inst.approval_set(i)) u[i] += x[j];
    }
    residual = detail::nash_kkt_residual(inst, x, u);
    if (residual <= target) break;
    std::fill(score.begin(), score.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j : inst.approval_set(i)) score[j] += 1.0 / u[i];
    for (int j = 0; j < m; ++j) x[j] *= score[j] / n;
    // Coordinates vanishing towards a face whose certificate sum tends to
    // exactly n decay only harmonically; Aitken extrapolation over spaced
    // snapshots restores geometric convergence there, and revival guards
    // against a coordinate being extrapolated to zero prematurely.
    if ((it + 1) % 64 == 0) {
      snaps[snap_count % 3] = x;
      ++snap_count;
      if (snap_count >= 3) {
        const std::vector<double>& a = snaps[(snap_count - 3) % 3];
        const std::vector<double>& b = snaps[(snap_count - 2) % 3];
        double sum = 0.0;
        for (int j = 0; j < m; ++j) {
          const double d1 = b[j] - a[j];
          const double d2 = x[j] - b[j];
          const double denom = d2 - d1;
          if (std::abs(denom) > 1e-300 && std::abs(denom) < 0.5 * std::abs(d1)) {
            double ext = x[j] - d2 * d2 / denom;
            if (ext < 0.0) ext = 0.0;
            if (ext < x[j]) x[j] = ext;
          }
          if (x[j] == 0.0 && score[j] > n + 0.5 * target) x[j] = 1e-7;
          if (x[j] > 0.0 && x[j] < 1e-13 && score[j] <= n + 0.25 * target) x[j] = 0.0;
          sum += x[j];
        }
        for (int j = 0; j < m; ++j) x[j] /= sum;
      }
    }
  }
  return NashResult{detail::to_distribution(x, m), residual, it, it < max_iters};
}

struct DecompositionResult {
  bool feasible;
  // Per-agent distributions x_i (each over the agent's approval set) with
  // x = (1/n) sum_i x_i; present when feasible.
  std::vector<std::vector<double>> agent_shares;
  // A deficient project set violating the Hall condition; present (when
  // findable at desk scale) if infeasible.
  std::vector<int> deficient_projects;
};

/// Transportation feasibility: can x be written as an average of per-agent
/// distributions supported inside the approval sets?
inline DecompositionResult decomposition_feasible(const Instance& inst,
                                                  const Distribution& x) {
  require_compatible(inst, x);
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  // Variables y_{i,j} over approved pairs: y_{i,.} sums to 1/n, column j
  // sums to x_j.
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::vector<int>> arc_of_agent(n);
  for (int i = 0; i < n; ++i)
    for (int j : inst.approval_set(i)) {
      arc_of_agent[i].push_back(static_cast<int>(arcs.size()));
      arcs.emplace_back(i, j);
    }
  LinearProgram lp(static_cast<int>(arcs.size()));
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(arcs.size(), 0.0);
    for (int a : arc_of_agent[i]) row[a] = 1.0;
    lp.add_row(std::move(row), Rel::Eq, 1.0 / n);
  }
  for (int j = 0; j < m; ++j) {
    std::vector<double> row(arcs.size(), 0.0);
    bool any = false;
    for (size_t a = 0; a < arcs.size(); ++a)
      if (arcs[a].second == j) {
        row[a] = 1.0;
        any = true;
      }
    if (!any && x[j] > 1e-9) {
      // Project holds budget but nobody approves it: trivially infeasible.
      return DecompositionResult{false, {}, {j}};
    }
    lp.add_row(std::move(row), Rel::Eq, x[j]);
  }
  auto sol = solve_lp(lp);
  if (sol.status == LpStatus::Optimal) {
    std::vector<std::vector<double>> shares(n, std::vector<double>(m, 0.0));
    for (size_t a = 0; a < arcs.size(); ++a)
      shares[arcs[a].first][arcs[a].second] = std::max(0.0, sol.x[a]) * n;
    return DecompositionResult{true, std::move(shares), {}};
  }
  // Hall witness: a project set T with x(T) > |{i : A_i meets T}| / n.
  std::vector<int> support;
  for (int j = 0; j < m; ++j)
    if (x[j] > 1e-9) support.push_back(j);
  DecompositionResult out{false, {}, {}};
  if (support.size() <= 20) {
    double best = 1e-9;
    for (std::uint64_t mask = 1; mask < (1ull << support.size()); ++mask) {
      double mass = 0.0;
      int touched = 0;
      for (size_t s = 0; s < support.size(); ++s)
        if (mask & (1ull << s)) mass += x[support[s]];
      for (int i = 0; i < n; ++i) {
        bool meets = false;
        for (size_t s = 0; s < support.size() && !meets; ++s)
          if ((mask & (1ull << s)) && inst.approves(i, support[s])) meets = true;
        if (meets) ++touched;
      }
      const double defect = mass - static_cast<double>(touched) / n;
      if (defect > best) {
        best = defect;
        out.deficient_projects.clear();
        for (size_t s = 0; s < support.size(); ++s)
          if (mask & (1ull << s)) out.deficient_projects.push_back(support[s]);
      }
    }
  }
  return out;
}

}  // namespace egb
