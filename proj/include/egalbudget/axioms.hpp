// Verifiers for the six fairness axioms. Each check returns a verdict plus,
// on failure, a concrete witness that violates the axiom's defining
// inequality by more than the shared tolerance.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <functional>
#include <unordered_map>
#include <vector>

#include "egalbudget/core.hpp"
#include "egalbudget/lp.hpp"
#include "egalbudget/solver.hpp"

namespace egb {

enum class AxiomId { IFS, UFS, GFS, IMP, AFS, CFS };

inline const char* axiom_name(AxiomId a) {
  switch (a) {
    case AxiomId::IFS: return "ifs";
    case AxiomId::UFS: return "ufs";
    case AxiomId::GFS: return "gfs";
    case AxiomId::IMP: return "imp";
    case AxiomId::AFS: return "afs";
    case AxiomId::CFS: return "cfs";
  }
  return "?";
}

inline std::optional<AxiomId> axiom_from_name(const std::string& s) {
  if (s == "ifs") return AxiomId::IFS;
  if (s == "ufs") return AxiomId::UFS;
  if (s == "gfs") return AxiomId::GFS;
  if (s == "imp") return AxiomId::IMP;
  if (s == "afs") return AxiomId::AFS;
  if (s == "cfs") return AxiomId::CFS;
  return std::nullopt;
}

struct AxiomWitness {
  std::vector<int> coalition;             // violating agent set (may be empty for IMP)
  std::vector<int> projects;              // Hall-deficient project set (IMP)
  std::optional<std::vector<double>> deviation;  // blocking vector z (CFS)
  double margin = 0.0;                    // amount by which the inequality fails
};

struct AxiomReport {
  AxiomId axiom;
  bool holds;
  std::optional<AxiomWitness> witness;
};

// Default enumeration caps; exceeding one raises CapExceeded.
inline constexpr int kGfsSubsetCap = 20;
inline constexpr int kCfsCoalitionCap = 16;
// Strict improvement margin for blocking coalitions.
inline constexpr double kCfsStrict = 1e-7;

/// IFS: every agent's utility is at least 1/n.
inline AxiomReport check_ifs(const Instance& inst, const Distribution& x,
                             double eps = kEps) {
  const int n = inst.num_agents();
  const auto u = utility_profile(inst, x);
  for (int i = 0; i < n; ++i) {
    if (u[i] < 1.0 / n - eps)
      return {AxiomId::IFS, false, AxiomWitness{{i}, {}, std::nullopt, 1.0 / n - u[i]}};
  }
  return {AxiomId::IFS, true, std::nullopt};
}

namespace detail {

// Maximal classes of agents with identical approval sets.
inline std::vector<std::vector<int>> approval_classes(const Instance& inst) {
  std::map<std::vector<int>, std::vector<int>> groups;
  for (int i = 0; i < inst.num_agents(); ++i)
    groups[inst.approval_set(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [key, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// UFS: each agent in a class of identical approval sets has utility at
/// least class-size / n. Checking maximal classes suffices.
inline AxiomReport check_ufs(const Instance& inst, const Distribution& x,
                             double eps = kEps) {
  const int n = inst.num_agents();
  const auto u = utility_profile(inst, x);
  for (const auto& cls : detail::approval_classes(inst)) {
    const double bound = static_cast<double>(cls.size()) / n;
    for (int i : cls) {
      if (u[i] < bound - eps)
        return {AxiomId::UFS, false, AxiomWitness{cls, {}, std::nullopt, bound - u[i]}};
    }
  }
  return {AxiomId::UFS, true, std::nullopt};
}

/// GFS: for every coalition S, the budget on the union of its approval sets
/// is at least |S|/n. For a fixed union U the binding coalition is
/// {i : A_i subset of U}, so it suffices to scan distinct unions.
inline AxiomReport check_gfs(const Instance& inst, const Distribution& x,
                             int subset_cap = kGfsSubsetCap, double eps = kEps) {
  require_compatible(inst, x);
  const int n = inst.num_agents();
  const int m = inst.num_projects();
  if (n > subset_cap)
    throw CapExceeded("check_gfs: " + std::to_string(n) +
                      " agents exceeds the subset enumeration cap of " +
                      std::to_string(subset_cap));
  if (m > 64) throw CapExceeded("check_gfs: more than 64 projects");

  std::vector<std::uint64_t> approval_mask(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : inst.approval_set(i)) approval_mask[i] |= 1ull << j;

  // Distinct unions via subset DP, checked in subset-mask order so the
  // reported witness is deterministic.
  std::vector<std::uint64_t> union_of(std::size_t(1) << n, 0);
  std::unordered_map<std::uint64_t, char> seen;
  for (std::uint64_t s = 1; s < (1ull << n); ++s) {
    const int low = static_cast<int>(__builtin_ctzll(s));
    const std::uint64_t u_mask = union_of[s & (s - 1)] | approval_mask[low];
    union_of[s] = u_mask;
    if (!seen.emplace(u_mask, 1).second) continue;
    double mass = 0.0;
    for (int j = 0; j < m; ++j)
      if (u_mask & (1ull << j)) mass += x[j];
    std::vector<int> coalition;
    for (int i = 0; i < n; ++i)
      if ((approval_mask[i] & ~u_mask) == 0) coalition.push_back(i);
    const double bound = static_cast<double>(coalition.size()) / n;
    if (mass < bound - eps)
      return {AxiomId::GFS, false, AxiomWitness{coalition, {}, std::nullopt, bound - mass}};
  }
  return {AxiomId::GFS, true, std::nullopt};
}

/// IMP: x decomposes into per-agent distributions supported inside the
/// approval sets. Witness on failure is a Hall-deficient project set.
inline AxiomReport check_imp(const Instance& inst, const Distribution& x) {
  auto dec = decomposition_feasible(inst, x);
  if (dec.feasible) return {AxiomId::IMP, true, std::nullopt};
  AxiomWitness w;
  w.projects = dec.deficient_projects;
  double mass = 0.0;
  int touched = 0;
  for (int j : w.projects) mass += x[j];
  for (int i = 0; i < inst.num_agents(); ++i) {
    bool meets = false;
    for (int j : w.projects)
      if (inst.approves(i, j)) meets = true;
    if (meets) ++touched;
  }
  w.margin = mass - static_cast<double>(touched) / inst.num_agents();
  return {AxiomId::IMP, false, std::move(w)};
}

/// AFS: every coalition sharing a commonly approved project has average
/// utility at least |S|/n. Any such S is contained in some N(p), and the
/// binding subsets of each size are the k lowest-utility approvers, so a
/// per-project prefix scan is exhaustive.
inline AxiomReport check_afs(const Instance& inst, const Distribution& x,
                             double eps = kEps) {
  const int n = inst.num_agents();
  const auto u = utility_profile(inst, x);
  for (int j = 0; j < inst.num_projects(); ++j) {
    auto members = inst.approvers(j);
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      return u[a] != u[b] ? u[a] < u[b] : a < b;
    });
    double prefix = 0.0;
    for (std::size_t k = 1; k <= members.size(); ++k) {
      prefix += u[members[k - 1]];
      const double need = static_cast<double>(k) * k / n;
      if (prefix < need - eps) {
        std::vector<int> coalition(members.begin(), members.begin() + k);
        std::sort(coalition.begin(), coalition.end());
        return {AxiomId::AFS, false,
                AxiomWitness{coalition, {}, std::nullopt, (need - prefix) / k}};
      }
    }
  }
  return {AxiomId::AFS, true, std::nullopt};
}

namespace detail {

// Best uniform improvement a coalition can secure with budget |S|/n:
// max delta s.t. u_i(z) >= u_i(x) + delta for i in S, sum z = |S|/n, z >= 0.
inline SolveStatus cfs_coalition_lp(const Instance& inst, const std::vector<double>& u,
                                    const std::vector<int>& coalition) {
  const int m = inst.num_projects();
  LinearProgram lp(m + 1);
  lp.objective[m] = 1.0;
  lp.free_var[m] = true;
  for (int i : coalition) {
    auto row = utility_row(inst, i, m + 1);
    row[m] = -1.0;
    lp.add_row(std::move(row), Rel::Ge, u[i]);
  }
  lp.add_row(simplex_row(m, m + 1), Rel::Eq,
             static_cast<double>(coalition.size()) / inst.num_agents());
  return solve_lp(lp);
}

}  // namespace detail

/// CFS: no coalition S can redistribute a |S|/n budget so that every member
/// strictly improves. Coalitions are enumerated depth-first in lexicographic
/// order, so the reported witness is the lexicographically smallest one.
inline AxiomReport check_cfs(const Instance& inst, const Distribution& x,
                             int coalition_cap = kCfsCoalitionCap,
                             double strict = kCfsStrict) {
  const int n = inst.num_agents();
  if (n > coalition_cap)
    throw CapExceeded("check_cfs: " + std::to_string(n) +
                      " agents exceeds the coalition enumeration cap of " +
                      std::to_string(coalition_cap));
  const auto u = utility_profile(inst, x);
  std::vector<int> stack;
  std::optional<AxiomWitness> witness;

  auto blocked = [&](const std::vector<int>& s) -> std::optional<AxiomWitness> {
    const double budget = static_cast<double>(s.size()) / n;
    // A member already at or above the coalition budget cannot strictly
    // improve, so such coalitions never block.
    for (int i : s)
      if (u[i] >= budget - strict) return std::nullopt;
    auto sol = detail::cfs_coalition_lp(inst, u, s);
    if (sol.status != LpStatus::Optimal || sol.value <= strict)
      return std::nullopt;
    std::vector<double> z(sol.x.begin(), sol.x.begin() + inst.num_projects());
    for (double& v : z) v = std::max(0.0, v);
    return AxiomWitness{s, {}, std::move(z), sol.value};
  };

  std::function<bool(int)> dfs = [&](int next) -> bool {
    for (int i = next; i < n; ++i) {
      stack.push_back(i);
      if (auto w = blocked(stack)) {
        witness = std::move(w);
        return true;
      }
      if (dfs(i + 1)) return true;
      stack.pop_back();
    }
    return false;
  };
  dfs(0);
  if (witness) return {AxiomId::CFS, false, std::move(witness)};
  return {AxiomId::CFS, true, std::nullopt};
}

/// Dispatcher.
inline AxiomReport check(AxiomId axiom, const Instance& inst, const Distribution& x,
                         double eps = kEps, int subset_cap = kGfsSubsetCap,
                         int coalition_cap = kCfsCoalitionCap) {
  switch (axiom) {
    case AxiomId::IFS: return check_ifs(inst, x, eps);
    case AxiomId::UFS: return check_ufs(inst, x, eps);
    case AxiomId::GFS: return check_gfs(inst, x, subset_cap, eps);
    case AxiomId::IMP: return check_imp(inst, x);
    case AxiomId::AFS: return check_afs(inst, x, eps);
    case AxiomId::CFS: return check_cfs(inst, x, coalition_cap);
  }
  throw InputError("unknown axiom");
}

}  // namespace egb
