// The seven voting rules, each mapping an instance to a distribution.
#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "egalbudget/core.hpp"
#include "egalbudget/solver.hpp"

namespace egb {

enum class RuleId { UTIL, CUT, NASH, EGAL, PV, ES, RP };

inline const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::UTIL: return "util";
    case RuleId::CUT: return "cut";
    case RuleId::NASH: return "nash";
    case RuleId::EGAL: return "egal";
    case RuleId::PV: return "pv";
    case RuleId::ES: return "es";
    case RuleId::RP: return "rp";
  }
  return "?";
}

inline std::optional<RuleId> rule_from_name(const std::string& s) {
  if (s == "util") return RuleId::UTIL;
  if (s == "cut") return RuleId::CUT;
  if (s == "nash") return RuleId::NASH;
  if (s == "egal") return RuleId::EGAL;
  if (s == "pv") return RuleId::PV;
  if (s == "es") return RuleId::ES;
  if (s == "rp") return RuleId::RP;
  return std::nullopt;
}

inline constexpr int kRpDefaultCap = 7;

/// UTIL: maximize total utility. Tie-breaking: uniform over all projects of
/// maximum approval score.
inline Distribution util_rule(const Instance& inst) {
  const int m = inst.num_projects();
  const int best = inst.max_approval_score();
  std::vector<int> top;
  for (int j = 0; j < m; ++j)
    if (inst.approval_score(j) == best) top.push_back(j);
  std::vector<double> x(m, 0.0);
  for (int j : top) x[j] = 1.0 / top.size();
  return Distribution(std::move(x));
}

/// CUT: each agent spreads her 1/n share uniformly over the highest-score
/// projects within her own approval set.
inline Distribution cut_rule(const Instance& inst) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  std::vector<double> x(m, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& a = inst.approval_set(i);
    int best = 0;
    for (int j : a) best = std::max(best, inst.approval_score(j));
    std::vector<int> top;
    for (int j : a)
      if (inst.approval_score(j) == best) top.push_back(j);
    for (int j : top) x[j] += 1.0 / (static_cast<double>(n) * top.size());
  }
  return Distribution(std::move(x));
}

/// NASH: maximize the product of utilities.
inline Distribution nash_rule(const Instance& inst) {
  auto res = nash_solve(inst);
  if (!res.converged)
    throw SolverError("nash_solve did not converge; certificate residual " +
                      std::to_string(res.kkt_residual));
  return res.x;
}

/// EGAL: maximize the minimum utility; returns the leximin refinement for a
/// deterministic utility profile.
inline Distribution egal_rule(const Instance& inst) { return leximin(inst); }

/// PV: budget proportional to approval scores.
inline Distribution pv_rule(const Instance& inst) {
  const int m = inst.num_projects();
  double total = 0.0;
  for (int j = 0; j < m; ++j) total += inst.approval_score(j);
  std::vector<double> x(m, 0.0);
  for (int j = 0; j < m; ++j) x[j] = inst.approval_score(j) / total;
  return Distribution(std::move(x));
}

/// ES: each agent spreads her 1/n share uniformly over her approval set.
inline Distribution es_rule(const Instance& inst) {
  const int m = inst.num_projects();
  const int n = inst.num_agents();
  std::vector<double> x(m, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& a = inst.approval_set(i);
    for (int j : a) x[j] += 1.0 / (static_cast<double>(n) * a.size());
  }
  return Distribution(std::move(x));
}

/// RP: exact average of the lexicographic maximization over all n!
/// orderings. Refuses instances above the cap rather than sampling.
inline Distribution rp_rule(const Instance& inst, int max_agents = kRpDefaultCap) {
  const int n = inst.num_agents();
  const int m = inst.num_projects();
  if (n > max_agents)
    throw CapExceeded("rp_rule: " + std::to_string(n) +
                      " agents exceeds the exact-enumeration cap of " +
                      std::to_string(max_agents) + " (raise with --max-n-rp)");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sum(m, 0.0);
  long count = 0;
  do {
    const Distribution d = lexicographic_max(inst, order);
    for (int j = 0; j < m; ++j) sum[j] += d[j];
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& v : sum) v /= count;
  return Distribution(std::move(sum));
}

/// Dispatcher.
inline Distribution run_rule(RuleId id, const Instance& inst,
                             int rp_cap = kRpDefaultCap) {
  switch (id) {
    case RuleId::UTIL: return util_rule(inst);
    case RuleId::CUT: return cut_rule(inst);
    case RuleId::NASH: return nash_rule(inst);
    case RuleId::EGAL: return egal_rule(inst);
    case RuleId::PV: return pv_rule(inst);
    case RuleId::ES: return es_rule(inst);
    case RuleId::RP: return rp_rule(inst, rp_cap);
  }
  throw InputError("unknown rule");
}

}  // namespace egb
