// Reproduction of the two summary tables at a chosen n: per-axiom price of
// fairness on the witness families, and per-rule normalized welfare on each
// rule's worst-case family.
#pragma once

#include <string>
#include <vector>

#include "egalbudget/axioms.hpp"
#include "egalbudget/core.hpp"
#include "egalbudget/pof.hpp"
#include "egalbudget/rules.hpp"

namespace egb {

struct Table1Row {
  AxiomId axiom;
  double ufs_gap_ratio;       // POF on the two-project gap instance
  double gfs_tight_ratio;     // POF on the common-project family
  Exactness exactness;        // lower-bound only for CFS
};

inline std::vector<Table1Row> emit_table1(int n) {
  if (n < 3 || n > 8) throw CapExceeded("tables 1: n must be in [3, 8]");
  const Instance gap = ufs_gap_instance(n);
  const Instance tight = gfs_tight_instance(n);
  std::vector<Table1Row> rows;
  for (AxiomId a : {AxiomId::IFS, AxiomId::UFS, AxiomId::GFS, AxiomId::IMP,
                    AxiomId::AFS, AxiomId::CFS}) {
    const auto r_gap = best_fair_welfare(gap, a);
    const auto r_tight = best_fair_welfare(tight, a);
    rows.push_back({a, r_gap.ratio, r_tight.ratio,
                    (r_gap.exactness == Exactness::Exact &&
                     r_tight.exactness == Exactness::Exact)
                        ? Exactness::Exact
                        : Exactness::LowerBound});
  }
  return rows;
}

struct Table2Row {
  RuleId rule;
  std::string family;      // worst-case family the value is computed on
  double normalized;       // normalized welfare of the rule on that family
};

/// Per-rule normalized welfare on that rule's worst-case family. The ES row
/// appears twice: on the gap instance and on its dedicated family.
inline std::vector<Table2Row> emit_table2(int n, int es_k = 2, int pv_m = -1,
                                          int rp_cap = kRpDefaultCap) {
  if (n < 4 || n > 7) throw CapExceeded("tables 2: n must be in [4, 7]");
  if (pv_m < 2) pv_m = n;
  const Instance gap = ufs_gap_instance(n);
  std::vector<Table2Row> rows;
  rows.push_back({RuleId::UTIL, "ufs_gap", efficiency_ratio(gap, RuleId::UTIL)});
  rows.push_back({RuleId::CUT, "cut",
                  efficiency_ratio(cut_instance(n), RuleId::CUT)});
  rows.push_back({RuleId::NASH, "ufs_gap", efficiency_ratio(gap, RuleId::NASH)});
  rows.push_back({RuleId::EGAL, "ufs_gap", efficiency_ratio(gap, RuleId::EGAL)});
  rows.push_back({RuleId::PV, "pv",
                  efficiency_ratio(pv_instance(n, pv_m), RuleId::PV)});
  rows.push_back({RuleId::ES, "ufs_gap", efficiency_ratio(gap, RuleId::ES)});
  rows.push_back({RuleId::ES, "es",
                  efficiency_ratio(es_instance(n, es_k), RuleId::ES)});
  rows.push_back({RuleId::RP, "ufs_gap",
                  efficiency_ratio(gap, RuleId::RP, rp_cap)});
  return rows;
}

}  // namespace egb
