// Command-line front end.
//
//   egalbudget eval   <rule>  <instance.json>
//   egalbudget check  <axiom> <instance.json> <distribution.json>
//   egalbudget pof    <axiom> <instance.json>
//   egalbudget bounds <instance.json>
//   egalbudget gen    <family> --n N [--k K] [--m M] <out.json>
//   egalbudget tables <n> --which 1|2
//
// Results are printed as JSON (keys: command, inputs, result, exactness,
// witnesses) or as TSV with --format tsv. Exit codes: 0 success / axiom
// holds, 1 axiom fails, 2 input error, 3 cap exceeded, 4 internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "egalbudget/axioms.hpp"
#include "egalbudget/core.hpp"
#include "egalbudget/json_io.hpp"
#include "egalbudget/pof.hpp"
#include "egalbudget/rules.hpp"
#include "egalbudget/tables.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw egb::InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json witness_json(const egb::AxiomWitness& w) {
  json out;
  out["coalition"] = w.coalition;
  if (!w.projects.empty()) out["projects"] = w.projects;
  if (w.deviation) {
    json dev = json::array();
    for (double v : *w.deviation) dev.push_back(egb::number_json(v));
    out["deviation"] = dev;
  }
  out["margin"] = egb::number_json(w.margin);
  return out;
}

// Stable output schema shared by every command.
json envelope(const std::string& command, json inputs, json result,
              json exactness = nullptr, json witnesses = json::array()) {
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"result", std::move(result)},
              {"exactness", std::move(exactness)},
              {"witnesses", std::move(witnesses)}};
}

void render_tsv(const json& j, std::ostream& os, const std::string& prefix = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_tsv(it.value(), os, prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array()) {
    bool table = !j.empty() && j[0].is_object();
    if (table) {
      int row = 0;
      for (const auto& item : j) render_tsv(item, os, prefix + "[" + std::to_string(row++) + "]");
    } else {
      os << prefix;
      for (const auto& item : j) os << '\t' << item.dump();
      os << '\n';
    }
  } else {
    os << prefix << '\t' << j.dump() << '\n';
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "tsv")
    render_tsv(j, std::cout);
  else
    std::cout << j.dump(2) << '\n';
}

const char* exactness_name(egb::Exactness e) {
  return e == egb::Exactness::Exact ? "exact" : "lower-bound";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisible approval-based participatory budgeting: voting rules, "
               "fairness axiom certification, and price of fairness"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  double tol = egb::kEps;
  int max_n_rp = egb::kRpDefaultCap;
  int max_n_subsets = egb::kGfsSubsetCap;
  app.add_option("--format", format, "Output format: json|tsv")
      ->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--tol", tol, "Comparison tolerance for axiom checks");
  app.add_option("--max-n-rp", max_n_rp, "Agent cap for exact RP enumeration");
  app.add_option("--max-n-subsets", max_n_subsets,
                 "Agent cap for subset/coalition enumeration");

  std::string rule_s, axiom_s, inst_path, dist_path, family, out_path;
  int gen_n = 0, gen_k = 1, gen_m = 0, tables_n = 0, which = 1, es_k = 2, pv_m = -1;

  auto* eval = app.add_subcommand("eval", "Run a voting rule on an instance");
  eval->add_option("rule", rule_s, "util|cut|nash|egal|pv|es|rp")->required();
  eval->add_option("instance", inst_path, "Instance JSON file")->required();

  auto* chk = app.add_subcommand("check", "Certify a fairness axiom");
  chk->add_option("axiom", axiom_s, "ifs|ufs|gfs|imp|afs|cfs")->required();
  chk->add_option("instance", inst_path, "Instance JSON file")->required();
  chk->add_option("distribution", dist_path, "Distribution JSON file")->required();

  auto* pofc = app.add_subcommand("pof", "Best fair welfare and price of fairness");
  pofc->add_option("axiom", axiom_s, "ifs|ufs|gfs|imp|afs|cfs")->required();
  pofc->add_option("instance", inst_path, "Instance JSON file")->required();

  auto* bnd = app.add_subcommand("bounds", "Structural welfare bounds");
  bnd->add_option("instance", inst_path, "Instance JSON file")->required();

  auto* gen = app.add_subcommand("gen", "Generate a worst-case instance family");
  gen->add_option("family", family, "ufs_gap|gfs_tight|es|pv|cut")->required();
  gen->add_option("out", out_path, "Output JSON path")->required();
  gen->add_option("--n", gen_n, "Number of agents")->required();
  gen->add_option("--k", gen_k, "Family parameter k (es)");
  gen->add_option("--m", gen_m, "Number of projects (pv)");

  auto* tab = app.add_subcommand("tables", "Reproduce a summary table at a given n");
  tab->add_option("n", tables_n, "Number of agents")->required();
  tab->add_option("--which", which, "1 (axioms) or 2 (rules)")
      ->check(CLI::IsMember({1, 2}));
  tab->add_option("--es-k", es_k, "k parameter for the ES family row");
  tab->add_option("--pv-m", pv_m, "m parameter for the PV family row");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      auto rule = egb::rule_from_name(rule_s);
      if (!rule) throw egb::InputError("unknown rule: " + rule_s);
      const auto inst = egb::parse_instance(read_file(inst_path));
      const auto x = egb::run_rule(*rule, inst, max_n_rp);
      const auto [opt_x, sw_star] = egb::optimal_egalitarian(inst);
      json result;
      result["distribution"] = egb::distribution_json(x);
      result["welfare"] = egb::number_json(egb::egalitarian_welfare(inst, x));
      result["sw_star"] = egb::number_json(sw_star);
      result["normalized_welfare"] =
          egb::number_json(egb::normalized_welfare(inst, x, sw_star));
      emit(envelope("eval", {{"rule", rule_s}, {"instance", inst_path}},
                    std::move(result), "exact"),
           format);
      return 0;
    }
    if (*chk) {
      auto axiom = egb::axiom_from_name(axiom_s);
      if (!axiom) throw egb::InputError("unknown axiom: " + axiom_s);
      const auto inst = egb::parse_instance(read_file(inst_path));
      const auto x = egb::parse_distribution(read_file(dist_path));
      const auto report =
          egb::check(*axiom, inst, x, tol, max_n_subsets, max_n_subsets);
      json witnesses = json::array();
      if (report.witness) witnesses.push_back(witness_json(*report.witness));
      emit(envelope("check",
                    {{"axiom", axiom_s}, {"instance", inst_path},
                     {"distribution", dist_path}},
                    {{"holds", report.holds}}, "exact", std::move(witnesses)),
           format);
      return report.holds ? 0 : 1;
    }
    if (*pofc) {
      auto axiom = egb::axiom_from_name(axiom_s);
      if (!axiom) throw egb::InputError("unknown axiom: " + axiom_s);
      const auto inst = egb::parse_instance(read_file(inst_path));
      const auto r = egb::best_fair_welfare(inst, *axiom, max_n_subsets, max_n_subsets);
      json result;
      result["best_fair_welfare"] = egb::number_json(r.best_fair_welfare);
      result["sw_star"] = egb::number_json(r.sw_star);
      result["ratio"] = egb::number_json(r.ratio);
      result["distribution"] = egb::distribution_json(r.achieving);
      emit(envelope("pof", {{"axiom", axiom_s}, {"instance", inst_path}},
                    std::move(result), exactness_name(r.exactness)),
           format);
      return 0;
    }
    if (*bnd) {
      const auto inst = egb::parse_instance(read_file(inst_path));
      const auto b = egb::welfare_bounds(inst);
      json result;
      result["cover_number"] = b.cover_number;
      result["min_support"] = b.min_support;
      result["lower"] = egb::number_json(b.lower);
      result["upper"] = egb::number_json(b.upper);
      result["score_floor"] = b.score_floor;
      result["sw_star"] = egb::number_json(b.sw_star);
      emit(envelope("bounds", {{"instance", inst_path}}, std::move(result), "exact"),
           format);
      return 0;
    }
    if (*gen) {
      egb::Instance inst = [&] {
        if (family == "ufs_gap") return egb::ufs_gap_instance(gen_n);
        if (family == "gfs_tight") return egb::gfs_tight_instance(gen_n);
        if (family == "es") return egb::es_instance(gen_n, gen_k);
        if (family == "pv") return egb::pv_instance(gen_n, gen_m > 0 ? gen_m : gen_n);
        if (family == "cut") return egb::cut_instance(gen_n);
        throw egb::InputError("unknown family: " + family);
      }();
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw egb::InputError("cannot write file: " + out_path);
      out << egb::serialize_instance(inst) << '\n';
      emit(envelope("gen",
                    {{"family", family}, {"n", gen_n}, {"out", out_path}},
                    {{"m", inst.num_projects()}, {"agents", inst.num_agents()}},
                    "exact"),
           format);
      return 0;
    }
    if (*tab) {
      json result = json::array();
      if (which == 1) {
        for (const auto& row : egb::emit_table1(tables_n)) {
          result.push_back({{"axiom", egb::axiom_name(row.axiom)},
                            {"ufs_gap", egb::number_json(row.ufs_gap_ratio)},
                            {"gfs_tight", egb::number_json(row.gfs_tight_ratio)},
                            {"exactness", exactness_name(row.exactness)}});
        }
      } else {
        for (const auto& row : egb::emit_table2(tables_n, es_k, pv_m, max_n_rp)) {
          result.push_back({{"rule", egb::rule_name(row.rule)},
                            {"family", row.family},
                            {"normalized_welfare", egb::number_json(row.normalized)}});
        }
      }
      emit(envelope("tables", {{"n", tables_n}, {"which", which}},
                    std::move(result), "exact"),
           format);
      return 0;
    }
  } catch (const egb::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const egb::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
