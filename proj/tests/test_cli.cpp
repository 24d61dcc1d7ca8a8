#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("EGALBUDGET_CLI");
  REQUIRE(p != nullptr);
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp_file(const std::string& name, const std::string& contents) {
  const std::string path = "/tmp/egalbudget_cli_" + name;
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

void check_envelope(const json& j, const std::string& command) {
  REQUIRE(j.is_object());
  CHECK(j.at("command") == command);
  CHECK(j.contains("inputs"));
  CHECK(j.contains("result"));
  CHECK(j.contains("exactness"));
  REQUIRE(j.contains("witnesses"));
  CHECK(j.at("witnesses").is_array());
}

}  // namespace

TEST_CASE("generate then evaluate") {
  const std::string inst = "/tmp/egalbudget_cli_gap4.json";
  auto gen = run("gen ufs_gap " + inst + " --n 4");
  REQUIRE(gen.exit_code == 0);
  check_envelope(json::parse(gen.out), "gen");

  auto eval = run("eval nash " + inst);
  REQUIRE(eval.exit_code == 0);
  const json j = json::parse(eval.out);
  check_envelope(j, "eval");
  CHECK(j["inputs"]["rule"] == "nash");
  const auto& res = j["result"];
  CHECK(res["distribution"][0].get<double>() == Catch::Approx(0.75).margin(1e-5));
  CHECK(res["distribution"][1].get<double>() == Catch::Approx(0.25).margin(1e-5));
  CHECK(res["sw_star"].get<double>() == Catch::Approx(0.5).margin(1e-9));
  CHECK(res["normalized_welfare"].get<double>() == Catch::Approx(0.5).margin(1e-5));

  // Determinism: a repeated invocation produces byte-identical output.
  auto again = run("eval nash " + inst);
  CHECK(again.out == eval.out);
}

TEST_CASE("axiom certification exit codes and witnesses") {
  const std::string inst = "/tmp/egalbudget_cli_gap4.json";
  run("gen ufs_gap " + inst + " --n 4");
  const std::string good = tmp_file("good.json", "[0.75, 0.25]");
  const std::string bad = tmp_file("bad.json", "[1.0, 0.0]");

  auto holds = run("check ufs " + inst + " " + good);
  CHECK(holds.exit_code == 0);
  const json hj = json::parse(holds.out);
  check_envelope(hj, "check");
  CHECK(hj["result"]["holds"] == true);
  CHECK(hj["witnesses"].empty());

  auto fails = run("check ifs " + inst + " " + bad);
  CHECK(fails.exit_code == 1);
  const json fj = json::parse(fails.out);
  CHECK(fj["result"]["holds"] == false);
  REQUIRE(fj["witnesses"].size() == 1);
  CHECK(fj["witnesses"][0]["coalition"] == json::array({3}));
  CHECK(fj["witnesses"][0]["margin"].get<double>() == Catch::Approx(0.25));
}

TEST_CASE("price of fairness and bounds") {
  const std::string inst = "/tmp/egalbudget_cli_gap4.json";
  run("gen ufs_gap " + inst + " --n 4");

  auto p = run("pof ufs " + inst);
  REQUIRE(p.exit_code == 0);
  const json pj = json::parse(p.out);
  check_envelope(pj, "pof");
  CHECK(pj["exactness"] == "exact");
  CHECK(pj["result"]["ratio"].get<double>() == Catch::Approx(0.5).margin(1e-6));

  auto c = run("pof cfs " + inst);
  REQUIRE(c.exit_code == 0);
  CHECK(json::parse(c.out)["exactness"] == "lower-bound");

  auto b = run("bounds " + inst);
  REQUIRE(b.exit_code == 0);
  const json bj = json::parse(b.out);
  check_envelope(bj, "bounds");
  CHECK(bj["result"]["cover_number"] == 2);
  CHECK(bj["result"]["min_support"] == 2);
  CHECK(bj["result"]["score_floor"] == 2);
  CHECK(bj["result"]["lower"].get<double>() == Catch::Approx(0.5));
  CHECK(bj["result"]["upper"].get<double>() == Catch::Approx(0.5));
}

TEST_CASE("summary tables") {
  auto t1 = run("tables 4 --which 1");
  REQUIRE(t1.exit_code == 0);
  const json j1 = json::parse(t1.out);
  check_envelope(j1, "tables");
  REQUIRE(j1["result"].size() == 6);
  for (const auto& row : j1["result"]) {
    CHECK(row.contains("axiom"));
    CHECK(row.contains("ufs_gap"));
    CHECK(row.contains("gfs_tight"));
    CHECK(row.contains("exactness"));
  }
  // The unanimity row on the two-project gap family pins 2/n.
  bool saw_ufs = false;
  for (const auto& row : j1["result"])
    if (row["axiom"] == "ufs") {
      saw_ufs = true;
      CHECK(row["ufs_gap"].get<double>() == Catch::Approx(0.5).margin(1e-6));
    }
  CHECK(saw_ufs);

  auto t2 = run("tables 4 --which 2");
  REQUIRE(t2.exit_code == 0);
  const json j2 = json::parse(t2.out);
  for (const auto& row : j2["result"]) {
    CHECK(row.contains("rule"));
    CHECK(row.contains("family"));
    CHECK(row.contains("normalized_welfare"));
  }
  // Every rule has at least one row; the equal-split rule appears on both its
  // own worst-case family and the shared gap family.
  for (const char* rule : {"util", "cut", "nash", "egal", "pv", "es", "rp"}) {
    int rows = 0;
    for (const auto& row : j2["result"])
      if (row["rule"] == rule) ++rows;
    CHECK(rows >= 1);
  }
}

TEST_CASE("error handling") {
  const std::string inst = "/tmp/egalbudget_cli_gap4.json";
  run("gen ufs_gap " + inst + " --n 4");

  CHECK(run("eval frobnicate " + inst).exit_code == 2);
  CHECK(run("eval nash /tmp/egalbudget_cli_missing.json").exit_code == 2);
  const std::string garbage = tmp_file("garbage.json", "{not json");
  CHECK(run("eval nash " + garbage).exit_code == 2);
  const std::string negative = tmp_file("neg.json", "[1.5, -0.5]");
  CHECK(run("check ifs " + inst + " " + negative).exit_code == 2);

  // Exact random-priority enumeration refuses to run past its agent cap.
  CHECK(run("eval rp " + inst + " --max-n-rp 2").exit_code == 3);
}

TEST_CASE("tab-separated output") {
  const std::string inst = "/tmp/egalbudget_cli_gap4.json";
  run("gen ufs_gap " + inst + " --n 4");
  auto r = run("eval es " + inst + " --format tsv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find('\t') != std::string::npos);
  CHECK(r.out.find("result.sw_star\t") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("tolerance flag loosens certification") {
  const std::string inst = "/tmp/egalbudget_cli_gap4.json";
  run("gen ufs_gap " + inst + " --n 4");
  // Slightly short of the 1/4 individual share: strict check fails, a coarse
  // tolerance accepts it.
  const std::string near = tmp_file("near.json", "[0.7501, 0.2499]");
  CHECK(run("check ifs " + inst + " " + near).exit_code == 1);
  CHECK(run("check ifs " + inst + " " + near + " --tol 0.001").exit_code == 0);
}
