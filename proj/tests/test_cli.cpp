#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout and stderr merged
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + LIECURV_BIN + " " + args +
                    " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("algebra reports the construction") {
  RunResult r = run("algebra --type f4");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "dimension: 52"));
  CHECK(contains(r.out, "roots: 48"));
  CHECK(contains(r.out, "jacobi: pass"));

  CHECK(contains(run("algebra --type d4").out, "dimension: 28"));

  json j = json::parse(run("algebra --type f4 --format json").out);
  CHECK(j["type"] == "F4");
  CHECK(j["rank"] == 4);
  CHECK(j["dimension"] == 52);
  CHECK(j["roots"] == 48);
  CHECK(j["positive_roots"] == 24);
  CHECK(j["jacobi"] == "pass");

  RunResult bad = run("algebra --type e8");
  CHECK(bad.exit_code == 4);
  CHECK(contains(bad.out, "unsupported"));
}

TEST_CASE("decompose reports blocks and fixed subalgebras") {
  RunResult r = run("decompose");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "block dims: 28 8 8 8"));
  CHECK(contains(r.out, "fixed(theta): B4"));
  CHECK(contains(r.out, "joint block h1: D4"));

  json j = json::parse(run("decompose --format json").out);
  CHECK(j["dims"] == json::array({28, 8, 8, 8}));
  CHECK(j["fixed"]["theta"] == "B4");
  CHECK(j["fixed"]["tau"] == "B4");
  CHECK(j["fixed"]["theta-tau"] == "B4");
  CHECK(j["blocks"][0]["type"] == "D4");
  CHECK(j["blocks"][0]["dim"] == 28);
  CHECK(j["grading"][1] == json::array({2, 1, 4, 3}));
  CHECK(j["grading"][3] == json::array({4, 3, 2, 1}));

  RunResult degenerate = run("decompose --tau 0001");
  CHECK(degenerate.exit_code == 3);
  CHECK(contains(degenerate.out, "degenerate"));

  CHECK(run("decompose --theta 012").exit_code == 4);
}

TEST_CASE("ricci matches the known spectra") {
  RunResult flat = run("ricci --u 1,1,1,1");
  CHECK(flat.exit_code == 0);
  CHECK(contains(flat.out, "9/2"));
  CHECK(contains(flat.out, "Einstein, constant 9/2 = 4.5"));

  RunResult tail = run("ricci --u 3/5,1,1,1");
  CHECK(tail.exit_code == 0);
  CHECK(contains(tail.out, "59/10"));
  CHECK(contains(tail.out, "5.9"));

  RunResult uneven = run("ricci --u 1,1,1,2");
  CHECK(uneven.exit_code == 0);
  CHECK(contains(uneven.out, "not Einstein"));

  RunResult one_path = run("ricci --u 1,1,1,1 --path closed");
  CHECK(one_path.exit_code == 0);
  CHECK(contains(one_path.out, "closed:"));
  CHECK(!contains(one_path.out, "connection:"));

  json j = json::parse(run("ricci --u 3/5,1,1,1 --format json").out);
  CHECK(j["einstein"] == true);
  CHECK(j["einstein_constant"] == "59/10");
  CHECK(j["max_disagreement"] == "0");
  CHECK(j["classification"] == "case-1 naturally reductive");
  CHECK(j["casimir_matrix"][0][0] == "12");
  CHECK(j["triple_brackets"]["negative-killing"].size() == 16);
  CHECK(j["triple_brackets"]["long-root-2"].size() == 16);
  CHECK(j["ricci"]["closed"] == j["ricci"]["connection"]);

  json lr = json::parse(
      run("ricci --u 1,1,1,1 --format json --normalization long-root-2").out);
  CHECK(lr["triple_brackets"].contains("long-root-2"));
  CHECK(!lr["triple_brackets"].contains("negative-killing"));

  CHECK(run("ricci --u 0,1,1,1").exit_code == 4);
  CHECK(run("ricci --u 1,1,1").exit_code == 4);
  CHECK(run("ricci --u 1,1,1,x").exit_code == 4);
}

TEST_CASE("solve lists the four classes") {
  RunResult r = run("solve");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "4 solutions"));
  CHECK(contains(r.out, "bi-invariant"));
  CHECK(contains(r.out, "(7/11, 1, 1, 7/11)"));
  CHECK(contains(r.out, "non-naturally reductive"));

  json j = json::parse(run("solve --format json").out);
  REQUIRE(j["solutions"].size() == 4);
  for (const auto& sol : j["solutions"]) {
    CHECK(sol.size() == 6);
    for (const char* key :
         {"u", "constant", "residual", "exact", "classification", "provenance"})
      CHECK(sol.contains(key));
  }
  CHECK(j["solutions"][0]["u"] == json::array({"1", "1", "1", "1"}));
  CHECK(j["solutions"][0]["constant"] == "9/2");
  CHECK(j["solutions"][1]["u"][0] == "3/5");
  CHECK(j["solutions"][2]["constant"] == "135/22");
  CHECK(j["solutions"][3]["exact"] == false);
  CHECK(j["solutions"][3]["provenance"] == "newton");
  double u1 = j["solutions"][3]["u"][0].get<double>();
  double u4 = j["solutions"][3]["u"][3].get<double>();
  CHECK(u1 == doctest::Approx(0.7019).epsilon(1e-4));
  CHECK(u4 == doctest::Approx(1.3842).epsilon(1e-4));

  json loose = json::parse(run("solve --tol 1e-6 --format json").out);
  CHECK(loose["solutions"].size() == 4);

  CHECK(run("solve --tol -1").exit_code == 4);
  CHECK(run("solve --tol 0").exit_code == 4);
}

TEST_CASE("verify-paper passes end to end") {
  RunResult r = run("verify-paper");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "8/8 checks passed"));
  CHECK(contains(r.out, "[PASS] algebra-integrity"));
  CHECK(contains(r.out, "[PASS] case-c-emptiness"));
  CHECK(!contains(r.out, "FAIL"));

  json j = json::parse(run("verify-paper --format json").out);
  CHECK(j["all_pass"] == true);
  REQUIRE(j["checks"].size() == 8);
  for (const auto& c : j["checks"]) {
    CHECK(c["pass"] == true);
    CHECK(!c["expected"].get<std::string>().empty());
    CHECK(!c["computed"].get<std::string>().empty());
  }
}

TEST_CASE("output is deterministic and round-trips") {
  for (const char* cmd : {"solve --format json", "decompose --format json",
                          "ricci --u 5/4,2/3,1,7/5 --format json"}) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    json parsed = json::parse(a.out);
    CHECK(parsed.dump(2) + "\n" == a.out);
  }

  RunResult t1 = run("solve");
  RunResult t2 = run("solve");
  CHECK(t1.out == t2.out);
}

TEST_CASE("thread cap does not change output") {
  RunResult serial = run("solve --format json", "LIECURV_THREADS=1");
  RunResult wide = run("solve --format json", "LIECURV_THREADS=8");
  CHECK(serial.exit_code == 0);
  CHECK(serial.out == wide.out);
}

TEST_CASE("reports can be written to a file") {
  std::string path = "cli_report.json";
  RunResult direct = run("decompose --format json");
  RunResult filed = run("decompose --format json -o " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());

  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("help and bad invocations use the exit-code contract") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("solve --help").exit_code == 0);
  CHECK(run("").exit_code == 4);
  CHECK(run("solve --bogus").exit_code == 4);
  CHECK(run("ricci").exit_code == 4);
}
