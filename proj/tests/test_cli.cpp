#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pasp/cli.hpp"
#include "support/fixtures.hpp"

using fixtures::run;
using json = nlohmann::json;

namespace {

struct Files {
  std::filesystem::path dir, graph, learnable, interps, coin, coin_int, inconsistent, cond;
  Files() : dir(fixtures::temp_dir("cli")) {
    graph = fixtures::write(dir / "graph.pasp", fixtures::kGraph);
    learnable = fixtures::write(dir / "graph_l.pasp", fixtures::kGraphLearnable);
    interps = fixtures::write(dir / "graph.int", fixtures::kGraphInterps);
    coin = fixtures::write(dir / "coin.pasp", fixtures::kCoin);
    coin_int = fixtures::write(dir / "coin.int", fixtures::kCoinInterps);
    inconsistent = fixtures::write(dir / "bad.pasp", "0.5::a.\n:- a.\n");
    cond = fixtures::write(dir / "cond.pasp", fixtures::kCondUndefined);
  }
  ~Files() { std::filesystem::remove_all(dir); }
};

}  // namespace

TEST_CASE("infer") {
  Files f;
  auto r = run({"infer", "--program", f.graph.string(), "--query", "path(1,4)"});
  CHECK(r.code == 0);
  CHECK(r.out == "lower=0.000000 upper=0.060000\n");
  r = run({"infer", "--program", f.graph.string(), "--query", "path(1,4)", "--evidence", "edge(2,4)"});
  CHECK(r.code == 0);
  CHECK(r.out == "lower=0.000000 upper=0.200000\n");
  r = run({"infer", "--program", f.graph.string(), "--query", "path(1,3)", "--json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lower"].get<double>() == 0.0);
  CHECK(j["upper"].get<double>() == doctest::Approx(0.9));
}

TEST_CASE("infer failures") {
  Files f;
  auto r = run({"infer", "--program", f.graph.string(), "--query", "path(1,"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  r = run({"infer", "--program", f.inconsistent.string(), "--query", "a"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  r = run({"infer", "--program", f.cond.string(), "--query", "b", "--evidence", "c"});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  r = run({"infer", "--program", (f.dir / "missing.pasp").string(), "--query", "a"});
  CHECK(r.code == 1);
  r = run({"infer", "--program", f.graph.string(), "--query", "path(1,4)", "--world-cap", "2"});
  CHECK(r.code == 5);
  r = run({"infer", "--program", f.graph.string()});
  CHECK(r.code == 1);
  r = run({"frobnicate"});
  CHECK(r.code == 1);
}

TEST_CASE("check") {
  Files f;
  auto r = run({"check", "--program", f.graph.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "worlds=8 inconsistent_worlds=0\n");
  r = run({"check", "--program", f.inconsistent.string()});
  CHECK(r.code == 2);
  CHECK(r.out == "worlds=2 inconsistent_worlds=1\n");
}

TEST_CASE("learn") {
  Files f;
  auto r = run({"learn", "--program", f.learnable.string(), "--interpretations", f.interps.string(), "--method", "opt",
                "--target", "upper", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["finalLL"].get<double>() >= -1e-4);
  CHECK(j["params"].size() == 3);
  CHECK(j["params"][0]["atom"] == "edge(1,2)");
  CHECK(j.contains("llTrace"));
  CHECK(j.contains("iterations"));
  CHECK(j.contains("converged"));

  r = run({"learn", "--program", f.coin.string(), "--interpretations", f.coin_int.string(), "--method", "em"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string atom;
  double prob = 0;
  lines >> atom >> prob;
  CHECK(atom == "a");
  CHECK(prob == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r.out.find("final_ll=-1.386294") != std::string::npos);
  CHECK(r.out.find("converged=true") != std::string::npos);

  r = run({"learn", "--program", f.learnable.string(), "--interpretations", f.interps.string(), "--show-equations"});
  CHECK(r.code == 0);
  CHECK(r.out.find("p0*p1") != std::string::npos);
  r = run({"learn", "--program", f.learnable.string(), "--interpretations", f.interps.string(), "--show-equations",
           "--json"});
  CHECK(json::parse(r.out)["equations"].size() == 2);
}

TEST_CASE("learn failures") {
  Files f;
  auto r = run({"learn", "--program", f.graph.string(), "--interpretations", f.interps.string()});
  CHECK(r.code == 4);
  CHECK(r.out.empty());
  r = run({"learn", "--program", f.coin.string(), "--interpretations", f.coin_int.string(), "--max-iters", "0"});
  CHECK(r.code == 1);
  r = run({"learn", "--program", f.coin.string(), "--interpretations", f.coin_int.string(), "--method", "sgd"});
  CHECK(r.code == 1);
  const auto bad = fixtures::write(f.dir / "bad.int", "a, not a.\n");
  r = run({"learn", "--program", f.coin.string(), "--interpretations", bad.string()});
  CHECK(r.code == 1);
}

TEST_CASE("gen") {
  Files f;
  const auto out = f.dir / "gen";
  auto r = run({"gen", "--family", "coloring", "--size", "4", "--interpretations", "10", "--seed", "7", "--out",
                out.string()});
  REQUIRE(r.code == 0);
  const std::string program = fixtures::slurp(out / "instance.pasp");
  const std::string interps = fixtures::slurp(out / "instance.int");
  std::size_t learnable = 0, lines = 0;
  for (std::size_t pos = 0; (pos = program.find("learnable(", pos)) != std::string::npos; ++pos) ++learnable;
  for (char c : interps) lines += c == '\n';
  CHECK(learnable == 6);
  CHECK(lines == 10);
  CHECK(r.out.find("instance.pasp") != std::string::npos);

  r = run({"gen", "--family", "coloring", "--size", "4", "--interpretations", "10", "--seed", "7", "--out",
           out.string()});
  CHECK(fixtures::slurp(out / "instance.pasp") == program);
  CHECK(fixtures::slurp(out / "instance.int") == interps);

  r = run({"gen", "--family", "coloring", "--size", "99", "--interpretations", "10", "--seed", "7", "--out",
           (f.dir / "x").string()});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("bench") {
  Files f;
  const auto csv = f.dir / "results.csv";
  auto r = run({"bench", "--families", "smoke", "--sizes", "2", "--interpretations", "5,10", "--methods",
                "opt-gradient,em", "--seeds", "1", "--out", csv.string(), "--jobs", "2"});
  REQUIRE(r.code == 0);
  std::istringstream in(fixtures::slurp(csv));
  std::string line;
  std::getline(in, line);
  CHECK(line == "family,size,n_interps,method,seed,final_ll,iterations,wall_seconds,converged");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 9);
    CHECK((cols[3] == "opt-gradient" || cols[3] == "em"));
    CHECK(std::stod(cols[5]) <= 0.0);
  }
  CHECK(rows == 4);

  r = run({"bench", "--families", "smoke", "--sizes", "2", "--seeds", "1", "--out",
           (f.dir / "no" / "such" / "dir" / "x.csv").string()});
  CHECK(r.code == 1);
}

TEST_CASE("bench records failing cells without stopping") {
  Files f;
  const auto csv = f.dir / "fail.csv";
  auto r = run({"bench", "--families", "path", "--sizes", "4,5", "--interpretations", "5", "--methods", "em",
                "--seeds", "1", "--out", csv.string()});
  REQUIRE(r.code == 0);
  const std::string text = fixtures::slurp(csv);
  CHECK(text.find("failed:SpecOutOfRange") != std::string::npos);
  CHECK(text.find("path,5,5,em,1,") != std::string::npos);
}

TEST_CASE("run report") {
  Files f;
  const auto report = f.dir / "report.json";
  auto r = run({"infer", "--program", f.graph.string(), "--query", "path(1,4)", "--report", report.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(fixtures::slurp(report));
  CHECK(j["toolVersion"] == pasp::kToolVersion);
  CHECK(j["wallTimeSeconds"].get<double>() >= 0.0);
  CHECK(j["result"]["upper"].get<double>() == doctest::Approx(0.06));
}

TEST_CASE("world cap from the environment") {
  Files f;
  ::setenv("PASP_WORLD_CAP", "2", 1);
  auto r = run({"infer", "--program", f.graph.string(), "--query", "path(1,4)"});
  ::unsetenv("PASP_WORLD_CAP");
  CHECK(r.code == 5);
}

TEST_CASE("the installed binary reports exit codes") {
  Files f;
  const std::string exe = PASP_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status(exe + " infer --program " + f.graph.string() + " --query 'path(1,4)'") == 0);
  CHECK(status(exe + " infer --program " + f.inconsistent.string() + " --query a") == 2);
  CHECK(status(exe + " learn --program " + f.graph.string() + " --interpretations " + f.interps.string()) == 4);
  CHECK(status(exe + " --version") == 0);
}
