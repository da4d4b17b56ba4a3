#include "pasp/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pasp/credal.hpp"
#include "pasp/datasets.hpp"
#include "pasp/error.hpp"
#include "pasp/learning.hpp"
#include "pasp/parser.hpp"
#include "pasp/symbolic.hpp"

namespace pasp {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? " " : "") + args[i];
  return s;
}

std::size_t world_cap_from_env() {
  if (const char* env = std::getenv("PASP_WORLD_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultWorldCap;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InconsistentWorld*>(&e)) return kExitInconsistentWorld;
  if (dynamic_cast<const UndefinedConditional*>(&e)) return kExitUndefinedConditional;
  if (dynamic_cast<const NoLearnableFacts*>(&e)) return kExitNoLearnableFacts;
  if (dynamic_cast<const CapExceeded*>(&e)) return kExitCapExceeded;
  return kExitUsage;
}

const char* error_kind(const std::exception& e) {
  if (auto* p = dynamic_cast<const ParseError*>(&e)) return to_string(p->kind());
  if (dynamic_cast<const InconsistentWorld*>(&e)) return "InconsistentWorld";
  if (dynamic_cast<const UndefinedConditional*>(&e)) return "UndefinedConditional";
  if (dynamic_cast<const NoLearnableFacts*>(&e)) return "NoLearnableFacts";
  if (dynamic_cast<const CapExceeded*>(&e)) return "CapExceeded";
  if (dynamic_cast<const SpecOutOfRange*>(&e)) return "SpecOutOfRange";
  if (dynamic_cast<const UnsafeRule*>(&e)) return "UnsafeRule";
  return "Error";
}

struct Common {
  std::size_t world_cap = world_cap_from_env();
  bool exhaustive = false;
  std::string report;

  EngineOptions engine() const {
    return {world_cap, exhaustive ? SolverStrategy::Exhaustive : SolverStrategy::Search};
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--world-cap", c.world_cap, "Maximum number of probabilistic facts (env PASP_WORLD_CAP)");
  cmd->add_flag("--exhaustive-solver", c.exhaustive, "Use exhaustive subset enumeration for answer sets");
  cmd->add_option("--report", c.report, "Write a JSON run report (command, timing, result) to this file");
}

void write_report(const Common& c, const std::vector<std::string>& args, double seconds, const json& result) {
  if (c.report.empty()) return;
  json report = {{"command", join_args(args)},
                 {"wallTimeSeconds", seconds},
                 {"toolVersion", kToolVersion},
                 {"result", result}};
  write_file(c.report, report.dump(2) + "\n");
}

// ---- infer ------------------------------------------------------------------

struct InferArgs {
  std::string program, query, evidence;
  bool json = false;
};

json cmd_infer(const InferArgs& a, const Common& c, std::ostream& out) {
  const Program program = parse_program(read_file(a.program));
  const Query q = parse_query(a.query);
  const EngineOptions opts = c.engine();
  CredalBounds b = a.evidence.empty()
                       ? credal_query(program, q, program.params(), opts)
                       : credal_conditional(program, q, parse_query(a.evidence), program.params(), opts);
  json result = {{"lower", b.lower}, {"upper", b.upper}};
  if (a.json)
    out << result.dump() << "\n";
  else
    out << "lower=" << fixed6(b.lower) << " upper=" << fixed6(b.upper) << "\n";
  return result;
}

// ---- check ------------------------------------------------------------------

json cmd_check(const std::string& path, const Common& c, std::ostream& out) {
  const Program program = parse_program(read_file(path));
  const std::uint64_t bad = check_consistency(program, c.engine());
  out << "worlds=" << world_count(program, c.world_cap) << " inconsistent_worlds=" << bad << "\n";
  return {{"inconsistentWorlds", bad}};
}

// ---- learn ------------------------------------------------------------------

struct LearnArgs {
  std::string program, interpretations, method = "opt", target = "upper", backend = "gradient";
  bool show_equations = false, json = false;
};

LearnConfig make_config(const LearnArgs& a, LearnConfig cfg) {
  cfg.method = a.method == "em" ? Method::EM : Method::Opt;
  cfg.target = a.target == "lower" ? Bound::Lower : Bound::Upper;
  cfg.backend = a.backend == "dfree" ? OptBackend::DerivativeFree : OptBackend::Gradient;
  cfg.validate();
  return cfg;
}

json learn_payload(const Program& program, const LearnResult& r) {
  json params = json::array();
  for (std::size_t j = 0; j < r.params.size(); ++j)
    params.push_back({{"atom", to_string(program.prob_facts()[program.fact_of_param(j)].atom)},
                      {"prob", r.params[j]}});
  return {{"params", params},
          {"finalLL", r.final_ll},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"llTrace", r.ll_trace}};
}

json cmd_learn(const LearnArgs& a, const LearnConfig& cfg, std::ostream& out) {
  const Program program = parse_program(read_file(a.program));
  const auto interps = parse_interpretations(read_file(a.interpretations));
  if (program.num_params() == 0) throw NoLearnableFacts();

  std::vector<SymPoly> equations;
  if (a.show_equations) equations = interpretation_polys(program, interps, cfg.target, cfg.engine);
  const LearnResult r = learn(program, interps, cfg);
  json payload = learn_payload(program, r);

  if (a.show_equations) {
    json eqs = json::array();
    for (std::size_t k = 0; k < equations.size(); ++k)
      eqs.push_back({{"interpretation", to_string(interps[k])}, {"equation", to_string(equations[k])}});
    payload["equations"] = eqs;
  }

  if (a.json) {
    out << payload.dump() << "\n";
    return payload;
  }
  if (a.show_equations) {
    for (std::size_t j = 0; j < program.num_params(); ++j)
      out << "p" << j << " = " << to_string(program.prob_facts()[program.fact_of_param(j)].atom) << "\n";
    for (std::size_t k = 0; k < equations.size(); ++k)
      out << "I" << k << " [" << to_string(interps[k]) << "] " << to_string(cfg.target) << ": "
          << to_string(equations[k]) << "\n";
  }
  for (std::size_t j = 0; j < r.params.size(); ++j)
    out << to_string(program.prob_facts()[program.fact_of_param(j)].atom) << " " << fixed6(r.params[j]) << "\n";
  out << "final_ll=" << fixed6(r.final_ll) << "\n"
      << "iterations=" << r.iterations << "\n"
      << "converged=" << (r.converged ? "true" : "false") << "\n";
  return payload;
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
  std::string family, out;
  int size = 0, interpretations = 0;
  std::uint64_t seed = 0;
  double init_prob = kDefaultInitialProb;
};

json cmd_gen(const GenArgs& a, std::ostream& out) {
  DatasetSpec spec;
  auto fam = parse_family(a.family);
  if (!fam) throw SpecOutOfRange("unknown family " + a.family);
  spec.family = *fam;
  spec.size = a.size;
  spec.num_interpretations = a.interpretations;
  spec.seed = a.seed;
  spec.init_prob = a.init_prob;
  const Dataset ds = generate(spec);
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path prog = dir / "instance.pasp", ints = dir / "instance.int";
  write_file(prog, to_string(ds.program));
  write_file(ints, interpretations_text(ds.interpretations));
  out << prog.string() << "\n" << ints.string() << "\n";
  return {{"program", prog.string()}, {"interpretations", ints.string()}};
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> families, methods;
  std::vector<int> sizes, interpretations;
  std::vector<std::uint64_t> seeds;
  std::string out, target = "upper";
  int jobs = 1;
};

struct BenchCell {
  Family family;
  int size;
  int n_interps;
  std::string method;
  std::uint64_t seed;
};

struct BenchRow {
  double final_ll = 0.0;
  int iterations = 0;
  double seconds = 0.0;
  std::string status;  // "true" / "false" / "failed:<Kind>"
  bool ok = false;
};

BenchRow run_cell(const BenchCell& cell, const LearnConfig& base) {
  BenchRow row;
  const auto start = std::chrono::steady_clock::now();
  try {
    DatasetSpec spec;
    spec.family = cell.family;
    spec.size = cell.size;
    spec.num_interpretations = cell.n_interps;
    spec.seed = cell.seed;
    const Dataset ds = generate(spec);
    LearnConfig cfg = base;
    cfg.seed = cell.seed;
    cfg.method = cell.method == "em" ? Method::EM : Method::Opt;
    cfg.backend = cell.method == "opt-dfree" ? OptBackend::DerivativeFree : OptBackend::Gradient;
    const LearnResult r = learn(ds.program, ds.interpretations, cfg);
    row.final_ll = r.final_ll;
    row.iterations = r.iterations;
    row.status = r.converged ? "true" : "false";
    row.ok = true;
  } catch (const std::exception& e) {
    row.status = std::string("failed:") + error_kind(e);
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

json cmd_bench(const BenchArgs& a, const LearnConfig& base, std::ostream& out, std::ostream& err) {
  std::vector<BenchCell> cells;
  for (const std::string& fname : a.families) {
    auto fam = parse_family(fname);
    if (!fam) throw SpecOutOfRange("unknown family " + fname);
    for (int size : a.sizes)
      for (int n : a.interpretations)
        for (const std::string& m : a.methods)
          for (std::uint64_t seed : a.seeds) cells.push_back({*fam, size, n, m, seed});
  }
  std::ofstream csv(a.out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + a.out);

  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      rows[i] = run_cell(cells[i], base);
      std::lock_guard lock(log_mutex);
      err << "[" << (i + 1) << "/" << cells.size() << "] " << to_string(cells[i].family) << cells[i].size
          << " n=" << cells[i].n_interps << " " << cells[i].method << " seed=" << cells[i].seed << " -> "
          << rows[i].status << "\n";
    }
  };
  const int jobs = std::max(1, a.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  csv << "family,size,n_interps,method,seed,final_ll,iterations,wall_seconds,converged\n";
  std::size_t failed = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const BenchCell& c = cells[i];
    const BenchRow& r = rows[i];
    char ll[64] = "";
    if (r.ok) std::snprintf(ll, sizeof ll, "%.9g", r.final_ll);
    char secs[64];
    std::snprintf(secs, sizeof secs, "%.6f", r.seconds);
    csv << to_string(c.family) << ',' << c.size << ',' << c.n_interps << ',' << c.method << ',' << c.seed << ','
        << ll << ',' << (r.ok ? r.iterations : 0) << ',' << secs << ',' << r.status << '\n';
    failed += !r.ok;
  }
  if (!csv) throw std::runtime_error("cannot write " + a.out);
  out << a.out << "\n" << "rows=" << cells.size() << " failed=" << failed << "\n";
  return {{"csv", a.out}, {"rows", cells.size()}, {"failed", failed}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parameter learning for probabilistic answer set programs under the credal semantics", "pasp"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Common common;
  const std::vector<std::string> methods{"opt", "em"}, targets{"lower", "upper"}, backends{"gradient", "dfree"};

  InferArgs infer;
  auto* c_infer = app.add_subcommand("infer", "Lower/upper probability of a query, optionally given evidence");
  c_infer->add_option("--program", infer.program, "Program file (.pasp)")->required();
  c_infer->add_option("--query", infer.query, "Conjunction of ground literals")->required();
  c_infer->add_option("--evidence", infer.evidence, "Conjunction of ground literals to condition on");
  c_infer->add_flag("--json", infer.json, "Emit JSON");
  add_common(c_infer, common);

  std::string check_program;
  auto* c_check = app.add_subcommand("check", "Count worlds without an answer set");
  c_check->add_option("--program", check_program, "Program file (.pasp)")->required();
  add_common(c_check, common);

  LearnArgs learn_args;
  LearnConfig cfg;
  auto* c_learn = app.add_subcommand("learn", "Learn the probabilities of the learnable facts");
  c_learn->add_option("--program", learn_args.program, "Program file (.pasp)")->required();
  c_learn->add_option("--interpretations", learn_args.interpretations, "Interpretation file (.int)")->required();
  c_learn->add_option("--method", learn_args.method)->check(CLI::IsMember(methods));
  c_learn->add_option("--target", learn_args.target)->check(CLI::IsMember(targets));
  c_learn->add_option("--backend", learn_args.backend)->check(CLI::IsMember(backends));
  c_learn->add_option("--eps-ll", cfg.eps_ll, "EM stops once an update gains less LL than this");
  c_learn->add_option("--max-iters", cfg.max_iters);
  c_learn->add_option("--floor", cfg.floor_prob, "Probability floor inside the logarithm");
  c_learn->add_option("--restarts", cfg.restarts, "Optimizer starts (first = declared initial values)");
  c_learn->add_option("--seed", cfg.seed);
  c_learn->add_flag("--skip-undefined", cfg.skip_undefined, "EM: ignore undefined conditionals");
  c_learn->add_flag("--show-equations", learn_args.show_equations, "Print the extracted equations");
  c_learn->add_flag("--json", learn_args.json, "Emit JSON");
  add_common(c_learn, common);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a benchmark instance");
  c_gen->add_option("--family", gen.family)->required();
  c_gen->add_option("--size", gen.size)->required();
  c_gen->add_option("--interpretations", gen.interpretations)->required();
  c_gen->add_option("--seed", gen.seed)->required();
  c_gen->add_option("--out", gen.out, "Output directory")->required();
  c_gen->add_option("--init-prob", gen.init_prob, "Initial value of the learnable facts");
  add_common(c_gen, common);

  BenchArgs bench;
  bench.interpretations = {5, 10, 15, 20};
  bench.methods = {"opt-gradient", "opt-dfree", "em"};
  LearnConfig bench_cfg;
  auto* c_bench = app.add_subcommand("bench", "Run a learning sweep and write a CSV");
  c_bench->add_option("--families", bench.families)->delimiter(',')->required();
  c_bench->add_option("--sizes", bench.sizes)->delimiter(',')->required();
  c_bench->add_option("--interpretations", bench.interpretations)->delimiter(',');
  c_bench->add_option("--methods", bench.methods)
      ->delimiter(',')
      ->check(CLI::IsMember({"opt-gradient", "opt-dfree", "em"}));
  c_bench->add_option("--seeds", bench.seeds)->delimiter(',')->required();
  c_bench->add_option("--out", bench.out, "CSV file")->required();
  c_bench->add_option("--target", bench.target)->check(CLI::IsMember(targets));
  c_bench->add_option("--restarts", bench_cfg.restarts);
  c_bench->add_option("--max-iters", bench_cfg.max_iters);
  c_bench->add_option("--eps-ll", bench_cfg.eps_ll);
  c_bench->add_option("--jobs", bench.jobs, "Worker threads");
  add_common(c_bench, common);

  std::vector<const char*> argv;
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  std::ostringstream buffer;  // nothing reaches `out` unless the command succeeds
  try {
    json result;
    if (*c_infer) {
      result = cmd_infer(infer, common, buffer);
    } else if (*c_check) {
      result = cmd_check(check_program, common, buffer);
    } else if (*c_learn) {
      cfg.engine = common.engine();
      result = cmd_learn(learn_args, make_config(learn_args, cfg), buffer);
    } else if (*c_gen) {
      result = cmd_gen(gen, buffer);
    } else if (*c_bench) {
      bench_cfg.engine = common.engine();
      bench_cfg.target = bench.target == "lower" ? Bound::Lower : Bound::Upper;
      bench_cfg.validate();
      result = cmd_bench(bench, bench_cfg, buffer, err);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_report(common, args, seconds, result);
    out << buffer.str();
    if (*c_check && result["inconsistentWorlds"].get<std::uint64_t>() > 0) return kExitInconsistentWorld;
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace pasp
