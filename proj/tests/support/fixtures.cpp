#include "support/fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "pasp/cli.hpp"

namespace fixtures {

const char* const kGraph = R"(0.2::edge(1,2).
0.3::edge(2,4).
0.9::edge(1,3).
path(X,Y):- connected(X,Z), path(Z,Y).
path(X,Y):- connected(X,Y).

connected(X,Y):- edge(X,Y), not nconnected(X,Y).
nconnected(X,Y):- edge(X,Y), not connected(X,Y).
)";

const char* const kGraphLearnable = R"(learnable::edge(1,2).
learnable::edge(2,4).
learnable::edge(1,3).
path(X,Y):- connected(X,Z), path(Z,Y).
path(X,Y):- connected(X,Y).

connected(X,Y):- edge(X,Y), not nconnected(X,Y).
nconnected(X,Y):- edge(X,Y), not connected(X,Y).
)";

const char* const kGraphInterps = "path(1,3), not path(1,4).\npath(1,4).\n";

const char* const kCoin = "learnable::a.\n";
const char* const kCoinInterps = "a.\nnot a.\n";

// With a, the answer sets are {a,e,q} and {a,f}: q holds with e whenever e
// holds, but not cautiously.
const char* const kCondLowerOne = R"(0.5::a.
e :- a, not f.
f :- a, not e.
q :- e.
)";

// Same choice, but q needs both branches at once and never holds.
const char* const kCondUpperZero = R"(0.5::a.
e :- a, not f.
f :- a, not e.
q :- e, f.
)";

// c needs a without b, yet b follows from a.
const char* const kCondUndefined = R"(0.5::a.
b :- a.
c :- a, not b.
)";

CliRun run(const std::vector<std::string>& args) {
  std::vector<std::string> argv{"pasp"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  CliRun r;
  r.code = pasp::run_cli(argv, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("pasp_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write(const std::filesystem::path& path, const std::string& content) {
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixtures
