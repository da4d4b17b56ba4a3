#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fixtures {

// The graph reachability program used throughout the tests.
extern const char* const kGraph;
// Same program with all three edges learnable (initial value 0.5).
extern const char* const kGraphLearnable;
// Two observations over the graph program.
extern const char* const kGraphInterps;

// One learnable fact observed once true and once false.
extern const char* const kCoin;
extern const char* const kCoinInterps;

// Conditional fixtures: lower bound forced to 1, upper forced to 0, undefined.
extern const char* const kCondLowerOne;
extern const char* const kCondUpperZero;
extern const char* const kCondUndefined;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

std::filesystem::path write(const std::filesystem::path& path, const std::string& content);
std::string slurp(const std::filesystem::path& path);

}  // namespace fixtures
