#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pasp/program.hpp"

namespace pasp {

/// Benchmark families: graph coloring, path reachability, shopping with
/// incompatible products, and the smokers network.
enum class Family { Coloring, Path, Shop, Smoke };

const char* to_string(Family f);
std::optional<Family> parse_family(const std::string& name);

/// Allowed `size` values: nodes (coloring), edges (path), people (shop, smoke).
std::pair<int, int> size_bounds(Family f);
/// Length range of the generated interpretations.
std::pair<int, int> interpretation_length_bounds(Family f);
/// Predicates whose atoms may appear in interpretations.
std::vector<std::string> observable_predicates(Family f);

struct DatasetSpec {
  Family family = Family::Coloring;
  int size = 4;
  int num_interpretations = 5;
  std::uint64_t seed = 0;
  double init_prob = kDefaultInitialProb;

  /// Throws SpecOutOfRange.
  void validate() const;
};

struct Dataset {
  Program program;
  std::vector<Interpretation> interpretations;
};

/// Deterministic in the spec. Interpretations that no world can satisfy are
/// redrawn (up to 100 attempts each).
Dataset generate(const DatasetSpec& spec);

std::string interpretations_text(const std::vector<Interpretation>& interps);

}  // namespace pasp
