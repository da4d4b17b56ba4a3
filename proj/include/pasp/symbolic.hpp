#pragma once

#include <span>
#include <vector>

#include "pasp/credal.hpp"
#include "pasp/sympoly.hpp"

namespace pasp {

/// Probability mass of the contributing worlds, grouped by which learnable
/// facts they include. Entry S holds sum_w k_w over the worlds whose
/// learnable selection is S, where k_w is the product of the fixed-fact
/// factors of w.
struct SelectionWeights {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// One pass over the worlds that classifies every event at once.
std::vector<SelectionWeights> sweep_selection_weights(const WorldSweep& sweep,
                                                      std::span<const Event> events);

struct BoundPolys {
  SymPoly lower;
  SymPoly upper;

  const SymPoly& get(Bound b) const { return b == Bound::Lower ? lower : upper; }
};

/// Symbolic lower/upper probability of a query as a polynomial in the
/// learnable parameters. Throws InconsistentWorld.
SymPoly extract_poly(const Program& program, const Query& q, Bound bound,
                     const EngineOptions& options = {});

/// Both bounds for several queries with a single world enumeration.
std::vector<BoundPolys> extract_polys(const Program& program, std::span<const Query> queries,
                                      const EngineOptions& options = {});

}  // namespace pasp
