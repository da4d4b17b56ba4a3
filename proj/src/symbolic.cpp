#include "pasp/symbolic.hpp"

#include "pasp/error.hpp"

namespace pasp {

std::vector<SelectionWeights> sweep_selection_weights(const WorldSweep& sweep,
                                                      std::span<const Event> events) {
  const Program& program = sweep.program();
  const auto& facts = program.prob_facts();
  const std::size_t nvars = program.num_params();
  if (nvars >= 32) throw CapExceeded(nvars, 31);
  const std::size_t selections = std::size_t{1} << nvars;

  std::vector<EventMatcher> matchers;
  matchers.reserve(events.size());
  for (const Event& e : events) matchers.emplace_back(sweep.ground_program(), e);

  std::vector<SelectionWeights> out(events.size());
  for (SelectionWeights& w : out) {
    w.lower.assign(selections, 0.0);
    w.upper.assign(selections, 0.0);
  }

  sweep.for_each([&](const World& w, const ModelSet& models) {
    std::size_t sel = 0;
    double fixed = 1.0;
    for (std::size_t i = 0; i < facts.size(); ++i) {
      if (facts[i].param_index) {
        if (w.includes(i)) sel |= std::size_t{1} << *facts[i].param_index;
      } else {
        fixed *= w.includes(i) ? facts[i].prob : 1.0 - facts[i].prob;
      }
    }
    for (std::size_t k = 0; k < matchers.size(); ++k) {
      const WorldVerdict v = classify(models, matchers[k]);
      if (v.brave) out[k].upper[sel] += fixed;
      if (v.cautious) out[k].lower[sel] += fixed;
    }
  });
  return out;
}

std::vector<BoundPolys> extract_polys(const Program& program, std::span<const Query> queries,
                                      const EngineOptions& options) {
  std::vector<Event> events;
  for (const Query& q : queries) {
    validate_query(q);
    events.push_back(Event{{q, false}});
  }
  WorldSweep sweep(program, options);
  const auto weights = sweep_selection_weights(sweep, events);
  std::vector<BoundPolys> out;
  out.reserve(weights.size());
  for (const SelectionWeights& w : weights)
    out.push_back({from_selection_weights(w.lower, program.num_params()),
                   from_selection_weights(w.upper, program.num_params())});
  return out;
}

SymPoly extract_poly(const Program& program, const Query& q, Bound bound, const EngineOptions& options) {
  const Query queries[] = {q};
  return extract_polys(program, queries, options).front().get(bound);
}

}  // namespace pasp
