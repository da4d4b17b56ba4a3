#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pasp/error.hpp"
#include "pasp/grounder.hpp"
#include "pasp/program.hpp"
#include "pasp/stable_models.hpp"

namespace pasp {

enum class Bound { Lower, Upper };

const char* to_string(Bound b);

struct CredalBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct EngineOptions {
  std::size_t world_cap = kDefaultWorldCap;
  SolverStrategy strategy = SolverStrategy::Search;
};

/// A conjunctive query resolved against the atoms of a ground program.
/// Atoms outside the ground program are false in every answer set.
class QueryMatcher {
 public:
  QueryMatcher(const GroundProgram& gp, const Query& q);

  bool holds(const Model& m) const;

 private:
  std::vector<std::pair<AtomId, bool>> literals_;  // (atom, negated)
  bool impossible_ = false;
};

/// Conjunction of queries, each possibly negated as a whole. `not q` is
/// satisfied by an answer set that fails at least one conjunct of q.
struct EventPart {
  Query query;
  bool negated = false;
};
using Event = std::vector<EventPart>;

class EventMatcher {
 public:
  EventMatcher(const GroundProgram& gp, const Event& e);
  bool holds(const Model& m) const;

 private:
  std::vector<std::pair<QueryMatcher, bool>> parts_;
};

/// Per-world classification of an event: whether every answer set satisfies
/// it (cautious) and whether some answer set does (brave).
struct WorldVerdict {
  bool cautious = false;
  bool brave = false;
};

WorldVerdict classify(const ModelSet& models, const EventMatcher& matcher);

/// Grounds a program once and visits its worlds in binary-counting order
/// together with their answer sets.
class WorldSweep {
 public:
  explicit WorldSweep(const Program& program, EngineOptions options = {});
  WorldSweep(const WorldSweep&) = delete;
  WorldSweep& operator=(const WorldSweep&) = delete;

  const Program& program() const { return program_; }
  const GroundProgram& ground_program() const { return *gp_; }
  const StableModelSolver& solver() const { return *solver_; }
  std::uint64_t world_count() const { return count_; }

  /// Calls visit(world, models) for every world; throws InconsistentWorld
  /// on the first world without answer sets.
  template <typename Visitor>
  void for_each(Visitor&& visit) const {
    const std::size_t n = program_.prob_facts().size();
    for (std::uint64_t id = 0; id < count_; ++id) {
      const World w = World::from_id(id, n);
      const ModelSet models = solve(w);
      if (models.empty()) throw InconsistentWorld(id);
      visit(w, models);
    }
  }

  ModelSet solve(const World& w) const;

 private:
  const Program& program_;
  EngineOptions options_;
  std::uint64_t count_;
  std::unique_ptr<GroundProgram> gp_;
  std::unique_ptr<StableModelSolver> solver_;
};

/// [lower, upper] probability of a conjunctive query under the credal
/// semantics. Throws InconsistentWorld.
CredalBounds credal_query(const Program& program, const Query& q, std::span<const double> theta,
                          const EngineOptions& options = {});

CredalBounds credal_event(const Program& program, const Event& e, std::span<const double> theta,
                          const EngineOptions& options = {});

/// Conditional bounds P(q | e). Throws UndefinedConditional when neither
/// q nor its negation is possible together with e.
CredalBounds credal_conditional(const Program& program, const Query& q, const Query& e,
                                std::span<const double> theta, const EngineOptions& options = {});

/// Joint bounds used by conditioning: P(q, e) and P(not q, e).
struct JointBounds {
  CredalBounds q_and_e;
  CredalBounds not_q_and_e;
};

/// Applies the conditional formula including its degenerate cases. Values
/// with magnitude <= zero_tol count as zero.
CredalBounds resolve_conditional(const JointBounds& joint, double zero_tol = 0.0);

/// Number of worlds without an answer set (0 iff the credal semantics is
/// defined for the program).
std::uint64_t check_consistency(const Program& program, const EngineOptions& options = {});

}  // namespace pasp
