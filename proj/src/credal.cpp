#include "pasp/credal.hpp"

#include <limits>
#include <cmath>

#include "pasp/error.hpp"

namespace pasp {

const char* to_string(Bound b) { return b == Bound::Lower ? "lower" : "upper"; }

QueryMatcher::QueryMatcher(const GroundProgram& gp, const Query& q) {
  for (const Literal& l : q.conjuncts) {
    if (!l.atom.is_ground()) throw ModelError("query literal " + to_string(l) + " is not ground");
    auto id = gp.find(l.atom);
    if (id) {
      literals_.emplace_back(*id, l.negated);
    } else if (!l.negated) {
      impossible_ = true;
    }
  }
}

bool QueryMatcher::holds(const Model& m) const {
  if (impossible_) return false;
  for (auto [atom, negated] : literals_)
    if (m[atom] == negated) return false;
  return true;
}

EventMatcher::EventMatcher(const GroundProgram& gp, const Event& e) {
  for (const EventPart& p : e) parts_.emplace_back(QueryMatcher(gp, p.query), p.negated);
}

bool EventMatcher::holds(const Model& m) const {
  for (const auto& [matcher, negated] : parts_)
    if (matcher.holds(m) == negated) return false;
  return true;
}

WorldVerdict classify(const ModelSet& models, const EventMatcher& matcher) {
  WorldVerdict v{true, false};
  for (const Model& m : models.models) {
    if (matcher.holds(m))
      v.brave = true;
    else
      v.cautious = false;
  }
  if (models.empty()) v.cautious = false;
  return v;
}

WorldSweep::WorldSweep(const Program& program, EngineOptions options)
    : program_(program),
      options_(options),
      count_(pasp::world_count(program, options.world_cap)),
      gp_(std::make_unique<GroundProgram>(ground(program))),
      solver_(std::make_unique<StableModelSolver>(*gp_)) {}

ModelSet WorldSweep::solve(const World& w) const {
  return solver_->solve(w.selection, std::numeric_limits<std::size_t>::max(), options_.strategy);
}

CredalBounds credal_event(const Program& program, const Event& e, std::span<const double> theta,
                          const EngineOptions& options) {
  check_theta(program, theta);
  WorldSweep sweep(program, options);
  const EventMatcher matcher(sweep.ground_program(), e);
  CredalBounds b;
  sweep.for_each([&](const World& w, const ModelSet& models) {
    const WorldVerdict v = classify(models, matcher);
    if (!v.brave) return;
    const double p = world_probability(program, w, theta);
    b.upper += p;
    if (v.cautious) b.lower += p;
  });
  return b;
}

CredalBounds credal_query(const Program& program, const Query& q, std::span<const double> theta,
                          const EngineOptions& options) {
  validate_query(q);
  return credal_event(program, Event{{q, false}}, theta, options);
}

CredalBounds resolve_conditional(const JointBounds& j, double zero_tol) {
  auto zero = [&](double v) { return std::abs(v) <= zero_tol; };
  const double low_qe = j.q_and_e.lower, up_qe = j.q_and_e.upper;
  const double low_nqe = j.not_q_and_e.lower, up_nqe = j.not_q_and_e.upper;
  if (zero(up_qe) && zero(up_nqe))
    throw UndefinedConditional("conditional probability undefined: evidence has zero upper probability");

  CredalBounds out;
  if (zero(low_qe + up_nqe))
    out.lower = 1.0;  // up_qe > 0 here
  else
    out.lower = low_qe / (low_qe + up_nqe);
  if (zero(up_qe + low_nqe))
    out.upper = 0.0;  // up_nqe > 0 here
  else
    out.upper = up_qe / (up_qe + low_nqe);
  return out;
}

CredalBounds credal_conditional(const Program& program, const Query& q, const Query& e,
                                std::span<const double> theta, const EngineOptions& options) {
  validate_query(q);
  validate_query(e);
  check_theta(program, theta);
  WorldSweep sweep(program, options);
  const EventMatcher qe(sweep.ground_program(), Event{{q, false}, {e, false}});
  const EventMatcher nqe(sweep.ground_program(), Event{{q, true}, {e, false}});
  JointBounds j;
  sweep.for_each([&](const World& w, const ModelSet& models) {
    const WorldVerdict a = classify(models, qe);
    const WorldVerdict b = classify(models, nqe);
    if (!a.brave && !b.brave) return;
    const double p = world_probability(program, w, theta);
    if (a.brave) j.q_and_e.upper += p;
    if (a.cautious) j.q_and_e.lower += p;
    if (b.brave) j.not_q_and_e.upper += p;
    if (b.cautious) j.not_q_and_e.lower += p;
  });
  try {
    return resolve_conditional(j);
  } catch (const UndefinedConditional&) {
    throw UndefinedConditional("P(" + to_string(q) + " | " + to_string(e) + ") is undefined: " +
                               "neither the query nor its negation is possible with the evidence");
  }
}

std::uint64_t check_consistency(const Program& program, const EngineOptions& options) {
  WorldSweep sweep(program, options);
  std::uint64_t bad = 0;
  const std::size_t n = program.prob_facts().size();
  for (std::uint64_t id = 0; id < sweep.world_count(); ++id) {
    const World w = World::from_id(id, n);
    if (sweep.solver().solve(w.selection, 1, options.strategy).empty()) ++bad;
  }
  return bad;
}

}  // namespace pasp
