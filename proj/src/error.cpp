#include "pasp/error.hpp"

namespace pasp {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax: return "SyntaxError";
    case ParseErrorKind::DuplicateProbFact: return "DuplicateProbFact";
    case ParseErrorKind::ProbOutOfRange: return "ProbOutOfRange";
    case ParseErrorKind::HeadIsProbFact: return "HeadIsProbFact";
    case ParseErrorKind::NonGroundProbFact: return "NonGroundProbFact";
    case ParseErrorKind::NonGroundInterpretation: return "NonGroundInterpretation";
    case ParseErrorKind::ContradictoryInterpretation: return "ContradictoryInterpretation";
  }
  return "ParseError";
}

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
    : Error(std::string(to_string(kind)) + " at " + std::to_string(span.line) + ":" +
            std::to_string(span.column) + ": " + message),
      kind_(kind),
      span_(span) {}

CapExceeded::CapExceeded(std::size_t facts, std::size_t cap)
    : Error("program has " + std::to_string(facts) + " probabilistic facts, world cap is " +
            std::to_string(cap)),
      facts_(facts),
      cap_(cap) {}

UnsafeRule::UnsafeRule(const std::string& rule, const std::string& variable)
    : Error("unsafe rule '" + rule + "': variable " + variable +
            " does not occur in a positive body literal"),
      variable_(variable) {}

InconsistentWorld::InconsistentWorld(std::size_t world_id)
    : Error("world " + std::to_string(world_id) + " has no answer set"), world_id_(world_id) {}

}  // namespace pasp
