#pragma once

#include <string_view>
#include <vector>

#include "pasp/error.hpp"
#include "pasp/program.hpp"

namespace pasp {

/// Parses `.pasp` program text:
///
///   0.2::edge(1,2).            fixed probabilistic fact
///   learnable::edge(1,2).      learnable fact, initial value 0.5
///   learnable(0.3)::edge(1,3). learnable fact with explicit initial value
///   path(X,Y) :- edge(X,Y).    rule
///   :- a, not b.               constraint
///   node(1).                   deterministic fact
///
/// `%` starts a comment, `_` is the anonymous variable and identifiers that
/// start with an uppercase letter are variables. Throws ParseError.
Program parse_program(std::string_view text);

/// Parses an `.int` file: one interpretation per line, written as a
/// comma-separated list of ground literals terminated by `.`.
std::vector<Interpretation> parse_interpretations(std::string_view text);

/// Parses a conjunction of ground literals; the trailing `.` is optional.
Query parse_query(std::string_view text);

}  // namespace pasp
