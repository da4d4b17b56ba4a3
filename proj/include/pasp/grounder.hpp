#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pasp/program.hpp"

namespace pasp {

using AtomId = std::size_t;

struct GroundRule {
  std::optional<AtomId> head;  // empty for constraints
  std::vector<AtomId> positive;
  std::vector<AtomId> negative;

  friend auto operator<=>(const GroundRule&, const GroundRule&) = default;
  friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

/// Relevant part of the grounding. Atom ids are dense; the probabilistic
/// atoms come first, in declaration order.
class GroundProgram {
 public:
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<GroundRule>& rules() const { return rules_; }
  const std::vector<AtomId>& prob_atom_ids() const { return prob_atom_ids_; }
  std::size_t num_atoms() const { return atoms_.size(); }

  std::optional<AtomId> find(const Atom& a) const;
  Rule to_rule(const GroundRule& r) const;

 private:
  friend class Grounder;
  friend GroundProgram make_ground_program(std::vector<Atom>, std::vector<GroundRule>,
                                           std::vector<AtomId>);

  AtomId intern(const Atom& a);

  std::vector<Atom> atoms_;
  std::map<Atom, AtomId> index_;
  std::vector<GroundRule> rules_;
  std::vector<AtomId> prob_atom_ids_;
};

/// Builds a ground program directly (the probabilistic atoms are looked up by
/// their ids). Used by tests and tools that produce propositional programs.
GroundProgram make_ground_program(std::vector<Atom> atoms, std::vector<GroundRule> rules,
                                  std::vector<AtomId> prob_atom_ids);

/// Bottom-up instantiation seeded by the facts and probabilistic atoms.
/// Negated literals are assumed possibly true while computing the relevant
/// atoms; negated literals over atoms that can never be derived are dropped
/// from the ground rules since they always hold. Throws UnsafeRule.
GroundProgram ground(const Program& program);

/// Throws UnsafeRule if some variable of the head or of a negated literal
/// does not occur in a positive body literal.
void check_safety(const Rule& rule);

}  // namespace pasp
