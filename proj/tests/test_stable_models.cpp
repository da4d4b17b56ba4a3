#include <algorithm>
#include <random>

#include "doctest.h"
#include "pasp/grounder.hpp"
#include "pasp/parser.hpp"
#include "pasp/stable_models.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace pasp;

namespace {

std::vector<std::set<std::string>> named(const GroundProgram& gp, const ModelSet& ms) {
  std::vector<std::set<std::string>> out;
  for (const Model& m : ms.models) {
    std::set<std::string> s;
    for (AtomId a = 0; a < m.size(); ++a)
      if (m[a]) s.insert(to_string(gp.atoms()[a]));
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Subsets of all atoms, reduct least model compared directly.
std::vector<Model> subset_oracle(const GroundProgram& gp, const std::vector<bool>& world) {
  const std::size_t n = gp.num_atoms();
  std::vector<bool> is_prob(n, false);
  for (AtomId a : gp.prob_atom_ids()) is_prob[a] = true;
  std::vector<Model> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Model m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = mask >> i & 1;
    bool matches = true;
    for (std::size_t k = 0; k < gp.prob_atom_ids().size(); ++k) matches = matches && m[gp.prob_atom_ids()[k]] == world[k];
    if (!matches) continue;
    // least model of the reduct, by immediate consequence
    Model lm(n, false);
    for (std::size_t k = 0; k < gp.prob_atom_ids().size(); ++k) lm[gp.prob_atom_ids()[k]] = world[k];
    bool changed = true;
    while (changed) {
      changed = false;
      for (const GroundRule& r : gp.rules()) {
        if (!r.head || lm[*r.head]) continue;
        if (std::any_of(r.negative.begin(), r.negative.end(), [&](AtomId a) { return m[a]; })) continue;
        if (std::all_of(r.positive.begin(), r.positive.end(), [&](AtomId a) { return lm[a]; })) {
          lm[*r.head] = true;
          changed = true;
        }
      }
    }
    if (lm != m) continue;
    bool ok = true;
    for (const GroundRule& r : gp.rules()) {
      if (r.head) continue;
      const bool pos = std::all_of(r.positive.begin(), r.positive.end(), [&](AtomId a) { return m[a]; });
      const bool neg = std::none_of(r.negative.begin(), r.negative.end(), [&](AtomId a) { return m[a]; });
      ok = ok && !(pos && neg);
    }
    if (ok) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroundProgram random_ground_program(std::mt19937_64& rng, std::size_t atoms, std::size_t probs) {
  std::vector<Atom> names;
  for (std::size_t i = 0; i < atoms; ++i) names.push_back(Atom{"x" + std::to_string(i), {}});
  std::vector<AtomId> prob_ids;
  for (std::size_t i = 0; i < probs; ++i) prob_ids.push_back(i);
  std::vector<GroundRule> rules;
  const std::size_t nrules = 2 + rng() % (2 * atoms);
  for (std::size_t k = 0; k < nrules; ++k) {
    GroundRule r;
    if (rng() % 8 != 0) r.head = probs + rng() % (atoms - probs);
    const std::size_t body = rng() % 4;
    for (std::size_t b = 0; b < body; ++b) {
      const AtomId a = rng() % atoms;
      (rng() % 3 == 0 ? r.negative : r.positive).push_back(a);
    }
    if (!r.head && r.positive.empty() && r.negative.empty()) continue;
    rules.push_back(r);
  }
  return make_ground_program(names, rules, prob_ids);
}

}  // namespace

TEST_CASE("even loop has two answer sets") {
  const GroundProgram gp = ground(parse_program("a :- not b. b :- not a."));
  const ModelSet ms = answer_sets(gp, {});
  CHECK(named(gp, ms) == std::vector<std::set<std::string>>{{"a"}, {"b"}});
}

TEST_CASE("violated constraint leaves no answer set") {
  const GroundProgram gp = ground(parse_program("a. :- a."));
  CHECK(answer_sets(gp, {}).empty());
  CHECK(answer_sets(gp, {}, SolverStrategy::Exhaustive).empty());
}

TEST_CASE("odd loop has no answer set") {
  const GroundProgram gp = ground(parse_program("a :- not a."));
  CHECK(answer_sets(gp, {}).empty());
}

TEST_CASE("positive loops are not self-supporting") {
  const GroundProgram gp = ground(parse_program("a :- b. b :- a. c :- not a."));
  CHECK(named(gp, answer_sets(gp, {})) == std::vector<std::set<std::string>>{{"c"}});
}

TEST_CASE("graph program in the all-edges world") {
  const GroundProgram gp = ground(parse_program(fixtures::kGraph));
  const ModelSet ms = answer_sets(gp, {true, true, true});
  const auto models = named(gp, ms);
  CHECK(models.size() == 8);  // three independent connected/nconnected choices
  CHECK(std::any_of(models.begin(), models.end(), [](const auto& m) { return m.count("path(1,4)") > 0; }));
  CHECK(std::any_of(models.begin(), models.end(), [](const auto& m) { return m.count("path(1,4)") == 0; }));
  CHECK(ms.models == subset_oracle(gp, {true, true, true}));
}

TEST_CASE("returned models pass the reduct check and are sorted") {
  const GroundProgram gp = ground(parse_program(fixtures::kGraph));
  for (std::uint64_t id = 0; id < 8; ++id) {
    const World w = World::from_id(id, 3);
    const ModelSet ms = answer_sets(gp, w.selection);
    CHECK_FALSE(ms.empty());
    CHECK(std::is_sorted(ms.models.begin(), ms.models.end()));
    CHECK(std::adjacent_find(ms.models.begin(), ms.models.end()) == ms.models.end());
    for (const Model& m : ms.models) {
      CHECK(is_stable_model(gp, m));
      CHECK(reduct_least_model(gp, m) == m);
    }
  }
}

TEST_CASE("search agrees with the subset oracle on random ground programs") {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t atoms = 3 + rng() % 10;  // up to 12 atoms
    const std::size_t probs = rng() % 3;
    const GroundProgram gp = random_ground_program(rng, atoms, probs);
    for (std::uint64_t id = 0; id < (std::uint64_t{1} << probs); ++id) {
      const World w = World::from_id(id, probs);
      const auto expected = subset_oracle(gp, w.selection);
      INFO("trial " << trial << " world " << id);
      CHECK(answer_sets(gp, w.selection).models == expected);
      CHECK(answer_sets(gp, w.selection, SolverStrategy::Exhaustive).models == expected);
      ++checked;
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("solve limit and existence checks") {
  const GroundProgram gp = ground(parse_program("0.5::p.\na :- not b. b :- not a. c :- a, p.\n:- c.\n"));
  const StableModelSolver solver(gp);
  CHECK(solver.solve({false}).size() == 2);
  CHECK(solver.solve({false}, 1).size() == 1);
  CHECK(solver.solve({true}).size() == 1);

  const AtomId p = *gp.find(Atom{"p", {}});
  const AtomId a = *gp.find(Atom{"a", {}});
  const std::pair<AtomId, bool> p_and_a[] = {{p, true}, {a, true}};
  const std::pair<AtomId, bool> only_a[] = {{a, true}};
  const std::pair<AtomId, bool> b_true[] = {{*gp.find(Atom{"b", {}}), true}};
  CHECK_FALSE(solver.exists(p_and_a));
  CHECK(solver.exists(only_a));  // p left open: the world without p works
  CHECK(solver.exists(b_true));
}

TEST_CASE("existence matches enumeration over all worlds") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t atoms = 4 + rng() % 7;
    const std::size_t probs = 1 + rng() % 3;
    const GroundProgram gp = random_ground_program(rng, atoms, probs);
    const StableModelSolver solver(gp);
    const AtomId target = rng() % atoms;
    const bool value = rng() % 2;
    bool expected = false;
    for (std::uint64_t id = 0; id < (std::uint64_t{1} << probs); ++id)
      for (const Model& m : solver.solve(World::from_id(id, probs).selection).models) expected = expected || m[target] == value;
    const std::pair<AtomId, bool> assumption[] = {{target, value}};
    INFO("trial " << trial);
    CHECK(solver.exists(assumption) == expected);
  }
}
