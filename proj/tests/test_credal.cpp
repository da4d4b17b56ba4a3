#include <random>

#include "doctest.h"
#include "pasp/credal.hpp"
#include "pasp/parser.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace pasp;

namespace {

CredalBounds query(const char* program, const char* q) {
  const Program p = parse_program(program);
  return credal_query(p, parse_query(q), p.params());
}

CredalBounds conditional(const char* program, const char* q, const char* e) {
  const Program p = parse_program(program);
  return credal_conditional(p, parse_query(q), parse_query(e), p.params());
}

}  // namespace

TEST_CASE("graph program queries") {
  const CredalBounds b = query(fixtures::kGraph, "path(1,4)");
  CHECK(b.lower == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(0.06).epsilon(1e-12));
  const CredalBounds fact = query(fixtures::kGraph, "edge(1,3)");
  CHECK(fact.lower == doctest::Approx(0.9));
  CHECK(fact.upper == doctest::Approx(0.9));
  const CredalBounds p13 = query(fixtures::kGraph, "path(1,3)");
  CHECK(p13.lower == 0.0);
  CHECK(p13.upper == doctest::Approx(0.9));
}

TEST_CASE("graph program conditionals") {
  const CredalBounds b = conditional(fixtures::kGraph, "path(1,4)", "edge(2,4)");
  CHECK(b.lower == doctest::Approx(0.0));
  CHECK(b.upper == doctest::Approx(0.2));
  const CredalBounds self = conditional(fixtures::kGraph, "edge(1,3)", "edge(1,3)");
  CHECK(self.lower == 1.0);
  CHECK(self.upper == 1.0);
}

TEST_CASE("joint bounds of the graph program") {
  const Program p = parse_program(fixtures::kGraph);
  const CredalBounds qe = credal_query(p, parse_query("path(1,4), edge(2,4)"), p.params());
  CHECK(qe.lower == doctest::Approx(0.0));
  CHECK(qe.upper == doctest::Approx(0.06));
  Event not_q_and_e{{parse_query("path(1,4)"), true}, {parse_query("edge(2,4)"), false}};
  const CredalBounds nqe = credal_event(p, not_q_and_e, p.params());
  CHECK(nqe.lower == doctest::Approx(0.24));
  CHECK(nqe.upper == doctest::Approx(0.3));
}

TEST_CASE("degenerate conditionals") {
  const CredalBounds one = conditional(fixtures::kCondLowerOne, "q", "e");
  CHECK(one.lower == 1.0);
  CHECK(one.upper == 1.0);
  const CredalBounds zero = conditional(fixtures::kCondUpperZero, "q", "e");
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);
  CHECK_THROWS_AS(conditional(fixtures::kCondUndefined, "b", "c"), UndefinedConditional);
  CHECK_THROWS_AS(conditional(fixtures::kGraph, "path(1,4)", "path(4,1)"), UndefinedConditional);
}

TEST_CASE("resolve_conditional clauses") {
  const CredalBounds normal = resolve_conditional({{0.1, 0.3}, {0.2, 0.4}});
  CHECK(normal.lower == doctest::Approx(0.1 / 0.5));
  CHECK(normal.upper == doctest::Approx(0.3 / 0.5));
  const CredalBounds lower_one = resolve_conditional({{0.0, 0.5}, {0.0, 0.0}});
  CHECK(lower_one.lower == 1.0);
  CHECK(lower_one.upper == 1.0);
  const CredalBounds upper_zero = resolve_conditional({{0.0, 0.0}, {0.0, 0.5}});
  CHECK(upper_zero.lower == 0.0);
  CHECK(upper_zero.upper == 0.0);
  CHECK_THROWS_AS(resolve_conditional({{0.0, 0.0}, {0.0, 0.0}}), UndefinedConditional);
  CHECK_THROWS_AS(resolve_conditional({{0.0, 1e-14}, {0.0, 1e-14}}, 1e-12), UndefinedConditional);
}

TEST_CASE("inconsistent worlds") {
  const Program p = parse_program("0.5::a.\n:- a.\n");
  CHECK(check_consistency(p) == 1);
  try {
    credal_query(p, parse_query("a"), p.params());
    FAIL("expected InconsistentWorld");
  } catch (const InconsistentWorld& e) {
    CHECK(e.world_id() == 1);
  }
  CHECK(check_consistency(parse_program(fixtures::kGraph)) == 0);
  CHECK(check_consistency(parse_program("0.3::a. 0.6::b. c :- a. d :- c, not b. e :- not d.")) == 0);
}

TEST_CASE("atoms outside the program") {
  const CredalBounds absent = query(fixtures::kGraph, "zzz");
  CHECK(absent.lower == 0.0);
  CHECK(absent.upper == 0.0);
  const CredalBounds negated = query(fixtures::kGraph, "not zzz");
  CHECK(negated.lower == doctest::Approx(1.0));
  CHECK(negated.upper == doctest::Approx(1.0));
}

TEST_CASE("world cap is enforced") {
  const Program p = parse_program(fixtures::kGraph);
  CHECK_THROWS_AS(credal_query(p, parse_query("path(1,4)"), p.params(), EngineOptions{2}), CapExceeded);
}

TEST_CASE("properties on random programs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int consistent = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const oracle::RandomProgram rp = oracle::random_program(seed);
    const Program p = parse_program(rp.text);
    const Query q = parse_query(oracle::random_query(rp, seed));
    std::vector<double> theta(p.num_params());
    for (double& t : theta) t = u(rng);
    const oracle::Bounds expected = oracle::credal(p, q, theta);
    INFO("seed " << seed << "\n" << rp.text << "query " << to_string(q));
    if (expected.inconsistent) {
      CHECK_THROWS_AS(credal_query(p, q, theta), InconsistentWorld);
      CHECK(check_consistency(p) > 0);
      continue;
    }
    ++consistent;
    const CredalBounds b = credal_query(p, q, theta);
    CHECK(b.lower == doctest::Approx(expected.lower).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(expected.upper).epsilon(1e-12));
    CHECK(b.lower <= b.upper + 1e-12);

    // complement: not q is the negation of the whole conjunction
    const CredalBounds nb = credal_event(p, Event{{q, true}}, theta);
    CHECK(nb.lower == doctest::Approx(1.0 - b.upper).epsilon(1e-9));
    CHECK(nb.upper == doctest::Approx(1.0 - b.lower).epsilon(1e-9));

    // conjunction with another literal can only shrink the bounds
    const Query e = parse_query(oracle::random_query(rp, seed + 1000));
    Query both = q;
    bool clash = false;
    for (const Literal& l : e.conjuncts)
      for (const Literal& k : q.conjuncts) clash = clash || (l.atom == k.atom && l.negated != k.negated);
    if (!clash) {
      both.conjuncts.insert(both.conjuncts.end(), e.conjuncts.begin(), e.conjuncts.end());
      const CredalBounds eb = credal_query(p, e, theta);
      const CredalBounds qb = credal_query(p, both, theta);
      CHECK(qb.lower <= eb.lower + 1e-9);
      CHECK(qb.upper <= eb.upper + 1e-9);
    }
  }
  CHECK(consistent > 75);
}
