#include "pasp/program.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "pasp/error.hpp"

namespace pasp {

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
}

Program::Program(std::vector<Rule> rules, std::vector<ProbFact> prob_facts)
    : rules_(std::move(rules)), prob_facts_(std::move(prob_facts)) {
  std::set<Atom> seen;
  for (std::size_t i = 0; i < prob_facts_.size(); ++i) {
    ProbFact& f = prob_facts_[i];
    if (!f.atom.is_ground())
      throw ModelError("probabilistic fact " + to_string(f.atom) + " is not ground");
    if (!(f.prob >= 0.0 && f.prob <= 1.0))
      throw ModelError("probability of " + to_string(f.atom) + " outside [0,1]");
    if (!seen.insert(f.atom).second)
      throw ModelError("probabilistic fact " + to_string(f.atom) + " declared twice");
    if (f.learnable) {
      f.param_index = params_.size();
      params_.push_back(f.prob);
      param_facts_.push_back(i);
    } else {
      f.param_index.reset();
    }
  }
  for (const Rule& r : rules_) {
    if (r.head && seen.count(*r.head))
      throw ModelError("probabilistic fact " + to_string(*r.head) + " used as a rule head");
  }
}

Program Program::with_params(std::span<const double> theta) const {
  check_theta(*this, theta);
  Program p = *this;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    p.params_[j] = theta[j];
    p.prob_facts_[param_facts_[j]].prob = theta[j];
  }
  return p;
}

World World::from_id(std::uint64_t id, std::size_t num_facts) {
  World w;
  w.id = id;
  w.selection.resize(num_facts);
  for (std::size_t i = 0; i < num_facts; ++i)
    w.selection[i] = (id >> (num_facts - 1 - i)) & 1U;
  return w;
}

void validate_query(const Query& q) {
  if (q.conjuncts.empty()) throw ModelError("query must not be empty");
  std::map<Atom, bool> polarity;
  for (const Literal& l : q.conjuncts) {
    if (!l.atom.is_ground()) throw ModelError("query literal " + to_string(l) + " is not ground");
    auto [it, inserted] = polarity.emplace(l.atom, l.negated);
    if (!inserted && it->second != l.negated)
      throw ModelError("query contains both " + to_string(l.atom) + " and its negation");
  }
}

std::uint64_t world_count(const Program& program, std::size_t world_cap) {
  const std::size_t n = program.prob_facts().size();
  if (n > world_cap || n >= 63) throw CapExceeded(n, world_cap);
  return std::uint64_t{1} << n;
}

std::vector<World> enumerate_worlds(const Program& program, std::size_t world_cap) {
  const std::uint64_t count = world_count(program, world_cap);
  std::vector<World> out;
  out.reserve(count);
  for (std::uint64_t id = 0; id < count; ++id)
    out.push_back(World::from_id(id, program.prob_facts().size()));
  return out;
}

void check_theta(const Program& program, std::span<const double> theta) {
  if (theta.size() != program.num_params())
    throw ModelError("parameter vector has length " + std::to_string(theta.size()) +
                     ", expected " + std::to_string(program.num_params()));
  for (double v : theta)
    if (!(v >= 0.0 && v <= 1.0)) throw ModelError("parameter value outside [0,1]");
}

double world_probability(const Program& program, const World& w, std::span<const double> theta) {
  const auto& facts = program.prob_facts();
  if (theta.size() != program.num_params()) throw ModelError("theta has the wrong length");
  if (w.selection.size() != facts.size()) throw ModelError("world selection has the wrong length");
  double p = 1.0;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const double pi = facts[i].param_index ? theta[*facts[i].param_index] : facts[i].prob;
    p *= w.selection[i] ? pi : 1.0 - pi;
  }
  return p;
}

Query interpretation_query(const Interpretation& interp) {
  Query q;
  for (const Atom& a : interp.positives) q.conjuncts.push_back({a, false});
  for (const Atom& a : interp.negatives) q.conjuncts.push_back({a, true});
  return q;
}

std::string to_string(const Term& t) { return t.text; }

std::string to_string(const Atom& a) {
  std::string s = a.predicate;
  if (!a.args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ',';
      s += a.args[i].text;
    }
    s += ')';
  }
  return s;
}

std::string to_string(const Literal& l) {
  return l.negated ? "not " + to_string(l.atom) : to_string(l.atom);
}

std::string to_string(const Rule& r) {
  std::string s;
  if (r.head) s = to_string(*r.head);
  if (!r.body.empty()) {
    s += r.head ? " :- " : ":- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (i) s += ", ";
      s += to_string(r.body[i]);
    }
  }
  return s + '.';
}

std::string to_string(const Query& q) {
  std::string s;
  for (std::size_t i = 0; i < q.conjuncts.size(); ++i) {
    if (i) s += ", ";
    s += to_string(q.conjuncts[i]);
  }
  return s;
}

std::string to_string(const Interpretation& i) { return to_string(interpretation_query(i)) + '.'; }

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  // keep probabilities recognisable as numbers in the grammar ("1" -> "1.0")
  if (s.find_first_of(".eE") == std::string::npos && s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

std::string to_string(const Program& p) {
  std::ostringstream os;
  for (const ProbFact& f : p.prob_facts()) {
    if (f.learnable)
      os << "learnable(" << format_double(f.prob) << ")::" << to_string(f.atom) << ".\n";
    else
      os << format_double(f.prob) << "::" << to_string(f.atom) << ".\n";
  }
  for (const Rule& r : p.rules()) os << to_string(r) << '\n';
  return os.str();
}

}  // namespace pasp
