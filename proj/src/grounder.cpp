#include "pasp/grounder.hpp"

#include <set>
#include <unordered_map>

#include "pasp/error.hpp"

namespace pasp {

std::optional<AtomId> GroundProgram::find(const Atom& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AtomId GroundProgram::intern(const Atom& a) {
  auto [it, inserted] = index_.emplace(a, atoms_.size());
  if (inserted) atoms_.push_back(a);
  return it->second;
}

Rule GroundProgram::to_rule(const GroundRule& r) const {
  Rule out;
  if (r.head) out.head = atoms_[*r.head];
  for (AtomId a : r.positive) out.body.push_back({atoms_[a], false});
  for (AtomId a : r.negative) out.body.push_back({atoms_[a], true});
  return out;
}

GroundProgram make_ground_program(std::vector<Atom> atoms, std::vector<GroundRule> rules,
                                  std::vector<AtomId> prob_atom_ids) {
  GroundProgram gp;
  for (const Atom& a : atoms) {
    if (gp.intern(a) != gp.atoms_.size() - 1) throw ModelError("duplicate atom " + to_string(a));
  }
  for (const GroundRule& r : rules) {
    auto check = [&](AtomId id) {
      if (id >= gp.atoms_.size()) throw ModelError("ground rule refers to unknown atom");
    };
    if (r.head) check(*r.head);
    for (AtomId id : r.positive) check(id);
    for (AtomId id : r.negative) check(id);
  }
  gp.rules_ = std::move(rules);
  gp.prob_atom_ids_ = std::move(prob_atom_ids);
  return gp;
}

void check_safety(const Rule& rule) {
  std::set<std::string> bound;
  for (const Literal& l : rule.body)
    if (!l.negated)
      for (const Term& t : l.atom.args)
        if (t.kind == Term::Kind::Variable) bound.insert(t.text);

  auto check_atom = [&](const Atom& a) {
    for (const Term& t : a.args) {
      if (t.kind == Term::Kind::Anonymous) throw UnsafeRule(to_string(rule), "_");
      if (t.kind == Term::Kind::Variable && !bound.count(t.text))
        throw UnsafeRule(to_string(rule), t.text);
    }
  };
  if (rule.head) check_atom(*rule.head);
  for (const Literal& l : rule.body)
    if (l.negated) check_atom(l.atom);
}

class Grounder {
 public:
  explicit Grounder(const Program& program) {
    for (const ProbFact& f : program.prob_facts()) {
      gp_.prob_atom_ids_.push_back(add(f.atom));
      prob_.insert(f.atom);
    }
    int anon = 0;
    for (const Rule& r : program.rules()) {
      check_safety(r);
      Rule renamed = r;
      for (Literal& l : renamed.body)
        for (Term& t : l.atom.args)
          if (t.kind == Term::Kind::Anonymous) t = Term::variable("_#" + std::to_string(anon++));
      if (renamed.head && prob_.count(*renamed.head))
        throw ModelError("probabilistic atom " + to_string(*renamed.head) + " used as a rule head");
      rules_.push_back(std::move(renamed));
    }
  }

  GroundProgram run() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Rule& r : rules_) {
        if (!r.head) continue;
        for_each_match(r, [&](const Subst& s) {
          const Atom h = apply(*r.head, s);
          if (prob_.count(h))
            throw ModelError("rule '" + to_string(r) + "' derives probabilistic atom " + to_string(h));
          if (!gp_.index_.count(h)) {
            add(h);
            changed = true;
          }
        });
      }
    }

    std::set<GroundRule> seen;
    for (const Rule& r : rules_) {
      for_each_match(r, [&](const Subst& s) {
        GroundRule g;
        if (r.head) g.head = *gp_.find(apply(*r.head, s));
        for (const Literal& l : r.body) {
          const Atom a = apply(l.atom, s);
          auto id = gp_.find(a);
          if (!l.negated) {
            g.positive.push_back(*id);
          } else if (id) {
            g.negative.push_back(*id);
          }
        }
        dedupe(g.positive);
        dedupe(g.negative);
        if (seen.insert(g).second) gp_.rules_.push_back(std::move(g));
      });
    }
    return std::move(gp_);
  }

 private:
  using Subst = std::unordered_map<std::string, std::string>;

  static std::string key(const Atom& a) { return a.predicate + "/" + std::to_string(a.arity()); }

  static void dedupe(std::vector<AtomId>& v) {
    std::vector<AtomId> out;
    for (AtomId a : v)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    v = std::move(out);
  }

  AtomId add(const Atom& a) {
    const std::size_t before = gp_.atoms_.size();
    const AtomId id = gp_.intern(a);
    if (gp_.atoms_.size() != before) by_pred_[key(a)].push_back(id);
    return id;
  }

  static Atom apply(const Atom& a, const Subst& s) {
    Atom out = a;
    for (Term& t : out.args) {
      if (t.kind == Term::Kind::Variable) {
        const std::string& v = s.at(t.text);
        const bool numeric = !v.empty() && v.find_first_not_of("0123456789") == std::string::npos;
        t = numeric ? Term::integer(v) : Term::symbol(v);
      }
    }
    return out;
  }

  template <typename F>
  void for_each_match(const Rule& r, F&& f) {
    std::vector<const Atom*> positives;
    for (const Literal& l : r.body)
      if (!l.negated) positives.push_back(&l.atom);
    Subst s;
    join(positives, 0, s, f);
  }

  template <typename F>
  void join(const std::vector<const Atom*>& lits, std::size_t k, Subst& s, F& f) {
    if (k == lits.size()) {
      f(s);
      return;
    }
    const Atom& pattern = *lits[k];
    auto it = by_pred_.find(key(pattern));
    if (it == by_pred_.end()) return;
    // the list can grow while we iterate; index-based access stays valid
    const std::vector<AtomId>& candidates = it->second;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Atom& fact = gp_.atoms_[candidates[c]];
      std::vector<std::string> newly_bound;
      bool ok = true;
      for (std::size_t i = 0; i < pattern.args.size() && ok; ++i) {
        const Term& t = pattern.args[i];
        const std::string& value = fact.args[i].text;
        if (t.kind == Term::Kind::Variable) {
          auto [pos, inserted] = s.emplace(t.text, value);
          if (inserted)
            newly_bound.push_back(t.text);
          else
            ok = pos->second == value;
        } else {
          ok = t.text == value;
        }
      }
      if (ok) join(lits, k + 1, s, f);
      for (const std::string& v : newly_bound) s.erase(v);
    }
  }

  GroundProgram gp_;
  std::set<Atom> prob_;
  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::vector<AtomId>> by_pred_;
};

GroundProgram ground(const Program& program) { return Grounder(program).run(); }

}  // namespace pasp
