#include "pasp/stable_models.hpp"

#include <algorithm>

#include "pasp/error.hpp"

namespace pasp {

Model reduct_least_model(const GroundProgram& gp, const Model& candidate) {
  Model lm(gp.num_atoms(), false);
  for (AtomId id : gp.prob_atom_ids())
    if (candidate[id]) lm[id] = true;

  std::vector<const GroundRule*> reduct;
  for (const GroundRule& r : gp.rules()) {
    if (!r.head) continue;
    const bool blocked = std::any_of(r.negative.begin(), r.negative.end(),
                                     [&](AtomId a) { return candidate[a]; });
    if (!blocked) reduct.push_back(&r);
  }
  // immediate-consequence iteration to the fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GroundRule* r : reduct) {
      if (lm[*r->head]) continue;
      if (std::all_of(r->positive.begin(), r->positive.end(), [&](AtomId a) { return lm[a]; })) {
        lm[*r->head] = true;
        changed = true;
      }
    }
  }
  return lm;
}

bool is_stable_model(const GroundProgram& gp, const Model& candidate) {
  if (candidate.size() != gp.num_atoms()) return false;
  for (const GroundRule& r : gp.rules()) {
    if (r.head) continue;
    const bool body = std::all_of(r.positive.begin(), r.positive.end(), [&](AtomId a) { return candidate[a]; }) &&
                      std::none_of(r.negative.begin(), r.negative.end(), [&](AtomId a) { return candidate[a]; });
    if (body) return false;
  }
  return reduct_least_model(gp, candidate) == candidate;
}

StableModelSolver::StableModelSolver(const GroundProgram& gp)
    : gp_(gp), is_prob_(gp.num_atoms(), false), head_rules_(gp.num_atoms()) {
  for (AtomId id : gp.prob_atom_ids()) is_prob_[id] = true;
  for (std::size_t i = 0; i < gp.rules().size(); ++i)
    if (gp.rules()[i].head) head_rules_[*gp.rules()[i].head].push_back(i);
}

bool StableModelSolver::propagate(State& s) const {
  const auto& rules = gp_.rules();
  const std::size_t n = gp_.num_atoms();
  std::vector<unsigned char> possible(n);

  auto assign = [&](AtomId a, Value v, bool& changed) {
    if (s[a] == U) {
      s[a] = v;
      changed = true;
      return true;
    }
    return s[a] == v;
  };

  bool changed = true;
  while (changed) {
    changed = false;

    // rule-level propagation over the completion
    for (const GroundRule& r : rules) {
      bool body_false = false;
      std::size_t unassigned = 0;
      AtomId last = 0;
      bool last_neg = false;
      for (AtomId a : r.positive) {
        if (s[a] == F) body_false = true;
        else if (s[a] == U) { ++unassigned; last = a; last_neg = false; }
      }
      for (AtomId a : r.negative) {
        if (s[a] == T) body_false = true;
        else if (s[a] == U) { ++unassigned; last = a; last_neg = true; }
      }
      if (body_false) continue;
      const bool head_false = !r.head || s[*r.head] == F;
      if (unassigned == 0) {
        if (head_false) return false;
        if (!assign(*r.head, T, changed)) return false;
      } else if (unassigned == 1 && head_false) {
        if (!assign(last, last_neg ? T : F, changed)) return false;
      }
    }

    // support: a derived atom needs a rule whose body can still hold
    for (AtomId a = 0; a < n; ++a) {
      if (is_prob_[a] || s[a] == F) continue;
      std::size_t supports = 0;
      const GroundRule* only = nullptr;
      for (std::size_t ri : head_rules_[a]) {
        const GroundRule& r = rules[ri];
        const bool body_false =
            std::any_of(r.positive.begin(), r.positive.end(), [&](AtomId b) { return s[b] == F; }) ||
            std::any_of(r.negative.begin(), r.negative.end(), [&](AtomId b) { return s[b] == T; });
        if (!body_false) {
          ++supports;
          only = &r;
        }
      }
      if (supports == 0) {
        if (!assign(a, F, changed)) return false;
      } else if (supports == 1 && s[a] == T) {
        for (AtomId b : only->positive)
          if (!assign(b, T, changed)) return false;
        for (AtomId b : only->negative)
          if (!assign(b, F, changed)) return false;
      }
    }

    // unfounded atoms: not derivable even when every open atom is assumed
    // in the best possible way
    std::fill(possible.begin(), possible.end(), 0);
    for (AtomId a = 0; a < n; ++a)
      if (is_prob_[a] && s[a] != F) possible[a] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const GroundRule& r : rules) {
        if (!r.head || possible[*r.head] || s[*r.head] == F) continue;
        if (std::all_of(r.positive.begin(), r.positive.end(), [&](AtomId b) { return possible[b] != 0; }) &&
            std::none_of(r.negative.begin(), r.negative.end(), [&](AtomId b) { return s[b] == T; })) {
          possible[*r.head] = 1;
          grew = true;
        }
      }
    }
    for (AtomId a = 0; a < n; ++a) {
      if (is_prob_[a] || possible[a]) continue;
      if (!assign(a, F, changed)) return false;
    }
  }
  return true;
}

void StableModelSolver::search(State s, std::vector<Model>& out, std::size_t limit) const {
  if (out.size() >= limit || !propagate(s)) return;
  auto open = std::find(s.begin(), s.end(), U);
  if (open == s.end()) {
    Model m(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) m[i] = s[i] == T;
    if (is_stable_model(gp_, m)) out.push_back(std::move(m));
    return;
  }
  const std::size_t i = static_cast<std::size_t>(open - s.begin());
  State branch = s;
  branch[i] = T;
  search(std::move(branch), out, limit);
  s[i] = F;
  search(std::move(s), out, limit);
}

ModelSet StableModelSolver::solve(const std::vector<bool>& world, std::size_t limit,
                                  SolverStrategy strategy) const {
  const auto& prob = gp_.prob_atom_ids();
  if (world.size() != prob.size()) throw ModelError("world size does not match the probabilistic facts");
  ModelSet result;

  if (strategy == SolverStrategy::Exhaustive) {
    std::vector<AtomId> free;
    for (AtomId a = 0; a < gp_.num_atoms(); ++a)
      if (!is_prob_[a]) free.push_back(a);
    if (free.size() > 30) throw CapExceeded(free.size(), 30);
    Model m(gp_.num_atoms(), false);
    for (std::size_t i = 0; i < prob.size(); ++i) m[prob[i]] = world[i];
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
      for (std::size_t k = 0; k < free.size(); ++k) m[free[k]] = (bits >> k) & 1U;
      if (is_stable_model(gp_, m)) {
        result.models.push_back(m);
        if (result.models.size() >= limit) break;
      }
    }
  } else {
    State s(gp_.num_atoms(), U);
    for (std::size_t i = 0; i < prob.size(); ++i) s[prob[i]] = world[i] ? T : F;
    search(std::move(s), result.models, limit);
  }
  std::sort(result.models.begin(), result.models.end());
  return result;
}

bool StableModelSolver::exists(std::span<const std::pair<AtomId, bool>> assumptions) const {
  State s(gp_.num_atoms(), U);
  for (auto [atom, value] : assumptions) {
    const Value v = value ? T : F;
    if (s[atom] != U && s[atom] != v) return false;
    s[atom] = v;
  }
  std::vector<Model> out;
  search(std::move(s), out, 1);
  return !out.empty();
}

ModelSet answer_sets(const GroundProgram& gp, const std::vector<bool>& world, SolverStrategy strategy) {
  return StableModelSolver(gp).solve(world, std::numeric_limits<std::size_t>::max(), strategy);
}

}  // namespace pasp
