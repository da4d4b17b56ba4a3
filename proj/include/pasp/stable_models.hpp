#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "pasp/grounder.hpp"

namespace pasp {

/// Truth value per atom id of a ground program.
using Model = std::vector<bool>;

/// Stable models in lexicographic order of their bit vectors.
struct ModelSet {
  std::vector<Model> models;

  bool empty() const { return models.empty(); }
  std::size_t size() const { return models.size(); }
};

enum class SolverStrategy {
  Search,      // propagation + branching, each candidate verified by the reduct check
  Exhaustive,  // every subset of the non-probabilistic atoms; for cross-checking
};

/// Least model of the reduct of the program w.r.t. `candidate`, with the
/// probabilistic atoms true in `candidate` acting as facts.
Model reduct_least_model(const GroundProgram& gp, const Model& candidate);

/// True iff `candidate` equals its reduct's least model and violates no
/// constraint.
bool is_stable_model(const GroundProgram& gp, const Model& candidate);

class StableModelSolver {
 public:
  explicit StableModelSolver(const GroundProgram& gp);

  /// Stable models of the program plus the probabilistic atoms selected by
  /// `world` (indexed like prob_atom_ids()); unselected ones are false.
  /// Stops after `limit` models when a limit is given (the returned models are
  /// then the first ones found, still sorted).
  ModelSet solve(const std::vector<bool>& world,
                 std::size_t limit = std::numeric_limits<std::size_t>::max(),
                 SolverStrategy strategy = SolverStrategy::Search) const;

  /// Whether some world has a stable model consistent with the given atom
  /// values. The probabilistic atoms are left open.
  bool exists(std::span<const std::pair<AtomId, bool>> assumptions) const;

  const GroundProgram& program() const { return gp_; }

 private:
  enum Value : unsigned char { U = 0, T = 1, F = 2 };
  using State = std::vector<unsigned char>;

  bool propagate(State& s) const;
  void search(State s, std::vector<Model>& out, std::size_t limit) const;

  const GroundProgram& gp_;
  std::vector<bool> is_prob_;
  std::vector<std::vector<std::size_t>> head_rules_;
};

/// Convenience wrapper for a single world.
ModelSet answer_sets(const GroundProgram& gp, const std::vector<bool>& world,
                     SolverStrategy strategy = SolverStrategy::Search);

}  // namespace pasp
