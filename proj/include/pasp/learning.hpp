#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pasp/credal.hpp"
#include "pasp/optimizer.hpp"
#include "pasp/sympoly.hpp"

namespace pasp {

enum class Method { Opt, EM };
enum class OptBackend { Gradient, DerivativeFree };

const char* to_string(Method m);
const char* to_string(OptBackend b);

struct LearnConfig {
  Bound target = Bound::Upper;
  Method method = Method::Opt;
  double eps_ll = 5e-4;       // EM stops when an update gains less LL than this
  int max_iters = 1000;
  double floor_prob = 1e-12;  // log(max(P, floor)) keeps the LL finite
  int restarts = 4;
  std::uint64_t seed = 0;
  OptBackend backend = OptBackend::Gradient;
  bool skip_undefined = false;  // EM: drop undefined conditionals instead of failing
  EngineOptions engine;

  /// Throws InvalidConfig.
  void validate() const;
};

struct LearnResult {
  std::vector<double> params;
  double final_ll = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> ll_trace;
};

/// sum_k log(max(p_k(theta), floor_prob)).
double ll_objective(std::span<const SymPoly> polys, std::span<const double> theta,
                    double floor_prob = LearnConfig{}.floor_prob);

/// The log-likelihood as an optimizer objective with exact gradients.
class LogLikelihood final : public Objective {
 public:
  LogLikelihood(std::vector<SymPoly> polys, std::size_t nvars, double floor_prob);

  std::size_t dim() const override { return nvars_; }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const override;

  const std::vector<SymPoly>& polys() const { return polys_; }

 private:
  std::vector<SymPoly> polys_;
  std::size_t nvars_;
  double floor_;
};

/// One polynomial per interpretation query for the chosen bound.
std::vector<SymPoly> interpretation_polys(const Program& program, std::span<const Interpretation> interps,
                                          Bound target, const EngineOptions& options = {});

/// Maximizes the LL of the given equations over [0,1]^n from `initial`
/// plus cfg.restarts - 1 random starts; returns the best run.
LearnResult maximize_likelihood(std::span<const SymPoly> polys, std::span<const double> initial,
                                const LearnConfig& cfg);

/// Parameter learning by constrained optimization of the LL.
/// Throws NoLearnableFacts, InconsistentWorld.
LearnResult learn_opt(const Program& program, std::span<const Interpretation> interps,
                      const LearnConfig& cfg);

struct EMExpectations {
  std::vector<double> e0;  // expected count of a_i false
  std::vector<double> e1;  // expected count of a_i true
};

/// Joint-bound equations for EM, extracted once and evaluated every
/// iteration: for each interpretation k and learnable fact j the bounds of
/// (a_j, q_Ik) and (not a_j, q_Ik).
class EMProblem {
 public:
  EMProblem(const Program& program, std::span<const Interpretation> interps, Bound target,
            const EngineOptions& options = {});

  std::size_t num_params() const { return nvars_; }
  std::size_t num_interpretations() const { return interp_polys_.size(); }

  /// Target-bound polynomial of each interpretation query.
  const std::vector<SymPoly>& interpretation_polys() const { return interp_polys_; }

  /// Throws UndefinedConditional unless skip_undefined is set, in which case
  /// the offending (fact, interpretation) pair contributes nothing.
  EMExpectations expectation(std::span<const double> theta, bool skip_undefined = false) const;

 private:
  struct Joint {
    SymPoly low_pos, up_pos, low_neg, up_neg;
  };

  Bound target_;
  std::size_t nvars_;
  std::vector<SymPoly> interp_polys_;
  std::vector<std::vector<Joint>> joints_;  // [interpretation][param]
  std::vector<std::string> interp_names_;
  std::vector<std::string> param_names_;
};

EMExpectations em_expectation(const Program& program, std::span<const Interpretation> interps,
                              std::span<const double> theta, Bound target = Bound::Upper,
                              bool skip_undefined = false, const EngineOptions& options = {});

/// theta_i = E1_i / (E0_i + E1_i); keeps previous_i when the denominator is 0.
std::vector<double> em_maximization(const EMExpectations& e, std::span<const double> previous);

/// Expectation Maximization until an update gains less than cfg.eps_ll in LL.
/// An update that lowers the LL is discarded and the previous iterate kept,
/// so ll_trace is non-decreasing and may be shorter than iterations + 1.
LearnResult learn_em(const Program& program, std::span<const Interpretation> interps,
                     const LearnConfig& cfg);

/// Dispatches on cfg.method.
LearnResult learn(const Program& program, std::span<const Interpretation> interps, const LearnConfig& cfg);

}  // namespace pasp
