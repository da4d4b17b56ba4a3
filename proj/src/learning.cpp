#include "pasp/learning.hpp"

#include <algorithm>
#include <cmath>

#include "pasp/error.hpp"
#include "pasp/rng.hpp"
#include "pasp/symbolic.hpp"

namespace pasp {
namespace {

// Relative size of the rounding error of an expanded polynomial evaluation
// below which a value is taken to be exactly zero.
constexpr double kRelativeZero = 1e-11;

double eval_nonneg(const SymPoly& p, const MonomialTable& table) {
  double sum = 0.0, magnitude = 0.0;
  for (const auto& [m, c] : p.terms()) {
    const double t = c * table(m);
    sum += t;
    magnitude += std::abs(t);
  }
  if (sum <= kRelativeZero * magnitude) return 0.0;
  return sum;
}

std::vector<double> masked(const std::vector<double>& w, std::size_t param, bool present) {
  std::vector<double> out(w.size(), 0.0);
  const std::size_t bit = std::size_t{1} << param;
  for (std::size_t s = 0; s < w.size(); ++s)
    if (((s & bit) != 0) == present) out[s] = w[s];
  return out;
}

std::vector<Query> interpretation_queries(std::span<const Interpretation> interps) {
  std::vector<Query> out;
  for (const Interpretation& i : interps) out.push_back(interpretation_query(i));
  return out;
}

}  // namespace

const char* to_string(Method m) { return m == Method::Opt ? "opt" : "em"; }
const char* to_string(OptBackend b) { return b == OptBackend::Gradient ? "gradient" : "dfree"; }

void LearnConfig::validate() const {
  if (!(eps_ll > 0.0)) throw InvalidConfig("eps_ll must be positive");
  if (!(floor_prob > 0.0 && floor_prob < 1e-3)) throw InvalidConfig("floor_prob must lie in (0, 1e-3)");
  if (max_iters < 1) throw InvalidConfig("max_iters must be at least 1");
  if (restarts < 1) throw InvalidConfig("restarts must be at least 1");
}

namespace {

// Rounding in the polynomial sums can overshoot 1 by an ulp or two.
double log_prob(double v, double floor_prob) { return std::log(std::clamp(v, floor_prob, 1.0)); }

}  // namespace

double ll_objective(std::span<const SymPoly> polys, std::span<const double> theta, double floor_prob) {
  double ll = 0.0;
  for (const SymPoly& p : polys) ll += log_prob(poly_eval(p, theta), floor_prob);
  return ll;
}

LogLikelihood::LogLikelihood(std::vector<SymPoly> polys, std::size_t nvars, double floor_prob)
    : polys_(std::move(polys)), nvars_(nvars), floor_(floor_prob) {
  for (const SymPoly& p : polys_)
    if (p.nvars() != nvars_) throw ModelError("equation over the wrong number of parameters");
}

double LogLikelihood::value(std::span<const double> x) const {
  const MonomialTable table(x);
  double ll = 0.0;
  for (const SymPoly& p : polys_) ll += log_prob(poly_eval(p, table), floor_);
  return ll;
}

double LogLikelihood::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  const MonomialTable table(x);
  std::fill(grad.begin(), grad.end(), 0.0);
  double ll = 0.0;
  for (const SymPoly& p : polys_) {
    const double v = poly_eval(p, table);
    if (v > floor_) {
      ll += log_prob(v, floor_);
      poly_grad_accumulate(p, table, 1.0 / v, grad);
    } else {
      ll += std::log(floor_);  // flat below the floor
    }
  }
  return ll;
}

std::vector<SymPoly> interpretation_polys(const Program& program, std::span<const Interpretation> interps,
                                          Bound target, const EngineOptions& options) {
  const auto queries = interpretation_queries(interps);
  std::vector<SymPoly> out;
  for (BoundPolys& b : extract_polys(program, queries, options))
    out.push_back(target == Bound::Lower ? std::move(b.lower) : std::move(b.upper));
  return out;
}

LearnResult maximize_likelihood(std::span<const SymPoly> polys, std::span<const double> initial,
                                const LearnConfig& cfg) {
  cfg.validate();
  const std::size_t n = initial.size();
  if (n == 0) throw NoLearnableFacts();
  const LogLikelihood objective(std::vector<SymPoly>(polys.begin(), polys.end()), n, cfg.floor_prob);

  Rng rng = Rng::stream(cfg.seed, 0x5EED);
  OptimizeResult best;
  bool have_best = false;
  for (int run = 0; run < cfg.restarts; ++run) {
    std::vector<double> x0(initial.begin(), initial.end());
    if (run > 0)
      for (double& v : x0) v = rng.uniform01();
    OptimizeResult r;
    if (cfg.backend == OptBackend::Gradient) {
      r = projected_gradient_ascent(objective, std::move(x0));
    } else {
      CoordinateSearchOptions opt;
      opt.max_sweeps = cfg.max_iters;
      r = coordinate_search(objective, std::move(x0), opt);
    }
    if (!have_best || r.value > best.value) {
      best = std::move(r);
      have_best = true;
    }
  }

  LearnResult out;
  out.params = std::move(best.x);
  for (double& v : out.params) v = std::clamp(v, 0.0, 1.0);
  out.final_ll = ll_objective(polys, out.params, cfg.floor_prob);
  out.iterations = best.iterations;
  out.converged = best.converged;
  out.ll_trace = std::move(best.trace);
  out.ll_trace.back() = out.final_ll;
  return out;
}

LearnResult learn_opt(const Program& program, std::span<const Interpretation> interps, const LearnConfig& cfg) {
  cfg.validate();
  if (program.num_params() == 0) throw NoLearnableFacts();
  const auto polys = interpretation_polys(program, interps, cfg.target, cfg.engine);
  return maximize_likelihood(polys, program.params(), cfg);
}

EMProblem::EMProblem(const Program& program, std::span<const Interpretation> interps, Bound target,
                     const EngineOptions& options)
    : target_(target), nvars_(program.num_params()) {
  const auto queries = interpretation_queries(interps);
  std::vector<Event> events;
  for (const Query& q : queries) {
    validate_query(q);
    events.push_back(Event{{q, false}});
    interp_names_.push_back(to_string(q));
  }
  for (std::size_t j = 0; j < nvars_; ++j)
    param_names_.push_back(to_string(program.prob_facts()[program.fact_of_param(j)].atom));

  WorldSweep sweep(program, options);
  const auto weights = sweep_selection_weights(sweep, events);
  for (const SelectionWeights& w : weights) {
    interp_polys_.push_back(from_selection_weights(target == Bound::Lower ? w.lower : w.upper, nvars_));
    std::vector<Joint> row;
    row.reserve(nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) {
      row.push_back({from_selection_weights(masked(w.lower, j, true), nvars_),
                     from_selection_weights(masked(w.upper, j, true), nvars_),
                     from_selection_weights(masked(w.lower, j, false), nvars_),
                     from_selection_weights(masked(w.upper, j, false), nvars_)});
    }
    joints_.push_back(std::move(row));
  }
}

EMExpectations EMProblem::expectation(std::span<const double> theta, bool skip_undefined) const {
  if (theta.size() != nvars_) throw ModelError("parameter vector has the wrong length");
  const MonomialTable table(theta);
  EMExpectations e{std::vector<double>(nvars_, 0.0), std::vector<double>(nvars_, 0.0)};
  for (std::size_t k = 0; k < joints_.size(); ++k) {
    for (std::size_t j = 0; j < nvars_; ++j) {
      const Joint& jt = joints_[k][j];
      const CredalBounds pos{eval_nonneg(jt.low_pos, table), eval_nonneg(jt.up_pos, table)};
      const CredalBounds neg{eval_nonneg(jt.low_neg, table), eval_nonneg(jt.up_neg, table)};
      try {
        const CredalBounds given_pos = resolve_conditional({pos, neg});
        const CredalBounds given_neg = resolve_conditional({neg, pos});
        e.e1[j] += target_ == Bound::Lower ? given_pos.lower : given_pos.upper;
        e.e0[j] += target_ == Bound::Lower ? given_neg.lower : given_neg.upper;
      } catch (const UndefinedConditional&) {
        if (skip_undefined) continue;
        throw UndefinedConditional("P(" + param_names_[j] + " | " + interp_names_[k] +
                                   ") is undefined: the interpretation has zero upper probability");
      }
    }
  }
  return e;
}

EMExpectations em_expectation(const Program& program, std::span<const Interpretation> interps,
                              std::span<const double> theta, Bound target, bool skip_undefined,
                              const EngineOptions& options) {
  check_theta(program, theta);
  return EMProblem(program, interps, target, options).expectation(theta, skip_undefined);
}

std::vector<double> em_maximization(const EMExpectations& e, std::span<const double> previous) {
  if (e.e0.size() != e.e1.size() || e.e0.size() != previous.size())
    throw ModelError("expectation vectors and parameters differ in length");
  std::vector<double> theta(previous.begin(), previous.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double denom = e.e0[i] + e.e1[i];
    if (denom > 0.0) theta[i] = std::clamp(e.e1[i] / denom, 0.0, 1.0);
  }
  return theta;
}

LearnResult learn_em(const Program& program, std::span<const Interpretation> interps, const LearnConfig& cfg) {
  cfg.validate();
  if (program.num_params() == 0) throw NoLearnableFacts();
  const EMProblem problem(program, interps, cfg.target, cfg.engine);
  const auto& polys = problem.interpretation_polys();

  LearnResult r;
  r.params = program.params();
  double ll = ll_objective(polys, r.params, cfg.floor_prob);
  r.ll_trace.push_back(ll);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const EMExpectations e = problem.expectation(r.params, cfg.skip_undefined);
    std::vector<double> next_params = em_maximization(e, r.params);
    const double next = ll_objective(polys, next_params, cfg.floor_prob);
    r.iterations = it;
    if (next < ll) {
      // credal conditionals need not sum to one, so an update can lose likelihood
      r.converged = true;
      break;
    }
    r.params = std::move(next_params);
    r.ll_trace.push_back(next);
    const double gain = next - ll;
    ll = next;
    if (gain < cfg.eps_ll) {
      r.converged = true;
      break;
    }
  }
  r.final_ll = ll;
  return r;
}

LearnResult learn(const Program& program, std::span<const Interpretation> interps, const LearnConfig& cfg) {
  return cfg.method == Method::EM ? learn_em(program, interps, cfg) : learn_opt(program, interps, cfg);
}

}  // namespace pasp
