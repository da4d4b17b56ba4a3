#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pasp {

inline constexpr std::size_t kDefaultWorldCap = 24;
inline constexpr double kDefaultInitialProb = 0.5;

struct Term {
  enum class Kind { Symbol, Integer, Variable, Anonymous };

  Kind kind = Kind::Symbol;
  std::string text;

  static Term symbol(std::string s) { return {Kind::Symbol, std::move(s)}; }
  static Term integer(std::string s) { return {Kind::Integer, std::move(s)}; }
  static Term variable(std::string s) { return {Kind::Variable, std::move(s)}; }
  static Term anonymous() { return {Kind::Anonymous, "_"}; }

  bool is_constant() const { return kind == Kind::Symbol || kind == Kind::Integer; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  std::size_t arity() const { return args.size(); }

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
  Atom atom;
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// `head :- body.`; a missing head makes the rule a constraint.
struct Rule {
  std::optional<Atom> head;
  std::vector<Literal> body;

  bool is_constraint() const { return !head.has_value(); }
  bool is_fact() const { return head.has_value() && body.empty(); }

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct ProbFact {
  Atom atom;
  double prob = kDefaultInitialProb;
  bool learnable = false;
  std::optional<std::size_t> param_index;

  friend bool operator==(const ProbFact&, const ProbFact&) = default;
};

/// A probabilistic answer set program P(Π). Immutable once built.
class Program {
 public:
  Program() = default;

  /// Assigns parameter indices to learnable facts in declaration order and
  /// validates the program invariants. Throws ModelError on violation.
  Program(std::vector<Rule> rules, std::vector<ProbFact> prob_facts);

  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<ProbFact>& prob_facts() const { return prob_facts_; }

  /// Initial values of the learnable parameters, indexed by param_index.
  const std::vector<double>& params() const { return params_; }
  std::size_t num_params() const { return params_.size(); }

  /// Position in prob_facts() of the learnable fact with the given index.
  std::size_t fact_of_param(std::size_t param) const { return param_facts_.at(param); }

  /// Same program with the given parameter values as the new initial values.
  Program with_params(std::span<const double> theta) const;

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<Rule> rules_;
  std::vector<ProbFact> prob_facts_;
  std::vector<double> params_;
  std::vector<std::size_t> param_facts_;
};

/// A total choice over the probabilistic facts, in declaration order.
struct World {
  std::uint64_t id = 0;
  std::vector<bool> selection;

  /// Binary counting: the first declared fact is the most significant bit.
  static World from_id(std::uint64_t id, std::size_t num_facts);

  bool includes(std::size_t fact) const { return selection[fact]; }

  friend bool operator==(const World&, const World&) = default;
};

struct Interpretation {
  std::set<Atom> positives;
  std::set<Atom> negatives;
};

/// Conjunction of ground literals.
struct Query {
  std::vector<Literal> conjuncts;

  friend bool operator==(const Query&, const Query&) = default;
};

/// Checks the Query invariants (nonempty, ground, no complementary pair).
/// Throws ModelError.
void validate_query(const Query& q);

/// Number of worlds 2^n; throws CapExceeded when n exceeds the cap.
std::uint64_t world_count(const Program& program, std::size_t world_cap = kDefaultWorldCap);

std::vector<World> enumerate_worlds(const Program& program,
                                    std::size_t world_cap = kDefaultWorldCap);

/// Product of p (included) and 1-p (excluded) over all probabilistic facts;
/// learnable facts take their value from theta.
double world_probability(const Program& program, const World& w, std::span<const double> theta);

/// q_I: the I+ atoms, then the negated I- atoms, each group sorted.
Query interpretation_query(const Interpretation& interp);

/// Throws ModelError if theta has the wrong length or leaves [0,1].
void check_theta(const Program& program, std::span<const double> theta);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
std::string to_string(const Query& q);
std::string to_string(const Interpretation& i);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Source text in the `.pasp` grammar; parse_program(to_string(p)) == p.
std::string to_string(const Program& p);

}  // namespace pasp
