#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pasp {

/// Set of parameter indices; bit j stands for the variable pi_j.
using Monomial = std::uint64_t;

inline constexpr std::size_t kMaxPolyVars = 64;
/// Coefficients at or below this magnitude are dropped when collecting terms.
inline constexpr double kCoefficientDropTol = 1e-15;

/// Multilinear polynomial over the learnable parameters, stored in the
/// expanded monomial basis. The representation is canonical: every monomial
/// appears once and no zero coefficient is stored.
class SymPoly {
 public:
  SymPoly() = default;
  explicit SymPoly(std::size_t nvars);

  static SymPoly constant(std::size_t nvars, double c);
  static SymPoly variable(std::size_t nvars, std::size_t j);
  /// 1 - pi_j
  static SymPoly complement(std::size_t nvars, std::size_t j);
  /// Collects the given terms; repeated monomials are summed.
  static SymPoly from_terms(std::size_t nvars, std::span<const std::pair<Monomial, double>> terms);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, double>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  double coefficient(Monomial m) const;
  /// Union of the variables that occur.
  Monomial support() const;

  friend bool operator==(const SymPoly&, const SymPoly&) = default;

 private:
  void accumulate(Monomial m, double c);
  void prune();

  std::size_t nvars_ = 0;
  std::map<Monomial, double> terms_;

  friend SymPoly poly_add(const SymPoly&, const SymPoly&);
  friend SymPoly poly_mul(const SymPoly&, const SymPoly&);
  friend SymPoly poly_scale(const SymPoly&, double);
  friend SymPoly from_selection_weights(std::span<const double>, std::size_t);
};

double poly_eval(const SymPoly& p, std::span<const double> theta);
std::vector<double> poly_grad(const SymPoly& p, std::span<const double> theta);

SymPoly poly_add(const SymPoly& a, const SymPoly& b);
SymPoly poly_sub(const SymPoly& a, const SymPoly& b);
/// Throws NonMultilinearProduct if the factors share a variable.
SymPoly poly_mul(const SymPoly& a, const SymPoly& b);
SymPoly poly_scale(const SymPoly& p, double c);

/// Converts per-selection weights c_S (S a subset of the variables, indexed
/// by its mask) into the monomial basis of
///   sum_S c_S * prod_{j in S} pi_j * prod_{j not in S} (1 - pi_j).
SymPoly from_selection_weights(std::span<const double> weights, std::size_t nvars);

/// Sorted rendering, lowest degree first: `0.4*p1 + 0.6*p0*p1`.
std::string to_string(const SymPoly& p);

/// Products of theta over monomials, shared by every polynomial evaluated at
/// the same point. Dense over all subsets when there are few variables.
class MonomialTable {
 public:
  explicit MonomialTable(std::span<const double> theta);

  double operator()(Monomial m) const;
  std::size_t nvars() const { return theta_.size(); }

 private:
  std::vector<double> theta_;
  std::vector<double> dense_;
};

double poly_eval(const SymPoly& p, const MonomialTable& table);

/// grad += scale * gradient of p.
void poly_grad_accumulate(const SymPoly& p, const MonomialTable& table, double scale,
                          std::span<double> grad);

}  // namespace pasp
