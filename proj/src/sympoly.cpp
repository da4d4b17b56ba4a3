#include "pasp/sympoly.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>

#include "pasp/error.hpp"

namespace pasp {
namespace {

constexpr std::size_t kDenseTableVars = 20;

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_nvars(std::size_t nvars) {
  if (nvars > kMaxPolyVars) throw ModelError("polynomials support at most 64 variables");
}

void check_theta_size(const SymPoly& p, std::span<const double> theta) {
  if (theta.size() != p.nvars())
    throw ModelError("evaluation point has " + std::to_string(theta.size()) + " values, polynomial has " +
                     std::to_string(p.nvars()) + " variables");
}

void check_same(const SymPoly& a, const SymPoly& b) {
  if (a.nvars() != b.nvars()) throw ModelError("polynomials over different variable sets");
}

}  // namespace

SymPoly::SymPoly(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

SymPoly SymPoly::constant(std::size_t nvars, double c) {
  SymPoly p(nvars);
  p.accumulate(0, c);
  p.prune();
  return p;
}

SymPoly SymPoly::variable(std::size_t nvars, std::size_t j) {
  if (j >= nvars) throw ModelError("variable index out of range");
  SymPoly p(nvars);
  p.accumulate(Monomial{1} << j, 1.0);
  return p;
}

SymPoly SymPoly::complement(std::size_t nvars, std::size_t j) {
  SymPoly p = variable(nvars, j);
  p.terms_.begin()->second = -1.0;
  p.accumulate(0, 1.0);
  return p;
}

SymPoly SymPoly::from_terms(std::size_t nvars, std::span<const std::pair<Monomial, double>> terms) {
  SymPoly p(nvars);
  const Monomial allowed = nvars == 64 ? ~Monomial{0} : (Monomial{1} << nvars) - 1;
  for (auto [m, c] : terms) {
    if (m & ~allowed) throw ModelError("monomial uses a variable outside the polynomial's range");
    p.accumulate(m, c);
  }
  p.prune();
  return p;
}

double SymPoly::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

Monomial SymPoly::support() const {
  Monomial s = 0;
  for (const auto& [m, c] : terms_) s |= m;
  return s;
}

void SymPoly::accumulate(Monomial m, double c) { terms_[m] += c; }

void SymPoly::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kCoefficientDropTol; });
}

double poly_eval(const SymPoly& p, std::span<const double> theta) {
  check_theta_size(p, theta);
  double sum = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double prod = c;
    for (Monomial rest = m; rest; rest &= rest - 1) prod *= theta[std::countr_zero(rest)];
    sum += prod;
  }
  return sum;
}

std::vector<double> poly_grad(const SymPoly& p, std::span<const double> theta) {
  check_theta_size(p, theta);
  std::vector<double> g(p.nvars(), 0.0);
  for (const auto& [m, c] : p.terms()) {
    for (Monomial rest = m; rest; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      double prod = c;
      for (Monomial other = m & ~(Monomial{1} << j); other; other &= other - 1)
        prod *= theta[std::countr_zero(other)];
      g[j] += prod;
    }
  }
  return g;
}

SymPoly poly_add(const SymPoly& a, const SymPoly& b) {
  check_same(a, b);
  SymPoly out = a;
  for (const auto& [m, c] : b.terms_) out.accumulate(m, c);
  out.prune();
  return out;
}

SymPoly poly_sub(const SymPoly& a, const SymPoly& b) { return poly_add(a, poly_scale(b, -1.0)); }

SymPoly poly_mul(const SymPoly& a, const SymPoly& b) {
  check_same(a, b);
  if (a.support() & b.support())
    throw NonMultilinearProduct("factors share variables; the product would not be multilinear");
  SymPoly out(a.nvars());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.accumulate(ma | mb, ca * cb);
  out.prune();
  return out;
}

SymPoly poly_scale(const SymPoly& p, double c) {
  SymPoly out(p.nvars());
  for (const auto& [m, v] : p.terms_) out.accumulate(m, v * c);
  out.prune();
  return out;
}

SymPoly from_selection_weights(std::span<const double> weights, std::size_t nvars) {
  if (nvars >= 32 || weights.size() != (std::size_t{1} << nvars))
    throw ModelError("selection weights must have 2^nvars entries");
  std::vector<double> a(weights.begin(), weights.end());
  // Moebius inversion over the subset lattice: coef(T) = sum_{S<=T} (-1)^|T\S| c_S
  for (std::size_t j = 0; j < nvars; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t m = 0; m < a.size(); ++m)
      if (m & bit) a[m] -= a[m ^ bit];
  }
  SymPoly p(nvars);
  for (std::size_t m = 0; m < a.size(); ++m)
    if (std::abs(a[m]) > kCoefficientDropTol) p.terms_.emplace(m, a[m]);
  return p;
}

std::string to_string(const SymPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, double>> terms(p.terms().begin(), p.terms().end());
  auto indices = [](Monomial m) {
    std::vector<int> v;
    for (; m; m &= m - 1) v.push_back(std::countr_zero(m));
    return v;
  };
  std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) {
    const int dx = std::popcount(x.first), dy = std::popcount(y.first);
    if (dx != dy) return dx < dy;
    return indices(x.first) < indices(y.first);
  });
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto [m, c] = terms[k];
    if (k == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const double mag = std::abs(c);
    std::string factors;
    for (int j : indices(m)) factors += (factors.empty() ? "p" : "*p") + std::to_string(j);
    if (factors.empty()) {
      out += shortest(mag);
    } else if (mag == 1.0) {
      out += factors;
    } else {
      out += shortest(mag) + "*" + factors;
    }
  }
  return out;
}

MonomialTable::MonomialTable(std::span<const double> theta) : theta_(theta.begin(), theta.end()) {
  if (theta_.size() <= kDenseTableVars) {
    dense_.resize(std::size_t{1} << theta_.size());
    dense_[0] = 1.0;
    for (std::size_t m = 1; m < dense_.size(); ++m)
      dense_[m] = dense_[m & (m - 1)] * theta_[std::countr_zero(m)];
  }
}

double MonomialTable::operator()(Monomial m) const {
  if (!dense_.empty()) return dense_[m];
  double prod = 1.0;
  for (; m; m &= m - 1) prod *= theta_[std::countr_zero(m)];
  return prod;
}

double poly_eval(const SymPoly& p, const MonomialTable& table) {
  if (table.nvars() != p.nvars()) throw ModelError("evaluation table does not match polynomial");
  double sum = 0.0;
  for (const auto& [m, c] : p.terms()) sum += c * table(m);
  return sum;
}

void poly_grad_accumulate(const SymPoly& p, const MonomialTable& table, double scale,
                          std::span<double> grad) {
  if (table.nvars() != p.nvars() || grad.size() != p.nvars())
    throw ModelError("gradient buffer does not match polynomial");
  for (const auto& [m, c] : p.terms()) {
    const double sc = scale * c;
    for (Monomial rest = m; rest; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      grad[j] += sc * table(m & ~(Monomial{1} << j));
    }
  }
}

}  // namespace pasp
