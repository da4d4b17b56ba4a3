#include "pasp/datasets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pasp/error.hpp"
#include "pasp/grounder.hpp"
#include "pasp/parser.hpp"
#include "pasp/rng.hpp"
#include "pasp/stable_models.hpp"

namespace pasp {
namespace {

constexpr int kMaxDrawAttempts = 100;
constexpr std::uint64_t kStructureStream = 1;
constexpr std::uint64_t kInterpretationStream = 2;

const char* const kPeople[] = {"john", "mary", "bob",   "alice", "carl", "dana",
                               "eve",  "frank", "grace", "hank",  "iris", "jack"};
// Options drawn from kSafe never clash with each other, so every world keeps
// at least one answer set.
const char* const kSafe[] = {"spaghetti", "beans", "rice", "bread", "milk", "pasta"};
const char* const kRisky[] = {"steak", "fish", "chicken", "wine", "cheese", "eggs"};

std::string learnable(double p0, const std::string& atom) {
  return "learnable(" + format_double(p0) + ")::" + atom + ".\n";
}

std::string coloring_text(const DatasetSpec& spec) {
  std::ostringstream os;
  for (int i = 1; i <= spec.size; ++i)
    for (int j = i + 1; j <= spec.size; ++j)
      os << learnable(spec.init_prob, "edge(" + std::to_string(i) + "," + std::to_string(j) + ")");
  for (int i = 1; i <= spec.size; ++i) os << "node(" << i << ").\n";
  os << "red(X) :- node(X), not green(X), not blue(X).\n"
        "green(X) :- node(X), not red(X), not blue(X).\n"
        "blue(X) :- node(X), not red(X), not green(X).\n"
        "e(X,Y) :- edge(X,Y).\n"
        "e(Y,X) :- edge(Y,X).\n"
        "c0 :- e(X,Y), red(X), red(Y).\n"
        "c1 :- e(X,Y), green(X), green(Y).\n"
        "c2 :- e(X,Y), blue(X), blue(Y).\n"
        "valid :- not c0, not c1, not c2.\n";
  return os.str();
}

std::string path_text(const DatasetSpec& spec, Rng& rng) {
  const int m = spec.size;
  int k = std::max(3, m / 2 + 1);
  while (k * (k - 1) / 2 < m) ++k;
  std::vector<std::pair<int, int>> edges;
  // random spanning tree, edges oriented from the lower to the higher node
  for (int v = 2; v <= k; ++v) edges.emplace_back(static_cast<int>(rng.between(1, v - 1)), v);
  std::vector<std::pair<int, int>> rest;
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      if (std::find(edges.begin(), edges.end(), std::pair{a, b}) == edges.end()) rest.emplace_back(a, b);
  while (static_cast<int>(edges.size()) < m) {
    const std::size_t pick = rng.below(rest.size());
    edges.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::sort(edges.begin(), edges.end());
  std::ostringstream os;
  for (auto [a, b] : edges)
    os << learnable(spec.init_prob, "edge(" + std::to_string(a) + "," + std::to_string(b) + ")");
  os << "path(X,Y) :- connected(X,Z), path(Z,Y).\n"
        "path(X,Y) :- connected(X,Y).\n"
        "connected(X,Y) :- edge(X,Y), not nconnected(X,Y).\n"
        "nconnected(X,Y) :- edge(X,Y), not connected(X,Y).\n";
  return os.str();
}

std::string shop_text(const DatasetSpec& spec, Rng& rng) {
  std::vector<std::string> all(std::begin(kSafe), std::end(kSafe));
  all.insert(all.end(), std::begin(kRisky), std::end(kRisky));
  std::ostringstream os;
  std::set<std::string> used;
  std::ostringstream rules;
  for (int i = 0; i < spec.size; ++i) {
    const std::string person = kPeople[i];
    os << learnable(spec.init_prob, "shops(" + person + ")");
    const std::string x = kSafe[rng.below(std::size(kSafe))];
    std::string y;
    do {
      y = all[rng.below(all.size())];
    } while (y == x);
    used.insert(x);
    used.insert(y);
    rules << "bought(" << x << "," << person << ") :- shops(" << person << "), not bought(" << y << ","
          << person << ").\n";
    rules << "bought(" << y << "," << person << ") :- shops(" << person << "), not bought(" << x << ","
          << person << ").\n";
  }
  os << rules.str();
  for (const std::string& p : all)
    if (used.count(p)) os << "bought(" << p << ") :- bought(" << p << ",_).\n";
  std::set<std::pair<std::string, std::string>> clashes{{"spaghetti", "steak"}};
  const int extra = (spec.size + 3) / 4;
  for (int c = 0; c < extra; ++c)
    clashes.emplace(kSafe[rng.below(std::size(kSafe))], kRisky[rng.below(std::size(kRisky))]);
  for (const auto& [a, b] : clashes) os << ":- bought(" << a << "), bought(" << b << ").\n";
  return os.str();
}

std::string smoke_text(const DatasetSpec& spec, Rng& rng) {
  const int n = spec.size;
  std::ostringstream os;
  for (int i = 1; i <= n; ++i)
    os << "0.1::asthma_f(" << i << ").\n0.4::asthma_fact(" << i << ").\n0.3::stress(" << i << ").\n";
  os << "0.2::predisposition.\n";
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(order[i], order[i + 1]);
  while (true) {
    const int a = static_cast<int>(rng.between(1, n)), b = static_cast<int>(rng.between(1, n));
    if (a != b && std::find(edges.begin(), edges.end(), std::pair{a, b}) == edges.end()) {
      edges.emplace_back(a, b);
      break;
    }
  }
  for (auto [a, b] : edges)
    os << learnable(spec.init_prob, "influences(" + std::to_string(a) + "," + std::to_string(b) + ")");
  os << "smokes(X) :- stress(X).\n"
        "smokes(X) :- influences(Y,X), smokes(Y).\n"
        "asthma_rule(X) :- smokes(X), asthma_fact(X).\n"
        "asthma(X) :- asthma_f(X).\n"
        "asthma(X) :- asthma_rule(X).\n"
        "ill(X) :- smokes(X), asthma(X), not n_ill(X).\n"
        "n_ill(X) :- smokes(X), asthma(X), predisposition, not ill(X).\n";
  return os.str();
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::Coloring: return "coloring";
    case Family::Path: return "path";
    case Family::Shop: return "shop";
    case Family::Smoke: return "smoke";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::Coloring, Family::Path, Family::Shop, Family::Smoke})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

std::pair<int, int> size_bounds(Family f) {
  switch (f) {
    case Family::Coloring: return {3, 6};
    case Family::Path: return {5, 20};
    case Family::Shop: return {2, 12};
    case Family::Smoke: return {2, 6};
  }
  return {0, 0};
}

std::pair<int, int> interpretation_length_bounds(Family f) {
  switch (f) {
    case Family::Coloring: return {3, 4};
    case Family::Path: return {1, 3};
    case Family::Shop: return {1, 10};
    case Family::Smoke: return {1, 3};
  }
  return {0, 0};
}

std::vector<std::string> observable_predicates(Family f) {
  switch (f) {
    case Family::Coloring: return {"red/1", "green/1", "blue/1", "valid/0"};
    case Family::Path: return {"path/2"};
    case Family::Shop: return {"bought/1"};
    case Family::Smoke: return {"ill/1"};
  }
  return {};
}

void DatasetSpec::validate() const {
  const auto [lo, hi] = size_bounds(family);
  if (size < lo || size > hi)
    throw SpecOutOfRange(std::string(to_string(family)) + " size must lie in [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "], got " + std::to_string(size));
  if (num_interpretations < 1) throw SpecOutOfRange("at least one interpretation is required");
  if (!(init_prob >= 0.0 && init_prob <= 1.0)) throw SpecOutOfRange("initial probability outside [0,1]");
}

Dataset generate(const DatasetSpec& spec) {
  spec.validate();
  Rng structure = Rng::stream(spec.seed, kStructureStream);
  std::string text;
  switch (spec.family) {
    case Family::Coloring: text = coloring_text(spec); break;
    case Family::Path: text = path_text(spec, structure); break;
    case Family::Shop: text = shop_text(spec, structure); break;
    case Family::Smoke: text = smoke_text(spec, structure); break;
  }
  Dataset ds{parse_program(text), {}};

  const GroundProgram gp = ground(ds.program);
  const StableModelSolver solver(gp);
  const auto observable = observable_predicates(spec.family);
  std::vector<AtomId> universe;
  for (AtomId a = 0; a < gp.num_atoms(); ++a) {
    const Atom& atom = gp.atoms()[a];
    const std::string key = atom.predicate + "/" + std::to_string(atom.arity());
    if (std::find(observable.begin(), observable.end(), key) != observable.end()) universe.push_back(a);
  }
  if (universe.empty()) throw SpecOutOfRange("instance has no observable atoms");

  const auto [min_len, max_len] = interpretation_length_bounds(spec.family);
  const std::size_t hi = std::min<std::size_t>(max_len, universe.size());
  const std::size_t lo = std::min<std::size_t>(min_len, hi);
  Rng draws = Rng::stream(spec.seed, kInterpretationStream);
  for (int k = 0; k < spec.num_interpretations; ++k) {
    Interpretation interp;
    for (int attempt = 0; attempt < kMaxDrawAttempts; ++attempt) {
      const std::size_t len = draws.between(lo, hi);
      std::vector<AtomId> pool = universe;
      std::vector<std::pair<AtomId, bool>> assumptions;
      interp = Interpretation{};
      for (std::size_t i = 0; i < len; ++i) {
        std::swap(pool[i], pool[i + draws.below(pool.size() - i)]);
        const bool positive = !draws.coin();
        assumptions.emplace_back(pool[i], positive);
        (positive ? interp.positives : interp.negatives).insert(gp.atoms()[pool[i]]);
      }
      if (solver.exists(assumptions)) break;
    }
    ds.interpretations.push_back(std::move(interp));
  }
  return ds;
}

std::string interpretations_text(const std::vector<Interpretation>& interps) {
  std::string out;
  for (const Interpretation& i : interps) out += to_string(i) + '\n';
  return out;
}

}  // namespace pasp
