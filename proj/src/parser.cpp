#include "pasp/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>

namespace pasp {
namespace {

enum class Tok { Ident, Variable, Anonymous, Number, ColonColon, ColonDash, LParen, RParen, Comma, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Variable: return "variable";
    case Tok::Anonymous: return "'_'";
    case Tok::Number: return "number";
    case Tok::ColonColon: return "'::'";
    case Tok::ColonDash: return "':-'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text, int first_line = 1) {
  std::vector<Token> out;
  int line = first_line;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const SourceSpan span{line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "_")
        kind = Tok::Anonymous;
      else if (std::isupper(static_cast<unsigned char>(c)) || c == '_')
        kind = Tok::Variable;
      out.push_back({kind, std::move(word), span});
      advance(j - i);
      continue;
    }
    if (c == ':' && i + 1 < text.size() && text[i + 1] == ':') {
      out.push_back({Tok::ColonColon, "::", span});
      advance(2);
      continue;
    }
    if (c == ':' && i + 1 < text.size() && text[i + 1] == '-') {
      out.push_back({Tok::ColonDash, ":-", span});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      default:
        throw ParseError(ParseErrorKind::Syntax, span, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), span});
    advance(1);
  }
  out.push_back({Tok::End, "", SourceSpan{line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok t) const { return peek().kind == t; }

  const Token& expect(Tok t, const char* context) {
    if (!at(t))
      throw ParseError(ParseErrorKind::Syntax, peek().span,
                       std::string("expected ") + describe(t) + " " + context + ", found " +
                           (at(Tok::End) ? describe(Tok::End) : "'" + peek().text + "'"));
    return toks_[pos_++];
  }

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: ++pos_; return Term::symbol(t.text);
      case Tok::Variable: ++pos_; return Term::variable(t.text);
      case Tok::Anonymous: ++pos_; return Term::anonymous();
      case Tok::Number:
        if (t.text.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError(ParseErrorKind::Syntax, t.span, "term constants must be integers: " + t.text);
        ++pos_;
        return Term::integer(t.text);
      default:
        throw ParseError(ParseErrorKind::Syntax, t.span, "expected a term");
    }
  }

  Atom atom() {
    Atom a;
    a.predicate = expect(Tok::Ident, "for a predicate name").text;
    if (at(Tok::LParen)) {
      ++pos_;
      a.args.push_back(term());
      while (at(Tok::Comma)) {
        ++pos_;
        a.args.push_back(term());
      }
      expect(Tok::RParen, "after arguments");
    }
    return a;
  }

  Literal literal() {
    Literal l;
    if (at(Tok::Ident) && peek().text == "not" && peek(1).kind == Tok::Ident) {
      ++pos_;
      l.negated = true;
    }
    l.atom = atom();
    return l;
  }

  std::vector<std::pair<Literal, SourceSpan>> literal_list() {
    std::vector<std::pair<Literal, SourceSpan>> out;
    do {
      if (!out.empty()) ++pos_;
      const SourceSpan span = peek().span;
      out.emplace_back(literal(), span);
    } while (at(Tok::Comma));
    return out;
  }

  std::size_t pos_ = 0;
  std::vector<Token> toks_;
};

double parse_probability(const Token& t) {
  double v = 0.0;
  auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
    throw ParseError(ParseErrorKind::Syntax, t.span, "malformed number " + t.text);
  if (!(v >= 0.0 && v <= 1.0))
    throw ParseError(ParseErrorKind::ProbOutOfRange, t.span, "probability " + t.text + " outside [0,1]");
  return v;
}

// Ground literal list shared by interpretations and queries.
Query ground_conjunction(Parser& p) {
  Query q;
  std::map<Atom, bool> polarity;
  for (auto& [lit, span] : p.literal_list()) {
    if (!lit.atom.is_ground())
      throw ParseError(ParseErrorKind::NonGroundInterpretation, span,
                       "literal " + to_string(lit) + " contains variables");
    auto [it, inserted] = polarity.emplace(lit.atom, lit.negated);
    if (!inserted && it->second != lit.negated)
      throw ParseError(ParseErrorKind::ContradictoryInterpretation, span,
                       "atom " + to_string(lit.atom) + " is both true and false");
    if (inserted) q.conjuncts.push_back(std::move(lit));
  }
  return q;
}

}  // namespace

Program parse_program(std::string_view text) {
  Parser p(lex(text));
  std::vector<Rule> rules;
  std::vector<SourceSpan> head_spans;
  std::vector<ProbFact> facts;
  std::map<Atom, SourceSpan> prob_atoms;

  auto add_fact = [&](ProbFact f, SourceSpan span) {
    if (!f.atom.is_ground())
      throw ParseError(ParseErrorKind::NonGroundProbFact, span,
                       "probabilistic fact " + to_string(f.atom) + " must be ground");
    if (!prob_atoms.emplace(f.atom, span).second)
      throw ParseError(ParseErrorKind::DuplicateProbFact, span,
                       "probabilistic fact " + to_string(f.atom) + " declared twice");
    facts.push_back(std::move(f));
  };

  while (!p.at(Tok::End)) {
    const Token& first = p.peek();
    if (first.kind == Tok::Number) {
      ++p.pos_;
      ProbFact f;
      f.prob = parse_probability(first);
      p.expect(Tok::ColonColon, "after probability");
      const SourceSpan span = p.peek().span;
      f.atom = p.atom();
      p.expect(Tok::Dot, "at end of probabilistic fact");
      add_fact(std::move(f), span);
      continue;
    }
    if (first.kind == Tok::Ident && first.text == "learnable" &&
        (p.peek(1).kind == Tok::ColonColon ||
         (p.peek(1).kind == Tok::LParen && p.peek(2).kind == Tok::Number &&
          p.peek(3).kind == Tok::RParen && p.peek(4).kind == Tok::ColonColon))) {
      ProbFact f;
      f.learnable = true;
      if (p.peek(1).kind == Tok::LParen) {
        f.prob = parse_probability(p.peek(2));
        p.pos_ += 4;
      } else {
        ++p.pos_;
      }
      p.expect(Tok::ColonColon, "after learnable");
      const SourceSpan span = p.peek().span;
      f.atom = p.atom();
      p.expect(Tok::Dot, "at end of learnable fact");
      add_fact(std::move(f), span);
      continue;
    }
    Rule r;
    SourceSpan head_span = first.span;
    if (!p.at(Tok::ColonDash)) r.head = p.atom();
    if (p.at(Tok::ColonColon))
      throw ParseError(ParseErrorKind::Syntax, p.peek().span,
                       "'::' must follow a probability or 'learnable'");
    if (p.at(Tok::ColonDash)) {
      ++p.pos_;
      for (auto& [lit, span] : p.literal_list()) r.body.push_back(std::move(lit));
    }
    p.expect(Tok::Dot, "at end of rule");
    rules.push_back(std::move(r));
    head_spans.push_back(head_span);
  }

  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].head && prob_atoms.count(*rules[i].head))
      throw ParseError(ParseErrorKind::HeadIsProbFact, head_spans[i],
                       "probabilistic atom " + to_string(*rules[i].head) + " used as a rule head");
  }
  return Program(std::move(rules), std::move(facts));
}

std::vector<Interpretation> parse_interpretations(std::string_view text) {
  std::vector<Interpretation> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::vector<Token> toks = lex(text.substr(start, end - start), line_no);
    start = end + 1;
    if (toks.size() == 1) continue;  // blank or comment-only
    Parser p(std::move(toks));
    Query q = ground_conjunction(p);
    p.expect(Tok::Dot, "at end of interpretation");
    p.expect(Tok::End, "after interpretation (one per line)");
    Interpretation interp;
    for (Literal& l : q.conjuncts) (l.negated ? interp.negatives : interp.positives).insert(l.atom);
    out.push_back(std::move(interp));
  }
  return out;
}

Query parse_query(std::string_view text) {
  Parser p(lex(text));
  if (p.at(Tok::End)) throw ParseError(ParseErrorKind::Syntax, p.peek().span, "empty query");
  Query q = ground_conjunction(p);
  if (p.at(Tok::Dot)) ++p.pos_;
  p.expect(Tok::End, "after query");
  return q;
}

}  // namespace pasp
