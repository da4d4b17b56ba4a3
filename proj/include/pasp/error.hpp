#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pasp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1-based position in a source text.
struct SourceSpan {
  int line = 1;
  int column = 1;
};

enum class ParseErrorKind {
  Syntax,
  DuplicateProbFact,
  ProbOutOfRange,
  HeadIsProbFact,
  NonGroundProbFact,
  NonGroundInterpretation,
  ContradictoryInterpretation,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  SourceSpan span() const { return span_; }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t facts, std::size_t cap);
  std::size_t facts() const { return facts_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t facts_;
  std::size_t cap_;
};

class UnsafeRule : public Error {
 public:
  UnsafeRule(const std::string& rule, const std::string& variable);
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

/// A world of the program has no answer set, so credal bounds are undefined.
class InconsistentWorld : public Error {
 public:
  explicit InconsistentWorld(std::size_t world_id);
  std::size_t world_id() const { return world_id_; }

 private:
  std::size_t world_id_;
};

class UndefinedConditional : public Error {
 public:
  using Error::Error;
};

class NonMultilinearProduct : public Error {
 public:
  using Error::Error;
};

class NoLearnableFacts : public Error {
 public:
  NoLearnableFacts() : Error("program has no learnable facts") {}
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class SpecOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Structural problem in a program that is not tied to source text.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace pasp
