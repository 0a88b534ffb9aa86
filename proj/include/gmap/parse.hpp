#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gmap/error.hpp"
#include "gmap/ratfunc.hpp"

namespace gmap {

struct SourcePos {
  int line = 1;
  int col = 1;
  std::string to_string() const { return std::to_string(line) + ":" + std::to_string(col); }
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& msg, ErrorCode code = ErrorCode::Parse)
      : Error(code, pos.to_string() + ": " + msg), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(const std::string& text);

// Expression values: scalars, bracketed lists, and constructor calls such as
// graph(C, z).
struct Value;
using ValueList = std::vector<Value>;
struct Call {
  std::string name;
  ValueList args;
};
struct Value {
  std::variant<RatFunc, ValueList, Call> v;
  SourcePos pos;

  bool is_scalar() const { return std::holds_alternative<RatFunc>(v); }
  bool is_list() const { return std::holds_alternative<ValueList>(v); }
  bool is_call() const { return std::holds_alternative<Call>(v); }
  const RatFunc& scalar() const { return std::get<RatFunc>(v); }
  const ValueList& list() const { return std::get<ValueList>(v); }
  const Call& call() const { return std::get<Call>(v); }
  std::string to_string() const;
};

// Recursive-descent parser over a token stream.  Identifiers resolve to ring
// variables, then to earlier bindings; `alpha` names the field generator when
// the field is a proper extension.
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t& pos, RingPtr ring, const std::map<std::string, Value>* bindings)
      : toks_(toks), pos_(pos), ring_(std::move(ring)), bindings_(bindings) {}

  Value parse_value();

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(const std::string& sym);
  void expect(const std::string& sym);

  Value parse_sum();
  Value parse_product();
  Value parse_unary();
  Value parse_power();
  Value parse_atom();
  RatFunc as_scalar(const Value& v) const;

  const std::vector<Token>& toks_;
  std::size_t& pos_;
  RingPtr ring_;
  const std::map<std::string, Value>* bindings_;
};

// Parses a single scalar expression over `ring`.
RatFunc parse_ratfunc(const RingPtr& ring, const std::string& text);
// Parses a bracketed list of scalars.
std::vector<RatFunc> parse_vector(const RingPtr& ring, const std::string& text);
std::vector<std::vector<RatFunc>> parse_matrix(const RingPtr& ring, const std::string& text);

}  // namespace gmap
