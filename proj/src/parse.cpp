#include "gmap/parse.hpp"

#include <cctype>

namespace gmap {

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else {
        ++pos.col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      out.push_back({Token::Kind::Ident, text.substr(i, j - i), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Int, text.substr(i, j - i), start});
      advance(j - i);
      continue;
    }
    static const std::string syms = "+-*/^()[],;=";
    if (syms.find(c) != std::string::npos) {
      out.push_back({Token::Kind::Sym, std::string(1, c), start});
      advance(1);
      continue;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::End, "", pos});
  return out;
}

std::string Value::to_string() const {
  if (is_scalar()) return scalar().to_string();
  if (is_list()) {
    std::string s = "[";
    for (std::size_t i = 0; i < list().size(); ++i) s += (i ? ", " : "") + list()[i].to_string();
    return s + "]";
  }
  std::string s = call().name + "(";
  for (std::size_t i = 0; i < call().args.size(); ++i) s += (i ? ", " : "") + call().args[i].to_string();
  return s + ")";
}

bool ExprParser::accept(const std::string& sym) {
  if (peek().kind == Token::Kind::Sym && peek().text == sym) {
    ++pos_;
    return true;
  }
  return false;
}

void ExprParser::expect(const std::string& sym) {
  if (!accept(sym)) {
    const Token& t = peek();
    throw ParseError(t.pos, "expected '" + sym + "' but found " + (t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'"));
  }
}

RatFunc ExprParser::as_scalar(const Value& v) const {
  if (!v.is_scalar()) throw ParseError(v.pos, "expected a scalar expression, found " + v.to_string());
  return v.scalar();
}

Value ExprParser::parse_value() { return parse_sum(); }

Value ExprParser::parse_sum() {
  Value lhs = parse_product();
  while (true) {
    if (accept("+")) {
      Value rhs = parse_product();
      lhs = Value{as_scalar(lhs) + as_scalar(rhs), lhs.pos};
    } else if (accept("-")) {
      Value rhs = parse_product();
      lhs = Value{as_scalar(lhs) - as_scalar(rhs), lhs.pos};
    } else {
      return lhs;
    }
  }
}

Value ExprParser::parse_product() {
  Value lhs = parse_unary();
  while (true) {
    SourcePos p = peek().pos;
    if (accept("*")) {
      Value rhs = parse_unary();
      lhs = Value{as_scalar(lhs) * as_scalar(rhs), lhs.pos};
    } else if (accept("/")) {
      Value rhs = parse_unary();
      RatFunc d = as_scalar(rhs);
      if (d.is_zero()) throw ParseError(p, "zero denominator", ErrorCode::ZeroDenominator);
      lhs = Value{as_scalar(lhs) / d, lhs.pos};
    } else {
      return lhs;
    }
  }
}

Value ExprParser::parse_unary() {
  SourcePos p = peek().pos;
  if (accept("-")) return Value{-as_scalar(parse_unary()), p};
  if (accept("+")) return Value{as_scalar(parse_unary()), p};
  return parse_power();
}

Value ExprParser::parse_power() {
  Value base = parse_atom();
  if (accept("^")) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Int) throw ParseError(t.pos, "exponent must be a nonnegative integer literal");
    ++pos_;
    if (t.text.size() > 5 || std::stoul(t.text) > 10000) throw ParseError(t.pos, "exponent too large");
    return Value{as_scalar(base).pow(static_cast<long long>(std::stoul(t.text))), base.pos};
  }
  return base;
}

Value ExprParser::parse_atom() {
  const Token& t = peek();
  switch (t.kind) {
    case Token::Kind::Int: {
      ++pos_;
      const unsigned p = ring_->F().characteristic();
      long long r = 0;
      for (char c : t.text) r = (r * 10 + (c - '0')) % p;
      return Value{RatFunc::from_int(ring_, r), t.pos};
    }
    case Token::Kind::Ident: {
      ++pos_;
      if (auto idx = ring_->index_of(t.text)) return Value{RatFunc::variable(ring_, *idx), t.pos};
      if (bindings_) {
        auto it = bindings_->find(t.text);
        if (it != bindings_->end()) {
          Value v = it->second;
          v.pos = t.pos;
          return v;
        }
      }
      if (peek().kind == Token::Kind::Sym && peek().text == "(") {
        ++pos_;
        Call call{t.text, {}};
        if (!accept(")")) {
          do {
            call.args.push_back(parse_value());
          } while (accept(","));
          expect(")");
        }
        return Value{call, t.pos};
      }
      if (t.text == "alpha") {
        if (ring_->F().degree() == 1)
          throw ParseError(t.pos, "literal 'alpha' needs a field extension (ext e with e > 1)");
        return Value{RatFunc::constant(ring_, ring_->F().generator()), t.pos};
      }
      throw ParseError(t.pos, "undeclared variable '" + t.text + "'");
    }
    case Token::Kind::Sym: {
      if (t.text == "(") {
        ++pos_;
        Value v = parse_value();
        expect(")");
        v.pos = t.pos;
        return v;
      }
      if (t.text == "[") {
        ++pos_;
        ValueList items;
        if (!accept("]")) {
          do {
            items.push_back(parse_value());
          } while (accept(","));
          expect("]");
        }
        return Value{items, t.pos};
      }
      throw ParseError(t.pos, "unexpected '" + t.text + "'");
    }
    case Token::Kind::End:
      throw ParseError(t.pos, "unexpected end of input");
  }
  throw ParseError(t.pos, "unexpected token");
}

namespace {

Value parse_whole(const RingPtr& ring, const std::string& text) {
  auto toks = tokenize(text);
  std::size_t pos = 0;
  ExprParser p(toks, pos, ring, nullptr);
  Value v = p.parse_value();
  if (toks[pos].kind != Token::Kind::End) throw ParseError(toks[pos].pos, "trailing input '" + toks[pos].text + "'");
  return v;
}

}  // namespace

RatFunc parse_ratfunc(const RingPtr& ring, const std::string& text) {
  Value v = parse_whole(ring, text);
  if (!v.is_scalar()) throw ParseError(v.pos, "expected a scalar expression");
  return v.scalar();
}

std::vector<RatFunc> parse_vector(const RingPtr& ring, const std::string& text) {
  Value v = parse_whole(ring, text);
  if (!v.is_list()) throw ParseError(v.pos, "expected a bracketed list");
  std::vector<RatFunc> out;
  for (const auto& x : v.list()) {
    if (!x.is_scalar()) throw ParseError(x.pos, "expected a scalar entry");
    out.push_back(x.scalar());
  }
  return out;
}

std::vector<std::vector<RatFunc>> parse_matrix(const RingPtr& ring, const std::string& text) {
  Value v = parse_whole(ring, text);
  if (!v.is_list()) throw ParseError(v.pos, "expected a list of rows");
  std::vector<std::vector<RatFunc>> out;
  for (const auto& row : v.list()) {
    if (!row.is_list()) throw ParseError(row.pos, "expected a bracketed row");
    std::vector<RatFunc> r;
    for (const auto& x : row.list()) {
      if (!x.is_scalar()) throw ParseError(x.pos, "expected a scalar entry");
      r.push_back(x.scalar());
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace gmap
