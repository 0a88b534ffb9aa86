#include "gmap/scenario.hpp"

#include <algorithm>
#include <map>

namespace gmap {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Number of argument tokens each verb takes (min, max).
struct Arity {
  std::size_t lo, hi;
};

const std::map<std::string, Arity>& arities() {
  static const std::map<std::string, Arity> a = {
      {"analyze", {1, 1}},         {"shrink", {1, 1}},          {"graphcheck", {1, 1}},
      {"construct insep", {1, 1}}, {"construct rank0", {1, 1}}, {"construct family", {1, 1}},
      {"join", {2, 2}},            {"pad", {2, 2}},             {"seed-verify", {1, 2}},
      {"selftest", {0, 0}},
  };
  return a;
}

class ScenarioParser {
 public:
  explicit ScenarioParser(const std::string& text) : toks_(tokenize(text)) {}

  Scenario run() {
    Scenario s;
    header(s);
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::Kind::End) throw ParseError(t.pos, "no command");
      if (t.kind == Token::Kind::Ident && peek(1).kind == Token::Kind::Sym && peek(1).text == "=") {
        binding(s);
        continue;
      }
      command(s);
      break;
    }
    accept(";");
    if (peek().kind != Token::Kind::End) throw ParseError(peek().pos, "input after the command: '" + peek().text + "'");
    return s;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool accept(const std::string& sym) {
    if (peek().kind == Token::Kind::Sym && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& sym) {
    if (!accept(sym))
      throw ParseError(peek().pos, "expected '" + sym + "' but found " +
                                       (peek().kind == Token::Kind::End ? "end of input" : "'" + peek().text + "'"));
  }
  void keyword(const std::string& word) {
    if (peek().kind != Token::Kind::Ident || peek().text != word)
      throw ParseError(peek().pos, "expected '" + word + "'");
    ++pos_;
  }
  unsigned integer(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Int || t.text.size() > 7) throw ParseError(t.pos, "expected " + what);
    ++pos_;
    return static_cast<unsigned>(std::stoul(t.text));
  }

  void header(Scenario& s) {
    if (peek().kind == Token::Kind::End) throw ParseError(peek().pos, "no command");
    keyword("char");
    const SourcePos at = peek().pos;
    s.p = integer("a prime characteristic");
    if (!is_prime(s.p)) throw ParseError(at, "characteristic " + std::to_string(s.p) + " is not prime");
    if (peek().kind == Token::Kind::Ident && peek().text == "ext") {
      ++pos_;
      const SourcePos eat = peek().pos;
      s.ext = integer("an extension degree");
      if (s.ext == 0) throw ParseError(eat, "extension degree must be positive");
    }
    expect(";");
    keyword("vars");
    std::vector<std::string> names;
    do {
      const Token& t = peek();
      if (t.kind != Token::Kind::Ident) throw ParseError(t.pos, "expected a variable name");
      if (t.text == "alpha") throw ParseError(t.pos, "'alpha' is reserved for the field generator");
      if (std::find(names.begin(), names.end(), t.text) != names.end())
        throw ParseError(t.pos, "variable '" + t.text + "' declared twice");
      names.push_back(t.text);
      ++pos_;
    } while (accept(","));
    expect(";");
    try {
      s.ring = Ring::make(GaloisField::get(s.p, s.ext), names);
    } catch (const Error& e) {
      throw ParseError(peek().pos, e.what(), e.code());
    }
  }

  void binding(Scenario& s) {
    const Token& name = peek();
    if (s.ring->index_of(name.text)) throw ParseError(name.pos, "'" + name.text + "' is a variable, not a binding name");
    if (name.text == "alpha") throw ParseError(name.pos, "'alpha' is reserved for the field generator");
    pos_ += 2;
    ExprParser ep(toks_, pos_, s.ring, &env_);
    Value v = ep.parse_value();
    expect(";");
    env_.insert_or_assign(name.text, v);
    auto it = std::find_if(s.bindings.begin(), s.bindings.end(), [&](const Binding& b) { return b.name == name.text; });
    if (it != s.bindings.end())
      it->value = v;
    else
      s.bindings.push_back({name.text, v});
  }

  void command(Scenario& s) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) throw ParseError(t.pos, "expected a command");
    s.command.pos = t.pos;
    std::string verb = t.text;
    ++pos_;
    // `seed-verify` arrives as seed - verify.
    if (verb == "seed" && accept("-")) {
      keyword("verify");
      verb = "seed-verify";
    }
    if (verb == "construct") {
      const Token& kind = peek();
      if (kind.kind != Token::Kind::Ident) throw ParseError(kind.pos, "expected insep, rank0 or family after construct");
      verb += " " + kind.text;
      ++pos_;
    }
    auto a = arities().find(verb);
    if (a == arities().end()) throw ParseError(t.pos, "unknown command '" + verb + "'");
    s.command.verb = verb;
    while (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Int) {
      const Token& arg = peek();
      if (arg.kind == Token::Kind::Ident && !env_.count(arg.text))
        throw ParseError(arg.pos, "unknown binding '" + arg.text + "'");
      s.command.args.push_back(arg.text);
      ++pos_;
    }
    if (s.command.args.size() < a->second.lo || s.command.args.size() > a->second.hi)
      throw ParseError(t.pos, "'" + verb + "' takes " + std::to_string(a->second.lo) +
                                  (a->second.hi != a->second.lo ? "-" + std::to_string(a->second.hi) : "") +
                                  " argument(s)");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Value> env_;
};

}  // namespace

const Value& Scenario::lookup(const std::string& name, SourcePos where) const {
  for (const auto& b : bindings)
    if (b.name == name) return b.value;
  throw ParseError(where, "unknown binding '" + name + "'");
}

std::string Scenario::to_string() const {
  std::string out = "char " + std::to_string(p);
  if (ext != 1) out += " ext " + std::to_string(ext);
  out += ";\nvars ";
  for (std::size_t i = 0; i < ring->nvars(); ++i) out += (i ? ", " : "") + ring->name(i);
  out += ";\n";
  for (const auto& b : bindings) out += b.name + " = " + b.value.to_string() + ";\n";
  out += command.verb;
  for (const auto& a : command.args) out += " " + a;
  return out + ";\n";
}

Scenario parse_scenario(const std::string& text) { return ScenarioParser(text).run(); }

const std::vector<std::string>& scenario_verbs() {
  static const std::vector<std::string> v = {"analyze", "shrink",           "graphcheck",      "construct insep",
                                             "construct rank0", "construct family", "join", "pad",
                                             "seed-verify",     "selftest"};
  return v;
}

}  // namespace gmap
