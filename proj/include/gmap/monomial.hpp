#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace gmap {

inline constexpr std::size_t kMaxVars = 16;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  void set(std::size_t i, std::uint16_t v) {
    deg = deg - e[i] + v;
    e[i] = v;
  }
  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
    r.deg = deg + o.deg;
    return r;
  }
  // Requires o | *this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
    r.deg = deg - o.deg;
    return r;
  }
  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] != 0 && o.e[i] != 0) return false;
    return true;
  }
  bool is_one() const { return deg == 0; }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
      r.deg += r.e[i];
    }
    return r;
  }
  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] < b.e[i] ? a.e[i] : b.e[i];
      r.deg += r.e[i];
    }
    return r;
  }
  static Monomial var(std::size_t i, std::uint16_t power = 1) {
    Monomial r;
    r.e[i] = power;
    r.deg = power;
    return r;
  }
};

class MonomialOrder {
 public:
  enum class Kind { GRevLex, Lex, Block };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::GRevLex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  // Variables [0, split) are eliminated: compared first, each block by grevlex.
  static MonomialOrder block(std::size_t split) { return MonomialOrder(Kind::Block, split); }

  Kind kind() const { return kind_; }
  std::size_t split() const { return split_; }

  // >0 when a is larger.
  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    switch (kind_) {
      case Kind::GRevLex:
        return grevlex_range(a, b, 0, nvars, a.deg, b.deg);
      case Kind::Lex:
        for (std::size_t i = 0; i < nvars; ++i)
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
      case Kind::Block: {
        std::uint32_t da = 0, db = 0;
        for (std::size_t i = 0; i < split_; ++i) {
          da += a.e[i];
          db += b.e[i];
        }
        if (int c = grevlex_range(a, b, 0, split_, da, db)) return c;
        return grevlex_range(a, b, split_, nvars, a.deg - da, b.deg - db);
      }
    }
    return 0;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::GRevLex: return "grevlex";
      case Kind::Lex: return "lex";
      case Kind::Block: return "block(" + std::to_string(split_) + ")";
    }
    return "?";
  }

  bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_ && split_ == o.split_; }

 private:
  MonomialOrder(Kind k, std::size_t s) : kind_(k), split_(s) {}

  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi,
                           std::uint32_t da, std::uint32_t db) {
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }

  Kind kind_;
  std::size_t split_;
};

}  // namespace gmap
