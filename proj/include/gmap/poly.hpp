#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gmap/field.hpp"
#include "gmap/monomial.hpp"

namespace gmap {

using Elem = GaloisField::Elem;

class Ring {
 public:
  Ring(FieldPtr field, std::vector<std::string> names);
  static std::shared_ptr<const Ring> make(FieldPtr field, std::vector<std::string> names) {
    return std::make_shared<const Ring>(std::move(field), std::move(names));
  }

  const FieldPtr& field() const { return field_; }
  const GaloisField& F() const { return *field_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool operator==(const Ring& o) const { return field_ == o.field_ && names_ == o.names_; }

 private:
  FieldPtr field_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

struct Term {
  Monomial m;
  Elem c;
};
using TermList = std::vector<Term>;

// Sparse term-list kernels shared by MultiPoly (grevlex) and the Groebner engine
// (any order).  Every list is sorted strictly descending under the given order.
namespace terms {

struct Ctx {
  const GaloisField& F;
  MonomialOrder ord;
  std::size_t n;
  int cmp(const Monomial& a, const Monomial& b) const { return ord.compare(a, b, n); }
};

TermList add(const TermList& a, const TermList& b, const Ctx& ctx);
// a - c*m*b
TermList sub_scaled(const TermList& a, Elem c, const Monomial& m, const TermList& b, const Ctx& ctx);
TermList scaled(const TermList& a, Elem c, const Monomial& m, const GaloisField& F);
TermList mul(const TermList& a, const TermList& b, const Ctx& ctx);
void sort_combine(TermList& t, const Ctx& ctx);

}  // namespace terms

class MultiPoly {
 public:
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
  MultiPoly(RingPtr ring, TermList sorted_terms) : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

  static MultiPoly constant(const RingPtr& ring, Elem c);
  static MultiPoly constant_int(const RingPtr& ring, long long c) { return constant(ring, ring->F().from_int(c)); }
  static MultiPoly variable(const RingPtr& ring, std::size_t i, std::uint16_t power = 1);
  static MultiPoly monomial(const RingPtr& ring, const Monomial& m, Elem c);
  // Sorts and combines arbitrary terms.
  static MultiPoly from_terms(const RingPtr& ring, TermList t);

  const RingPtr& ring() const { return ring_; }
  const GaloisField& F() const { return ring_->F(); }
  const TermList& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c == 1; }
  bool is_monomial() const { return terms_.size() == 1; }
  Elem constant_value() const { return terms_.empty() ? 0 : (terms_.back().m.is_one() ? terms_.back().c : 0); }
  const Monomial& lm() const { return terms_.front().m; }
  Elem lc() const { return terms_.front().c; }

  std::uint32_t total_degree() const;
  std::uint16_t degree_in(std::size_t var) const;
  std::uint16_t min_degree_in(std::size_t var) const;
  std::vector<bool> support() const;
  bool uses_var(std::size_t var) const { return degree_in(var) > 0; }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly scale(Elem c) const;
  MultiPoly mul_term(const Monomial& m, Elem c) const;
  MultiPoly pow(unsigned k) const;
  MultiPoly monic() const;

  MultiPoly partial(std::size_t var) const;
  // Coefficients with respect to `var`: degree -> coefficient free of var.
  std::map<std::uint16_t, MultiPoly> coefficients_in(std::size_t var) const;
  MultiPoly leading_coeff_in(std::size_t var) const;

  // Applies `f` to every coefficient; exponents are transformed by `scale_exp`.
  MultiPoly map_coefficients(const std::function<Elem(Elem)>& f) const;
  MultiPoly scale_exponents(unsigned factor) const;
  // Moves the polynomial into `target`, sending variable i to var_map[i].
  MultiPoly remap(const RingPtr& target, const std::vector<std::size_t>& var_map) const;
  // Same exponents, coefficients pushed through a field embedding, into `target`.
  MultiPoly lift(const RingPtr& target, const FieldEmbedding& emb) const;

  Elem evaluate(const std::vector<Elem>& point) const;
  // Evaluation in an extension field of the coefficient field.
  Elem evaluate(const FieldEmbedding& emb, const std::vector<Elem>& point) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  terms::Ctx ctx() const { return {F(), MonomialOrder::grevlex(), ring_->nvars()}; }
  RingPtr ring_;
  TermList terms_;
};

// Exact quotient a / b, or nullopt if b does not divide a.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
// Throws Inconsistent when the division is not exact.
MultiPoly divide_or_throw(const MultiPoly& a, const MultiPoly& b);

// Monic gcd (zero only when both inputs are zero).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
// Monic gcd of the coefficients of `a` viewed as a polynomial in `var`.
MultiPoly content_in(const MultiPoly& a, std::size_t var);

std::string format_monomial(const Ring& ring, const Monomial& m);

}  // namespace gmap
