#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gmap {

// F_q with q = p^e.  Elements are encoded as integers 0..q-1 whose base-p digits
// are the coefficients (low to high) of a polynomial in the generator alpha, the
// class of x modulo the canonical modulus.
class GaloisField {
 public:
  using Elem = std::uint32_t;

  // Canonical instance for (p, e); the modulus is the first primitive monic
  // polynomial of degree e in the enumeration order of its coefficient digits.
  static std::shared_ptr<const GaloisField> get(unsigned p, unsigned e = 1);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  Elem order() const { return q_; }
  // Low-to-high coefficients, monic, length e + 1.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem from_int(long long v) const;

  Elem frobenius(Elem a) const { return pow(a, p_); }
  Elem inv_frobenius(Elem a) const { return pow(a, q_ / p_); }
  // alpha itself; for e = 1 this is the primitive root behind the tables.
  Elem generator() const { return alpha_; }

  std::vector<unsigned> digits(Elem a) const;
  Elem from_digits(const std::vector<unsigned>& d) const;

  // Canonical text: residues for e = 1, polynomials in `alpha` otherwise.
  std::string format(Elem a) const;
  // True when format(a) is a single token (no '+' needing parentheses).
  bool is_atomic(Elem a) const;

  GaloisField(unsigned p, unsigned e);

 private:
  unsigned p_;
  unsigned e_;
  Elem q_;
  Elem alpha_ = 1;
  std::vector<unsigned> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

struct FieldSpec {
  unsigned p = 2;
  unsigned e = 1;
  std::vector<unsigned> modulus;

  static FieldSpec of(const GaloisField& f) { return {f.characteristic(), f.degree(), f.modulus()}; }
  bool operator==(const FieldSpec& o) const { return p == o.p && e == o.e; }
};

// Value wrapper for API surfaces; containers store raw Elem plus one FieldPtr.
class FieldElement {
 public:
  FieldElement(FieldPtr f, GaloisField::Elem v) : f_(std::move(f)), v_(v) {}

  const FieldPtr& field() const { return f_; }
  GaloisField::Elem value() const { return v_; }
  std::vector<unsigned> coeffs() const { return f_->digits(v_); }

  FieldElement operator+(const FieldElement& o) const { return {f_, f_->add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {f_, f_->sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {f_, f_->mul(v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { return {f_, f_->div(v_, o.v_)}; }
  FieldElement operator-() const { return {f_, f_->neg(v_)}; }
  FieldElement pow(std::uint64_t k) const { return {f_, f_->pow(v_, k)}; }
  FieldElement inverse() const { return {f_, f_->inv(v_)}; }
  bool operator==(const FieldElement& o) const { return v_ == o.v_; }
  bool is_zero() const { return v_ == 0; }

 private:
  FieldPtr f_;
  GaloisField::Elem v_;
};

// Field homomorphism F_{p^a} -> F_{p^b} for a | b, sending alpha to the first
// root of its modulus found in the target.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr from, FieldPtr to);
  GaloisField::Elem operator()(GaloisField::Elem a) const { return table_.empty() ? a : table_[a]; }
  const FieldPtr& source() const { return from_; }
  const FieldPtr& target() const { return to_; }

 private:
  FieldPtr from_;
  FieldPtr to_;
  std::vector<GaloisField::Elem> table_;  // empty when both fields are equal
};

}  // namespace gmap
