#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmap/poly.hpp"

namespace gmap {

// Element of L = F_q(t_1..t_n) in canonical form: gcd(num, den) = 1 and den
// monic under grevlex, so equality is syntactic.
class RatFunc {
 public:
  explicit RatFunc(const RingPtr& ring) : num_(ring), den_(MultiPoly::constant(ring, 1)) {}
  explicit RatFunc(MultiPoly num);
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc constant(const RingPtr& ring, Elem c) { return RatFunc(MultiPoly::constant(ring, c)); }
  static RatFunc from_int(const RingPtr& ring, long long c) { return RatFunc(MultiPoly::constant_int(ring, c)); }
  static RatFunc variable(const RingPtr& ring, std::size_t i) { return RatFunc(MultiPoly::variable(ring, i)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }
  const GaloisField& F() const { return num_.F(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  Elem constant_value() const { return num_.constant_value(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc inverse() const;
  RatFunc scale(Elem c) const;
  RatFunc pow(long long k) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // nullopt when the denominator vanishes at the point.
  std::optional<Elem> evaluate(const std::vector<Elem>& point) const;
  std::optional<Elem> evaluate(const FieldEmbedding& emb, const std::vector<Elem>& point) const;

  RatFunc remap(const RingPtr& target, const std::vector<std::size_t>& var_map) const;
  RatFunc lift(const RingPtr& target, const FieldEmbedding& emb) const;

  std::string to_string() const;

 private:
  struct Reduced {};
  RatFunc(MultiPoly num, MultiPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  // From coprime parts; only makes the denominator monic.
  static RatFunc from_coprime(MultiPoly num, MultiPoly den);

  MultiPoly num_;
  MultiPoly den_;
};

// Element of Omega_{L/k} in the basis dt_1..dt_n.
struct DiffVector {
  std::vector<RatFunc> coords;

  bool is_zero() const;
  DiffVector operator+(const DiffVector& o) const;
  DiffVector operator-(const DiffVector& o) const;
  DiffVector scaled(const RatFunc& c) const;
  bool operator==(const DiffVector& o) const { return coords == o.coords; }
  std::string to_string() const;
};

RatFunc partial(const RatFunc& g, std::size_t i);
DiffVector differential(const RatFunc& g);
DiffVector zero_differential(const RingPtr& ring);
// h with h^p = g, when g lies in L^p.
std::optional<RatFunc> pth_root(const RatFunc& g);
// Coefficients through inverse Frobenius, exponents unchanged.
RatFunc frobenius_twist(const RatFunc& g);
// g(t_1^p, ..., t_n^p).
RatFunc frobenius_pullback(const RatFunc& g);
// g(images[0], ..., images[n-1]) with the images living in any common ring.
RatFunc substitute(const RatFunc& g, const std::vector<RatFunc>& images);

}  // namespace gmap
