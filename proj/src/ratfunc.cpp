#include "gmap/ratfunc.hpp"

#include "gmap/error.hpp"

namespace gmap {

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.ring(), 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  if (!same_ring(num_.ring(), den_.ring())) throw Error(ErrorCode::InvalidArgument, "numerator and denominator rings differ");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.ring(), 1);
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_or_throw(num_, g);
      den_ = divide_or_throw(den_, g);
    }
  }
  Elem c = den_.lc();
  if (c != 1) {
    Elem ic = F().inv(c);
    num_ = num_.scale(ic);
    den_ = den_.scale(ic);
  }
}

RatFunc RatFunc::from_coprime(MultiPoly num, MultiPoly den) {
  if (num.is_zero()) return RatFunc(num.ring());
  Elem c = den.lc();
  if (c != 1) {
    Elem ic = num.F().inv(c);
    num = num.scale(ic);
    den = den.scale(ic);
  }
  return RatFunc(std::move(num), std::move(den), Reduced{});
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ + o.num_, den_, Reduced{});
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  if (den_.is_one()) return from_coprime(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return from_coprime(num_ + o.num_ * den_, den_);
  MultiPoly g = gcd(den_, o.den_);
  if (g.is_constant()) return from_coprime(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  MultiPoly b1 = divide_or_throw(den_, g), d1 = divide_or_throw(o.den_, g);
  MultiPoly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return RatFunc(num_.ring());
  MultiPoly h = gcd(n, g);
  MultiPoly den = b1 * o.den_;
  if (!h.is_constant()) {
    n = divide_or_throw(n, h);
    den = divide_or_throw(den, h);
  }
  return from_coprime(std::move(n), std::move(den));
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc(num_.ring());
  if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_, den_, Reduced{});
  MultiPoly a = num_, b = den_, c = o.num_, d = o.den_;
  MultiPoly g1 = gcd(a, d), g2 = gcd(c, b);
  if (!g1.is_constant()) {
    a = divide_or_throw(a, g1);
    d = divide_or_throw(d, g1);
  }
  if (!g2.is_constant()) {
    c = divide_or_throw(c, g2);
    b = divide_or_throw(b, g2);
  }
  return from_coprime(a * c, b * d);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroDenominator, "inverse of zero rational function");
  return from_coprime(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::scale(Elem c) const {
  if (c == 0) return RatFunc(num_.ring());
  return RatFunc(num_.scale(c), den_, Reduced{});
}

RatFunc RatFunc::pow(long long k) const {
  if (k < 0) return inverse().pow(-k);
  return RatFunc(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), Reduced{});
}

std::optional<Elem> RatFunc::evaluate(const std::vector<Elem>& point) const {
  Elem d = den_.evaluate(point);
  if (d == 0) return std::nullopt;
  return F().div(num_.evaluate(point), d);
}

std::optional<Elem> RatFunc::evaluate(const FieldEmbedding& emb, const std::vector<Elem>& point) const {
  Elem d = den_.evaluate(emb, point);
  if (d == 0) return std::nullopt;
  return emb.target()->div(num_.evaluate(emb, point), d);
}

RatFunc RatFunc::remap(const RingPtr& target, const std::vector<std::size_t>& var_map) const {
  return RatFunc(num_.remap(target, var_map), den_.remap(target, var_map), Reduced{});
}

RatFunc RatFunc::lift(const RingPtr& target, const FieldEmbedding& emb) const {
  return RatFunc(num_.lift(target, emb), den_.lift(target, emb), Reduced{});
}

std::string RatFunc::to_string() const {
  std::string n = num_.to_string();
  if (den_.is_one()) return n;
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool atomic_den = den_.size() == 1 && [&] {
    int factors = 0;
    for (std::size_t i = 0; i < ring()->nvars(); ++i) factors += den_.lm().e[i] != 0;
    return factors <= 1;
  }();
  if (!atomic_den) d = "(" + d + ")";
  return n + "/" + d;
}

bool DiffVector::is_zero() const {
  for (const auto& c : coords)
    if (!c.is_zero()) return false;
  return true;
}

DiffVector DiffVector::operator+(const DiffVector& o) const {
  DiffVector r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] = coords[i] + o.coords[i];
  return r;
}

DiffVector DiffVector::operator-(const DiffVector& o) const {
  DiffVector r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] = coords[i] - o.coords[i];
  return r;
}

DiffVector DiffVector::scaled(const RatFunc& c) const {
  DiffVector r = *this;
  for (auto& x : r.coords) x = x * c;
  return r;
}

std::string DiffVector::to_string() const {
  std::string out;
  if (coords.empty()) return "0";
  const auto& ring = coords.front().ring();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string c = coords[i].to_string();
    if (coords[i].num().size() > 1 && coords[i].is_polynomial()) c = "(" + c + ")";
    out += (coords[i].is_one() ? std::string() : c + "*") + "d" + ring->name(i);
  }
  return out.empty() ? "0" : out;
}

RatFunc partial(const RatFunc& g, std::size_t i) {
  if (i >= g.ring()->nvars()) throw Error(ErrorCode::InvalidArgument, "parameter index out of range");
  MultiPoly dn = g.num().partial(i);
  if (g.is_polynomial()) return RatFunc(dn);
  MultiPoly dd = g.den().partial(i);
  if (dd.is_zero()) return RatFunc(dn, g.den());
  return RatFunc(dn * g.den() - g.num() * dd, g.den() * g.den());
}

DiffVector differential(const RatFunc& g) {
  DiffVector d;
  for (std::size_t i = 0; i < g.ring()->nvars(); ++i) d.coords.push_back(partial(g, i));
  return d;
}

DiffVector zero_differential(const RingPtr& ring) {
  DiffVector d;
  d.coords.assign(ring->nvars(), RatFunc(ring));
  return d;
}

namespace {

std::optional<MultiPoly> poly_pth_root(const MultiPoly& a) {
  const auto& F = a.F();
  const unsigned p = F.characteristic();
  TermList out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (t.m.e[i] % p != 0) return std::nullopt;
      m.e[i] = static_cast<std::uint16_t>(t.m.e[i] / p);
    }
    m.deg = t.m.deg / p;
    out.push_back({m, F.inv_frobenius(t.c)});
  }
  return MultiPoly(a.ring(), std::move(out));
}

}  // namespace

std::optional<RatFunc> pth_root(const RatFunc& g) {
  auto n = poly_pth_root(g.num());
  if (!n) return std::nullopt;
  auto d = poly_pth_root(g.den());
  if (!d) return std::nullopt;
  return RatFunc(*n, *d);
}

RatFunc frobenius_twist(const RatFunc& g) {
  const auto& F = g.F();
  auto f = [&F](Elem c) { return F.inv_frobenius(c); };
  return RatFunc(g.num().map_coefficients(f), g.den().map_coefficients(f));
}

RatFunc frobenius_pullback(const RatFunc& g) {
  unsigned p = g.F().characteristic();
  return RatFunc(g.num().scale_exponents(p), g.den().scale_exponents(p));
}

namespace {

RatFunc substitute_polynomial(const MultiPoly& g, const std::vector<RatFunc>& images, const RingPtr& target) {
  const std::size_t n = g.ring()->nvars();
  // All-polynomial images stay in MultiPoly arithmetic.
  bool polynomial = true;
  for (std::size_t i = 0; i < n; ++i) polynomial = polynomial && images[i].is_polynomial();
  std::vector<std::vector<RatFunc>> powers(n);
  auto power = [&](std::size_t i, std::uint16_t k) -> const RatFunc& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(RatFunc::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  if (polynomial) {
    MultiPoly acc(target);
    for (const auto& t : g.terms()) {
      MultiPoly term = MultiPoly::constant(target, t.c);
      for (std::size_t i = 0; i < n; ++i)
        if (t.m.e[i]) term = term * power(i, t.m.e[i]).num();
      acc = acc + term;
    }
    return RatFunc(acc);
  }
  RatFunc acc(target);
  for (const auto& t : g.terms()) {
    RatFunc term = RatFunc::constant(target, t.c);
    for (std::size_t i = 0; i < n; ++i)
      if (t.m.e[i]) term = term * power(i, t.m.e[i]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace

RatFunc substitute(const RatFunc& g, const std::vector<RatFunc>& images) {
  if (images.size() != g.ring()->nvars())
    throw Error(ErrorCode::DimensionMismatch, "substitution needs one image per parameter");
  if (images.empty()) throw Error(ErrorCode::InvalidArgument, "substitution into a ring without parameters");
  const RingPtr& target = images.front().ring();
  if (target->field() != g.ring()->field()) throw Error(ErrorCode::InvalidArgument, "substitution across fields");
  RatFunc n = substitute_polynomial(g.num(), images, target);
  if (g.is_polynomial()) return n;
  return n / substitute_polynomial(g.den(), images, target);
}

}  // namespace gmap
