#include "gmap/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

#include "gmap/error.hpp"

namespace gmap {

Ring::Ring(FieldPtr field, std::vector<std::string> names) : field_(std::move(field)), names_(std::move(names)) {
  if (names_.size() > kMaxVars)
    throw Error(ErrorCode::ResourceLimit, "at most " + std::to_string(kMaxVars) + " variables are supported");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw Error(ErrorCode::InvalidArgument, "duplicate variable name " + names_[i]);
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

namespace terms {

TermList add(const TermList& a, const TermList& b, const Ctx& ctx) {
  TermList out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ctx.cmp(a[i].m, b[j].m);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      Elem s = ctx.F.add(a[i].c, b[j].c);
      if (s != 0) out.push_back({a[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

TermList sub_scaled(const TermList& a, Elem c, const Monomial& m, const TermList& b, const Ctx& ctx) {
  TermList out;
  out.reserve(a.size() + b.size());
  const Elem nc = ctx.F.neg(c);
  std::size_t i = 0, j = 0;
  Monomial bm;
  bool have_b = false;
  auto load_b = [&] {
    if (j < b.size()) {
      bm = b[j].m * m;
      have_b = true;
    } else {
      have_b = false;
    }
  };
  load_b();
  while (i < a.size() && have_b) {
    int cmp = ctx.cmp(a[i].m, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({bm, ctx.F.mul(nc, b[j].c)});
      ++j;
      load_b();
    } else {
      Elem s = ctx.F.add(a[i].c, ctx.F.mul(nc, b[j].c));
      if (s != 0) out.push_back({bm, s});
      ++i;
      ++j;
      load_b();
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  while (have_b) {
    out.push_back({bm, ctx.F.mul(nc, b[j].c)});
    ++j;
    load_b();
  }
  return out;
}

TermList scaled(const TermList& a, Elem c, const Monomial& m, const GaloisField& F) {
  TermList out;
  if (c == 0) return out;
  out.reserve(a.size());
  for (const auto& t : a) out.push_back({t.m * m, F.mul(t.c, c)});
  return out;
}

void sort_combine(TermList& t, const Ctx& ctx) {
  std::sort(t.begin(), t.end(), [&](const Term& x, const Term& y) { return ctx.cmp(x.m, y.m) > 0; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < t.size();) {
    Term acc = t[r++];
    while (r < t.size() && t[r].m == acc.m) acc.c = ctx.F.add(acc.c, t[r++].c);
    if (acc.c != 0) t[w++] = acc;
  }
  t.resize(w);
}

TermList mul(const TermList& a, const TermList& b, const Ctx& ctx) {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1) return scaled(b, a[0].c, a[0].m, ctx.F);
  if (b.size() == 1) return scaled(a, b[0].c, b[0].m, ctx.F);
  TermList out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back({x.m * y.m, ctx.F.mul(x.c, y.c)});
  sort_combine(out, ctx);
  return out;
}

}  // namespace terms

MultiPoly MultiPoly::constant(const RingPtr& ring, Elem c) {
  MultiPoly p(ring);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

MultiPoly MultiPoly::variable(const RingPtr& ring, std::size_t i, std::uint16_t power) {
  if (i >= ring->nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  MultiPoly p(ring);
  p.terms_.push_back({Monomial::var(i, power), 1});
  return p;
}

MultiPoly MultiPoly::monomial(const RingPtr& ring, const Monomial& m, Elem c) {
  MultiPoly p(ring);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(const RingPtr& ring, TermList t) {
  terms::Ctx ctx{ring->F(), MonomialOrder::grevlex(), ring->nvars()};
  terms::sort_combine(t, ctx);
  return MultiPoly(ring, std::move(t));
}

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.deg);
  return d;
}

std::uint16_t MultiPoly::degree_in(std::size_t var) const {
  std::uint16_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.e[var]);
  return d;
}

std::uint16_t MultiPoly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  std::uint16_t d = terms_[0].m.e[var];
  for (const auto& t : terms_) d = std::min(d, t.m.e[var]);
  return d;
}

std::vector<bool> MultiPoly::support() const {
  std::vector<bool> s(ring_->nvars(), false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < s.size(); ++i)
      if (t.m.e[i]) s[i] = true;
  return s;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const { return MultiPoly(ring_, terms::add(terms_, o.terms_, ctx())); }

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  return MultiPoly(ring_, terms::sub_scaled(terms_, 1, Monomial{}, o.terms_, ctx()));
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const { return MultiPoly(ring_, terms::mul(terms_, o.terms_, ctx())); }

MultiPoly MultiPoly::operator-() const { return scale(F().neg(1)); }

MultiPoly MultiPoly::scale(Elem c) const { return MultiPoly(ring_, terms::scaled(terms_, c, Monomial{}, F())); }

MultiPoly MultiPoly::mul_term(const Monomial& m, Elem c) const { return MultiPoly(ring_, terms::scaled(terms_, c, m, F())); }

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(ring_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty() || lc() == 1) return *this;
  return scale(F().inv(lc()));
}

MultiPoly MultiPoly::partial(std::size_t var) const {
  TermList out;
  const unsigned p = F().characteristic();
  for (const auto& t : terms_) {
    std::uint16_t k = t.m.e[var];
    if (k == 0 || k % p == 0) continue;
    Term r = t;
    r.m.set(var, k - 1);
    r.c = F().mul(t.c, F().from_int(k));
    out.push_back(r);
  }
  // Dividing by the variable preserves the term order.
  return MultiPoly(ring_, std::move(out));
}

std::map<std::uint16_t, MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::map<std::uint16_t, MultiPoly> out;
  for (const auto& t : terms_) {
    Term r = t;
    r.m.set(var, 0);
    auto it = out.try_emplace(t.m.e[var], ring_).first;
    it->second.terms_.push_back(r);
  }
  return out;
}

MultiPoly MultiPoly::leading_coeff_in(std::size_t var) const {
  std::uint16_t d = degree_in(var);
  MultiPoly out(ring_);
  for (const auto& t : terms_)
    if (t.m.e[var] == d) {
      Term r = t;
      r.m.set(var, 0);
      out.terms_.push_back(r);
    }
  return out;
}

MultiPoly MultiPoly::map_coefficients(const std::function<Elem(Elem)>& f) const {
  TermList out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Elem c = f(t.c);
    if (c != 0) out.push_back({t.m, c});
  }
  return MultiPoly(ring_, std::move(out));
}

MultiPoly MultiPoly::scale_exponents(unsigned factor) const {
  TermList out = terms_;
  for (auto& t : out) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned v = t.m.e[i] * factor;
      if (v > 0xFFFF) throw Error(ErrorCode::ResourceLimit, "exponent overflow");
      m.e[i] = static_cast<std::uint16_t>(v);
    }
    m.deg = t.m.deg * factor;
    t.m = m;
  }
  return MultiPoly(ring_, std::move(out));
}

MultiPoly MultiPoly::remap(const RingPtr& target, const std::vector<std::size_t>& var_map) const {
  TermList out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (t.m.e[i]) {
        m.e[var_map[i]] = static_cast<std::uint16_t>(m.e[var_map[i]] + t.m.e[i]);
        m.deg += t.m.e[i];
      }
    out.push_back({m, t.c});
  }
  return from_terms(target, std::move(out));
}

MultiPoly MultiPoly::lift(const RingPtr& target, const FieldEmbedding& emb) const {
  TermList out = terms_;
  for (auto& t : out) t.c = emb(t.c);
  return MultiPoly(target, std::move(out));
}

Elem MultiPoly::evaluate(const std::vector<Elem>& point) const {
  const auto& Fq = F();
  Elem acc = 0;
  for (const auto& t : terms_) {
    Elem v = t.c;
    for (std::size_t i = 0; i < ring_->nvars() && v != 0; ++i)
      if (t.m.e[i]) v = Fq.mul(v, Fq.pow(point[i], t.m.e[i]));
    acc = Fq.add(acc, v);
  }
  return acc;
}

Elem MultiPoly::evaluate(const FieldEmbedding& emb, const std::vector<Elem>& point) const {
  const auto& E = *emb.target();
  Elem acc = 0;
  for (const auto& t : terms_) {
    Elem v = emb(t.c);
    for (std::size_t i = 0; i < ring_->nvars() && v != 0; ++i)
      if (t.m.e[i]) v = E.mul(v, E.pow(point[i], t.m.e[i]));
    acc = E.add(acc, v);
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].c != o.terms_[i].c || terms_[i].m != o.terms_[i].m) return false;
  return true;
}

std::string format_monomial(const Ring& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (!m.e[i]) continue;
    if (!out.empty()) out += "*";
    out += ring.name(i);
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.m.is_one()) {
      std::string c = F().format(t.c);
      out += F().is_atomic(t.c) ? c : "(" + c + ")";
      continue;
    }
    if (t.c != 1) {
      std::string c = F().format(t.c);
      out += (F().is_atomic(t.c) ? c : "(" + c + ")") + "*";
    }
    out += format_monomial(*ring_, t.m);
  }
  return out;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
  const auto& F = a.F();
  if (a.is_zero()) return MultiPoly(a.ring());
  if (b.is_constant()) return a.scale(F.inv(b.lc()));
  if (b.is_monomial()) {
    TermList out;
    out.reserve(a.size());
    const Elem ic = F.inv(b.lc());
    for (const auto& t : a.terms()) {
      if (!b.lm().divides(t.m)) return std::nullopt;
      out.push_back({t.m / b.lm(), F.mul(t.c, ic)});
    }
    return MultiPoly(a.ring(), std::move(out));
  }
  terms::Ctx ctx{F, MonomialOrder::grevlex(), a.ring()->nvars()};
  const Elem ilc = F.inv(b.lc());
  const Monomial& blm = b.lm();
  TermList q;
  TermList r = a.terms();
  while (!r.empty()) {
    const Term& lt = r.front();
    if (!blm.divides(lt.m)) return std::nullopt;
    Monomial m = lt.m / blm;
    Elem c = F.mul(lt.c, ilc);
    q.push_back({m, c});
    r = terms::sub_scaled(r, c, m, b.terms(), ctx);
  }
  return MultiPoly(a.ring(), std::move(q));
}

MultiPoly divide_or_throw(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(ErrorCode::Inconsistent, "inexact polynomial division");
  return *q;
}

namespace {

Monomial monomial_content(const MultiPoly& a) {
  Monomial g = a.terms().front().m;
  for (const auto& t : a.terms()) g = Monomial::gcd(g, t.m);
  return g;
}

// Pseudo-remainder of A by B in `var`, scaling A only as needed.
MultiPoly prem(MultiPoly A, const MultiPoly& B, std::size_t var) {
  const auto& F = A.F();
  const std::uint16_t dB = B.degree_in(var);
  const MultiPoly lcB = B.leading_coeff_in(var);
  const bool lc_const = lcB.is_constant();
  const Elem ilc = lc_const ? F.inv(lcB.lc()) : 0;
  while (!A.is_zero()) {
    std::uint16_t dA = A.degree_in(var);
    if (dA < dB) break;
    MultiPoly lcA = A.leading_coeff_in(var);
    Monomial shift = Monomial::var(var, static_cast<std::uint16_t>(dA - dB));
    if (lc_const) {
      A = A - (lcA * B).mul_term(shift, ilc);
    } else {
      A = A * lcB - (lcA * B).mul_term(shift, 1);
    }
  }
  return A;
}

// Evaluation field for the coprimality shortcut: the smallest extension of
// the coefficient field with at least 2^12 elements.
const FieldEmbedding& evaluation_embedding(const FieldPtr& base) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldEmbedding> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(base->characteristic(), base->degree());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  unsigned k = base->degree();
  std::uint64_t q = base->order();
  while (q < 4096 && q * base->order() <= (1u << 20)) {
    k += base->degree();
    q *= base->order();
  }
  return cache.emplace(key, FieldEmbedding(base, GaloisField::get(base->characteristic(), k))).first->second;
}

using Uni = std::vector<GaloisField::Elem>;

void trim(Uni& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

Uni image_in(const MultiPoly& a, std::size_t var, const FieldEmbedding& emb, const std::vector<GaloisField::Elem>& pt) {
  const GaloisField& E = *emb.target();
  Uni out(a.degree_in(var) + 1, 0);
  for (const auto& t : a.terms()) {
    GaloisField::Elem c = emb(t.c);
    for (std::size_t v = 0; v < pt.size() && c; ++v)
      if (v != var && t.m[v]) c = E.mul(c, E.pow(pt[v], t.m[v]));
    out[t.m[var]] = E.add(out[t.m[var]], c);
  }
  trim(out);
  return out;
}

std::size_t uni_gcd_degree(Uni a, Uni b, const GaloisField& E) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const GaloisField::Elem inv = E.inv(b.back());
    while (a.size() >= b.size()) {
      const GaloisField::Elem f = E.mul(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = E.sub(a[i + shift], E.mul(f, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() - 1;
}

// True when deg_var gcd(a, b) = 0, shown by one image in a large extension:
// the gcd's degree in var is bounded by the image gcd's degree whenever the
// leading coefficient of a survives the evaluation.  False means unknown.
bool coprime_in(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  const FieldEmbedding& emb = evaluation_embedding(a.ring()->field());
  const GaloisField& E = *emb.target();
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (a.size() * 131 + b.size()));
  std::vector<GaloisField::Elem> pt(a.ring()->nvars());
  for (auto& x : pt) x = static_cast<GaloisField::Elem>(rng() % E.order());
  Uni ia = image_in(a, var, emb, pt);
  if (ia.size() != static_cast<std::size_t>(a.degree_in(var)) + 1) return false;
  Uni ib = image_in(b, var, emb, pt);
  if (ib.empty()) return false;
  return uni_gcd_degree(std::move(ia), std::move(ib), E) == 0;
}

// P with variable y set to beta.
MultiPoly eval_var(const MultiPoly& P, std::size_t y, GaloisField::Elem beta) {
  const GaloisField& E = P.F();
  TermList out;
  out.reserve(P.size());
  for (const auto& t : P.terms()) {
    Monomial m = t.m;
    GaloisField::Elem c = m[y] ? E.mul(t.c, E.pow(beta, m[y])) : t.c;
    if (!c) continue;
    m.set(y, 0);
    out.push_back({m, c});
  }
  return MultiPoly::from_terms(P.ring(), std::move(out));
}

MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b, std::size_t x) {
  const GaloisField& E = a.F();
  auto to_uni = [&](const MultiPoly& p) {
    Uni u(p.degree_in(x) + 1, 0);
    for (const auto& t : p.terms()) u[t.m[x]] = t.c;
    return u;
  };
  Uni A = to_uni(a), B = to_uni(b);
  trim(A);
  trim(B);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    const GaloisField::Elem inv = E.inv(B.back());
    while (A.size() >= B.size()) {
      const GaloisField::Elem f = E.mul(A.back(), inv);
      const std::size_t shift = A.size() - B.size();
      for (std::size_t i = 0; i < B.size(); ++i) A[i + shift] = E.sub(A[i + shift], E.mul(f, B[i]));
      trim(A);
      if (A.empty()) break;
    }
    std::swap(A, B);
  }
  TermList out;
  for (std::size_t d = 0; d < A.size(); ++d)
    if (A[d]) out.push_back({Monomial::var(x, static_cast<std::uint16_t>(d)), A[d]});
  return MultiPoly::from_terms(a.ring(), std::move(out)).monic();
}

MultiPoly primitive_in(const MultiPoly& a, std::size_t x) {
  MultiPoly c = content_in(a, x);
  return c.is_constant() ? a : divide_or_throw(a, c);
}

// Dense modular gcd (Brown) of A, B, both primitive in x, over a field with
// enough points.  Evaluates one other variable y, recurses, rescales every
// image so its leading x-coefficient is the image of gcd(lc A, lc B), and
// interpolates; the candidate is accepted only when it divides A and B.
std::optional<MultiPoly> brown_gcd(const MultiPoly& A, const MultiPoly& B, std::size_t x) {
  const RingPtr& R = A.ring();
  const GaloisField& E = R->F();
  auto sa = A.support(), sb = B.support();
  std::optional<std::size_t> y;
  for (std::size_t v = 0; v < sa.size(); ++v)
    if (v != x && (sa[v] || sb[v]) && (!y || A.degree_in(v) + B.degree_in(v) > A.degree_in(*y) + B.degree_in(*y)))
      y = v;
  if (!y) return univariate_gcd(A, B, x);

  const MultiPoly lA = A.leading_coeff_in(x), lB = B.leading_coeff_in(x);
  const MultiPoly gam = gcd(lA, lB);
  const unsigned bound = gam.degree_in(*y) + std::min(A.degree_in(*y), B.degree_in(*y));
  std::mt19937_64 rng(0x2545f4914f6cdd1dull ^ (A.size() * 7919 + B.size()));
  std::vector<GaloisField::Elem> used;
  std::optional<MultiPoly> G;
  MultiPoly M = MultiPoly::constant(R, 1);
  unsigned dx = ~0u, points = 0, misses = 0;
  const MultiPoly yvar = MultiPoly::variable(R, *y);
  std::vector<GaloisField::Elem> at(R->nvars(), 0);

  while (misses < 64 + 4 * bound && used.size() + 1 < E.order()) {
    const auto beta = static_cast<GaloisField::Elem>(rng() % E.order());
    if (std::find(used.begin(), used.end(), beta) != used.end()) continue;
    used.push_back(beta);
    if (eval_var(lA, *y, beta).is_zero() || eval_var(lB, *y, beta).is_zero()) {
      ++misses;
      continue;
    }
    MultiPoly gb = primitive_in(gcd(eval_var(A, *y, beta), eval_var(B, *y, beta)), x);
    const unsigned d = gb.degree_in(x);
    if (d == 0) return MultiPoly::constant(R, 1);
    if (d > dx) {
      ++misses;
      continue;
    }
    if (d < dx) {
      dx = d;
      G.reset();
      M = MultiPoly::constant(R, 1);
      points = 0;
    }
    auto scaled = divide_exact(eval_var(gam, *y, beta) * gb, gb.leading_coeff_in(x));
    if (!scaled) {
      ++misses;
      continue;
    }
    bool stable = false;
    if (!G) {
      G = *scaled;
    } else {
      MultiPoly diff = *scaled - eval_var(*G, *y, beta);
      stable = diff.is_zero();
      if (!stable) {
        at[*y] = beta;
        *G += (diff * M).scale(E.inv(M.evaluate(at)));
      }
    }
    M *= yvar - MultiPoly::constant(R, beta);
    ++points;
    if (stable || points > bound) {
      MultiPoly cand = primitive_in(*G, x);
      if (divide_exact(A, cand) && divide_exact(B, cand)) return cand.monic();
      if (points > bound + 8) ++misses;
    }
  }
  return std::nullopt;
}

// gcd of A, B (primitive in x) through brown_gcd over the evaluation field,
// pulled back to the coefficient field.
std::optional<MultiPoly> modular_gcd(const MultiPoly& A, const MultiPoly& B, std::size_t x) {
  const RingPtr& R = A.ring();
  const FieldEmbedding& emb = evaluation_embedding(R->field());
  if (emb.target() == R->field()) return brown_gcd(A, B, x);
  RingPtr RE = Ring::make(emb.target(), R->names());
  auto g = brown_gcd(A.lift(RE, emb), B.lift(RE, emb), x);
  if (!g) return std::nullopt;
  // A monic gcd is unchanged by field extension, so every coefficient is the
  // image of a base-field element.
  std::map<GaloisField::Elem, GaloisField::Elem> back;
  for (GaloisField::Elem c = 0; c < R->F().order(); ++c) back[emb(c)] = c;
  TermList out;
  for (const auto& t : g->terms()) {
    auto it = back.find(t.c);
    if (it == back.end()) return std::nullopt;
    out.push_back({t.m, it->second});
  }
  return MultiPoly(R, std::move(out));
}

MultiPoly primitive_part(const MultiPoly& a, std::size_t var) {
  MultiPoly c = content_in(a, var);
  if (c.is_constant()) return a.monic();
  return divide_or_throw(a, c);
}

}  // namespace

MultiPoly content_in(const MultiPoly& a, std::size_t var) {
  if (a.is_zero()) return a;
  auto coeffs = a.coefficients_in(var);
  MultiPoly g(a.ring());
  // Smallest coefficients first keeps the gcd chain cheap.
  std::vector<const MultiPoly*> order;
  for (const auto& [d, c] : coeffs) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const MultiPoly* x, const MultiPoly* y) { return x->size() < y->size(); });
  for (const MultiPoly* c : order) {
    g = gcd(g, *c);
    if (g.is_constant()) return MultiPoly::constant(a.ring(), 1);
  }
  return g;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(ring, 1);
  if (a == b) return a.monic();

  Monomial ma = monomial_content(a), mb = monomial_content(b);
  Monomial mg = Monomial::gcd(ma, mb);
  if (a.is_monomial() || b.is_monomial()) return MultiPoly::monomial(ring, mg, 1);
  if (!ma.is_one() || !mb.is_one()) {
    MultiPoly ra = ma.is_one() ? a : *divide_exact(a, MultiPoly::monomial(ring, ma, 1));
    MultiPoly rb = mb.is_one() ? b : *divide_exact(b, MultiPoly::monomial(ring, mb, 1));
    return gcd(ra, rb).mul_term(mg, 1);
  }

  auto sa = a.support(), sb = b.support();
  for (std::size_t v = 0; v < sa.size(); ++v) {
    if (sa[v] && !sb[v]) return gcd(content_in(a, v), b);
    if (sb[v] && !sa[v]) return gcd(a, content_in(b, v));
  }

  std::size_t var = 0;
  unsigned best = ~0u;
  for (std::size_t v = 0; v < sa.size(); ++v) {
    if (!sa[v]) continue;
    unsigned cost = a.degree_in(v) + b.degree_in(v);
    if (cost < best) {
      best = cost;
      var = v;
    }
  }

  MultiPoly ca = content_in(a, var), cb = content_in(b, var);
  MultiPoly g = gcd(ca, cb);
  if (coprime_in(a, b, var)) return g.monic();
  MultiPoly A = ca.is_constant() ? a : divide_or_throw(a, ca);
  MultiPoly B = cb.is_constant() ? b : divide_or_throw(b, cb);
  if (auto h = modular_gcd(A, B, var)) return (g * *h).monic();
  if (A.degree_in(var) < B.degree_in(var)) std::swap(A, B);
  while (true) {
    MultiPoly R = prem(A, B, var);
    if (R.is_zero()) break;
    if (R.degree_in(var) == 0) {
      B = MultiPoly::constant(ring, 1);
      break;
    }
    A = std::move(B);
    B = primitive_part(R, var);
  }
  return (g * B).monic();
}

}  // namespace gmap
