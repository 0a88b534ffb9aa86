#include "gmap/subfield.hpp"

#include <algorithm>
#include <bit>

#include "gmap/error.hpp"
#include "gmap/matrix.hpp"

namespace gmap {

SubfieldPresentation SubfieldPresentation::of(std::vector<RatFunc> gens) {
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "subfield needs at least one generator");
  RingPtr r = gens.front().ring();
  return {r, std::move(gens)};
}

namespace {

std::vector<RatFunc> essential_gens(const std::vector<RatFunc>& gens) {
  std::vector<RatFunc> out;
  for (const auto& g : gens) {
    if (g.is_constant()) continue;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

std::vector<std::size_t> used_vars(const std::vector<RatFunc>& gens, std::size_t nvars) {
  std::vector<bool> used(nvars, false);
  for (const auto& g : gens)
    for (std::size_t i = 0; i < nvars; ++i) used[i] = used[i] || g.num().uses_var(i) || g.den().uses_var(i);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nvars; ++i)
    if (used[i]) out.push_back(i);
  return out;
}

bool uses_only(const RatFunc& f, const std::vector<std::size_t>& vars) {
  for (std::size_t i = 0; i < f.ring()->nvars(); ++i) {
    if (std::find(vars.begin(), vars.end(), i) != vars.end()) continue;
    if (f.num().uses_var(i) || f.den().uses_var(i)) return false;
  }
  return true;
}

// var_map sending the used ambient variables to consecutive slots from `offset`.
std::vector<std::size_t> slot_map(std::size_t nvars, const std::vector<std::size_t>& vars, std::size_t offset) {
  std::vector<std::size_t> m(nvars, offset);
  for (std::size_t k = 0; k < vars.size(); ++k) m[vars[k]] = offset + k;
  return m;
}

std::uint32_t support_bits(const Monomial& m, std::size_t lo, std::size_t hi) {
  std::uint32_t b = 0;
  for (std::size_t i = lo; i < hi; ++i)
    if (m.e[i]) b |= 1u << (i - lo);
  return b;
}

MultiPoly product_of_denominators(const std::vector<MultiPoly>& dens, const RingPtr& ring) {
  MultiPoly prod = MultiPoly::constant(ring, 1);
  std::vector<MultiPoly> seen;
  for (const auto& d : dens) {
    if (d.is_constant()) continue;
    if (std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
    seen.push_back(d);
    prod *= d;
  }
  return prod;
}

std::size_t tagged_dimension(const std::vector<RatFunc>& gens, const std::vector<std::size_t>& vars,
                             const GroebnerLimits& limits) {
  const std::size_t v = vars.size(), m = gens.size();
  if (v + 1 + m > kMaxVars)
    throw Error(ErrorCode::ResourceLimit, "tag-variable elimination needs " + std::to_string(v + 1 + m) +
                                              " variables (cap " + std::to_string(kMaxVars) + ")");
  const RingPtr& amb = gens.front().ring();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < v; ++k) names.push_back("t" + std::to_string(k));
  names.push_back("y");
  for (std::size_t j = 0; j < m; ++j) names.push_back("u" + std::to_string(j));
  RingPtr R = Ring::make(amb->field(), names);
  auto map = slot_map(amb->nvars(), vars, 0);
  std::vector<MultiPoly> ideal, dens;
  for (std::size_t j = 0; j < m; ++j) {
    MultiPoly n = gens[j].num().remap(R, map), d = gens[j].den().remap(R, map);
    ideal.push_back(MultiPoly::variable(R, v + 1 + j) * d - n);
    dens.push_back(d);
  }
  ideal.push_back(MultiPoly::constant(R, 1) - MultiPoly::variable(R, v) * product_of_denominators(dens, R));
  GroebnerBasis G = groebner(ideal, MonomialOrder::block(v + 1), limits);
  std::vector<std::uint32_t> supports;
  for (const auto& g : G.gens()) {
    const Monomial& lm = g.front().m;
    if (support_bits(lm, 0, v + 1) != 0) continue;
    supports.push_back(support_bits(lm, v + 1, v + 1 + m));
  }
  return max_independent_set((1u << m) - 1, supports);
}

}  // namespace

std::size_t max_independent_set(std::uint32_t vars, const std::vector<std::uint32_t>& supports) {
  // Any support inside S kills S; the empty support (a unit) kills everything.
  std::size_t best = 0;
  for (std::uint32_t s = vars;; s = (s - 1) & vars) {
    auto size = static_cast<std::size_t>(std::popcount(s));
    if (size > best) {
      bool ok = true;
      for (auto sup : supports)
        if ((sup & ~s) == 0) {
          ok = false;
          break;
        }
      if (ok) best = size;
    }
    if (s == 0) break;
  }
  return best;
}

std::size_t rank_delta(const SubfieldPresentation& K) {
  if (K.gens.empty()) return 0;
  return rank(jacobian(K.ambient, K.gens));
}

namespace {

// Groebner bases over k(t)[x] kept fraction free: every coefficient is a
// polynomial in t and every basis element is primitive.
struct PTerm {
  Monomial m;
  MultiPoly c;
};
using PPoly = std::vector<PTerm>;

class ParametricEngine {
 public:
  ParametricEngine(RingPtr coeffs, std::size_t nx, const GroebnerLimits& lim)
      : T_(std::move(coeffs)), nx_(nx), ord_(MonomialOrder::grevlex()), lim_(lim) {}

  int cmp(const Monomial& a, const Monomial& b) const { return ord_.compare(a, b, nx_); }

  PPoly from_terms(std::vector<PTerm> t) const {
    std::sort(t.begin(), t.end(), [&](const PTerm& a, const PTerm& b) { return cmp(a.m, b.m) > 0; });
    PPoly out;
    for (auto& x : t) {
      if (!out.empty() && out.back().m == x.m) {
        out.back().c += x.c;
        if (out.back().c.is_zero()) out.pop_back();
      } else if (!x.c.is_zero()) {
        out.push_back(std::move(x));
      }
    }
    return out;
  }

  // a*f - b*shift*g
  PPoly combine(const MultiPoly& a, const PPoly& f, const MultiPoly& b, const Monomial& shift, const PPoly& g) const {
    PPoly out;
    out.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
      int c = i == f.size() ? -1 : j == g.size() ? 1 : cmp(f[i].m, g[j].m * shift);
      if (c > 0) {
        out.push_back({f[i].m, a * f[i].c});
        ++i;
      } else if (c < 0) {
        out.push_back({g[j].m * shift, -(b * g[j].c)});
        ++j;
      } else {
        MultiPoly v = a * f[i].c - b * g[j].c;
        if (!v.is_zero()) out.push_back({f[i].m, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void make_primitive(PPoly& f) const {
    if (f.empty()) return;
    std::vector<const MultiPoly*> cs;
    for (const auto& t : f) cs.push_back(&t.c);
    std::sort(cs.begin(), cs.end(), [](const MultiPoly* a, const MultiPoly* b) { return a->size() < b->size(); });
    MultiPoly g = cs.front()->monic();
    for (std::size_t i = 1; i < cs.size() && !g.is_constant(); ++i) g = gcd(g, *cs[i]);
    if (!g.is_constant())
      for (auto& t : f) t.c = divide_or_throw(t.c, g);
    if (lim_.max_coefficient_degree)
      for (const auto& t : f)
        if (t.c.total_degree() > lim_.max_coefficient_degree)
          throw Error(ErrorCode::ResourceLimit, "membership coefficient degree cap of " +
                                                    std::to_string(lim_.max_coefficient_degree) + " exceeded");
    Elem lc = f.front().c.lc();
    if (lc != 1) {
      Elem inv = T_->F().inv(lc);
      for (auto& t : f) t.c = t.c.scale(inv);
    }
  }

  const PPoly* find_reducer(const Monomial& m, const std::vector<const PPoly*>& red) const {
    const PPoly* best = nullptr;
    for (const PPoly* g : red) {
      if (!g->front().m.divides(m)) continue;
      if (!best || g->front().c.size() < best->front().c.size()) best = g;
      if (best->front().c.is_constant()) break;
    }
    return best;
  }

  // Reduces h; with `top_only_exit` returns empty optional as soon as the
  // leading term is irreducible.
  std::optional<PPoly> reduce(PPoly h, const std::vector<const PPoly*>& red, bool top_only_exit) {
    std::size_t pos = 0, since_content = 0;
    while (pos < h.size()) {
      const PPoly* g = find_reducer(h[pos].m, red);
      if (!g) {
        if (top_only_exit) return std::nullopt;
        ++pos;
        continue;
      }
      const MultiPoly& lg = g->front().c;
      MultiPoly c = h[pos].c;
      const Monomial shift = h[pos].m / g->front().m;
      MultiPoly a = lg, b = c;
      if (!lg.is_constant()) {
        MultiPoly d = gcd(c, lg);
        if (!d.is_constant()) {
          a = divide_or_throw(lg, d);
          b = divide_or_throw(c, d);
        }
      } else {
        a = MultiPoly::constant(T_, 1);
        b = c.scale(T_->F().inv(lg.lc()));
      }
      h = combine(a, h, b, shift, *g);
      if (++steps_ > lim_.max_reductions)
        throw Error(ErrorCode::ResourceLimit, "membership reduction step cap exceeded");
      if (++since_content >= 6) {
        make_primitive(h);
        since_content = 0;
      }
    }
    make_primitive(h);
    return h;
  }

  std::vector<PPoly> run(std::vector<PPoly> input) {
    for (auto& f : input) {
      if (f.empty()) continue;
      auto r = reduce(std::move(f), active(), false);
      if (!r->empty()) add(std::move(*r));
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        return cmp(a.lcm, b.lcm) < 0;
      });
      Pair pr = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      const PPoly& f = basis_[pr.i].p;
      const PPoly& g = basis_[pr.j].p;
      MultiPoly a = g.front().c, b = f.front().c;
      MultiPoly d = gcd(a, b);
      if (!d.is_constant()) {
        a = divide_or_throw(a, d);
        b = divide_or_throw(b, d);
      }
      PPoly fs = combine(a, f, MultiPoly(T_), Monomial{}, f);
      for (auto& t : fs) t.m = t.m * (pr.lcm / f.front().m);
      PPoly s = combine(MultiPoly::constant(T_, 1), fs, b, pr.lcm / g.front().m, g);
      auto r = reduce(std::move(s), active(), false);
      if (!r->empty()) add(std::move(*r));
    }
    // Interreduce the minimal basis.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].active) idx.push_back(i);
    std::vector<PPoly> out;
    for (std::size_t i : idx) {
      std::vector<const PPoly*> others;
      for (std::size_t j : idx)
        if (j != i) others.push_back(&basis_[j].p);
      PPoly tail(basis_[i].p.begin() + 1, basis_[i].p.end());
      PPoly head{basis_[i].p.front()};
      // Reduce the tail while scaling the head alongside it.
      PPoly whole = head;
      whole.insert(whole.end(), tail.begin(), tail.end());
      std::size_t pos = 1;
      while (pos < whole.size()) {
        const PPoly* g = find_reducer(whole[pos].m, others);
        if (!g) {
          ++pos;
          continue;
        }
        MultiPoly a = g->front().c, b = whole[pos].c;
        MultiPoly d = gcd(a, b);
        if (!d.is_constant()) {
          a = divide_or_throw(a, d);
          b = divide_or_throw(b, d);
        }
        whole = combine(a, whole, b, whole[pos].m / g->front().m, *g);
      }
      make_primitive(whole);
      out.push_back(std::move(whole));
    }
    std::sort(out.begin(), out.end(), [&](const PPoly& a, const PPoly& b) { return cmp(a.front().m, b.front().m) < 0; });
    return out;
  }

 private:
  struct Entry {
    PPoly p;
    bool active;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  std::vector<const PPoly*> active() const {
    std::vector<const PPoly*> r;
    for (const auto& e : basis_)
      if (e.active) r.push_back(&e.p);
    return r;
  }

  void add(PPoly h) {
    std::uint32_t deg = 0;
    for (const auto& t : h) deg = std::max(deg, t.m.deg);
    if (deg > lim_.max_degree)
      throw Error(ErrorCode::ResourceLimit, "Groebner basis: degree cap of " + std::to_string(lim_.max_degree) + " exceeded");
    std::size_t n_active = 0;
    for (const auto& e : basis_) n_active += e.active;
    if (n_active + 1 > lim_.max_basis)
      throw Error(ErrorCode::ResourceLimit,
                  "Groebner basis: basis size cap of " + std::to_string(lim_.max_basis) + " exceeded");
    const std::size_t hi = basis_.size();
    const Monomial lh = h.front().m;
    basis_.push_back({std::move(h), true});
    auto lm = [&](std::size_t i) -> const Monomial& { return basis_[i].p.front().m; };
    std::vector<Pair> C, D;
    for (std::size_t g = 0; g < hi; ++g)
      if (basis_[g].active) C.push_back({g, hi, Monomial::lcm(lm(g), lh)});
    for (std::size_t k = 0; k < C.size(); ++k) {
      bool keep = lm(C[k].i).coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l)
          if (C[l].lcm.divides(C[k].lcm)) keep = false;
        for (const auto& q : D)
          if (keep && q.lcm.divides(C[k].lcm)) keep = false;
      }
      if (keep) D.push_back(C[k]);
    }
    std::vector<Pair> kept;
    for (const auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && Monomial::lcm(lm(p.i), lh) != p.lcm && Monomial::lcm(lm(p.j), lh) != p.lcm;
      if (!drop) kept.push_back(p);
    }
    // Over k(t) the product criterion still holds: both leading coefficients
    // are units.
    for (const auto& p : D)
      if (!lm(p.i).coprime(lh)) kept.push_back(p);
    pairs_ = std::move(kept);
    for (std::size_t g = 0; g < hi; ++g)
      if (basis_[g].active && lh.divides(lm(g))) basis_[g].active = false;
  }

  RingPtr T_;
  std::size_t nx_;
  MonomialOrder ord_;
  GroebnerLimits lim_;
  std::vector<Entry> basis_;
  std::vector<Pair> pairs_;
  std::size_t steps_ = 0;

 public:
  std::size_t steps() const { return steps_; }
};

// All generators p-th powers: k(g^p) = k(g)^p, so descend through Frobenius.
std::size_t frobenius_descent(std::vector<RatFunc>& gens) {
  std::size_t level = 0;
  while (!gens.empty()) {
    std::vector<RatFunc> roots;
    for (const auto& g : gens) {
      auto r = pth_root(g);
      if (!r) return level;
      roots.push_back(*r);
    }
    gens = std::move(roots);
    ++level;
  }
  return level;
}

}  // namespace

struct MembershipOracle::Impl {
  RingPtr ambient;
  std::vector<std::size_t> vars;
  std::size_t v = 0;
  std::size_t level = 0;
  RingPtr T;
  std::vector<std::size_t> map_t;
  GroebnerLimits limits;
  std::vector<PPoly> basis;
  bool trivial = true;

  Monomial x_monomial(const Monomial& m) const {
    Monomial r;
    for (std::size_t k = 0; k < v; ++k) r.set(k, m.e[vars[k]]);
    return r;
  }

  // p(s) q(t) - q(s) p(t) as a polynomial in s with coefficients in k[t].
  PPoly cross(const ParametricEngine& eng, const MultiPoly& p, const MultiPoly& q) const {
    std::vector<PTerm> t;
    MultiPoly qt = q.remap(T, map_t), pt = p.remap(T, map_t);
    for (const auto& x : p.terms()) t.push_back({x_monomial(x.m), qt.scale(x.c)});
    for (const auto& x : q.terms()) t.push_back({x_monomial(x.m), -pt.scale(x.c)});
    return eng.from_terms(std::move(t));
  }
};

MembershipOracle::MembershipOracle(const SubfieldPresentation& K, const EliminationOptions& opt)
    : impl_(std::make_unique<Impl>()) {
  auto gens = essential_gens(K.gens);
  impl_->ambient = K.ambient;
  impl_->limits = opt.limits;
  if (gens.empty()) return;
  impl_->level = frobenius_descent(gens);
  const std::size_t nv = K.ambient->nvars();
  impl_->vars = used_vars(gens, nv);
  const std::size_t v = impl_->v = impl_->vars.size();
  if (v + 1 > kMaxVars) throw Error(ErrorCode::ResourceLimit, "membership needs too many variables");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < v; ++k) names.push_back("t" + std::to_string(k));
  impl_->T = Ring::make(K.ambient->field(), names);
  impl_->map_t = slot_map(nv, impl_->vars, 0);
  ParametricEngine eng(impl_->T, v + 1, opt.limits);
  std::vector<PPoly> ideal;
  std::vector<MultiPoly> dens;
  for (const auto& g : gens) {
    ideal.push_back(impl_->cross(eng, g.num(), g.den()));
    if (!g.den().is_constant() && std::find(dens.begin(), dens.end(), g.den()) == dens.end()) dens.push_back(g.den());
  }
  // 1 - y * prod d(s), with y the last x-variable.
  MultiPoly prod = MultiPoly::constant(K.ambient, 1);
  for (const auto& d : dens) prod *= d;
  std::vector<PTerm> sat{{Monomial{}, MultiPoly::constant(impl_->T, 1)}};
  for (const auto& x : prod.terms()) {
    Monomial m = impl_->x_monomial(x.m);
    m.set(v, 1);
    sat.push_back({m, MultiPoly::constant(impl_->T, impl_->T->F().neg(x.c))});
  }
  ideal.push_back(eng.from_terms(std::move(sat)));
  impl_->basis = eng.run(std::move(ideal));
  impl_->trivial = false;
}

MembershipOracle::~MembershipOracle() = default;
MembershipOracle::MembershipOracle(MembershipOracle&&) noexcept = default;

std::size_t MembershipOracle::basis_size() const { return impl_->basis.size(); }

bool MembershipOracle::contains(const RatFunc& f0) const {
  if (!same_ring(f0.ring(), impl_->ambient)) throw Error(ErrorCode::InvalidArgument, "member candidate from another ring");
  if (f0.is_constant()) return true;
  if (impl_->trivial) return false;
  RatFunc f = f0;
  for (std::size_t i = 0; i < impl_->level; ++i) {
    auto r = pth_root(f);
    if (!r) return false;
    f = *r;
  }
  if (f.is_constant()) return true;
  if (!uses_only(f, impl_->vars)) return false;
  ParametricEngine eng(impl_->T, impl_->v + 1, impl_->limits);
  std::vector<const PPoly*> red;
  for (const auto& g : impl_->basis) red.push_back(&g);
  auto r = eng.reduce(impl_->cross(eng, f.num(), f.den()), red, true);
  return r && r->empty();
}

std::size_t MembershipOracle::fiber_dimension_complement() const {
  if (impl_->trivial) return 0;
  const std::size_t v = impl_->v;
  std::vector<std::uint32_t> supports;
  for (const auto& g : impl_->basis) supports.push_back(support_bits(g.front().m, 0, v + 1));
  return v - max_independent_set((1u << (v + 1)) - 1, supports);
}

std::size_t image_dimension(const SubfieldPresentation& K, const EliminationOptions& opt) {
  auto gens = essential_gens(K.gens);
  if (gens.empty()) return 0;
  frobenius_descent(gens);
  auto vars = used_vars(gens, K.ambient->nvars());
  if (opt.rank_shortcut) {
    std::size_t r = rank_delta({K.ambient, gens});
    if (r == gens.size() || r == vars.size()) return r;
  }
  DimensionRoute route = opt.route;
  if (route == DimensionRoute::Auto)
    route = vars.size() + 1 + gens.size() <= kMaxVars ? DimensionRoute::Tagged : DimensionRoute::Fiber;
  if (route == DimensionRoute::Tagged) return tagged_dimension(gens, vars, opt.limits);
  return MembershipOracle({K.ambient, gens}, opt).fiber_dimension_complement();
}

bool is_member(const RatFunc& f, const SubfieldPresentation& K, const EliminationOptions& opt) {
  for (const auto& g : K.gens)
    if (g == f) return true;
  return MembershipOracle(K, opt).contains(f);
}

bool fields_equal(const SubfieldPresentation& a, const SubfieldPresentation& b, const EliminationOptions& opt) {
  if (!same_ring(a.ambient, b.ambient)) throw Error(ErrorCode::InvalidArgument, "subfields of different ambient fields");
  if (rank_delta(a) != rank_delta(b)) return false;
  MembershipOracle in_b(b, opt);
  for (const auto& g : a.gens)
    if (!in_b.contains(g)) return false;
  MembershipOracle in_a(a, opt);
  for (const auto& g : b.gens)
    if (!in_a.contains(g)) return false;
  return true;
}

}  // namespace gmap
