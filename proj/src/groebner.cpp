#include "gmap/groebner.hpp"

#include <algorithm>

#include "gmap/error.hpp"

namespace gmap {

namespace {

std::uint16_t support_mask(const Monomial& m) {
  std::uint16_t mask = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (m.e[i]) mask = static_cast<std::uint16_t>(mask | (1u << i));
  return mask;
}

std::uint32_t max_degree(const TermList& t) {
  std::uint32_t d = 0;
  for (const auto& x : t) d = std::max(d, x.m.deg);
  return d;
}

void make_monic(TermList& t, const GaloisField& F) {
  if (t.empty() || t.front().c == 1) return;
  Elem ic = F.inv(t.front().c);
  for (auto& x : t) x.c = F.mul(x.c, ic);
}

struct Reducer {
  const TermList* t;
  std::uint16_t mask;
  std::uint32_t sugar;
};

// Full reduction of f by monic reducers.  Terms ahead of the cursor are already
// irreducible and never change, since every subtraction only touches smaller
// monomials.
TermList reduce_full(TermList f, const std::vector<Reducer>& reducers, const terms::Ctx& ctx, std::uint32_t* sugar,
                     std::size_t* counter, std::size_t cap) {
  std::size_t pos = 0;
  while (pos < f.size()) {
    const Monomial m = f[pos].m;
    const std::uint16_t mm = support_mask(m);
    const Reducer* hit = nullptr;
    for (const auto& r : reducers) {
      if ((r.mask & ~mm) != 0) continue;
      if (r.t->front().m.divides(m)) {
        hit = &r;
        break;
      }
    }
    if (!hit) {
      ++pos;
      continue;
    }
    const Monomial shift = m / hit->t->front().m;
    const Elem c = f[pos].c;
    TermList tail(f.begin() + static_cast<std::ptrdiff_t>(pos), f.end());
    tail = terms::sub_scaled(tail, c, shift, *hit->t, ctx);
    f.resize(pos);
    f.insert(f.end(), tail.begin(), tail.end());
    if (sugar) *sugar = std::max(*sugar, hit->sugar + shift.deg);
    if (counter && ++*counter > cap)
      throw Error(ErrorCode::ResourceLimit, "Groebner basis: reduction step cap of " + std::to_string(cap) + " exceeded");
  }
  return f;
}

TermList spoly(const TermList& a, const TermList& b, const terms::Ctx& ctx) {
  Monomial l = Monomial::lcm(a.front().m, b.front().m);
  TermList sa = terms::scaled(a, 1, l / a.front().m, ctx.F);
  return terms::sub_scaled(sa, 1, l / b.front().m, b, ctx);
}

class Engine {
 public:
  Engine(const terms::Ctx& ctx, const GroebnerLimits& lim) : ctx_(ctx), lim_(lim) {}

  void insert(TermList f, std::uint32_t sugar) {
    f = reduce_full(std::move(f), reducers(), ctx_, &sugar, &reductions_, lim_.max_reductions);
    if (f.empty()) return;
    make_monic(f, ctx_.F);
    add(std::move(f), sugar);
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        return ctx_.cmp(a.lcm, b.lcm) < 0;
      });
      Pair pr = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      TermList s = spoly(basis_[pr.i].t, basis_[pr.j].t, ctx_);
      std::uint32_t sugar = pr.sugar;
      s = reduce_full(std::move(s), reducers(), ctx_, &sugar, &reductions_, lim_.max_reductions);
      if (s.empty()) continue;
      make_monic(s, ctx_.F);
      add(std::move(s), sugar);
    }
  }

  std::vector<TermList> reduced_basis() {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].active) idx.push_back(i);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return ctx_.cmp(basis_[a].t.front().m, basis_[b].t.front().m) < 0; });
    std::vector<TermList> out;
    for (std::size_t i : idx) {
      std::vector<Reducer> others;
      for (std::size_t j : idx)
        if (j != i) others.push_back({&basis_[j].t, basis_[j].mask, 0});
      // The leading term is irreducible by the others, so reduce only the tail.
      TermList tail(basis_[i].t.begin() + 1, basis_[i].t.end());
      tail = reduce_full(std::move(tail), others, ctx_, nullptr, &reductions_, lim_.max_reductions);
      TermList g{basis_[i].t.front()};
      g.insert(g.end(), tail.begin(), tail.end());
      out.push_back(std::move(g));
    }
    return out;
  }

 private:
  struct Poly {
    TermList t;
    std::uint32_t sugar;
    std::uint16_t mask;
    bool active;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t sugar;
  };

  std::vector<Reducer> reducers() const {
    std::vector<Reducer> r;
    for (const auto& p : basis_)
      if (p.active) r.push_back({&p.t, p.mask, p.sugar});
    return r;
  }

  Pair make_pair(std::size_t i, std::size_t j) const {
    const Monomial& a = basis_[i].t.front().m;
    const Monomial& b = basis_[j].t.front().m;
    Monomial l = Monomial::lcm(a, b);
    std::uint32_t s = std::max(basis_[i].sugar + (l.deg - a.deg), basis_[j].sugar + (l.deg - b.deg));
    return {i, j, l, s};
  }

  // Gebauer-Moeller installation of a new basis element.
  void add(TermList h, std::uint32_t sugar) {
    if (max_degree(h) > lim_.max_degree)
      throw Error(ErrorCode::ResourceLimit,
                  "Groebner basis: degree cap of " + std::to_string(lim_.max_degree) + " exceeded");
    std::size_t active = 0;
    for (const auto& p : basis_) active += p.active;
    if (active + 1 > lim_.max_basis)
      throw Error(ErrorCode::ResourceLimit,
                  "Groebner basis: basis size cap of " + std::to_string(lim_.max_basis) + " exceeded");

    const std::size_t hi = basis_.size();
    const Monomial lh = h.front().m;
    basis_.push_back({std::move(h), sugar, support_mask(lh), true});

    std::vector<Pair> C;
    for (std::size_t g = 0; g < hi; ++g)
      if (basis_[g].active) C.push_back(make_pair(g, hi));
    std::vector<Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Pair& p = C[k];
      bool keep = basis_[p.i].t.front().m.coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l)
          if (C[l].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : D)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> kept;
    for (const auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && Monomial::lcm(basis_[p.i].t.front().m, lh) != p.lcm &&
                  Monomial::lcm(basis_[p.j].t.front().m, lh) != p.lcm;
      if (!drop) kept.push_back(p);
    }
    for (const auto& p : D)
      if (!basis_[p.i].t.front().m.coprime(lh)) kept.push_back(p);
    pairs_ = std::move(kept);

    for (std::size_t g = 0; g < hi; ++g)
      if (basis_[g].active && lh.divides(basis_[g].t.front().m)) basis_[g].active = false;
  }

  terms::Ctx ctx_;
  GroebnerLimits lim_;
  std::vector<Poly> basis_;
  std::vector<Pair> pairs_;
  std::size_t reductions_ = 0;
};

}  // namespace

TermList to_order(const MultiPoly& f, const MonomialOrder& order) {
  TermList t = f.terms();
  if (order == MonomialOrder::grevlex()) return t;
  terms::Ctx ctx{f.F(), order, f.ring()->nvars()};
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return ctx.cmp(a.m, b.m) > 0; });
  return t;
}

std::string format_terms(const RingPtr& ring, const TermList& t) {
  // MultiPoly::to_string prints terms in stored order.
  return MultiPoly(ring, t).to_string();
}

GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const MonomialOrder& order, const GroebnerLimits& limits) {
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "Groebner basis of an empty generator list");
  const RingPtr& ring = gens.front().ring();
  for (const auto& g : gens)
    if (!same_ring(g.ring(), ring)) throw Error(ErrorCode::InvalidArgument, "Groebner generators from different rings");
  terms::Ctx ctx{ring->F(), order, ring->nvars()};
  Engine engine(ctx, limits);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    engine.insert(to_order(g, order), g.total_degree());
  }
  engine.run();
  return GroebnerBasis(ring, order, engine.reduced_basis());
}

std::vector<MultiPoly> GroebnerBasis::polys() const {
  std::vector<MultiPoly> out;
  for (const auto& g : gens_) out.push_back(MultiPoly::from_terms(ring_, g));
  return out;
}

TermList GroebnerBasis::normal_form(const MultiPoly& f) const {
  terms::Ctx ctx{ring_->F(), order_, ring_->nvars()};
  std::vector<Reducer> r;
  for (const auto& g : gens_) r.push_back({&g, support_mask(g.front().m), 0});
  return reduce_full(to_order(f, order_), r, ctx, nullptr, nullptr, 0);
}

bool GroebnerBasis::satisfies_buchberger_criterion() const {
  terms::Ctx ctx{ring_->F(), order_, ring_->nvars()};
  std::vector<Reducer> r;
  for (const auto& g : gens_) r.push_back({&g, support_mask(g.front().m), 0});
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!reduce_full(spoly(gens_[i], gens_[j], ctx), r, ctx, nullptr, nullptr, 0).empty()) return false;
  return true;
}

bool GroebnerBasis::is_reduced() const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].front().c != 1) return false;
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : gens_[j])
        if (gens_[i].front().m.divides(t.m)) return false;
    }
  }
  return true;
}

std::string GroebnerBasis::dump() const {
  std::string out = "order " + order_.name() + "\n";
  for (const auto& g : gens_) out += format_terms(ring_, g) + "\n";
  return out;
}

}  // namespace gmap
