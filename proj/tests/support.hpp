#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gmap/matrix.hpp"
#include "gmap/parse.hpp"
#include "gmap/ratfunc.hpp"

namespace gmap::testing {

// Test-side generator; kept separate from the library's seeded searches.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t below(std::uint64_t n) { return g_() % n; }
  bool coin(unsigned one_in) { return below(one_in) == 0; }

 private:
  std::mt19937_64 g_;
};

inline RingPtr make_ring(unsigned p, std::vector<std::string> names, unsigned e = 1) {
  return Ring::make(GaloisField::get(p, e), std::move(names));
}

inline RatFunc rf(const RingPtr& r, const std::string& s) { return parse_ratfunc(r, s); }

inline MultiPoly random_poly(const RingPtr& r, Rng& rng, unsigned max_deg, unsigned nterms) {
  TermList t;
  for (unsigned k = 0; k < nterms; ++k) {
    Monomial m;
    unsigned budget = static_cast<unsigned>(rng.below(max_deg + 1));
    for (std::size_t i = 0; i < r->nvars() && budget; ++i) {
      auto d = static_cast<std::uint16_t>(rng.below(budget + 1));
      m.set(i, d);
      budget -= d;
    }
    Elem c = static_cast<Elem>(1 + rng.below(r->F().order() - 1));
    t.push_back({m, c});
  }
  return MultiPoly::from_terms(r, std::move(t));
}

inline MultiPoly random_nonzero_poly(const RingPtr& r, Rng& rng, unsigned max_deg, unsigned nterms) {
  while (true) {
    MultiPoly f = random_poly(r, rng, max_deg, nterms);
    if (!f.is_zero()) return f;
  }
}

inline RatFunc random_ratfunc(const RingPtr& r, Rng& rng, unsigned max_deg, unsigned nterms) {
  MultiPoly n = random_poly(r, rng, max_deg, nterms);
  MultiPoly d = rng.coin(3) ? MultiPoly::constant(r, 1) : random_nonzero_poly(r, rng, max_deg, nterms);
  return RatFunc(n, d);
}

// A large extension of the coefficient field, used for evaluation oracles so
// that random points rarely hit a denominator zero.
inline FieldEmbedding oracle_embedding(const FieldPtr& base) {
  unsigned p = base->characteristic(), e = base->degree();
  unsigned k = e;
  auto order = [&](unsigned kk) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < kk; ++i) q *= p;
    return q;
  };
  while (order(k) < 4096) k += e;
  return FieldEmbedding(base, GaloisField::get(p, k));
}

inline std::vector<Elem> random_point(const GaloisField& F, std::size_t n, Rng& rng) {
  std::vector<Elem> pt(n);
  for (auto& x : pt) x = static_cast<Elem>(rng.below(F.order()));
  return pt;
}

// Rank of a matrix over a finite field by plain Gaussian elimination.
inline std::size_t numeric_rank(const GaloisField& F, std::vector<std::vector<Elem>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Elem inv = F.inv(m[r][c]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Elem f = F.mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

}  // namespace gmap::testing
