#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gmap/poly.hpp"

namespace gmap {

struct GroebnerLimits {
  std::uint32_t max_degree = 40;
  std::size_t max_basis = 2000;
  std::size_t max_reductions = 200000;
  // Membership over k(t): cap on the total degree of a k(t)-coefficient after
  // clearing content.  0 means unlimited.
  std::uint32_t max_coefficient_degree = 0;
};

// Reduced Groebner basis: monic generators sorted by ascending leading
// monomial, each stored as a term list sorted descending under `order`.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<TermList> gens)
      : ring_(std::move(ring)), order_(order), gens_(std::move(gens)) {}

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<TermList>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].size() == 1 && gens_[0][0].m.is_one(); }

  std::vector<MultiPoly> polys() const;
  // Full normal form of f (terms sorted under order()).
  TermList normal_form(const MultiPoly& f) const;
  bool contains(const MultiPoly& f) const { return normal_form(f).empty(); }
  // Every S-polynomial reduces to zero.
  bool satisfies_buchberger_criterion() const;
  bool is_reduced() const;

  // One generator per line, terms in order; stable for golden files.
  std::string dump() const;

 private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<TermList> gens_;
};

GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const MonomialOrder& order, const GroebnerLimits& limits = {});

// Terms of f re-sorted under `order`.
TermList to_order(const MultiPoly& f, const MonomialOrder& order);
std::string format_terms(const RingPtr& ring, const TermList& t);

}  // namespace gmap
