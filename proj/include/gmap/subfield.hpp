#pragma once

#include <memory>
#include <vector>

#include "gmap/groebner.hpp"
#include "gmap/ratfunc.hpp"

namespace gmap {

// K = k(gens) inside L = F_q(ambient parameters).
struct SubfieldPresentation {
  RingPtr ambient;
  std::vector<RatFunc> gens;

  static SubfieldPresentation of(std::vector<RatFunc> gens);
};

enum class DimensionRoute { Auto, Tagged, Fiber };

struct EliminationOptions {
  GroebnerLimits limits;
  DimensionRoute route = DimensionRoute::Auto;
  // Independent differentials already certify algebraic independence, so a
  // Jacobian rank equal to min(#gens, #params) settles the dimension.
  bool rank_shortcut = true;
};

// Rank over L of the Jacobian of the generators.
std::size_t rank_delta(const SubfieldPresentation& K);

// Transcendence degree of K over k.
std::size_t image_dimension(const SubfieldPresentation& K, const EliminationOptions& opt = {});

// Decides f in K from one Groebner basis over k(t) of the two-copy ideal
//   n_i(s) d_i(t) - n_i(t) d_i(s),  1 - y prod d_i(s)
// in k(t)[s, y].  f = p/q lies in K iff p(s) q(t) - p(t) q(s) lies in it.
// When every generator is a p-th power the test first descends through
// Frobenius, since k(g^p) = k(g)^p.
class MembershipOracle {
 public:
  explicit MembershipOracle(const SubfieldPresentation& K, const EliminationOptions& opt = {});
  ~MembershipOracle();
  MembershipOracle(MembershipOracle&&) noexcept;

  bool contains(const RatFunc& f) const;
  // tr.deg K = #params - dim of the generic fiber, read from the same basis.
  std::size_t fiber_dimension_complement() const;
  std::size_t basis_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool is_member(const RatFunc& f, const SubfieldPresentation& K, const EliminationOptions& opt = {});
bool fields_equal(const SubfieldPresentation& a, const SubfieldPresentation& b, const EliminationOptions& opt = {});

// Largest subset S of the variables in `vars` (bit mask) such that no monomial
// support in `supports` lies inside S.
std::size_t max_independent_set(std::uint32_t vars, const std::vector<std::uint32_t>& supports);

}  // namespace gmap
