#pragma once

#include <vector>

#include "gmap/grassmann.hpp"
#include "gmap/projparam.hpp"
#include "gmap/subfield.hpp"

namespace gmap {

// Jacobian of the affine coordinates has rank equal to the number of
// parameters: separable and generically finite onto the image.
bool is_immersive(const ProjParam& x);

// First n affine coordinate indices (original numbering, pivot excluded)
// whose differentials are independent, chosen greedily in index order.
std::vector<std::size_t> select_separating_coords(const ProjParam& x);

// Partial derivatives with respect to the affine functions z^i = f^{c_i}/f^pivot,
// defined by dg = sum_i (dg/dz^i) dz^i.  The transposed Jacobian inverse is
// computed once.
class ChainRule {
 public:
  ChainRule(const ProjParam& x, const std::vector<std::size_t>& coords);
  RFVector operator()(const RatFunc& g) const;
  const std::vector<RatFunc>& z() const { return z_; }

 private:
  std::vector<RatFunc> z_;
  MatrixRF inv_t_;
};

RFVector chain_rule(const ProjParam& x, const std::vector<std::size_t>& coords, const RatFunc& g);

struct GaussData {
  // Coordinates of x listed in the adapted order: pivot, the separating
  // coordinates, then the rest ascending.  permutation[k] is the original
  // index sitting at adapted position k.
  std::vector<std::size_t> permutation;
  std::vector<std::size_t> separating;
  ProjParam adapted;  // normalized so that adapted[0] = 1
  ChartMap chart;
  SubfieldPresentation image_gens;
  std::size_t rank = 0;
};

GaussData gauss_data(const ProjParam& x);

bool is_separable_gauss(const ProjParam& x, const EliminationOptions& opt = {});
bool is_separable_gauss(const GaussData& g, const EliminationOptions& opt = {});

GraphParam graph_of_gauss(const ProjParam& x);
GraphParam graph_of_gauss(const GaussData& g);

struct SFFData {
  // hessians[j - n - 1](i, k) = d^2 f^j / dz^i dz^k, adapted numbering, i,k in 1..n.
  std::vector<MatrixRF> hessians;

  bool symmetric() const;
  // ((N - n) n) x n block stack, row (j, k), column i.
  MatrixRF stacked() const;
};

SFFData second_fundamental_form(const ProjParam& x);
SFFData second_fundamental_form(const GaussData& g);

// Kernel of d gamma as a plane inside the tangent plane: the tautological
// row (1, z) together with (0, v) for every v in the kernel of the stacked
// Hessians.  plane_dim equals the dimension of that tangent-direction kernel.
ShrinkResult degeneracy_map(const ProjParam& x);
ShrinkResult degeneracy_map(const GaussData& g);

// Degeneracy map against the shrinking map of the Gauss chart.
bool degeneracy_matches_shrink(const ProjParam& x);
bool degeneracy_matches_shrink(const GaussData& g);

struct DegeneracyFactorization {
  bool holds = false;
  std::size_t image_dim = 0;
  int degeneracy_plane_dim = -1;
  int image_shrink_plane_dim = -1;
  // Chart entries serving as a separating basis of the image field.
  std::vector<std::size_t> image_basis;
};

// The image Y is presented by the chart entries.  Its shrinking map is
// computed from derivatives with respect to a separating basis of K(Y) chosen
// among those entries and compared with the degeneracy map; also checks
// plane_dim = n - dim Y.  Throws Precondition when the Gauss map is inseparable.
DegeneracyFactorization verify_degeneracy_factorization(const ProjParam& x, const EliminationOptions& opt = {});
DegeneracyFactorization verify_degeneracy_factorization(const GaussData& g, const EliminationOptions& opt = {});

}  // namespace gmap
