#include "gmap/gauss.hpp"

#include <algorithm>

#include "gmap/error.hpp"

namespace gmap {

namespace {

void require_immersive(const ProjParam& x) {
  if (!is_immersive(x))
    throw Error(ErrorCode::Precondition,
                "parametrization is not immersive (affine Jacobian rank below the number of parameters): "
                "the projection from the graph is not separable and generically finite");
}

MatrixRF jacobian_rows(const RingPtr& ring, const std::vector<RatFunc>& fs) { return jacobian(ring, fs); }

}  // namespace

bool is_immersive(const ProjParam& x) {
  const std::size_t n = x.ring()->nvars();
  if (x.N() < n) return false;
  return rank(jacobian_rows(x.ring(), x.affine())) == n;
}

std::vector<std::size_t> select_separating_coords(const ProjParam& x) {
  const RingPtr& ring = x.ring();
  const std::size_t n = ring->nvars();
  std::vector<std::size_t> chosen;
  std::vector<RatFunc> fs;
  const auto aff = x.affine();
  const auto idx = x.affine_indices();
  for (std::size_t k = 0; k < aff.size() && chosen.size() < n; ++k) {
    fs.push_back(aff[k]);
    if (rank(jacobian_rows(ring, fs)) == fs.size()) {
      chosen.push_back(idx[k]);
    } else {
      fs.pop_back();
    }
  }
  if (chosen.size() < n)
    throw Error(ErrorCode::Inconsistent, "no separating subset of affine coordinates (parametrization is not immersive)");
  return chosen;
}

ChainRule::ChainRule(const ProjParam& x, const std::vector<std::size_t>& coords) {
  const RingPtr& ring = x.ring();
  if (coords.size() != ring->nvars())
    throw Error(ErrorCode::DimensionMismatch, "chain rule needs one coordinate per parameter");
  const RatFunc& piv = x[x.pivot()];
  for (std::size_t c : coords) {
    if (c == x.pivot() || c > x.N()) throw Error(ErrorCode::InvalidArgument, "bad separating coordinate index");
    z_.push_back(x[c] / piv);
  }
  MatrixRF J = jacobian_rows(ring, z_);
  if (rank(J) != coords.size())
    throw Error(ErrorCode::Precondition, "selected coordinates have a singular Jacobian");
  inv_t_ = inverse(J.transpose());
}

RFVector ChainRule::operator()(const RatFunc& g) const { return inv_t_ * differential(g).coords; }

RFVector chain_rule(const ProjParam& x, const std::vector<std::size_t>& coords, const RatFunc& g) {
  return ChainRule(x, coords)(g);
}

GaussData gauss_data(const ProjParam& x) {
  require_immersive(x);
  const RingPtr& ring = x.ring();
  const std::size_t n = ring->nvars(), N = x.N();
  auto sep = select_separating_coords(x);

  std::vector<std::size_t> perm{x.pivot()};
  perm.insert(perm.end(), sep.begin(), sep.end());
  for (std::size_t i = 0; i <= N; ++i)
    if (std::find(perm.begin(), perm.end(), i) == perm.end()) perm.push_back(i);

  ProjParam norm = x.normalized();
  std::vector<RatFunc> ad;
  for (std::size_t i : perm) ad.push_back(norm[i]);
  ProjParam adapted(ad, 0);

  std::vector<std::size_t> zc(n);
  for (std::size_t i = 0; i < n; ++i) zc[i] = i + 1;
  ChainRule cr(adapted, zc);

  MatrixRF a(ring, n + 1, N - n);
  for (std::size_t j = n + 1; j <= N; ++j) {
    RFVector d = cr(adapted[j]);
    RatFunc a0 = adapted[j];
    for (std::size_t i = 0; i < n; ++i) {
      a0 -= adapted[i + 1] * d[i];
      a(i + 1, j - n - 1) = d[i];
    }
    a(0, j - n - 1) = a0;
  }
  ChartMap chart(std::move(a));
  // X = P^n has an empty chart; its Gauss image field is k.
  auto entries = chart.all_entries();
  if (entries.empty()) entries.push_back(RatFunc::from_int(ring, 1));
  auto K = SubfieldPresentation::of(std::move(entries));
  std::size_t r = rank_delta(K);
  return GaussData{perm, sep, adapted, chart, K, r};
}

bool is_separable_gauss(const GaussData& g, const EliminationOptions& opt) {
  return g.rank == image_dimension(g.image_gens, opt);
}

bool is_separable_gauss(const ProjParam& x, const EliminationOptions& opt) { return is_separable_gauss(gauss_data(x), opt); }

GraphParam graph_of_gauss(const GaussData& g) {
  const std::size_t n = g.chart.n();
  std::vector<RatFunc> z(g.adapted.coords().begin(), g.adapted.coords().begin() + static_cast<long>(n + 1));
  return GraphParam{g.chart, z};
}

GraphParam graph_of_gauss(const ProjParam& x) { return graph_of_gauss(gauss_data(x)); }

bool SFFData::symmetric() const {
  for (const auto& h : hessians)
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t k = i + 1; k < h.cols(); ++k)
        if (h(i, k) != h(k, i)) return false;
  return true;
}

MatrixRF SFFData::stacked() const {
  if (hessians.empty()) return MatrixRF();
  MatrixRF m = hessians.front();
  for (std::size_t j = 1; j < hessians.size(); ++j) m = m.stacked(hessians[j]);
  return m;
}

SFFData second_fundamental_form(const GaussData& g) {
  const std::size_t n = g.chart.n();
  std::vector<std::size_t> zc(n);
  for (std::size_t i = 0; i < n; ++i) zc[i] = i + 1;
  ChainRule cr(g.adapted, zc);
  SFFData s;
  for (std::size_t j = n + 1; j <= g.chart.N(); ++j) {
    MatrixRF h(g.chart.ring(), n, n);
    for (std::size_t i = 0; i < n; ++i) {
      RFVector d = cr(g.chart.a(i + 1, j));
      for (std::size_t k = 0; k < n; ++k) h(i, k) = d[k];
    }
    s.hessians.push_back(std::move(h));
  }
  if (!s.symmetric()) throw Error(ErrorCode::VerificationFailed, "second fundamental form is not symmetric");
  return s;
}

SFFData second_fundamental_form(const ProjParam& x) { return second_fundamental_form(gauss_data(x)); }

ShrinkResult degeneracy_map(const GaussData& g) {
  const std::size_t n = g.chart.n();
  const RingPtr& ring = g.chart.ring();
  SFFData s = second_fundamental_form(g);
  std::vector<RFVector> dirs;
  if (s.hessians.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      RFVector v(n, RatFunc(ring));
      v[i] = RatFunc::from_int(ring, 1);
      dirs.push_back(v);
    }
  } else {
    dirs = kernel_basis(s.stacked());
  }
  std::vector<RFVector> rows;
  RFVector taut(g.adapted.coords().begin(), g.adapted.coords().begin() + static_cast<long>(n + 1));
  rows.push_back(taut);
  for (const auto& v : dirs) {
    RFVector r{RatFunc(ring)};
    r.insert(r.end(), v.begin(), v.end());
    rows.push_back(r);
  }
  // The rows are independent (only the first has a nonzero leading entry),
  // so the echelon form keeps all of them.
  MatrixRF e = rref(MatrixRF::from_rows(ring, rows));
  std::vector<RFVector> basis;
  for (std::size_t i = 0; i < e.rows(); ++i) basis.push_back(e.row(i));
  return shrink_from_kernel(g.chart, std::move(basis));
}

ShrinkResult degeneracy_map(const ProjParam& x) { return degeneracy_map(gauss_data(x)); }

bool degeneracy_matches_shrink(const GaussData& g) {
  ShrinkResult degen = degeneracy_map(g);
  ShrinkResult sh = shrink(g.chart);
  return degen.kernel.size() == sh.kernel.size() && equal_as_maps(degen.pluecker, sh.pluecker);
}

bool degeneracy_matches_shrink(const ProjParam& x) { return degeneracy_matches_shrink(gauss_data(x)); }

DegeneracyFactorization verify_degeneracy_factorization(const GaussData& g, const EliminationOptions& opt) {
  DegeneracyFactorization out;
  out.image_dim = image_dimension(g.image_gens, opt);
  if (g.rank != out.image_dim)
    throw Error(ErrorCode::Precondition, "Gauss map is not separable (rank " + std::to_string(g.rank) +
                                             " below image dimension " + std::to_string(out.image_dim) + ")");
  const RingPtr& ring = g.chart.ring();
  const auto entries = g.chart.all_entries();

  // Separating basis u of K(Y) among the chart entries.
  std::vector<RatFunc> u;
  for (std::size_t k = 0; k < entries.size() && u.size() < out.image_dim; ++k) {
    u.push_back(entries[k]);
    if (rank(jacobian(ring, u)) == u.size()) {
      out.image_basis.push_back(k);
    } else {
      u.pop_back();
    }
  }
  const std::size_t d = u.size();
  const std::size_t n = g.chart.n(), cols = g.chart.N() - n;

  // Differential matrix of the image: rows (j, k), entry d a_i^j / d u_k.  Solvable because the chart
  // entries lie in K(Y), whose differentials are spanned by du over L.
  MatrixRF dm(ring, cols * std::max<std::size_t>(d, 1), n + 1);
  if (d > 0) {
    MatrixRF Ju = jacobian(ring, u).transpose();  // params x d
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        auto c = solve(Ju, differential(g.chart.entries()(i, j)).coords);
        if (!c) throw Error(ErrorCode::VerificationFailed, "chart entry differential outside the image field's span");
        for (std::size_t k = 0; k < d; ++k) dm(j * d + k, i) = (*c)[k];
      }
  }
  ShrinkResult image_shrink = shrink_from_kernel(g.chart, kernel_basis(dm));
  ShrinkResult degen = degeneracy_map(g);
  out.image_shrink_plane_dim = image_shrink.plane_dim;
  out.degeneracy_plane_dim = degen.plane_dim;
  out.holds = image_shrink.kernel.size() == degen.kernel.size() && equal_as_maps(image_shrink.pluecker, degen.pluecker) &&
              static_cast<std::size_t>(degen.plane_dim) + out.image_dim == n;
  return out;
}

DegeneracyFactorization verify_degeneracy_factorization(const ProjParam& x, const EliminationOptions& opt) {
  return verify_degeneracy_factorization(gauss_data(x), opt);
}

}  // namespace gmap
