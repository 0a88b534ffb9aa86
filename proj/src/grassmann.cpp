#include "gmap/grassmann.hpp"

#include <algorithm>

#include "gmap/error.hpp"

namespace gmap {

namespace {

std::string vector_text(const RFVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + "]";
}

}  // namespace

ChartMap::ChartMap(MatrixRF a) : a_(std::move(a)) {
  if (a_.rows() == 0) throw Error(ErrorCode::InvalidArgument, "chart needs at least one row");
}

ChartMap ChartMap::from_rows(const RingPtr& ring, const std::vector<RFVector>& rows) {
  return ChartMap(MatrixRF::from_rows(ring, rows));
}

std::vector<RatFunc> ChartMap::all_entries() const {
  std::vector<RatFunc> out;
  for (std::size_t i = 0; i < a_.rows(); ++i)
    for (std::size_t j = 0; j < a_.cols(); ++j) out.push_back(a_(i, j));
  return out;
}

MatrixRF ChartMap::plane_matrix() const {
  const std::size_t rows = n() + 1;
  MatrixRF m(ring(), rows, N() + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    m(i, i) = RatFunc::from_int(ring(), 1);
    for (std::size_t j = 0; j < a_.cols(); ++j) m(i, rows + j) = a_(i, j);
  }
  return m;
}

ChartMap ChartMap::substitute(const std::vector<RatFunc>& images) const {
  MatrixRF m(images.front().ring(), a_.rows(), a_.cols());
  for (std::size_t i = 0; i < a_.rows(); ++i)
    for (std::size_t j = 0; j < a_.cols(); ++j) m(i, j) = gmap::substitute(a_(i, j), images);
  return ChartMap(std::move(m));
}

std::string ChartMap::to_string() const {
  std::string s = "chart([";
  for (std::size_t i = 0; i < a_.rows(); ++i) s += (i ? ", " : "") + vector_text(a_.row(i));
  return s + "])";
}

std::string GraphParam::to_string() const { return "graph(" + chart.to_string() + ", " + vector_text(z) + ")"; }

PlueckerVector pluecker_of_rows(const MatrixRF& rows) {
  PlueckerVector p;
  p.k = rows.rows();
  p.N = rows.cols() - 1;
  if (p.k == 0) {
    p.coords.push_back(RatFunc::from_int(rows.ring(), 1));
    return p;
  }
  if (p.k > rows.cols()) throw Error(ErrorCode::DimensionMismatch, "more spanning rows than columns");
  std::vector<std::size_t> cols(p.k);
  for (std::size_t i = 0; i < p.k; ++i) cols[i] = i;
  while (true) {
    MatrixRF sub(rows.ring(), p.k, p.k);
    for (std::size_t r = 0; r < p.k; ++r)
      for (std::size_t c = 0; c < p.k; ++c) sub(r, c) = rows(r, cols[c]);
    p.coords.push_back(determinant(sub));
    // Next subset in lexicographic order.
    std::size_t i = p.k;
    while (i > 0 && cols[i - 1] == rows.cols() - p.k + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < p.k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return p;
}

PlueckerVector pluecker(const ChartMap& c) { return pluecker_of_rows(c.plane_matrix()); }

bool equal_as_maps(const PlueckerVector& a, const PlueckerVector& b) {
  if (a.k != b.k || a.N != b.N || a.coords.size() != b.coords.size()) return false;
  std::size_t i0 = 0;
  while (i0 < a.coords.size() && a.coords[i0].is_zero()) ++i0;
  if (i0 == a.coords.size()) return std::all_of(b.coords.begin(), b.coords.end(), [](const RatFunc& x) { return x.is_zero(); });
  for (std::size_t i = 0; i < i0; ++i)
    if (!b.coords[i].is_zero()) return false;
  if (b.coords[i0].is_zero()) return false;
  for (std::size_t i = i0 + 1; i < a.coords.size(); ++i)
    if (a.coords[i] * b.coords[i0] != b.coords[i] * a.coords[i0]) return false;
  return true;
}

PlueckerVector substitute(const PlueckerVector& p, const std::vector<RatFunc>& images) {
  PlueckerVector out = p;
  for (auto& c : out.coords) c = gmap::substitute(c, images);
  return out;
}

std::string PlueckerVector::to_string() const { return vector_text(coords); }

ProjParam project_graph(const GraphParam& g) {
  const ChartMap& c = g.chart;
  if (g.z.size() != c.n() + 1) throw Error(ErrorCode::DimensionMismatch, "graph point needs n + 1 coordinates");
  std::vector<RatFunc> out(g.z.begin(), g.z.end());
  for (std::size_t j = c.n() + 1; j <= c.N(); ++j) {
    RatFunc s(c.ring());
    for (std::size_t i = 0; i <= c.n(); ++i) s += g.z[i] * c.a(i, j);
    out.push_back(s);
  }
  return ProjParam(std::move(out));
}

MatrixRF chart_differential_matrix(const ChartMap& c) {
  const std::size_t params = c.ring()->nvars(), width = c.n() + 1;
  MatrixRF m(c.ring(), (c.N() - c.n()) * params, width);
  for (std::size_t j = c.n() + 1; j <= c.N(); ++j)
    for (std::size_t i = 0; i < width; ++i) {
      DiffVector d = differential(c.a(i, j));
      for (std::size_t s = 0; s < params; ++s) m((j - c.n() - 1) * params + s, i) = d.coords[s];
    }
  return m;
}

ShrinkResult shrink_from_kernel(const ChartMap& c, std::vector<RFVector> kernel) {
  ShrinkResult r;
  r.n = c.n();
  r.plane_dim = static_cast<int>(kernel.size()) - 1;
  r.kernel = std::move(kernel);
  MatrixRF K(c.ring(), r.kernel.size(), c.n() + 1);
  for (std::size_t k = 0; k < r.kernel.size(); ++k)
    for (std::size_t i = 0; i <= c.n(); ++i) K(k, i) = r.kernel[k][i];
  r.plane = K * c.plane_matrix();
  r.pluecker = pluecker_of_rows(r.plane);
  for (std::size_t i = 0; i <= c.n(); ++i) {
    bool zero = true;
    for (const auto& v : r.kernel) zero = zero && v[i].is_zero();
    if (zero) r.forced_zero.push_back(i);
  }
  for (const auto& v : r.kernel)
    for (const auto& x : v)
      if (!x.den().is_constant() &&
          std::find(r.undefined_locus.begin(), r.undefined_locus.end(), x.den()) == r.undefined_locus.end())
        r.undefined_locus.push_back(x.den());
  return r;
}

ShrinkResult shrink(const ChartMap& c) { return shrink_from_kernel(c, kernel_basis(chart_differential_matrix(c))); }

std::string ShrinkResult::to_string() const {
  std::string s = "plane_dim=" + std::to_string(plane_dim) + " kernel=[";
  for (std::size_t k = 0; k < kernel.size(); ++k) s += (k ? ", " : "") + vector_text(kernel[k]);
  return s + "]";
}

DifferentialConditionResult graph_differential_condition(const GraphParam& g) {
  const ChartMap& c = g.chart;
  if (g.z.size() != c.n() + 1) throw Error(ErrorCode::DimensionMismatch, "graph point needs n + 1 coordinates");
  DifferentialConditionResult r;
  r.residual = zero_differential(c.ring());
  for (std::size_t j = c.n() + 1; j <= c.N(); ++j) {
    DiffVector acc = zero_differential(c.ring());
    for (std::size_t i = 0; i <= c.n(); ++i) {
      if (g.z[i].is_zero()) continue;
      acc = acc + differential(c.a(i, j)).scaled(g.z[i]);
    }
    if (!acc.is_zero()) {
      r.holds = false;
      r.failing_j = j;
      r.residual = acc;
      return r;
    }
  }
  return r;
}

bool graph_kernel_condition(const GraphParam& g, const ShrinkResult& s) {
  if (s.kernel.empty()) return false;
  ProjParam x = project_graph(g);
  MatrixRF point = MatrixRF::from_rows(g.chart.ring(), {x.coords()});
  return rank(s.plane.stacked(point)) == rank(s.plane);
}

bool graph_kernel_condition(const GraphParam& g) { return graph_kernel_condition(g, shrink(g.chart)); }

}  // namespace gmap
