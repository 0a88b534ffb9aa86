#include "gmap/matrix.hpp"

#include <algorithm>

#include "gmap/error.hpp"

namespace gmap {

MatrixRF::MatrixRF(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, RatFunc(ring_)) {}

MatrixRF MatrixRF::from_rows(const RingPtr& ring, const std::vector<RFVector>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  MatrixRF m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

MatrixRF MatrixRF::identity(const RingPtr& ring, std::size_t n) {
  MatrixRF m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFunc::constant(ring, 1);
  return m;
}

RFVector MatrixRF::row(std::size_t i) const { return RFVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

RFVector MatrixRF::column(std::size_t j) const {
  RFVector out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

MatrixRF MatrixRF::transpose() const {
  MatrixRF t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

MatrixRF MatrixRF::operator*(const MatrixRF& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimensions");
  MatrixRF r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      RatFunc acc(ring_);
      for (std::size_t k = 0; k < cols_; ++k)
        if (!(*this)(i, k).is_zero() && !o(k, j).is_zero()) acc += (*this)(i, k) * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

RFVector MatrixRF::operator*(const RFVector& v) const {
  if (cols_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector dimensions");
  RFVector out(rows_, RatFunc(ring_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (!(*this)(i, k).is_zero() && !v[k].is_zero()) out[i] += (*this)(i, k) * v[k];
  return out;
}

MatrixRF MatrixRF::stacked(const MatrixRF& o) const {
  if (cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "stacking matrices with different widths");
  MatrixRF r(ring_, rows_ + o.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < o.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
  return r;
}

bool MatrixRF::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

std::string MatrixRF::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

namespace {

struct Echelon {
  std::vector<std::vector<MultiPoly>> a;
  std::vector<std::size_t> pivots;
  std::vector<MultiPoly> row_scale;
  bool negated = false;
};

MultiPoly poly_lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  MultiPoly g = gcd(a, b);
  return g.is_constant() ? a * b : divide_or_throw(a, g) * b;
}

// Fraction-free (Bareiss) row echelon form; pivots are sought only in the
// first `pivot_limit` columns.
Echelon echelon(const MatrixRF& m, std::size_t pivot_limit) {
  const RingPtr& ring = m.ring();
  Echelon e;
  e.a.assign(m.rows(), std::vector<MultiPoly>(m.cols(), MultiPoly(ring)));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    MultiPoly l = MultiPoly::constant(ring, 1);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) l = poly_lcm(l, m(i, j).den());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const RatFunc& x = m(i, j);
      if (x.is_zero()) continue;
      e.a[i][j] = x.den().is_one() ? x.num() * l : x.num() * divide_or_throw(l, x.den());
    }
    e.row_scale.push_back(l);
  }
  MultiPoly prev = MultiPoly::constant(ring, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < std::min(pivot_limit, m.cols()) && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (!e.a[i][c].is_zero() && (best == m.rows() || e.a[i][c].size() < e.a[best][c].size())) best = i;
    if (best == m.rows()) continue;
    if (best != r) {
      std::swap(e.a[best], e.a[r]);
      std::swap(e.row_scale[best], e.row_scale[r]);
      e.negated = !e.negated;
    }
    const MultiPoly& piv = e.a[r][c];
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const MultiPoly lead = e.a[i][c];
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        MultiPoly v = piv * e.a[i][j];
        if (!lead.is_zero() && !e.a[r][j].is_zero()) v = v - lead * e.a[r][j];
        e.a[i][j] = prev.is_one() ? v : divide_or_throw(v, prev);
      }
      e.a[i][c] = MultiPoly(ring);
    }
    prev = piv;
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

// Back substitution in L for the right-hand side held in column `rhs` (or the
// homogeneous system with x[free] = 1 when `free_col` is set).
RFVector back_substitute(const Echelon& e, std::size_t ncols, const RingPtr& ring, std::optional<std::size_t> rhs,
                         std::optional<std::size_t> free_col) {
  RFVector x(ncols, RatFunc(ring));
  if (free_col) x[*free_col] = RatFunc::constant(ring, 1);
  for (std::size_t k = e.pivots.size(); k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    RatFunc acc = rhs ? RatFunc(e.a[k][*rhs]) : RatFunc(ring);
    for (std::size_t j = pc + 1; j < ncols; ++j)
      if (!e.a[k][j].is_zero() && !x[j].is_zero()) acc -= RatFunc(e.a[k][j]) * x[j];
    x[pc] = acc.is_zero() ? acc : acc / RatFunc(e.a[k][pc]);
  }
  return x;
}

}  // namespace

std::size_t rank(const MatrixRF& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return echelon(m, m.cols()).pivots.size();
}

MatrixRF rref(const MatrixRF& m) {
  MatrixRF a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    RatFunc inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!a(r, j).is_zero()) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      RatFunc f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return a;
}

std::vector<RFVector> kernel_basis(const MatrixRF& m) {
  const RingPtr& ring = m.ring();
  std::vector<RFVector> basis;
  if (m.cols() == 0) return basis;
  if (m.rows() == 0 || m.is_zero()) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      RFVector v(m.cols(), RatFunc(ring));
      v[j] = RatFunc::constant(ring, 1);
      basis.push_back(v);
    }
    return basis;
  }
  Echelon e = echelon(m, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f)
    if (!is_pivot[f]) basis.push_back(back_substitute(e, m.cols(), ring, std::nullopt, f));
  if (basis.empty()) return basis;
  MatrixRF k = rref(MatrixRF::from_rows(ring, basis));
  std::vector<RFVector> out;
  for (std::size_t i = 0; i < k.rows(); ++i) out.push_back(k.row(i));
  return out;
}

std::optional<RFVector> solve(const MatrixRF& m, const RFVector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");
  const RingPtr& ring = m.ring();
  MatrixRF aug(ring, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  if (m.rows() == 0) return RFVector(m.cols(), RatFunc(ring));
  Echelon e = echelon(aug, m.cols());
  for (std::size_t i = e.pivots.size(); i < m.rows(); ++i)
    if (!e.a[i][m.cols()].is_zero()) return std::nullopt;
  RFVector x = back_substitute(e, m.cols(), ring, m.cols(), std::nullopt);
  return x;
}

RatFunc determinant(const MatrixRF& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const RingPtr& ring = m.ring();
  if (m.rows() == 0) return RatFunc::constant(ring, 1);
  Echelon e = echelon(m, m.cols());
  if (e.pivots.size() < m.rows()) return RatFunc(ring);
  MultiPoly scale = MultiPoly::constant(ring, 1);
  for (const auto& s : e.row_scale) scale = scale * s;
  MultiPoly last = e.a[m.rows() - 1][m.cols() - 1];
  if (e.negated) last = -last;
  return RatFunc(last, scale);
}

MatrixRF inverse(const MatrixRF& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const RingPtr& ring = m.ring();
  MatrixRF aug(ring, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = RatFunc::constant(ring, 1);
  }
  Echelon e = echelon(aug, n);
  if (e.pivots.size() < n) throw Error(ErrorCode::Inconsistent, "matrix is singular");
  MatrixRF inv(ring, n, n);
  for (std::size_t c = 0; c < n; ++c) {
    RFVector x = back_substitute(e, n, ring, n + c, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = x[i];
  }
  return inv;
}

MatrixRF jacobian(const RingPtr& ring, const RFVector& gens) {
  MatrixRF j(ring, gens.size(), ring->nvars());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t s = 0; s < ring->nvars(); ++s) j(k, s) = partial(gens[k], s);
  return j;
}

}  // namespace gmap
