#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmap/ratfunc.hpp"

namespace gmap {

using RFVector = std::vector<RatFunc>;

class MatrixRF {
 public:
  MatrixRF() : rows_(0), cols_(0) {}
  MatrixRF(RingPtr ring, std::size_t rows, std::size_t cols);
  static MatrixRF from_rows(const RingPtr& ring, const std::vector<RFVector>& rows);
  static MatrixRF identity(const RingPtr& ring, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }
  const RatFunc& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  RatFunc& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  RFVector row(std::size_t i) const;
  RFVector column(std::size_t j) const;

  MatrixRF transpose() const;
  MatrixRF operator*(const MatrixRF& o) const;
  RFVector operator*(const RFVector& v) const;
  // Rows of *this stacked on top of the rows of o.
  MatrixRF stacked(const MatrixRF& o) const;
  bool is_zero() const;

  bool operator==(const MatrixRF& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<RatFunc> data_;
};

std::size_t rank(const MatrixRF& m);
// Basis of {x : m x = 0} in reduced row echelon form (leading entries 1).
std::vector<RFVector> kernel_basis(const MatrixRF& m);
// One solution of m x = b, or nullopt when inconsistent.
std::optional<RFVector> solve(const MatrixRF& m, const RFVector& b);
MatrixRF rref(const MatrixRF& m);
RatFunc determinant(const MatrixRF& m);
// Inverse of a square matrix; throws Inconsistent when singular.
MatrixRF inverse(const MatrixRF& m);

// Jacobian rows d(g_k) with respect to all ring parameters.
MatrixRF jacobian(const RingPtr& ring, const RFVector& gens);

}  // namespace gmap
