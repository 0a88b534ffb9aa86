#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmap/matrix.hpp"
#include "gmap/projparam.hpp"

namespace gmap {

struct GrassmannSpec {
  std::size_t n = 0;
  std::size_t N = 0;
};

// Rational map into the standard chart of G(n, P^N): the plane at a parameter
// value is the row space of [E_{n+1} | a], rows i = 0..n, columns j = n+1..N.
class ChartMap {
 public:
  explicit ChartMap(MatrixRF a);
  static ChartMap from_rows(const RingPtr& ring, const std::vector<RFVector>& rows);

  const RingPtr& ring() const { return a_.ring(); }
  GrassmannSpec spec() const { return {n(), N()}; }
  std::size_t n() const { return a_.rows() - 1; }
  std::size_t N() const { return a_.rows() + a_.cols() - 1; }
  // Entry a_i^j for i <= n < j <= N.
  const RatFunc& a(std::size_t i, std::size_t j) const { return a_(i, j - n() - 1); }
  const MatrixRF& entries() const { return a_; }
  std::vector<RatFunc> all_entries() const;
  MatrixRF plane_matrix() const;
  ChartMap substitute(const std::vector<RatFunc>& images) const;

  bool operator==(const ChartMap& o) const { return a_ == o.a_; }
  std::string to_string() const;

 private:
  MatrixRF a_;
};

struct GraphParam {
  ChartMap chart;
  std::vector<RatFunc> z;  // z^0..z^n, not all zero

  std::string to_string() const;
};

// Maximal minors in lexicographic column-subset order; an empty plane has the
// single coordinate 1.
struct PlueckerVector {
  std::size_t k = 0;  // number of spanning rows: plane dimension + 1
  std::size_t N = 0;
  std::vector<RatFunc> coords;

  bool empty() const { return k == 0; }
  std::string to_string() const;
};

PlueckerVector pluecker_of_rows(const MatrixRF& rows);
PlueckerVector pluecker(const ChartMap& c);
bool equal_as_maps(const PlueckerVector& a, const PlueckerVector& b);
PlueckerVector substitute(const PlueckerVector& p, const std::vector<RatFunc>& images);

ProjParam project_graph(const GraphParam& g);

// Rows (j major, then parameter s), columns i; entry d a_i^j / d t_s.
MatrixRF chart_differential_matrix(const ChartMap& c);

struct ShrinkResult {
  std::size_t n = 0;
  int plane_dim = -1;
  std::vector<RFVector> kernel;  // reduced row echelon, leading entries 1
  MatrixRF plane;                // kernel rows pushed into P^N by [E | a]
  PlueckerVector pluecker;
  // Chart coordinates z^i forced to vanish on every kernel vector.
  std::vector<std::size_t> forced_zero;
  // Denominators of the kernel basis: the locus where the map is undefined.
  std::vector<MultiPoly> undefined_locus;

  std::string to_string() const;
};

ShrinkResult shrink(const ChartMap& c);
// Same construction from an explicit kernel basis inside the chart.
ShrinkResult shrink_from_kernel(const ChartMap& c, std::vector<RFVector> kernel);

struct DifferentialConditionResult {
  bool holds = true;
  std::optional<std::size_t> failing_j;  // index in P^N
  DiffVector residual;
};

DifferentialConditionResult graph_differential_condition(const GraphParam& g);
bool graph_kernel_condition(const GraphParam& g);
bool graph_kernel_condition(const GraphParam& g, const ShrinkResult& s);

}  // namespace gmap
