#pragma once

#include <string>
#include <vector>

#include "gmap/ratfunc.hpp"

namespace gmap {

// [f^0 : ... : f^N] over L; `pivot` is the coordinate used for affine
// normalization (first nonzero one unless given).
class ProjParam {
 public:
  explicit ProjParam(std::vector<RatFunc> coords);
  ProjParam(std::vector<RatFunc> coords, std::size_t pivot);

  const RingPtr& ring() const { return coords_.front().ring(); }
  std::size_t N() const { return coords_.size() - 1; }
  const std::vector<RatFunc>& coords() const { return coords_; }
  const RatFunc& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t pivot() const { return pivot_; }

  // f^i / f^pivot for i != pivot, in index order.
  std::vector<RatFunc> affine() const;
  std::vector<std::size_t> affine_indices() const;
  // Every coordinate divided by the pivot coordinate.
  ProjParam normalized() const;
  bool projectively_equal(const ProjParam& o) const;

  std::string to_string() const;

 private:
  std::vector<RatFunc> coords_;
  std::size_t pivot_;
};

}  // namespace gmap
