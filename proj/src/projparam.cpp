#include "gmap/projparam.hpp"

#include "gmap/error.hpp"

namespace gmap {

namespace {

std::size_t first_nonzero(const std::vector<RatFunc>& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) return i;
  throw Error(ErrorCode::InvalidArgument, "projective point with all coordinates zero");
}

}  // namespace

ProjParam::ProjParam(std::vector<RatFunc> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorCode::InvalidArgument, "projective parametrization needs coordinates");
  pivot_ = first_nonzero(coords_);
}

ProjParam::ProjParam(std::vector<RatFunc> coords, std::size_t pivot) : coords_(std::move(coords)), pivot_(pivot) {
  if (coords_.empty()) throw Error(ErrorCode::InvalidArgument, "projective parametrization needs coordinates");
  if (pivot_ >= coords_.size() || coords_[pivot_].is_zero())
    throw Error(ErrorCode::InvalidArgument, "pivot coordinate must be nonzero");
  for (const auto& c : coords_)
    if (!same_ring(c.ring(), ring())) throw Error(ErrorCode::InvalidArgument, "coordinates from different rings");
}

std::vector<RatFunc> ProjParam::affine() const {
  std::vector<RatFunc> out;
  RatFunc inv = coords_[pivot_].inverse();
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (i != pivot_) out.push_back(coords_[i] * inv);
  return out;
}

std::vector<std::size_t> ProjParam::affine_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (i != pivot_) out.push_back(i);
  return out;
}

ProjParam ProjParam::normalized() const {
  std::vector<RatFunc> c;
  RatFunc inv = coords_[pivot_].inverse();
  for (const auto& x : coords_) c.push_back(x * inv);
  return ProjParam(std::move(c), pivot_);
}

bool ProjParam::projectively_equal(const ProjParam& o) const {
  if (coords_.size() != o.coords_.size()) return false;
  const std::size_t i0 = pivot_;
  if (o.coords_[i0].is_zero()) return false;
  for (std::size_t k = 0; k < coords_.size(); ++k)
    if (coords_[k] * o.coords_[i0] != o.coords_[k] * coords_[i0]) return false;
  return true;
}

std::string ProjParam::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ", " : "") + coords_[i].to_string();
  return s + "]";
}

}  // namespace gmap
