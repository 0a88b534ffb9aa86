#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmap/gauss.hpp"
#include "gmap/report.hpp"

namespace gmap {

struct ConstructOptions {
  EliminationOptions elim;
  // Resamples of a seeded "general" choice before giving up or extending.
  unsigned max_retries = 32;
  // Largest field degree e' (as a multiple of the input degree) tried when
  // every element of the current field is a bad choice.
  unsigned max_ext = 4;
};

// Result of a construction: the variety, the graph it was projected from
// (when there is one), and the verification report.
struct Construction {
  ProjParam X;
  std::optional<GraphParam> graph;
  Report report;
};

// Coordinates linearly independent over the coefficient field, i.e. the
// image spans its ambient space.
bool is_nondegenerate(const ProjParam& x);

// ---- inseparable hypersurfaces ----

// L = F_q(t_1..t_n) with n the number of ring parameters;
// K = k(x_part, y_part, a), r = |x_part|, m = r + |y_part|.
struct InsepSpec {
  std::vector<RatFunc> x_part;
  std::vector<RatFunc> y_part;
  RatFunc a;
  std::vector<RatFunc> x_tail;

  const RingPtr& ring() const { return a.ring(); }
  std::size_t n() const { return ring()->nvars(); }
  std::size_t r() const { return x_part.size(); }
  std::size_t m() const { return x_part.size() + y_part.size(); }
  SubfieldPresentation K() const;
  InsepSpec lift(const RingPtr& target, const FieldEmbedding& emb) const;
  std::string to_string() const;
};

// Checks the declared shape: rank of the K-differentials is r, tr.deg K = m,
// 0 <= r < m, x_part + x_tail separating, and K(x_tail) = L.  Throws
// Precondition naming the first failure.
void validate(const InsepSpec& spec, const EliminationOptions& opt = {});

struct SeparatingBasis {
  std::vector<RatFunc> x_part;
  std::vector<RatFunc> x_tail;
  bool needs_assistance = false;
  // Set when a user primitive element w replaced the last tail entry by
  // w + c * x_last.
  std::optional<Elem> shift;
  std::string note;
};

// Greedy separating basis adapted to K: x_part from the generators of K with
// independent differentials, x_tail from `pool` (default: the parameters).
// Reports needs_assistance when K(x_tail) != L; given a primitive element w of
// the missing separable part, retries with w + c * x_last for seeded c.
SeparatingBasis select_separating_basis(const SubfieldPresentation& K, std::vector<RatFunc> pool = {},
                              std::optional<RatFunc> primitive = std::nullopt, std::uint64_t seed = 0,
                              const EliminationOptions& opt = {});

// b with da + sum_k x_tail[k] d y_part[k] = sum_i b_i d x_part[i].  Throws
// Inconsistent when no such b exists.
std::vector<RatFunc> solve_b(const InsepSpec& spec);

struct FChoice {
  InsepSpec spec;  // lifted when the field had to be extended
  std::vector<RatFunc> b;
  RatFunc f;
  std::vector<RatFunc> f_partials;  // df/dx_i, i = 1..r
  Elem t = 0;
  unsigned attempts = 0;
};

// f = t * sum x_i^2 (p odd) or t * sum x_{2l-1} x_{2l} (r even), with t the
// first seeded constant making f_{x_i} - b_i, x_tail a separating basis.
FChoice choose_f(const InsepSpec& spec, const std::vector<RatFunc>& b, std::uint64_t seed,
                 const ConstructOptions& opt = {});

// Hypersurface in P^{n+1} whose Gauss map realizes L / K.
Construction construct_insep(const InsepSpec& spec, std::uint64_t seed, const ConstructOptions& opt = {});

// ---- rank zero over a prescribed image ----

// Chart entries must all be p-th powers; z = (1, t_1, ..., t_n).
Construction construct_rank0(const ChartMap& chart, std::uint64_t seed, const ConstructOptions& opt = {});

// Appends `extra` coordinates from (K(gamma(X)))^p.
Construction pad_embed(const ProjParam& x, std::size_t extra, std::uint64_t seed, const ConstructOptions& opt = {});

// ---- families ----

// Total space of a family over Y, parametrized by v = (v_1..v_n):
// base coordinates s_k = base_map[k](v) depend only on v_1..v_d and generate
// k(v_1..v_d); the fiber point is [fiber[0] : ... : fiber[N']](v).
struct FamilySpec {
  ChartMap base_chart;           // in the base ring, d parameters
  std::vector<RatFunc> base_map;  // d entries, in the total ring
  std::vector<RatFunc> fiber;     // N' + 1 entries, in the total ring

  std::size_t d() const { return base_chart.ring()->nvars(); }
  std::size_t n() const { return fiber.front().ring()->nvars(); }
  std::size_t N_fiber() const { return fiber.size() - 1; }
};

// Frobenius pullback along the base, Segre product with the fiber, seeded
// linear projection to P^n, graph projection.  Output parameters w_1..w_n
// with v_k = w_k^p for k <= d and v_k = w_k otherwise.
Construction construct_family(const FamilySpec& spec, std::uint64_t seed, const ConstructOptions& opt = {});

// ---- joins and seeds ----

// [1 : affine(x1) : affine(x2)] over the union of the (disjoint) parameters.
Construction join_product(const ProjParam& x1, const ProjParam& x2, const ConstructOptions& opt = {});

// Variety with birational Gauss map of rank r: the quadric sum z_i^2 (p odd),
// the pairing z1 z2 + z3 z4 + ... (p = 2, r even), or for p = 2, r odd the
// (r+2)-dimensional-ambient form with t f + z1 z2 + ... + z_{r-2} z_{r-1} and
// z_{r-1} z_r.  `f` defaults to a seeded polynomial in the z's.
Construction birational_gauss_seed(const FieldPtr& field, std::size_t r, std::uint64_t seed,
                                   std::optional<RatFunc> f = std::nullopt, const ConstructOptions& opt = {});

}  // namespace gmap
