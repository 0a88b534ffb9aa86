#include <gtest/gtest.h>

#include "gmap/error.hpp"
#include "gmap/gauss.hpp"
#include "support.hpp"

using namespace gmap;
using namespace gmap::testing;

namespace {

ProjParam param(const RingPtr& R, const std::string& text) { return ProjParam(parse_vector(R, text)); }

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

// [1 : t_1 : ... : t_n : f_1 : ... : f_c] with random f of degree <= max_deg,
// coordinates then shuffled so the separating ones are not always first.
ProjParam random_graph_variety(const RingPtr& R, Rng& rng, std::size_t codim, unsigned max_deg, bool shuffle) {
  const std::size_t n = R->nvars();
  std::vector<RatFunc> c{RatFunc::from_int(R, 1)};
  for (std::size_t i = 0; i < n; ++i) c.push_back(RatFunc::variable(R, i));
  for (std::size_t k = 0; k < codim; ++k) c.push_back(RatFunc(random_poly(R, rng, max_deg, 4)));
  if (shuffle)
    for (std::size_t i = c.size() - 1; i > 0; --i) std::swap(c[i], c[rng.below(i + 1)]);
  return ProjParam(c);
}

// Independent tangent-plane oracle: the chart plane must equal the span of
// the point and its parameter derivatives (in the adapted coordinates).
bool chart_is_tangent_plane(const GaussData& g) {
  const RingPtr& R = g.chart.ring();
  const auto& f = g.adapted.coords();
  std::vector<RFVector> rows{f};
  for (std::size_t s = 0; s < R->nvars(); ++s) {
    RFVector d;
    for (const auto& x : f) d.push_back(partial(x, s));
    rows.push_back(d);
  }
  MatrixRF tangent = MatrixRF::from_rows(R, rows);
  MatrixRF both = tangent.stacked(g.chart.plane_matrix());
  return rank(tangent) == g.chart.n() + 1 && rank(both) == g.chart.n() + 1;
}

}  // namespace

TEST(Immersive, Examples) {
  auto R5 = make_ring(5, {"t"});
  EXPECT_TRUE(is_immersive(param(R5, "[1, t, t^2]")));
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t"});
    EXPECT_FALSE(is_immersive(param(R, "[1, t^" + std::to_string(p) + "]")));
  }
  auto R2 = make_ring(3, {"t1", "t2"});
  EXPECT_TRUE(is_immersive(param(R2, "[1, t1, t2, t1*t2]")));
  EXPECT_FALSE(is_immersive(param(R2, "[1, t1, t1^2]")));
}

TEST(SeparatingCoords, Examples) {
  auto R = make_ring(3, {"t"});
  EXPECT_EQ(select_separating_coords(param(R, "[1, t, t^2]")), (std::vector<std::size_t>{1}));
  EXPECT_EQ(select_separating_coords(param(R, "[1, t^3, t]")), (std::vector<std::size_t>{2}));
  auto R2 = make_ring(5, {"t1", "t2"});
  EXPECT_EQ(select_separating_coords(param(R2, "[1, t1, t2, t1^2]")), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(select_separating_coords(param(R2, "[t1, 1, t2, t1^2]")), (std::vector<std::size_t>{1, 2}));
  EXPECT_THROW(select_separating_coords(param(R2, "[1, t1, t1^2]")), Error);
}

TEST(ChainRule, Examples) {
  auto R = make_ring(3, {"t"});
  ProjParam x = param(R, "[1, t, t^3 + t^4]");
  EXPECT_EQ(chain_rule(x, {1}, rf(R, "t^3 + t^4")), (RFVector{rf(R, "t^3")}));
  EXPECT_EQ(chain_rule(x, {1}, rf(R, "t")), (RFVector{rf(R, "1")}));
  EXPECT_EQ(chain_rule(x, {1}, rf(R, "2")), (RFVector{rf(R, "0")}));

  // Non-trivial coordinates: z = (t1 + t2, t1*t2); g = z1^2 - z2 gives (2 z1, -1).
  auto S = make_ring(5, {"t1", "t2"});
  ProjParam y = param(S, "[1, t1 + t2, t1*t2]");
  EXPECT_EQ(chain_rule(y, {1, 2}, rf(S, "(t1 + t2)^2 - t1*t2")), (RFVector{rf(S, "2*t1 + 2*t2"), rf(S, "-1")}));
  EXPECT_THROW(chain_rule(param(S, "[1, t1, t1^2]"), {1, 2}, rf(S, "t1")), Error);
}

TEST(ChainRule, ReconstructsDifferential) {
  Rng rng(7);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2"});
    for (int trial = 0; trial < 15; ++trial) {
      ProjParam x({RatFunc::from_int(R, 1), random_ratfunc(R, rng, 2, 3), random_ratfunc(R, rng, 2, 3)});
      if (!is_immersive(x)) continue;
      ChainRule cr(x, {1, 2});
      RatFunc g = random_ratfunc(R, rng, 3, 3);
      RFVector c = cr(g);
      DiffVector sum = zero_differential(R);
      for (std::size_t i = 0; i < 2; ++i) sum = sum + differential(cr.z()[i]).scaled(c[i]);
      EXPECT_EQ(sum, differential(g));
    }
  }
}

TEST(GaussData, Examples) {
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t"});
    std::string tp = "t^" + std::to_string(p);
    GaussData g = gauss_data(param(R, "[1, t, " + tp + "]"));
    EXPECT_EQ(g.chart.to_string(), "chart([[" + tp + "], [0]])");
    EXPECT_EQ(g.rank, 0u);
    EXPECT_TRUE(fields_equal(g.image_gens, SubfieldPresentation::of({rf(R, tp)})));
  }
  auto R5 = make_ring(5, {"t"});
  GaussData conic = gauss_data(param(R5, "[1, t, t^2]"));
  EXPECT_EQ(conic.chart, ChartMap::from_rows(R5, parse_matrix(R5, "[[-t^2], [2*t]]")));
  EXPECT_EQ(conic.rank, 1u);

  auto R3 = make_ring(3, {"t"});
  GaussData c = gauss_data(param(R3, "[1, t, t^3 + t^4]"));
  EXPECT_EQ(c.chart.to_string(), "chart([[t^3], [t^3]])");
  EXPECT_EQ(c.rank, 0u);
  EXPECT_TRUE(fields_equal(c.image_gens, SubfieldPresentation::of({rf(R3, "t^3")})));

  EXPECT_THROW(gauss_data(param(R3, "[1, t^3]")), Error);
}

TEST(GaussData, AdaptedPermutationRecorded) {
  auto R = make_ring(3, {"t"});
  GaussData g = gauss_data(param(R, "[t^3, t, 1]"));
  EXPECT_EQ(g.permutation, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(g.adapted.to_string(), "[1, 1/t^2, 1/t^3]");
  GaussData h = gauss_data(param(R, "[1, t^3, t]"));
  EXPECT_EQ(h.permutation, (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_EQ(h.chart.to_string(), "chart([[t^3], [0]])");
}

TEST(Separability, Examples) {
  auto R5 = make_ring(5, {"t"});
  EXPECT_TRUE(is_separable_gauss(param(R5, "[1, t, t^2]")));
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t"});
    EXPECT_FALSE(is_separable_gauss(param(R, "[1, t, t^" + std::to_string(p) + "]")));
  }
  auto S = make_ring(3, {"t1", "t2"});
  EXPECT_TRUE(is_separable_gauss(param(S, "[1, t1, t2, t1^2 + t2^2]")));
}

TEST(GraphOfGauss, Examples) {
  auto R3 = make_ring(3, {"t"});
  GraphParam g = graph_of_gauss(param(R3, "[1, t, t^3 + t^4]"));
  EXPECT_EQ(g.to_string(), "graph(chart([[t^3], [t^3]]), [1, t])");
  EXPECT_TRUE(graph_differential_condition(g).holds);

  auto R5 = make_ring(5, {"t"});
  GraphParam c = graph_of_gauss(param(R5, "[1, t, t^2]"));
  EXPECT_EQ(c.to_string(), "graph(chart([[4*t^2], [2*t]]), [1, t])");
  EXPECT_TRUE(graph_differential_condition(c).holds);

  auto S = make_ring(5, {"t1", "t2"});
  GraphParam lin = graph_of_gauss(param(S, "[1, t1, t2, 2*t1 + 3*t2 + 1, t1 - t2]"));
  for (const auto& e : lin.chart.all_entries()) EXPECT_TRUE(e.is_constant());
  EXPECT_TRUE(graph_differential_condition(lin).holds);
}

TEST(SecondFundamentalForm, Examples) {
  auto S = make_ring(3, {"z1", "z2"});
  SFFData q = second_fundamental_form(param(S, "[1, z1, z2, z1^2 + z2^2]"));
  ASSERT_EQ(q.hessians.size(), 1u);
  EXPECT_EQ(q.hessians[0], MatrixRF::from_rows(S, parse_matrix(S, "[[2, 0], [0, 2]]")));
  SFFData m = second_fundamental_form(param(S, "[1, z1, z2, z1*z2]"));
  EXPECT_EQ(m.hessians[0], MatrixRF::from_rows(S, parse_matrix(S, "[[0, 1], [1, 0]]")));
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t"});
    SFFData s = second_fundamental_form(param(R, "[1, t, t^" + std::to_string(p) + "]"));
    EXPECT_TRUE(s.hessians[0].is_zero());
  }
}

TEST(DegeneracyMap, Examples) {
  auto S = make_ring(3, {"z1", "z2"});
  ShrinkResult quad = degeneracy_map(param(S, "[1, z1, z2, z1^2 + z2^2]"));
  // Only the tautological row: the map is the point itself.
  EXPECT_EQ(quad.plane_dim, 0);
  ASSERT_EQ(quad.kernel.size(), 1u);
  EXPECT_EQ(quad.kernel[0], parse_vector(S, "[1, z1, z2]"));

  ShrinkResult cone = degeneracy_map(param(S, "[1, z1, z2, z1^2]"));
  EXPECT_EQ(cone.plane_dim, 1);
  EXPECT_EQ(cone.to_string(), "plane_dim=1 kernel=[[1, z1, 0], [0, 0, 1]]");

  auto R = make_ring(5, {"t"});
  ShrinkResult strange = degeneracy_map(param(R, "[1, t, t^5]"));
  EXPECT_EQ(strange.plane_dim, 1);
  EXPECT_EQ(strange.kernel.size(), 2u);
}

TEST(DegeneracyVsShrink, Examples) {
  auto S = make_ring(3, {"z1", "z2"});
  EXPECT_TRUE(degeneracy_matches_shrink(param(S, "[1, z1, z2, z1^2 + z2^2]")));
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t"});
    EXPECT_TRUE(degeneracy_matches_shrink(param(R, "[1, t, t^" + std::to_string(p) + "]")));
  }
}

TEST(DegeneracyFactorization, Examples) {
  auto R = make_ring(5, {"t"});
  DegeneracyFactorization c = verify_degeneracy_factorization(param(R, "[1, t, t^2]"));
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.image_dim, 1u);
  EXPECT_EQ(c.degeneracy_plane_dim, 0);

  auto S = make_ring(3, {"z1", "z2"});
  DegeneracyFactorization q = verify_degeneracy_factorization(param(S, "[1, z1, z2, z1*z2]"));
  EXPECT_TRUE(q.holds);
  EXPECT_EQ(q.image_dim, 2u);

  DegeneracyFactorization cone = verify_degeneracy_factorization(param(S, "[1, z1, z2, z1^2]"));
  EXPECT_TRUE(cone.holds);
  EXPECT_EQ(cone.degeneracy_plane_dim, 1);

  auto R3 = make_ring(3, {"t"});
  try {
    verify_degeneracy_factorization(param(R3, "[1, t, t^3]"));
    FAIL() << "inseparable input accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

// Random hypersurfaces and complete intersections: chart is the tangent
// plane, the graph satisfies the differential condition, rank bounds, symmetric second
// fundamental form, and the degeneracy map equals the shrinking map.
TEST(GaussProperties, RandomCorpus) {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; checked < 100 && trial < 400; ++trial) {
    const unsigned p = std::vector<unsigned>{2, 3, 5}[rng.below(3)];
    const std::size_t n = 1 + rng.below(2), codim = 1 + rng.below(2);
    auto R = make_ring(p, names(n));
    ProjParam x = random_graph_variety(R, rng, codim, 4, rng.coin(2));
    ASSERT_TRUE(is_immersive(x));
    GaussData g = gauss_data(x);
    EXPECT_TRUE(chart_is_tangent_plane(g)) << x.to_string();
    EXPECT_TRUE(graph_differential_condition(graph_of_gauss(g)).holds) << x.to_string();
    EXPECT_LE(g.rank, n);
    EXPECT_LE(g.rank, image_dimension(g.image_gens));
    EXPECT_TRUE(second_fundamental_form(g).symmetric());
    EXPECT_TRUE(degeneracy_matches_shrink(g)) << x.to_string();
    ++checked;
  }
  EXPECT_EQ(checked, 100);
}

TEST(GaussProperties, RationalCoordinates) {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; checked < 25 && trial < 200; ++trial) {
    const unsigned p = std::vector<unsigned>{3, 5}[rng.below(2)];
    auto R = make_ring(p, {"t"});
    std::vector<RatFunc> c;
    for (int i = 0; i < 3; ++i) c.push_back(random_ratfunc(R, rng, 2, 2));
    if (std::all_of(c.begin(), c.end(), [](const RatFunc& f) { return f.is_zero(); })) continue;
    ProjParam x(c);
    if (!is_immersive(x)) continue;
    GaussData g = gauss_data(x);
    EXPECT_TRUE(chart_is_tangent_plane(g)) << x.to_string();
    EXPECT_TRUE(graph_differential_condition(graph_of_gauss(g)).holds) << x.to_string();
    EXPECT_TRUE(degeneracy_matches_shrink(g));
    ++checked;
  }
  EXPECT_EQ(checked, 25);
}

TEST(GaussProperties, CharacteristicTwoRankIsNeverOne) {
  Rng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(2);
    auto R = make_ring(2, names(n));
    GaussData g = gauss_data(random_graph_variety(R, rng, 1, 5, false));
    EXPECT_NE(g.rank, 1u) << g.adapted.to_string();
  }
}
