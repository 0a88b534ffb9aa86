#include <gtest/gtest.h>

#include "gmap/error.hpp"
#include "gmap/grassmann.hpp"
#include "support.hpp"

using namespace gmap;
using namespace gmap::testing;

namespace {

ChartMap chart(const RingPtr& R, const std::string& text) { return ChartMap::from_rows(R, parse_matrix(R, text)); }

// Plane family with chart column (1, x, y), y = v^p: any graph over it forces z^1 = 0.
ChartMap plane_family(const RingPtr& R, unsigned p) {
  return chart(R, "[[1], [x], [v^" + std::to_string(p) + "]]");
}

ChartMap random_chart(const RingPtr& R, Rng& rng, std::size_t n, std::size_t N, bool pth_powers) {
  MatrixRF a(R, n + 1, N - n);
  const unsigned p = R->F().characteristic();
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j < N - n; ++j) {
      RatFunc e = rng.coin(4) ? random_ratfunc(R, rng, 2, 2) : RatFunc(random_poly(R, rng, 2, 3));
      if (pth_powers || rng.coin(3)) e = e.pow(p);
      a(i, j) = e;
    }
  return ChartMap(a);
}

}  // namespace

TEST(GraphProjection, Examples) {
  auto R = make_ring(5, {"t1", "t2"});
  GraphParam flat{ChartMap(MatrixRF(R, 3, 2)), parse_vector(R, "[1, t1, t2]")};
  EXPECT_EQ(project_graph(flat).to_string(), "[1, t1, t2, 0, 0]");

  auto S = make_ring(3, {"x", "v", "u", "w"});
  GraphParam ex{plane_family(S, 3), parse_vector(S, "[1, u, w]")};
  EXPECT_EQ(project_graph(ex).coords()[3], rf(S, "1 + u*x + w*v^3"));

  auto T = make_ring(3, {"t"});
  GraphParam curve{chart(T, "[[t^3], [t^3]]"), parse_vector(T, "[1, t]")};
  EXPECT_EQ(project_graph(curve).to_string(), "[1, t, t^4 + t^3]");
}

TEST(ChartDifferential, Examples) {
  auto R = make_ring(3, {"x", "v"});
  EXPECT_TRUE(chart_differential_matrix(chart(R, "[[1, 2], [x^3, 1]]")).is_zero());
  MatrixRF dm = chart_differential_matrix(plane_family(R, 3));
  ASSERT_EQ(dm.rows(), 2u);
  ASSERT_EQ(dm.cols(), 3u);
  EXPECT_EQ(dm, MatrixRF::from_rows(R, parse_matrix(R, "[[0, 1, 0], [0, 0, 0]]")));
  EXPECT_TRUE(chart_differential_matrix(chart(R, "[[x^3*v^6], [x^3 + v^3]]")).is_zero());
}

TEST(Shrink, RankZeroChartIsItsOwnShrink) {
  Rng rng(41);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2"});
    for (int k = 0; k < 5; ++k) {
      ChartMap c = random_chart(R, rng, 1 + k % 2, 3 + k % 2, true);
      ShrinkResult s = shrink(c);
      EXPECT_EQ(s.plane_dim, static_cast<int>(c.n()));
      EXPECT_TRUE(equal_as_maps(s.pluecker, pluecker(c)));
    }
  }
}

TEST(Shrink, PlaneFamilyForcesSecondCoordinate) {
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"x", "v"});
    ShrinkResult s = shrink(plane_family(R, p));
    EXPECT_EQ(s.plane_dim, 1);
    EXPECT_EQ(s.to_string(), "plane_dim=1 kernel=[[1, 0, 0], [0, 0, 1]]");
    EXPECT_EQ(s.forced_zero, (std::vector<std::size_t>{1}));
  }
}

TEST(Shrink, FullRankDifferentialGivesEmptyPlane) {
  auto R = make_ring(5, {"t1", "t2"});
  ShrinkResult s = shrink(chart(R, "[[t1^2, t2], [t1, t2^2], [t2, t1*t2]]"));
  EXPECT_EQ(s.plane_dim, -1);
  EXPECT_TRUE(s.kernel.empty());
  EXPECT_TRUE(s.pluecker.empty());
  GraphParam g{chart(R, "[[t1^2, t2], [t1, t2^2], [t2, t1*t2]]"), parse_vector(R, "[1, t1, t2]")};
  EXPECT_FALSE(graph_kernel_condition(g));
}

TEST(GraphConditions, Examples) {
  auto R = make_ring(3, {"x", "v", "u", "w"});
  GraphParam bad{plane_family(R, 3), parse_vector(R, "[1, u, w]")};
  auto ii = graph_differential_condition(bad);
  EXPECT_FALSE(ii.holds);
  ASSERT_TRUE(ii.failing_j.has_value());
  EXPECT_EQ(*ii.failing_j, 3u);
  EXPECT_EQ(ii.residual.to_string(), "u*dx");
  EXPECT_FALSE(graph_kernel_condition(bad));

  GraphParam rank0{chart(R, "[[x^3], [v^3], [1]]"), parse_vector(R, "[u, w, x]")};
  EXPECT_TRUE(graph_differential_condition(rank0).holds);
  EXPECT_TRUE(graph_kernel_condition(rank0));

  auto T = make_ring(3, {"t"});
  GraphParam curve{chart(T, "[[t^3], [t^3]]"), parse_vector(T, "[1, t]")};
  EXPECT_TRUE(graph_differential_condition(curve).holds);
  EXPECT_TRUE(graph_kernel_condition(curve));
}

TEST(GraphConditions, DifferentialAgreesWithKernelOnRandomGraphs) {
  Rng rng(42);
  int positives = 0;
  for (int k = 0; k < 60; ++k) {
    unsigned p = std::vector<unsigned>{2, 3, 5}[k % 3];
    auto R = make_ring(p, {"t1", "t2"});
    std::size_t n = 1 + rng.below(2), N = n + 1 + rng.below(2);
    ChartMap c = random_chart(R, rng, n, N, false);
    std::vector<RatFunc> z;
    ShrinkResult s = shrink(c);
    if (k % 2 == 0 && !s.kernel.empty()) {
      z.assign(n + 1, RatFunc(R));
      for (const auto& v : s.kernel) {
        RatFunc coef = random_ratfunc(R, rng, 1, 2);
        for (std::size_t i = 0; i <= n; ++i) z[i] += coef * v[i];
      }
    } else {
      for (std::size_t i = 0; i <= n; ++i) z.push_back(random_ratfunc(R, rng, 2, 2));
    }
    if (std::all_of(z.begin(), z.end(), [](const RatFunc& x) { return x.is_zero(); })) continue;
    GraphParam g{c, z};
    bool ii = graph_differential_condition(g).holds;
    EXPECT_EQ(ii, graph_kernel_condition(g, s)) << g.to_string();
    positives += ii;
  }
  EXPECT_GT(positives, 10);
}

TEST(Pluecker, Examples) {
  auto R = make_ring(5, {"t"});
  EXPECT_EQ(pluecker(chart(R, "[[t]]")).to_string(), "[1, t]");
  EXPECT_FALSE(equal_as_maps(pluecker(chart(R, "[[1, 0]]")), pluecker(chart(R, "[[0, 1]]"))));
  auto p = pluecker(chart(R, "[[1, 2], [3, 4]]"));
  EXPECT_EQ(p.coords.size(), 6u);
  auto scaled = p;
  for (auto& c : scaled.coords) c = c * rf(R, "t^2 + 1");
  EXPECT_TRUE(equal_as_maps(p, scaled));
}

TEST(Pluecker, ShrinkCommutesWithSeparableReparametrization) {
  Rng rng(43);
  for (unsigned p : {2u, 3u, 5u}) {
    auto U = make_ring(p, {"u1", "u2"});
    auto T = make_ring(p, {"t1", "t2"});
    for (int k = 0; k < 4; ++k) {
      ChartMap c = random_chart(U, rng, 1, 3, false);
      std::vector<RatFunc> g = {rf(T, "t1 + t2^2"), rf(T, "t2 + t1^" + std::to_string(p))};
      ShrinkResult composed = shrink(c.substitute(g));
      PlueckerVector pulled = substitute(shrink(c).pluecker, g);
      EXPECT_TRUE(equal_as_maps(composed.pluecker, pulled)) << c.to_string();
    }
  }
}
