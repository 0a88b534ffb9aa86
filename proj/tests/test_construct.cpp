#include <gtest/gtest.h>

#include "gmap/construct.hpp"
#include "gmap/error.hpp"
#include "support.hpp"

using namespace gmap;
using namespace gmap::testing;

namespace {

ProjParam param(const RingPtr& R, const std::string& text) { return ProjParam(parse_vector(R, text)); }
std::vector<RatFunc> vec(const RingPtr& R, const std::string& text) { return parse_vector(R, text); }
ChartMap chart(const RingPtr& R, const std::string& text) { return ChartMap::from_rows(R, parse_matrix(R, text)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

InsepSpec curve_spec() {
  auto R = make_ring(3, {"t"});
  return InsepSpec{{}, vec(R, "[t^3]"), rf(R, "t^3"), vec(R, "[t]")};
}

InsepSpec surface_spec() {
  auto R = make_ring(3, {"t1", "t2"});
  return InsepSpec{vec(R, "[t1]"), vec(R, "[t2^3]"), rf(R, "t1"), vec(R, "[t2]")};
}

}  // namespace

TEST(Nondegenerate, Examples) {
  auto R = make_ring(3, {"t"});
  EXPECT_TRUE(is_nondegenerate(param(R, "[1, t, t^3 + t^4]")));
  EXPECT_FALSE(is_nondegenerate(param(R, "[1, t, t + 1]")));
  EXPECT_TRUE(is_nondegenerate(param(R, "[1, 1/t, 1/(t + 1)]")));
  EXPECT_FALSE(is_nondegenerate(param(R, "[1, 1/t, (t + 1)/t]")));
}

TEST(SeparatingBasis, Examples) {
  for (unsigned p : {2u, 3u}) {
    auto R = make_ring(p, {"t"});
    auto out = select_separating_basis(SubfieldPresentation::of({rf(R, "t^" + std::to_string(p))}));
    EXPECT_TRUE(out.x_part.empty());
    EXPECT_EQ(out.x_tail, vec(R, "[t]"));
    EXPECT_FALSE(out.needs_assistance);
  }
  auto S = make_ring(3, {"t1", "t2"});
  auto two = select_separating_basis(SubfieldPresentation::of(vec(S, "[t1, t2^3]")));
  EXPECT_EQ(two.x_part, vec(S, "[t1]"));
  EXPECT_EQ(two.x_tail, vec(S, "[t2]"));
  auto full = select_separating_basis(SubfieldPresentation::of(vec(S, "[t1, t2]")));
  EXPECT_EQ(full.x_part, vec(S, "[t1, t2]"));
  EXPECT_TRUE(full.x_tail.empty());
}

TEST(SeparatingBasis, NeedsAssistanceThenPrimitiveElement) {
  // K = k(t^2) in char 3: the pool {t^2} has a nonzero differential but
  // K(t^2) = K != L, so the separable part needs the primitive element t.
  auto R = make_ring(3, {"t"});
  auto K = SubfieldPresentation::of({rf(R, "t^6")});
  auto stuck = select_separating_basis(K, {rf(R, "t^2")});
  EXPECT_TRUE(stuck.needs_assistance);
  auto helped = select_separating_basis(K, {rf(R, "t^2")}, rf(R, "t"), 5);
  EXPECT_FALSE(helped.needs_assistance);
  ASSERT_TRUE(helped.shift.has_value());
  EXPECT_TRUE(fields_equal(SubfieldPresentation::of({rf(R, "t^6"), helped.x_tail[0]}), SubfieldPresentation::of({rf(R, "t")})));
}

TEST(SolveB, Examples) {
  EXPECT_TRUE(solve_b(curve_spec()).empty());
  InsepSpec s = surface_spec();
  auto b = solve_b(s);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], rf(s.ring(), "1"));
  // y2 = t2^3 but a = t1 + t2^2 with no x to absorb d(t2^2): declared r = 0 is wrong.
  auto R = s.ring();
  InsepSpec bad{{}, vec(R, "[t1, t2^3]"), rf(R, "t1"), vec(R, "[t1, t2]")};
  EXPECT_EQ(code_of([&] { solve_b(bad); }), ErrorCode::Inconsistent);
}

TEST(ChooseF, Examples) {
  FChoice zero = choose_f(curve_spec(), {}, 1);
  EXPECT_TRUE(zero.f.is_zero());

  InsepSpec s = surface_spec();
  FChoice c = choose_f(s, solve_b(s), 11);
  EXPECT_NE(c.t, 0u);
  EXPECT_EQ(c.f, rf(s.ring(), "t1^2").scale(c.t));
  EXPECT_EQ(c.f_partials[0], rf(s.ring(), "2*t1").scale(c.t));

  // char 2, r = 2: pairing form f = t x1 x2.
  auto R = make_ring(2, {"t1", "t2", "t3"});
  InsepSpec even{vec(R, "[t1, t2]"), vec(R, "[t3^2]"), rf(R, "t1*t2 + t3^2"), vec(R, "[t3]")};
  FChoice e = choose_f(even, solve_b(even), 3);
  // F_2 has one unit; the constant may live in an extension.
  const RingPtr& Re = e.spec.ring();
  EXPECT_EQ(e.f, rf(Re, "t1*t2").scale(e.t));
  EXPECT_EQ(e.f_partials, (std::vector<RatFunc>{rf(Re, "t2").scale(e.t), rf(Re, "t1").scale(e.t)}));

  auto R2 = make_ring(2, {"t1", "t2"});
  InsepSpec odd{vec(R2, "[t1]"), vec(R2, "[t2^2]"), rf(R2, "t1"), vec(R2, "[t2]")};
  EXPECT_EQ(code_of([&] { choose_f(odd, solve_b(odd), 1); }), ErrorCode::Precondition);
}

TEST(ConstructInsep, WorkedCurve) {
  Construction c = construct_insep(curve_spec(), 0);
  EXPECT_EQ(c.X.to_string(), "[1, t, t^4 + t^3]");
  EXPECT_TRUE(c.report.all_pass());
  GaussData g = gauss_data(c.X);
  EXPECT_EQ(g.rank, 0u);
  EXPECT_TRUE(fields_equal(g.image_gens, SubfieldPresentation::of({rf(c.X.ring(), "t^3")})));
}

TEST(ConstructInsep, RankOneSurface) {
  InsepSpec s = surface_spec();
  Construction c = construct_insep(s, 7);
  EXPECT_TRUE(c.report.all_pass());
  GaussData g = gauss_data(c.X);
  EXPECT_EQ(g.rank, 1u);
  EXPECT_EQ(rank_delta(g.image_gens), 1u);
  EXPECT_TRUE(fields_equal(g.image_gens, s.K()));
  EXPECT_EQ(c.X.N(), 3u);
}

TEST(ConstructInsep, Rejections) {
  auto R2 = make_ring(2, {"t1", "t2"});
  InsepSpec odd{vec(R2, "[t1]"), vec(R2, "[t2^2]"), rf(R2, "t1"), vec(R2, "[t2]")};
  EXPECT_EQ(code_of([&] { construct_insep(odd, 1); }), ErrorCode::Precondition);
  // Separable: K = L.
  auto R = make_ring(3, {"t"});
  InsepSpec sep{vec(R, "[t]"), {}, rf(R, "t"), {}};
  EXPECT_EQ(code_of([&] { construct_insep(sep, 1); }), ErrorCode::Precondition);
  // Declared r = 0 for K = k(t1, t2^3) is wrong.
  auto S = make_ring(3, {"t1", "t2"});
  InsepSpec mis{{}, vec(S, "[t1, t2^3]"), rf(S, "t1"), vec(S, "[t1, t2]")};
  EXPECT_EQ(code_of([&] { construct_insep(mis, 1); }), ErrorCode::Precondition);
}

// Round trip on seeded random specs: K = k(x_1..x_r, y^p...) for random
// separating x's built from the parameters.
TEST(ConstructInsep, RoundTripRandom) {
  Rng rng(31);
  int done = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const unsigned p = trial % 2 ? 3 : 5;
    auto R = make_ring(p, {"t1", "t2"});
    const std::string ps = std::to_string(p);
    // x1 = t1 + c t2^p (separable in t1), y = (t2 + h(t1))^p, a = x1 + y * t1^p.
    RatFunc x1 = rf(R, "t1") + RatFunc(random_poly(R, rng, 1, 2)).pow(p);
    RatFunc y = (rf(R, "t2") + RatFunc(random_poly(R, rng, 2, 2))).pow(p);
    RatFunc a = x1 * x1 + y;
    InsepSpec s{{x1}, {y}, a, vec(R, "[t2]")};
    try {
      validate(s);
    } catch (const Error&) {
      continue;
    }
    Construction c = construct_insep(s, static_cast<std::uint64_t>(trial));
    GaussData g = gauss_data(c.X);
    EXPECT_EQ(g.rank, 1u);
    EXPECT_TRUE(fields_equal(g.image_gens, s.K())) << s.to_string();
    ++done;
  }
  EXPECT_GE(done, 8);
}

TEST(ConstructRank0, Examples) {
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t"});
    const std::string ps = std::to_string(p);
    Construction c = construct_rank0(chart(R, "[[t^" + ps + "], [t^" + std::to_string(2 * p) + "]]"), 0);
    EXPECT_EQ(c.X.coords(), vec(R, "[1, t, t^" + ps + " + t*t^" + std::to_string(2 * p) + "]"));
    EXPECT_TRUE(c.report.all_pass());
    EXPECT_TRUE(fields_equal(gauss_data(c.X).image_gens,
                             SubfieldPresentation::of({rf(R, "t^" + ps), rf(R, "t^" + std::to_string(2 * p))})));
  }
  auto S = make_ring(3, {"t1", "t2"});
  Construction flat = construct_rank0(chart(S, "[[1], [2], [0]]"), 0);
  EXPECT_EQ(flat.X.coords(), vec(S, "[1, t1, t2, 1 + 2*t1]"));
  EXPECT_EQ(gauss_data(flat.X).rank, 0u);
  auto R = make_ring(3, {"t"});
  EXPECT_EQ(code_of([&] { construct_rank0(chart(R, "[[t], [1]]"), 0); }), ErrorCode::Precondition);
}

TEST(ConstructRank0, RoundTripRandom) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const unsigned p = std::vector<unsigned>{2, 3, 5}[rng.below(3)];
    auto R = make_ring(p, {"t1", "t2"});
    MatrixRF a(R, 3, 1 + rng.below(2));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = RatFunc(random_poly(R, rng, 2, 2)).pow(p);
    Construction c = construct_rank0(ChartMap(a), 0);
    GaussData g = gauss_data(c.X);
    EXPECT_EQ(g.rank, 0u);
    for (const auto& e : g.image_gens.gens) EXPECT_TRUE(pth_root(e).has_value());
  }
}

TEST(PadEmbed, Examples) {
  auto R = make_ring(3, {"t"});
  ProjParam x = param(R, "[1, t, t^3 + t^4]");
  Construction same = pad_embed(x, 0, 1);
  EXPECT_EQ(same.X.coords(), x.coords());
  Construction one = pad_embed(x, 1, 1);
  EXPECT_EQ(one.X.N(), 3u);
  EXPECT_TRUE(one.report.all_pass());
  EXPECT_TRUE(pth_root(one.X.affine().back()).has_value());
  EXPECT_TRUE(fields_equal(gauss_data(one.X).image_gens, SubfieldPresentation::of({rf(R, "t^3")})));
  EXPECT_TRUE(is_nondegenerate(one.X));

  Construction lin = pad_embed(param(R, "[1, t]"), 1, 1);
  EXPECT_EQ(gauss_data(lin.X).rank, 0u);
}

TEST(ConstructFamily, ConicFibersOverACurveOfPlanes) {
  auto S = make_ring(3, {"s"});
  auto V = make_ring(3, {"v1", "v2"});
  FamilySpec spec{chart(S, "[[s], [s^2], [s^3]]"), vec(V, "[v1]"), vec(V, "[1, v2, v2^2]")};
  Construction c = construct_family(spec, 5);
  EXPECT_TRUE(c.report.all_pass());
  EXPECT_EQ(gauss_data(c.X).rank, 0u);
  ASSERT_TRUE(c.graph.has_value());
  EXPECT_TRUE(graph_kernel_condition(*c.graph));
  EXPECT_EQ(c.X.N(), 3u);
}

TEST(ConstructFamily, FiberVaryingWithBase) {
  auto S = make_ring(5, {"s"});
  auto V = make_ring(5, {"v1", "v2"});
  FamilySpec spec{chart(S, "[[s^2], [s], [1]]"), vec(V, "[v1]"), vec(V, "[1, v2, v1*v2^2]")};
  Construction c = construct_family(spec, 2);
  EXPECT_TRUE(c.report.all_pass());
  EXPECT_EQ(gauss_data(c.X).rank, 0u);
}

TEST(ConstructFamily, Rejections) {
  auto S = make_ring(3, {"s"});
  auto V = make_ring(3, {"v1", "v2"});
  FamilySpec flat{chart(S, "[[1], [2], [0]]"), vec(V, "[v1]"), vec(V, "[1, v2, v2^2]")};
  EXPECT_EQ(code_of([&] { construct_family(flat, 1); }), ErrorCode::Precondition);
  FamilySpec wrong_n{chart(S, "[[s], [s^2]]"), vec(V, "[v1]"), vec(V, "[1, v2, v2^2]")};
  EXPECT_EQ(code_of([&] { construct_family(wrong_n, 1); }), ErrorCode::DimensionMismatch);
}

TEST(JoinProduct, Examples) {
  auto T = make_ring(5, {"t"});
  auto S = make_ring(5, {"s"});
  Construction j = join_product(param(T, "[1, t, t^2]"), param(S, "[1, s, s^2]"));
  EXPECT_EQ(j.X.to_string(), "[1, t, t^2, s, s^2]");
  EXPECT_EQ(gauss_data(j.X).rank, 2u);
  EXPECT_TRUE(j.report.all_pass());

  Construction k = join_product(param(T, "[1, t, t^5]"), param(S, "[1, s, s^2]"));
  EXPECT_EQ(gauss_data(k.X).rank, 1u);
  Construction lin = join_product(param(T, "[1, t, t^2]"), param(S, "[1, s]"));
  EXPECT_EQ(gauss_data(lin.X).rank, 1u);
  EXPECT_EQ(code_of([&] { join_product(param(T, "[1, t, t^2]"), param(T, "[1, t]")); }), ErrorCode::InvalidArgument);
}

TEST(JoinProduct, AdditivityRandom) {
  Rng rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const unsigned p = std::vector<unsigned>{3, 5}[rng.below(2)];
    auto A = make_ring(p, {"a1"});
    auto B = make_ring(p, {"b1", "b2"});
    ProjParam x1({RatFunc::from_int(A, 1), rf(A, "a1"), RatFunc(random_poly(A, rng, 4, 3))});
    ProjParam x2({RatFunc::from_int(B, 1), rf(B, "b1"), rf(B, "b2"), RatFunc(random_poly(B, rng, 3, 3))});
    Construction j = join_product(x1, x2);
    EXPECT_EQ(gauss_data(j.X).rank, gauss_data(x1).rank + gauss_data(x2).rank);
  }
}

TEST(BirationalSeed, Examples) {
  Construction conic = birational_gauss_seed(GaloisField::get(3), 1, 0);
  EXPECT_EQ(conic.X.to_string(), "[1, z1, z1^2]");
  EXPECT_EQ(gauss_data(conic.X).rank, 1u);

  Construction two = birational_gauss_seed(GaloisField::get(2), 2, 0);
  EXPECT_EQ(two.X.to_string(), "[1, z1, z2, z1*z2]");
  EXPECT_EQ(gauss_data(two.X).rank, 2u);

  Construction three = birational_gauss_seed(GaloisField::get(2), 3, 4);
  EXPECT_EQ(three.X.N(), 5u);
  EXPECT_EQ(three.X[5], rf(three.X.ring(), "z2*z3"));
  EXPECT_EQ(gauss_data(three.X).rank, 3u);
  EXPECT_TRUE(three.report.all_pass());

  EXPECT_EQ(code_of([&] { birational_gauss_seed(GaloisField::get(2), 1, 0); }), ErrorCode::Precondition);
}

TEST(BirationalSeed, JoinWithCharTwoOddSeedAddsRank) {
  auto T = make_ring(2, {"t1", "t2"});
  ProjParam x1 = param(T, "[1, t1, t2, t1*t2]");
  Construction s3 = birational_gauss_seed(GaloisField::get(2), 3, 9);
  Construction j = join_product(x1, s3.X);
  EXPECT_EQ(gauss_data(j.X).rank, 2u + 3u);
}
