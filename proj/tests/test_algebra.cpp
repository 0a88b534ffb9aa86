#include <gtest/gtest.h>

#include "gmap/error.hpp"
#include "gmap/matrix.hpp"
#include "gmap/parse.hpp"
#include "support.hpp"

using namespace gmap;
using namespace gmap::testing;

namespace {

// Value of g and of dg/dt_i at a point of an extension field, computed from the
// term lists directly with the quotient rule applied to field values.
struct DualValue {
  Elem v, dv;
};

DualValue dual_eval(const MultiPoly& f, const FieldEmbedding& emb, const std::vector<Elem>& pt, std::size_t i) {
  const GaloisField& E = *emb.target();
  Elem v = 0, dv = 0;
  for (const auto& t : f.terms()) {
    Elem rest = emb(t.c);
    for (std::size_t j = 0; j < pt.size(); ++j)
      if (j != i) rest = E.mul(rest, E.pow(pt[j], t.m.e[j]));
    const unsigned k = t.m.e[i];
    v = E.add(v, E.mul(rest, E.pow(pt[i], k)));
    if (k) dv = E.add(dv, E.mul(E.from_int(k), E.mul(rest, E.pow(pt[i], k - 1))));
  }
  return {v, dv};
}

std::optional<Elem> derivative_oracle(const RatFunc& g, const FieldEmbedding& emb, const std::vector<Elem>& pt,
                                      std::size_t i) {
  const GaloisField& E = *emb.target();
  DualValue n = dual_eval(g.num(), emb, pt, i), d = dual_eval(g.den(), emb, pt, i);
  if (d.v == 0) return std::nullopt;
  return E.div(E.sub(E.mul(n.dv, d.v), E.mul(n.v, d.dv)), E.mul(d.v, d.v));
}

}  // namespace

TEST(Field, AxiomsAcrossSmallFields) {
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}, {2, 4}, {5, 2}}) {
    auto F = GaloisField::get(p, e);
    const Elem q = F->order();
    for (Elem a = 0; a < q; ++a) {
      EXPECT_EQ(F->add(a, F->neg(a)), 0u);
      EXPECT_EQ(F->inv_frobenius(F->frobenius(a)), a);
      if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
      for (Elem b = 0; b < q; b += 1 + q / 7) {
        EXPECT_EQ(F->mul(a, b), F->mul(b, a));
        for (Elem c = 0; c < q; c += 1 + q / 5)
          EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      }
    }
  }
}

TEST(Field, CanonicalModulusIsShared) {
  auto a = GaloisField::get(2, 2), b = GaloisField::get(2, 2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a->modulus(), (std::vector<unsigned>{1, 1, 1}));
  EXPECT_EQ(a->format(a->generator()), "alpha");
  EXPECT_THROW(GaloisField::get(4, 1), Error);
}

TEST(Field, EmbeddingIsAHomomorphism) {
  auto small = GaloisField::get(3, 2), big = GaloisField::get(3, 4);
  FieldEmbedding emb(small, big);
  for (Elem a = 0; a < small->order(); ++a)
    for (Elem b = 0; b < small->order(); ++b) {
      EXPECT_EQ(emb(small->mul(a, b)), big->mul(emb(a), emb(b)));
      EXPECT_EQ(emb(small->add(a, b)), big->add(emb(a), emb(b)));
    }
}

TEST(Poly, RingAxiomsOnRandomOperands) {
  Rng rng(11);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2", "t3"});
    for (int k = 0; k < 40; ++k) {
      MultiPoly a = random_poly(R, rng, 4, 4), b = random_poly(R, rng, 4, 4), c = random_poly(R, rng, 3, 3);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_TRUE((a - a).is_zero());
    }
  }
}

TEST(Poly, ExactDivisionAndGcd) {
  Rng rng(12);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"x", "y", "z"});
    for (int k = 0; k < 40; ++k) {
      MultiPoly a = random_nonzero_poly(R, rng, 3, 3), b = random_nonzero_poly(R, rng, 3, 3),
                c = random_nonzero_poly(R, rng, 3, 3);
      auto q = divide_exact(a * c, c);
      ASSERT_TRUE(q.has_value());
      EXPECT_EQ(*q, a);
      MultiPoly g = gcd(a * c, b * c);
      EXPECT_TRUE(divide_exact(g, c.monic()).has_value()) << g.to_string() << " vs " << c.to_string();
      EXPECT_TRUE(divide_exact(a * c, g).has_value());
      EXPECT_TRUE(divide_exact(b * c, g).has_value());
      MultiPoly h = gcd(divide_or_throw(a * c, g), divide_or_throw(b * c, g));
      EXPECT_TRUE(h.is_one()) << h.to_string();
    }
  }
}

// Higher degrees, four variables and extension coefficients: exercises the
// evaluation/interpolation gcd and its pull-back to the coefficient field.
TEST(Poly, GcdOnLargerCofactors) {
  Rng rng(77);
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {3, 2}, {5, 1}}) {
    auto R = make_ring(p, {"w", "x", "y", "z"}, e);
    for (int k = 0; k < 12; ++k) {
      MultiPoly a = random_nonzero_poly(R, rng, 5, 6), b = random_nonzero_poly(R, rng, 5, 6),
                c = random_nonzero_poly(R, rng, 4, 5);
      MultiPoly g = gcd(a * c, b * c);
      EXPECT_TRUE(divide_exact(g, c.monic()).has_value()) << g.to_string() << " vs " << c.to_string();
      EXPECT_EQ(g, g.monic());
      MultiPoly h = gcd(divide_or_throw(a * c, g), divide_or_throw(b * c, g));
      EXPECT_TRUE(h.is_one()) << h.to_string();
    }
  }
}

TEST(Poly, CanonicalText) {
  auto R = make_ring(3, {"t1", "t2"});
  EXPECT_EQ(rf(R, "t2 + t1^2 + 2*t1*t2 + 1").to_string(), "t1^2 + 2*t1*t2 + t2 + 1");
  auto R4 = make_ring(2, {"t"}, 2);
  EXPECT_EQ(rf(R4, "alpha*t + alpha^2").to_string(), "alpha*t + (alpha + 1)");
}

TEST(RatFunc, NormalizedFormIsCanonical) {
  Rng rng(13);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2"});
    for (int k = 0; k < 30; ++k) {
      MultiPoly a = random_poly(R, rng, 3, 3), b = random_nonzero_poly(R, rng, 3, 3),
                c = random_nonzero_poly(R, rng, 2, 3);
      RatFunc x(a, b), y(a * c, b * c);
      EXPECT_EQ(x, y);
      if (!x.is_zero()) EXPECT_TRUE(gcd(x.num(), x.den()).is_one());
      EXPECT_EQ(x.den().lc(), 1u);
    }
  }
}

TEST(RatFunc, FieldAxiomsOnRandomOperands) {
  Rng rng(14);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2"});
    for (int k = 0; k < 25; ++k) {
      RatFunc a = random_ratfunc(R, rng, 2, 3), b = random_ratfunc(R, rng, 2, 3), c = random_ratfunc(R, rng, 2, 2);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ((a + b) - b, a);
      if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(RatFunc, ZeroDenominatorRejected) {
  auto R = make_ring(2, {"x"});
  EXPECT_THROW(RatFunc(MultiPoly::variable(R, 0), MultiPoly(R)), Error);
  try {
    rf(R, "1/0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
}

TEST(Partial, Examples) {
  auto R = make_ring(3, {"t1", "t2"});
  EXPECT_EQ(partial(rf(R, "t1^2"), 0), rf(R, "2*t1"));
  EXPECT_TRUE(partial(rf(R, "t1^3"), 0).is_zero());
  EXPECT_EQ(partial(rf(R, "1/t2"), 1), rf(R, "-1/t2^2"));
  EXPECT_THROW(partial(rf(R, "t1"), 2), Error);
}

TEST(Partial, QuotientRuleMatchesEvaluationOracle) {
  Rng rng(15);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2"});
    FieldEmbedding emb = oracle_embedding(R->field());
    std::vector<RatFunc> cases = {rf(R, "1/t2"), rf(R, "t1/t2"), rf(R, "(t1^2 + t2)/(t1 + t2^3 + 1)")};
    for (int k = 0; k < 5; ++k) cases.push_back(random_ratfunc(R, rng, 3, 3));
    for (const auto& g : cases)
      for (std::size_t i = 0; i < 2; ++i) {
        RatFunc dg = partial(g, i);
        int checked = 0;
        for (int s = 0; s < 50; ++s) {
          auto pt = random_point(*emb.target(), 2, rng);
          auto want = derivative_oracle(g, emb, pt, i);
          auto got = dg.evaluate(emb, pt);
          if (!want || !got) continue;
          EXPECT_EQ(*got, *want) << g.to_string() << " d/d" << R->name(i);
          ++checked;
        }
        EXPECT_GE(checked, 45);
      }
  }
}

TEST(Differential, Examples) {
  auto R = make_ring(3, {"t1", "t2"});
  EXPECT_EQ(differential(rf(R, "t1*t2")).coords, (std::vector<RatFunc>{rf(R, "t2"), rf(R, "t1")}));
  EXPECT_TRUE(differential(rf(R, "t1^3 + t2^3")).is_zero());
  EXPECT_EQ(differential(rf(R, "t1/t2")).coords, (std::vector<RatFunc>{rf(R, "1/t2"), rf(R, "-t1/t2^2")}));
  EXPECT_EQ(differential(rf(R, "t1/t2")).to_string(), "1/t2*dt1 + 2*t1/t2^2*dt2");
}

TEST(Differential, SumAndLeibnizRules) {
  Rng rng(16);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2", "t3"});
    for (int k = 0; k < 25; ++k) {
      RatFunc g = random_ratfunc(R, rng, 3, 3), h = random_ratfunc(R, rng, 3, 3);
      EXPECT_EQ(differential(g + h), differential(g) + differential(h));
      EXPECT_EQ(differential(g * h), differential(h).scaled(g) + differential(g).scaled(h));
      EXPECT_TRUE(differential(g.pow(p)).is_zero());
    }
  }
}

TEST(PthRoot, Examples) {
  auto R = make_ring(3, {"t1", "t2"});
  EXPECT_EQ(pth_root(rf(R, "t1^3*t2^3")), rf(R, "t1*t2"));
  EXPECT_FALSE(pth_root(rf(R, "t1")).has_value());
  auto h = pth_root(rf(R, "(t1^3 + 2)/t2^3"));
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(*h, rf(R, "(t1 + 2)/t2"));
  EXPECT_EQ(h->pow(3), rf(R, "(t1^3 + 2)/t2^3"));
}

TEST(PthRoot, PresentExactlyWhenDifferentialVanishes) {
  Rng rng(17);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2"}, p == 2 ? 2 : 1);
    int roots = 0;
    for (int k = 0; k < 200; ++k) {
      RatFunc g = random_ratfunc(R, rng, 2, 2);
      // Bias half of the corpus towards p-th powers and near misses.
      if (k % 2 == 0) g = g.pow(p);
      if (k % 4 == 0) g = g + random_ratfunc(R, rng, 1, 1);
      auto h = pth_root(g);
      EXPECT_EQ(h.has_value(), differential(g).is_zero()) << g.to_string();
      if (h) {
        EXPECT_EQ(h->pow(p), g);
        ++roots;
      }
    }
    EXPECT_GT(roots, 50);
    EXPECT_LT(roots, 200);
  }
}

TEST(FrobeniusTwist, Examples) {
  auto R = make_ring(3, {"t1", "t2"});
  RatFunc g = rf(R, "t1 + t2^2");
  EXPECT_EQ(frobenius_twist(g), g);
  EXPECT_EQ(g.pow(3), frobenius_pullback(g));
  auto R4 = make_ring(2, {"t1"}, 2);
  EXPECT_EQ(frobenius_twist(rf(R4, "alpha*t1")), rf(R4, "alpha^2*t1"));
  const auto& F = R4->F();
  Elem c = F.from_digits({1, 1});
  EXPECT_EQ(frobenius_twist(RatFunc::constant(R4, c)).constant_value(), F.inv_frobenius(c));
}

TEST(FrobeniusTwist, TwistThenPowerIsPullback) {
  Rng rng(18);
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {5, 1}, {2, 3}}) {
    auto R = make_ring(p, {"w1", "w2"}, e);
    for (int k = 0; k < 20; ++k) {
      RatFunc g = random_ratfunc(R, rng, 3, 3);
      EXPECT_EQ(frobenius_twist(g).pow(p), frobenius_pullback(g)) << g.to_string();
    }
  }
}

TEST(Substitute, ComposesWithImages) {
  auto R = make_ring(5, {"a", "b"});
  auto S = make_ring(5, {"s"});
  RatFunc g = rf(R, "(a + b^2)/(a - 1)");
  RatFunc out = substitute(g, {rf(S, "s^2"), rf(S, "1/s")});
  EXPECT_EQ(out, rf(S, "(s^2 + 1/s^2)/(s^2 - 1)"));
}

TEST(Matrix, Examples) {
  auto R = make_ring(3, {"t1", "t2"});
  auto I = MatrixRF::identity(R, 3);
  EXPECT_EQ(rank(I), 3u);
  EXPECT_TRUE(kernel_basis(I).empty());

  auto M = MatrixRF::from_rows(R, {{rf(R, "t1"), rf(R, "t2")}, {rf(R, "t1^2"), rf(R, "t1*t2")}});
  EXPECT_EQ(rank(M), 1u);
  auto K = kernel_basis(M);
  ASSERT_EQ(K.size(), 1u);
  // RREF kernel basis: (t2, -t1) scaled so the leading entry is 1.
  EXPECT_EQ(K[0][0], rf(R, "1"));
  EXPECT_EQ(K[0][1], rf(R, "-t1/t2"));

  MatrixRF Z(R, 2, 4);
  EXPECT_EQ(rank(Z), 0u);
  EXPECT_EQ(kernel_basis(Z).size(), 4u);
}

TEST(Matrix, SolveInverseDeterminant) {
  auto R = make_ring(5, {"x", "y"});
  auto M = MatrixRF::from_rows(R, {{rf(R, "x"), rf(R, "1")}, {rf(R, "y"), rf(R, "x + y")}});
  RFVector b{rf(R, "1"), rf(R, "y^2")};
  auto s = solve(M, b);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(M * *s, b);
  EXPECT_EQ(determinant(M), rf(R, "x^2 + x*y - y"));
  EXPECT_EQ(M * inverse(M), MatrixRF::identity(R, 2));

  auto S = MatrixRF::from_rows(R, {{rf(R, "x"), rf(R, "y")}, {rf(R, "2*x"), rf(R, "2*y")}});
  EXPECT_FALSE(solve(S, {rf(R, "1"), rf(R, "1")}).has_value());
  EXPECT_TRUE(solve(S, {rf(R, "1"), rf(R, "2")}).has_value());
  EXPECT_THROW(inverse(S), Error);
  EXPECT_THROW(solve(S, {rf(R, "1")}), Error);
}

TEST(Matrix, KernelAnnihilatesAndRankNullity) {
  Rng rng(19);
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"t1", "t2"});
    for (int k = 0; k < 20; ++k) {
      std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
      // Low-rank by construction half of the time.
      MatrixRF M(R, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = random_ratfunc(R, rng, 2, 2);
      if (k % 2 && rows > 1)
        for (std::size_t j = 0; j < cols; ++j) M(rows - 1, j) = M(0, j) * rf(R, "t1 + 1");
      auto K = kernel_basis(M);
      EXPECT_EQ(rank(M) + K.size(), cols);
      for (const auto& v : K)
        for (const auto& x : M * v) EXPECT_TRUE(x.is_zero());
    }
  }
}

TEST(Matrix, RankAgreesWithEvaluation) {
  Rng rng(20);
  int agree = 0;
  for (int k = 0; k < 100; ++k) {
    unsigned p = std::vector<unsigned>{2, 3, 5}[k % 3];
    auto R = make_ring(p, {"t1", "t2"});
    FieldEmbedding emb = oracle_embedding(R->field());
    std::size_t rows = 2 + rng.below(3), cols = 2 + rng.below(3);
    MatrixRF M(R, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) M(i, j) = random_ratfunc(R, rng, 2, 2);
    if (k % 3 == 0)
      for (std::size_t j = 0; j < cols; ++j) M(rows - 1, j) = M(0, j) * rf(R, "t2") + M(1, j);
    auto pt = random_point(*emb.target(), 2, rng);
    std::vector<std::vector<Elem>> num(rows, std::vector<Elem>(cols));
    bool ok = true;
    for (std::size_t i = 0; i < rows && ok; ++i)
      for (std::size_t j = 0; j < cols && ok; ++j) {
        auto v = M(i, j).evaluate(emb, pt);
        if (!v) ok = false;
        else num[i][j] = *v;
      }
    if (ok && numeric_rank(*emb.target(), num) == rank(M)) ++agree;
  }
  EXPECT_GE(agree, 95);
}

TEST(Parse, ErrorsCarryPositions) {
  auto R = make_ring(3, {"t"});
  try {
    rf(R, "t + s");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().col, 5);
    EXPECT_NE(std::string(e.what()).find("undeclared variable 's'"), std::string::npos);
  }
  EXPECT_THROW(rf(R, "alpha"), ParseError);
  EXPECT_THROW(rf(R, "(t + 1"), ParseError);
  EXPECT_THROW(rf(R, "t^x"), ParseError);
  EXPECT_EQ(rf(R, "-t^2"), -rf(R, "t^2"));
  EXPECT_EQ(rf(R, "5*t"), rf(R, "2*t"));
  EXPECT_EQ(parse_vector(R, "[1, t, t^3 + t^4]").size(), 3u);
  EXPECT_EQ(parse_matrix(R, "[[1, t], [t, 1]]").size(), 2u);
}

TEST(Parse, PrintedFormReparses) {
  Rng rng(21);
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 2}}) {
    auto R = make_ring(p, {"t1", "t2", "t3"}, e);
    for (int k = 0; k < 30; ++k) {
      RatFunc g = random_ratfunc(R, rng, 3, 4);
      EXPECT_EQ(rf(R, g.to_string()), g) << g.to_string();
    }
  }
}
