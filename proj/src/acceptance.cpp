#include "gmap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <utility>

#include "gmap/construct.hpp"
#include "gmap/error.hpp"
#include "gmap/parse.hpp"

namespace gmap {

namespace {

RingPtr ring(unsigned p, std::vector<std::string> names) { return Ring::make(GaloisField::get(p), std::move(names)); }
RatFunc rf(const RingPtr& R, const std::string& s) { return parse_ratfunc(R, s); }
std::vector<RatFunc> vec(const RingPtr& R, const std::string& s) { return parse_vector(R, s); }
ProjParam param(const RingPtr& R, const std::string& s) { return ProjParam(parse_vector(R, s)); }
ChartMap chart(const RingPtr& R, const std::string& s) { return ChartMap::from_rows(R, parse_matrix(R, s)); }
std::string pstr(unsigned p) { return std::to_string(p); }

unsigned pick_prime(SeededRng& rng) { return std::vector<unsigned>{2, 3, 5}[rng.below(3)]; }

MultiPoly random_poly(const RingPtr& R, SeededRng& rng, unsigned max_deg, unsigned nterms) {
  TermList t;
  for (unsigned k = 0; k < nterms; ++k) {
    Monomial m;
    auto budget = static_cast<unsigned>(rng.below(max_deg + 1));
    for (std::size_t i = 0; i < R->nvars() && budget; ++i) {
      auto d = static_cast<std::uint16_t>(rng.below(budget + 1));
      m.set(i, d);
      budget -= d;
    }
    t.push_back({m, static_cast<Elem>(1 + rng.below(R->F().order() - 1))});
  }
  return MultiPoly::from_terms(R, std::move(t));
}

// [1 : t_1 : ... : t_n : f_1 : ... : f_codim] with random polynomial f's.
ProjParam random_graph_variety(const RingPtr& R, SeededRng& rng, std::size_t codim, unsigned max_deg) {
  std::vector<RatFunc> c{RatFunc::from_int(R, 1)};
  for (std::size_t i = 0; i < R->nvars(); ++i) c.push_back(RatFunc::variable(R, i));
  for (std::size_t k = 0; k < codim; ++k) c.push_back(RatFunc(random_poly(R, rng, max_deg, 4)));
  return ProjParam(c);
}

std::vector<std::string> names(const std::string& stem, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

// Collects counts and the first failure for a criterion's detail line.
struct Tally {
  unsigned cases = 0, failed = 0;
  std::string first;
  void add(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failed++ == 0) first = what;
  }
  bool done(std::string& detail, const std::string& unit) const {
    detail = std::to_string(cases - failed) + "/" + std::to_string(cases) + " " + unit;
    if (failed) detail += "; first failure: " + first;
    return failed == 0 && cases > 0;
  }
};

bool forced_vanishing(std::uint64_t, std::string& detail) {
  Tally t;
  for (unsigned p : {2u, 3u, 5u}) {
    auto R = ring(p, {"x", "v", "u", "w"});
    ChartMap c = chart(R, "[[1], [x], [v^" + pstr(p) + "]]");
    ShrinkResult s = shrink(c);
    t.add(s.plane_dim == 1 && s.forced_zero == std::vector<std::size_t>{1}, "p=" + pstr(p) + " " + s.to_string());
    auto ii = graph_differential_condition(GraphParam{c, vec(R, "[1, u, w]")});
    t.add(!ii.holds && ii.failing_j == std::size_t{3} && ii.residual.to_string() == "u*dx",
          "p=" + pstr(p) + " witness for [1, u, w]");
  }
  return t.done(detail, "checks (z1 forced to 0, witness j=3 u*dx)");
}

InsepSpec worked_curve() {
  auto R = ring(3, {"t"});
  return InsepSpec{{}, vec(R, "[t^3]"), rf(R, "t^3"), vec(R, "[t]")};
}

bool insep_rank0(std::uint64_t seed, std::string& detail) {
  InsepSpec s = worked_curve();
  Construction c = construct_insep(s, seed);
  const RingPtr& R = c.X.ring();
  GaussData g = gauss_data(c.X);
  Tally t;
  t.add(c.X.coords() == vec(R, "[1, t, t^3 + t^4]"), "output " + c.X.to_string());
  t.add(g.rank == 0, "rank " + std::to_string(g.rank));
  t.add(fields_equal(g.image_gens, SubfieldPresentation::of({rf(R, "t^3")})), "image field");
  return t.done(detail, "checks, X = " + c.X.to_string());
}

bool insep_rank1(std::uint64_t seed, std::string& detail) {
  auto R = ring(3, {"t1", "t2"});
  InsepSpec s{vec(R, "[t1]"), vec(R, "[t2^3]"), rf(R, "t1"), vec(R, "[t2]")};
  Construction c = construct_insep(s, seed);
  GaussData g = gauss_data(c.X);
  Tally t;
  t.add(c.X.N() == 3, "ambient P^" + std::to_string(c.X.N()));
  t.add(g.rank == 1, "rank " + std::to_string(g.rank));
  t.add(same_ring(c.X.ring(), R) && fields_equal(g.image_gens, s.K()), "image field");
  return t.done(detail, "checks, X = " + c.X.to_string());
}

bool rank0_round_trip(std::uint64_t seed, std::string& detail) {
  SeededRng rng(seed ^ 0x40);
  Tally t;
  while (t.cases < 20) {
    const unsigned p = pick_prime(rng);
    const std::size_t n = 1 + rng.below(3);
    const std::size_t N = n + 1 + rng.below(std::min<std::size_t>(6 - n, 3));
    auto R = ring(p, names("t", n));
    MatrixRF a(R, n + 1, N - n);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < N - n; ++j) a(i, j) = RatFunc(random_poly(R, rng, 2, 2)).pow(p);
    ChartMap in(a);
    Construction c = construct_rank0(in, seed);
    GaussData g = gauss_data(c.X);
    bool ok = c.graph && graph_differential_condition(*c.graph).holds && graph_kernel_condition(*c.graph) &&
              is_immersive(c.X) && g.rank == 0;
    auto entries = in.all_entries();
    entries.push_back(RatFunc::from_int(R, 1));
    ok = ok && fields_equal(g.image_gens, SubfieldPresentation::of(entries));
    t.add(ok, "p=" + pstr(p) + " chart " + in.entries().to_string());
  }
  return t.done(detail, "charts");
}

// Candidate graphs: Gauss graphs of random varieties (the differential
// condition must hold), rank-0 charts with arbitrary z (both conditions
// hold), and unrelated chart/z pairs (the two conditions must agree).
bool graph_conditions(std::uint64_t seed, std::string& detail) {
  SeededRng rng(seed ^ 0x50);
  Tally t;
  while (t.cases < 100) {
    const unsigned p = pick_prime(rng);
    const std::size_t n = 1 + rng.below(2);
    auto R = ring(p, names("t", n));
    GraphParam g{ChartMap(MatrixRF(R, 1, 1)), {}};
    bool must_hold = false;
    switch (t.cases % 3) {
      case 0: {
        g = graph_of_gauss(random_graph_variety(R, rng, 1 + rng.below(2), 3));
        must_hold = true;
        break;
      }
      default: {
        const bool rank0 = t.cases % 3 == 1;
        MatrixRF a(R, n + 1, 1 + rng.below(2));
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = 0; j < a.cols(); ++j) {
            RatFunc e(random_poly(R, rng, 2, 3));
            a(i, j) = rank0 ? e.pow(p) : e;
          }
        std::vector<RatFunc> z;
        for (std::size_t i = 0; i <= n; ++i) z.push_back(RatFunc(random_poly(R, rng, 2, 2)));
        if (std::all_of(z.begin(), z.end(), [](const RatFunc& f) { return f.is_zero(); })) z[0] = RatFunc::from_int(R, 1);
        g = GraphParam{ChartMap(a), z};
        must_hold = rank0;
      }
    }
    const bool ii = graph_differential_condition(g).holds;
    const bool iii = graph_kernel_condition(g);
    t.add(ii == iii && (!must_hold || ii), g.to_string());
  }
  return t.done(detail, "candidates without counterexample");
}

bool degeneracy_vs_shrink(std::uint64_t seed, std::string& detail) {
  SeededRng rng(seed ^ 0x60);
  Tally t;
  while (t.cases < 20) {
    const unsigned p = pick_prime(rng);
    auto R = ring(p, names("t", 1 + rng.below(3)));
    ProjParam x = random_graph_variety(R, rng, 1, 4);
    t.add(degeneracy_matches_shrink(x), "p=" + pstr(p) + " " + x.to_string());
  }
  return t.done(detail, "hypersurfaces");
}

bool degeneracy_factorization(std::uint64_t seed, std::string& detail) {
  Tally t;
  auto check = [&](const ProjParam& x) {
    auto f = verify_degeneracy_factorization(x);
    t.add(f.holds, x.to_string());
  };
  auto C = ring(5, {"t"});
  check(param(C, "[1, t, t^2]"));
  auto Q = ring(5, {"t1", "t2"});
  check(param(Q, "[1, t1, t2, t1*t2]"));
  SeededRng rng(seed ^ 0x70);
  unsigned random_cases = 0;
  for (unsigned attempt = 0; random_cases < 10 && attempt < 200; ++attempt) {
    const unsigned p = pick_prime(rng);
    auto R = ring(p, names("t", 1 + rng.below(2)));
    ProjParam x = random_graph_variety(R, rng, 1, 4);
    if (!is_separable_gauss(x)) continue;
    check(x);
    ++random_cases;
  }
  t.add(random_cases == 10, "found only " + std::to_string(random_cases) + " separable hypersurfaces");
  return t.done(detail, "checks (conic, quadric surface, 10 random separable)");
}

bool join_additivity(std::uint64_t seed, std::string& detail) {
  Tally t;
  for (unsigned p : {3u, 5u}) {
    // Factor builders with fresh parameter names per side.
    auto conic = [&](const std::string& v) { return param(ring(p, {v}), "[1, " + v + ", " + v + "^2]"); };
    auto strange = [&](const std::string& v) { return param(ring(p, {v}), "[1, " + v + ", " + v + "^" + pstr(p) + "]"); };
    auto quadric = [&](const std::string& v) {
      return param(ring(p, {v + "1", v + "2"}), "[1, " + v + "1, " + v + "2, " + v + "1^2 + " + v + "2^2]");
    };
    std::vector<std::pair<std::string, std::function<ProjParam(const std::string&)>>> kinds{
        {"conic", conic}, {"strange curve", strange}, {"quadric", quadric}};
    for (std::size_t i = 0; i < kinds.size(); ++i)
      for (std::size_t j = i; j < kinds.size(); ++j) {
        ProjParam a = kinds[i].second("a"), b = kinds[j].second("b");
        Construction c = join_product(a, b);
        const auto ra = gauss_data(a).rank, rb = gauss_data(b).rank, r = gauss_data(c.X).rank;
        t.add(r == ra + rb && c.report.all_pass(), "p=" + pstr(p) + " " + kinds[i].first + " with " + kinds[j].first);
      }
  }
  Construction seed3 = birational_gauss_seed(GaloisField::get(2), 3, seed);
  t.add(gauss_data(seed3.X).rank == 3, "char 2 rank 3 seed " + seed3.X.to_string());
  ProjParam pairing = param(ring(2, {"a1", "a2"}), "[1, a1, a2, a1*a2]");
  ProjParam strange2 = param(ring(2, {"c"}), "[1, c, c^2]");
  for (const auto& other : {pairing, strange2}) {
    Construction c = join_product(other, seed3.X);
    t.add(gauss_data(c.X).rank == gauss_data(other).rank + 3, "char 2 seed join with " + other.to_string());
  }
  return t.done(detail, "joins");
}

bool char2_rank_one(std::uint64_t seed, std::string& detail) {
  SeededRng rng(seed ^ 0x90);
  Tally t;
  unsigned counts[4] = {0, 0, 0, 0};
  while (t.cases < 100) {
    auto R = ring(2, names("t", 1 + rng.below(3)));
    ProjParam x = random_graph_variety(R, rng, 1, 5);
    const std::size_t r = gauss_data(x).rank;
    ++counts[r];
    t.add(r != 1, x.to_string());
  }
  const bool ok = t.done(detail, "hypersurfaces");
  detail += " (ranks 0/1/2/3: " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" +
            std::to_string(counts[2]) + "/" + std::to_string(counts[3]) + ")";
  return ok;
}

bool family_certificate(std::uint64_t seed, std::string& detail) {
  auto S = ring(3, {"s"});
  auto V = ring(3, {"v1", "v2"});
  FamilySpec spec{chart(S, "[[s], [s^2], [s^3]]"), vec(V, "[v1]"), vec(V, "[1, v2, v2^2]")};
  Construction c = construct_family(spec, seed);
  Tally t;
  for (const auto& v : c.report.verdicts) t.add(v.pass, v.name);
  for (const char* required : {"Gauss rank is 0", "graph differential condition", "graph kernel condition",
                               "graph function field equals F_q(w)", "fiber slice maps linearly and injectively"}) {
    bool present = std::any_of(c.report.verdicts.begin(), c.report.verdicts.end(),
                               [&](const Verdict& v) { return v.name == required; });
    t.add(present, std::string("missing verdict: ") + required);
  }
  const bool ok = t.done(detail, "report checks");
  detail += ", " + std::to_string(c.report.retries) + " resamples";
  return ok;
}

bool elimination_corpus(std::uint64_t, std::string& detail) {
  struct Case {
    unsigned p;
    std::vector<std::string> gens;
    std::size_t dim;
    std::vector<std::pair<std::string, bool>> members;
  };
  const std::vector<Case> cases = {
      {3, {"t1^3"}, 1, {{"t1", false}, {"t1^6 + t1^3", true}}},
      {3, {"t1"}, 1, {{"t1^3", true}, {"t2", false}}},
      {3, {"t1*t2", "t1 + t2"}, 2, {{"t1^2 + t2^2", true}, {"t1", false}}},
      {2, {"t1^2*t2^2", "t1*t2"}, 1, {{"t1^3*t2^3", true}, {"t1", false}}},
      {3, {"t1/t2", "t2^3"}, 2, {{"t1^3", true}, {"t2", false}}},
      {3, {"1", "2"}, 0, {{"2", true}, {"t1", false}}},
      {3, {"t1*t2"}, 1, {{"t1", false}, {"1/(t1*t2)", true}}},
      {3, {"t1*t2", "t1^2*t2", "t1^3*t2"}, 2, {{"t1", true}, {"t2", true}}},
      {2, {"t1^2"}, 1, {{"t1^4", true}, {"t1", false}}},
      {5, {"t1 + t2", "t1^5"}, 2, {{"t2^5", true}, {"t1", false}}},
  };
  Tally t;
  for (const auto& c : cases) {
    auto R = ring(c.p, {"t1", "t2"});
    std::vector<RatFunc> gens;
    for (const auto& g : c.gens) gens.push_back(rf(R, g));
    auto K = SubfieldPresentation::of(gens);
    std::string label = "p=" + pstr(c.p) + " {";
    for (std::size_t i = 0; i < c.gens.size(); ++i) label += (i ? ", " : "") + c.gens[i];
    label += "}";
    for (auto route : {DimensionRoute::Tagged, DimensionRoute::Fiber}) {
      EliminationOptions opt;
      opt.route = route;
      opt.rank_shortcut = false;
      t.add(image_dimension(K, opt) == c.dim, label + " dimension");
    }
    for (const auto& [f, expected] : c.members) t.add(is_member(rf(R, f), K) == expected, label + " member " + f);
  }
  auto R = ring(3, {"t1", "t2"});
  auto K = SubfieldPresentation::of({rf(R, "t1^3")});
  t.add(rank_delta(K) == 0 && image_dimension(K) == 1, "rank_delta < image_dimension on {t1^3}");
  return t.done(detail, "checks on 10 fields");
}

}  // namespace

const std::vector<AcceptanceCriterion>& acceptance_criteria() {
  static const std::vector<AcceptanceCriterion> all = {
      {1, "plane-family chart forces z1 = 0", 1, forced_vanishing},
      {2, "inseparable construction, rank 0 curve round trip", 1, insep_rank0},
      {3, "inseparable construction, rank 1 surface round trip", 10, insep_rank1},
      {4, "rank 0 construction round trip on 20 charts", 60, rank0_round_trip},
      {5, "Gauss graphs satisfy the differential condition; it agrees with the kernel condition", 120,
       graph_conditions},
      {6, "degeneracy map equals the shrinking map", 60, degeneracy_vs_shrink},
      {7, "degeneracy map factors through the image shrinking map", 60, degeneracy_factorization},
      {8, "Gauss rank is additive under joins", 30, join_additivity},
      {9, "no char 2 hypersurface has Gauss rank 1", 120, char2_rank_one},
      {10, "family construction passes its certificate", 120, family_certificate},
      {11, "elimination engine hand-checked corpus", 30, elimination_corpus},
  };
  return all;
}

CriterionOutcome run_criterion(const AcceptanceCriterion& c, std::uint64_t seed) {
  CriterionOutcome o;
  o.id = c.id;
  o.title = c.title;
  o.budget_seconds = c.budget_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    o.pass = c.run(seed, o.detail);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("error: ") + e.what();
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.seconds > o.budget_seconds) {
    o.pass = false;
    o.detail += "; over the time budget";
  }
  return o;
}

std::vector<CriterionOutcome> run_acceptance(std::uint64_t seed, const std::vector<unsigned>& only) {
  std::vector<CriterionOutcome> out;
  for (const auto& c : acceptance_criteria())
    if (only.empty() || std::find(only.begin(), only.end(), c.id) != only.end()) out.push_back(run_criterion(c, seed));
  return out;
}

std::string format_outcome(const CriterionOutcome& o) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", o.seconds, o.budget_seconds);
  return std::string(o.pass ? "PASS" : "FAIL") + " [" + (o.id < 10 ? " " : "") + std::to_string(o.id) + "] " +
         o.title + " (" + timing + "): " + o.detail;
}

}  // namespace gmap
