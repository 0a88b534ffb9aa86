#include "gmap/construct.hpp"

#include <algorithm>
#include <map>

#include "gmap/error.hpp"

namespace gmap {

namespace {

std::string list_text(const std::vector<RatFunc>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + "]";
}

std::vector<RatFunc> concat(std::vector<RatFunc> a, const std::vector<RatFunc>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<RatFunc> variables(const RingPtr& R) {
  std::vector<RatFunc> v;
  for (std::size_t i = 0; i < R->nvars(); ++i) v.push_back(RatFunc::variable(R, i));
  return v;
}

std::size_t jacobian_rank(const RingPtr& R, const std::vector<RatFunc>& fs) {
  if (fs.empty()) return 0;
  return rank(jacobian(R, fs));
}

// Rank over F_q of a list of coefficient rows.
std::size_t constant_rank(const GaloisField& F, std::vector<std::vector<Elem>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const Elem inv = F.inv(m[r][c]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Elem f = F.mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

// Nonzero field elements in a seeded order.
std::vector<Elem> shuffled_units(const GaloisField& F, SeededRng& rng) {
  std::vector<Elem> v;
  for (Elem c = 1; c < F.order(); ++c) v.push_back(c);
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return v;
}

Elem random_elem(const GaloisField& F, SeededRng& rng) { return static_cast<Elem>(rng.below(F.order())); }
Elem random_unit(const GaloisField& F, SeededRng& rng) { return static_cast<Elem>(1 + rng.below(F.order() - 1)); }

void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) throw Error(code, msg);
}

// Hard failure for constructions: every verdict must hold.
void enforce(const Report& rep, const std::string& what) {
  for (const auto& v : rep.verdicts)
    if (!v.pass)
      throw Error(ErrorCode::VerificationFailed,
                  what + ": check '" + v.name + "' failed" + (v.detail.empty() ? "" : " (" + v.detail + ")"));
}

SubfieldPresentation whole_field(const RingPtr& R) { return SubfieldPresentation::of(variables(R)); }

}  // namespace

bool is_nondegenerate(const ProjParam& x) {
  const RingPtr& R = x.ring();
  MultiPoly D = MultiPoly::constant(R, 1);
  for (const auto& c : x.coords())
    if (!c.is_zero()) D = divide_or_throw(D * c.den(), gcd(D, c.den()));
  std::vector<MultiPoly> nums;
  std::map<std::array<std::uint16_t, kMaxVars>, std::size_t> cols;
  for (const auto& c : x.coords()) {
    MultiPoly P = c.is_zero() ? MultiPoly(R) : c.num() * divide_or_throw(D, c.den());
    for (const auto& t : P.terms()) cols.emplace(t.m.e, cols.size());
    nums.push_back(std::move(P));
  }
  std::vector<std::vector<Elem>> rows;
  for (const auto& P : nums) {
    std::vector<Elem> row(cols.size(), 0);
    for (const auto& t : P.terms()) row[cols.at(t.m.e)] = t.c;
    rows.push_back(std::move(row));
  }
  return constant_rank(R->F(), rows) == x.coords().size();
}

// ---- InsepSpec ----

SubfieldPresentation InsepSpec::K() const { return SubfieldPresentation::of(concat(concat(x_part, y_part), {a})); }

InsepSpec InsepSpec::lift(const RingPtr& target, const FieldEmbedding& emb) const {
  auto up = [&](const std::vector<RatFunc>& v) {
    std::vector<RatFunc> out;
    for (const auto& g : v) out.push_back(g.lift(target, emb));
    return out;
  };
  return InsepSpec{up(x_part), up(y_part), a.lift(target, emb), up(x_tail)};
}

std::string InsepSpec::to_string() const {
  return "insep(" + list_text(x_part) + ", " + list_text(y_part) + ", " + a.to_string() + ", " + list_text(x_tail) + ")";
}

void validate(const InsepSpec& spec, const EliminationOptions& opt) {
  const RingPtr& R = spec.ring();
  for (const auto* v : {&spec.x_part, &spec.y_part, &spec.x_tail})
    for (const auto& g : *v) require(same_ring(g.ring(), R), ErrorCode::InvalidArgument, "spec entries live in different rings");
  const std::size_t n = spec.n(), r = spec.r(), m = spec.m();
  require(spec.x_tail.size() + r == n, ErrorCode::DimensionMismatch,
          "x_tail must have n - r = " + std::to_string(n - std::min(n, r)) + " entries");
  require(m >= 1, ErrorCode::Precondition, "K must have transcendence degree at least 1");
  require(jacobian_rank(R, spec.x_part) == r, ErrorCode::Precondition, "x_part differentials are dependent");
  const auto K = spec.K();
  const std::size_t rd = rank_delta(K);
  require(rd == r, ErrorCode::Precondition,
          "declared r = " + std::to_string(r) + " but the differentials of K have rank " + std::to_string(rd));
  const std::size_t dim = image_dimension(K, opt);
  require(dim == m, ErrorCode::Precondition,
          "declared m = " + std::to_string(m) + " but K has transcendence degree " + std::to_string(dim));
  require(r < m, ErrorCode::Precondition, "L / K is separable (rank equals transcendence degree); nothing inseparable to realize");
  require(jacobian_rank(R, concat(spec.x_part, spec.x_tail)) == n, ErrorCode::Precondition,
          "x_part and x_tail are not a separating transcendence basis of L");
  require(fields_equal(SubfieldPresentation::of(concat(K.gens, spec.x_tail)), whole_field(R), opt), ErrorCode::Precondition,
          "K(x_tail) is a proper subfield of L");
}

SeparatingBasis select_separating_basis(const SubfieldPresentation& K, std::vector<RatFunc> pool, std::optional<RatFunc> primitive,
                              std::uint64_t seed, const EliminationOptions& opt) {
  const RingPtr& R = K.ambient;
  const std::size_t n = R->nvars();
  SeparatingBasis out;
  for (const auto& g : K.gens) {
    if (out.x_part.size() == n) break;
    out.x_part.push_back(g);
    if (jacobian_rank(R, out.x_part) < out.x_part.size()) out.x_part.pop_back();
  }
  if (pool.empty()) pool = variables(R);
  std::vector<RatFunc> basis = out.x_part;
  for (const auto& g : pool) {
    if (basis.size() == n) break;
    basis.push_back(g);
    if (jacobian_rank(R, basis) < basis.size()) {
      basis.pop_back();
    } else {
      out.x_tail.push_back(g);
    }
  }
  auto completes = [&](const std::vector<RatFunc>& tail) {
    return basis.size() == n && fields_equal(SubfieldPresentation::of(concat(K.gens, tail)), whole_field(R), opt);
  };
  if (completes(out.x_tail)) return out;
  out.needs_assistance = true;
  out.note = basis.size() < n ? "pool does not complete a separating basis of L"
                              : "K(x_tail) is a proper separable subextension; supply a primitive element w";
  if (!primitive || out.x_tail.empty()) return out;
  SeededRng rng(seed);
  for (Elem c : shuffled_units(R->F(), rng)) {
    auto tail = out.x_tail;
    tail.back() = *primitive + tail.back().scale(c);
    std::vector<RatFunc> b2 = concat(out.x_part, tail);
    if (jacobian_rank(R, b2) != n) continue;
    if (fields_equal(SubfieldPresentation::of(concat(K.gens, tail)), whole_field(R), opt)) {
      out.x_tail = tail;
      out.needs_assistance = false;
      out.shift = c;
      out.note = "completed with w + c * x_last";
      return out;
    }
  }
  return out;
}

std::vector<RatFunc> solve_b(const InsepSpec& spec) {
  const RingPtr& R = spec.ring();
  const std::size_t r = spec.r();
  DiffVector rhs = differential(spec.a);
  for (std::size_t k = 0; k < spec.y_part.size(); ++k) {
    require(k < spec.x_tail.size(), ErrorCode::DimensionMismatch, "more y entries than x_tail entries");
    rhs = rhs + differential(spec.y_part[k]).scaled(spec.x_tail[k]);
  }
  if (r == 0) {
    require(rhs.is_zero(), ErrorCode::Inconsistent,
            "da + sum x dy = " + rhs.to_string() + " is not in the span of the (empty) x_part differentials");
    return {};
  }
  MatrixRF J = jacobian(R, spec.x_part).transpose();
  auto b = solve(J, rhs.coords);
  require(b.has_value(), ErrorCode::Inconsistent,
          "da + sum x dy is not in the span of the x_part differentials (is r mis-declared?)");
  DiffVector check = zero_differential(R);
  for (std::size_t i = 0; i < r; ++i) check = check + differential(spec.x_part[i]).scaled((*b)[i]);
  require(check == rhs, ErrorCode::Inconsistent, "nonzero residual after solving for b");
  return *b;
}

FChoice choose_f(const InsepSpec& spec0, const std::vector<RatFunc>& b0, std::uint64_t seed, const ConstructOptions& opt) {
  const unsigned p = spec0.ring()->F().characteristic();
  const std::size_t r = spec0.r(), n = spec0.n();
  require(!(p == 2 && r % 2 == 1), ErrorCode::Precondition,
          "p = 2 with odd rank: no quadratic choice of f exists (the rank of a Gauss map in characteristic 2 "
          "is never 1, and the ambient n+1 case is open)");
  if (r == 0) return FChoice{spec0, b0, RatFunc(spec0.ring()), {}, 0, 0};

  SeededRng rng(seed);
  unsigned attempts = 0;
  const unsigned e0 = spec0.ring()->F().degree();
  for (unsigned k = 1; k <= std::max(1u, opt.max_ext); ++k) {
    InsepSpec spec = spec0;
    std::vector<RatFunc> b = b0;
    if (k > 1) {
      FieldPtr big = GaloisField::get(p, e0 * k);
      FieldEmbedding emb(spec0.ring()->field(), big);
      RingPtr R = Ring::make(big, spec0.ring()->names());
      spec = spec0.lift(R, emb);
      for (auto& x : b) x = x.lift(R, emb);
    }
    const RingPtr& R = spec.ring();
    const auto& xs = spec.x_part;
    unsigned tries = 0;
    for (Elem t : shuffled_units(R->F(), rng)) {
      if (tries++ >= opt.max_retries) break;
      ++attempts;
      const RatFunc tc = RatFunc::constant(R, t);
      std::vector<RatFunc> fx(r, RatFunc(R));
      RatFunc f(R);
      if (p != 2) {
        for (std::size_t i = 0; i < r; ++i) {
          f += tc * xs[i] * xs[i];
          fx[i] = RatFunc::from_int(R, 2) * tc * xs[i];
        }
      } else {
        for (std::size_t l = 0; l + 1 < r; l += 2) {
          f += tc * xs[l] * xs[l + 1];
          fx[l] = tc * xs[l + 1];
          fx[l + 1] = tc * xs[l];
        }
      }
      std::vector<RatFunc> z;
      for (std::size_t i = 0; i < r; ++i) z.push_back(fx[i] - b[i]);
      z.insert(z.end(), spec.x_tail.begin(), spec.x_tail.end());
      if (jacobian_rank(R, z) == n) return FChoice{spec, b, f, fx, t, attempts};
    }
  }
  throw Error(ErrorCode::SearchExhausted, "no constant t makes the shifted partials a separating basis after " +
                                              std::to_string(attempts) + " attempts");
}

Construction construct_insep(const InsepSpec& spec_in, std::uint64_t seed, const ConstructOptions& opt) {
  const unsigned p = spec_in.ring()->F().characteristic();
  require(!(p == 2 && spec_in.r() % 2 == 1), ErrorCode::Precondition,
          "p = 2 with odd rank is not constructible as a hypersurface (open for ambient >= n + 2)");
  validate(spec_in, opt.elim);
  const auto b_in = solve_b(spec_in);
  FChoice ch = choose_f(spec_in, b_in, seed, opt);
  const InsepSpec& spec = ch.spec;
  const RingPtr& R = spec.ring();
  const std::size_t n = spec.n(), r = spec.r(), m = spec.m();

  std::vector<RatFunc> z{RatFunc::from_int(R, 1)};
  for (std::size_t i = 0; i < r; ++i) z.push_back(ch.f_partials[i] - ch.b[i]);
  z.insert(z.end(), spec.x_tail.begin(), spec.x_tail.end());

  Report rep;
  rep.seed = seed;
  rep.retries = ch.attempts > 0 ? ch.attempts - 1 : 0;

  DiffVector df_sum = zero_differential(R);
  for (std::size_t i = 0; i < r; ++i) df_sum = df_sum + differential(spec.x_part[i]).scaled(ch.f_partials[i]);
  rep.check("df = sum f_xi dxi", differential(ch.f) == df_sum);

  MatrixRF col(R, n + 1, 1);
  col(0, 0) = spec.a - ch.f;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i <= r) col(i, 0) = spec.x_part[i - 1];
    else if (i <= m) col(i, 0) = spec.y_part[i - r - 1];
  }
  DiffVector lin = zero_differential(R);
  for (std::size_t i = 0; i <= n; ++i) lin = lin + differential(col(i, 0)).scaled(z[i]);
  rep.check("sum z^i d a_i = 0", lin.is_zero(), lin.is_zero() ? "" : "residual " + lin.to_string());

  GraphParam g{ChartMap(col), z};
  ProjParam X = project_graph(g);
  auto cond = graph_differential_condition(g);
  rep.check("graph differential condition", cond.holds);
  const bool imm = is_immersive(X);
  rep.check("immersive", imm);
  if (imm) {
    GaussData gd = gauss_data(X);
    rep.check("Gauss image field equals K", fields_equal(gd.image_gens, spec.K(), opt.elim));
    rep.check("Gauss rank equals r", gd.rank == r, "rank " + std::to_string(gd.rank));
    rep.check("function field equals L", fields_equal(SubfieldPresentation::of(X.affine()), whole_field(R), opt.elim));
  }
  rep.fact("field", "F_" + std::to_string(R->F().order()));
  rep.fact("b", list_text(ch.b));
  rep.fact("f", ch.f.to_string());
  rep.fact("t", R->F().format(ch.t));
  rep.fact("z", list_text(z));
  rep.fact("chart", g.chart.to_string());
  enforce(rep, "inseparable construction");
  return Construction{X, g, rep};
}

// ---- rank zero ----

Construction construct_rank0(const ChartMap& chart, std::uint64_t seed, const ConstructOptions& opt) {
  const RingPtr& R = chart.ring();
  require(chart.n() == R->nvars(), ErrorCode::DimensionMismatch,
          "chart plane dimension n = " + std::to_string(chart.n()) + " must equal the number of parameters " +
              std::to_string(R->nvars()));
  for (std::size_t i = 0; i <= chart.n(); ++i)
    for (std::size_t j = chart.n() + 1; j <= chart.N(); ++j)
      require(pth_root(chart.a(i, j)).has_value(), ErrorCode::Precondition,
              "chart entry a(" + std::to_string(i) + "," + std::to_string(j) + ") = " + chart.a(i, j).to_string() +
                  " has a nonzero differential");
  std::vector<RatFunc> z{RatFunc::from_int(R, 1)};
  for (const auto& v : variables(R)) z.push_back(v);
  GraphParam g{chart, z};
  ProjParam X = project_graph(g);
  Report rep;
  rep.seed = seed;
  rep.check("graph differential condition", graph_differential_condition(g).holds);
  const bool imm = is_immersive(X);
  rep.check("immersive", imm);
  if (imm) {
    GaussData gd = gauss_data(X);
    rep.check("Gauss chart equals input chart", gd.chart == chart);
    rep.check("Gauss image field equals k(chart entries)",
              fields_equal(gd.image_gens, SubfieldPresentation::of(chart.all_entries()), opt.elim));
    rep.check("Gauss rank is 0", gd.rank == 0);
  }
  enforce(rep, "rank-zero construction");
  return Construction{X, g, rep};
}

Construction pad_embed(const ProjParam& x, std::size_t extra, std::uint64_t seed, const ConstructOptions& opt) {
  require(is_immersive(x), ErrorCode::Precondition, "padding needs an immersive parametrization");
  const RingPtr& R = x.ring();
  const unsigned p = R->F().characteristic();
  GaussData g0 = gauss_data(x);
  std::vector<RatFunc> gens;
  for (const auto& e : g0.image_gens.gens)
    if (!e.is_constant() && std::find(gens.begin(), gens.end(), e) == gens.end()) gens.push_back(e);
  const bool was_nondeg = is_nondegenerate(x);
  const bool attainable = !gens.empty();

  SeededRng rng(seed);
  Report rep;
  rep.seed = seed;
  std::vector<RatFunc> coords = x.coords();
  for (std::size_t k = 0; k < extra; ++k) {
    bool placed = false;
    for (unsigned attempt = 0; attempt < opt.max_retries && !placed; ++attempt) {
      if (attempt > 0) ++rep.retries;
      RatFunc h = RatFunc::constant(R, random_elem(R->F(), rng));
      for (int term = 0; term < 2 && attainable; ++term) {
        RatFunc mono = RatFunc::constant(R, 1 + static_cast<Elem>(rng.below(R->F().order() - 1)));
        for (const auto& gen : gens) mono *= gen.pow(static_cast<long long>(rng.below(3)));
        h += mono;
      }
      RatFunc coord = h.pow(p) * x[x.pivot()];
      auto trial = coords;
      trial.push_back(coord);
      if (was_nondeg && attainable && !is_nondegenerate(ProjParam(trial, x.pivot()))) continue;
      coords = std::move(trial);
      placed = true;
    }
    require(placed, ErrorCode::SearchExhausted, "no padding coordinate keeps the variety non-degenerate");
  }
  ProjParam X(coords, x.pivot());
  const bool imm = is_immersive(X);
  rep.check("immersive", imm);
  if (imm && attainable)
    rep.check("Gauss image field unchanged", fields_equal(gauss_data(X).image_gens, g0.image_gens, opt.elim));
  else if (imm)
    rep.check("Gauss rank stays 0", gauss_data(X).rank == 0);
  if (was_nondeg && attainable) rep.check("non-degeneracy preserved", is_nondegenerate(X));
  if (!attainable) rep.fact("non-degeneracy", "not attainable: the Gauss image field is k, so padding is constant");
  enforce(rep, "padding");
  return Construction{X, std::nullopt, rep};
}

// ---- families ----

Construction construct_family(const FamilySpec& spec, std::uint64_t seed, const ConstructOptions& opt) {
  const std::size_t d = spec.d(), n = spec.n(), Nf = spec.N_fiber();
  require(d >= 1, ErrorCode::Precondition, "the base Y must have dimension at least 1");
  require(spec.base_chart.n() == n, ErrorCode::DimensionMismatch,
          "base chart describes n-planes with n = " + std::to_string(spec.base_chart.n()) +
              ", but the total space has " + std::to_string(n) + " parameters");
  require(spec.base_map.size() == d, ErrorCode::DimensionMismatch, "base map needs one entry per base parameter");
  require(d <= n, ErrorCode::DimensionMismatch, "base has more parameters than the total space");
  const RingPtr& V = spec.fiber.front().ring();
  const RingPtr& S = spec.base_chart.ring();
  require(V->field() == S->field(), ErrorCode::InvalidArgument, "base and total space over different fields");
  for (const auto& b : spec.base_map)
    for (std::size_t k = d; k < n; ++k)
      require(!b.num().uses_var(k) && !b.den().uses_var(k), ErrorCode::Precondition,
              "base map may only use the first d total-space parameters");
  const auto base_entries = spec.base_chart.all_entries();
  const std::size_t dimY = image_dimension(SubfieldPresentation::of(base_entries), opt.elim);
  require(dimY == d, ErrorCode::Precondition,
          "base chart has image dimension " + std::to_string(dimY) + ", expected " + std::to_string(d));
  std::vector<RatFunc> first_vars = variables(V);
  first_vars.resize(d, RatFunc(V));
  require(fields_equal(SubfieldPresentation::of(spec.base_map), SubfieldPresentation::of(first_vars), opt.elim),
          ErrorCode::Precondition, "base map does not generate k(v_1..v_d)");
  ProjParam fib(spec.fiber);
  require(jacobian_rank(V, concat(spec.base_map, fib.affine())) == n, ErrorCode::Precondition,
          "total-space parametrization is not generically finite onto an n-dimensional image");

  const FieldPtr& F = V->field();
  const unsigned p = F->characteristic();
  std::vector<std::string> wn;
  for (std::size_t k = 1; k <= n; ++k) wn.push_back("w" + std::to_string(k));
  RingPtr W = Ring::make(F, wn);
  std::vector<RatFunc> pull, rename;
  for (std::size_t k = 0; k < n; ++k) {
    RatFunc w = RatFunc::variable(W, k);
    rename.push_back(w);
    pull.push_back(k < d ? w.pow(p) : w);
  }

  // Base chart on the total space, then pulled back along Frobenius.
  MatrixRF pa(W, spec.base_chart.n() + 1, spec.base_chart.N() - spec.base_chart.n());
  std::vector<RatFunc> twisted;  // coordinates of Y^(1/p)
  for (std::size_t i = 0; i < pa.rows(); ++i)
    for (std::size_t j = 0; j < pa.cols(); ++j) {
      RatFunc on_v = substitute(spec.base_chart.entries()(i, j), spec.base_map);
      pa(i, j) = substitute(on_v, pull);
      RatFunc tw = substitute(frobenius_twist(on_v), rename);
      require(tw.pow(p) == pa(i, j), ErrorCode::VerificationFailed, "twisted base coordinate is not a p-th root");
      if (!tw.is_constant() && std::find(twisted.begin(), twisted.end(), tw) == twisted.end()) twisted.push_back(tw);
    }
  ChartMap chart(pa);
  std::vector<RatFunc> ycoords{RatFunc::from_int(W, 1)};
  ycoords.insert(ycoords.end(), twisted.begin(), twisted.end());
  std::vector<RatFunc> fcoords;
  for (const auto& f : spec.fiber) fcoords.push_back(substitute(f, pull));
  std::vector<RatFunc> segre;
  for (const auto& y : ycoords)
    for (const auto& f : fcoords) segre.push_back(y * f);

  SeededRng rng(seed);
  Report rep;
  rep.seed = seed;
  const auto wfield = whole_field(W);
  // A sample whose certificate blows up is rejected like one that fails; the
  // coefficient cap catches swell that the step count alone misses.
  EliminationOptions budget = opt.elim;
  budget.limits.max_reductions = std::min<std::size_t>(budget.limits.max_reductions, 20000);
  budget.limits.max_coefficient_degree = 80;
  for (unsigned attempt = 0; attempt < opt.max_retries; ++attempt) {
    if (attempt > 0) ++rep.retries;
    // Sparse rows first: the membership certificate below is far cheaper on
    // short z's, and density grows with every rejected sample.
    const std::size_t S = segre.size();
    const std::size_t support = std::min<std::size_t>(S, 2 + attempt / 6);
    std::vector<std::vector<Elem>> pi(n + 1, std::vector<Elem>(S, 0));
    for (auto& row : pi) {
      std::vector<std::size_t> idx(S);
      for (std::size_t k = 0; k < S; ++k) idx[k] = k;
      for (std::size_t k = 0; k < support; ++k) {
        std::swap(idx[k], idx[k + rng.below(S - k)]);
        row[idx[k]] = random_unit(*F, rng);
      }
    }
    std::vector<RatFunc> z;
    for (const auto& row : pi) {
      RatFunc s(W);
      for (std::size_t k = 0; k < segre.size(); ++k)
        if (row[k]) s += segre[k].scale(row[k]);
      z.push_back(s);
    }
    if (z[0].is_zero()) continue;
    GraphParam g{chart, z};
    ProjParam X = project_graph(g);
    if (!is_immersive(X)) continue;
    bool slice_ok = true;
    if (n >= Nf) {
      MatrixRF M(W, n + 1, Nf + 1);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t b = 0; b <= Nf; ++b) {
          RatFunc s(W);
          for (std::size_t a = 0; a < ycoords.size(); ++a) s += ycoords[a].scale(pi[i][a * (Nf + 1) + b]);
          M(i, b) = s;
        }
      slice_ok = rank(M) == Nf + 1;
      if (!slice_ok) continue;
    }
    std::vector<RatFunc> graph_gens = chart.all_entries();
    for (std::size_t i = 1; i <= n; ++i) graph_gens.push_back(z[i] / z[0]);
    bool birational = false;
    try {
      birational = fields_equal(SubfieldPresentation::of(graph_gens), wfield, budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResourceLimit) throw;
    }
    if (!birational) continue;

    rep.check("immersive", true);
    rep.check("graph function field equals F_q(w)", true);
    if (n >= Nf) rep.check("fiber slice maps linearly and injectively", slice_ok);
    rep.check("graph differential condition", graph_differential_condition(g).holds);
    rep.check("graph kernel condition", graph_kernel_condition(g));
    GaussData gd = gauss_data(X);
    rep.check("Gauss rank is 0", gd.rank == 0, "rank " + std::to_string(gd.rank));
    rep.check("Gauss image field equals pulled-back base field",
              fields_equal(gd.image_gens, SubfieldPresentation::of(chart.all_entries()), opt.elim));
    std::string proj = "[";
    for (std::size_t i = 0; i < pi.size(); ++i) {
      proj += i ? ", [" : "[";
      for (std::size_t k = 0; k < pi[i].size(); ++k) proj += (k ? ", " : "") + F->format(pi[i][k]);
      proj += "]";
    }
    rep.fact("projection", proj + "]");
    rep.fact("base twist", list_text(ycoords));
    rep.fact("non-degenerate", is_nondegenerate(X) ? "true" : "false");
    enforce(rep, "family construction");
    return Construction{X, g, rep};
  }
  throw Error(ErrorCode::SearchExhausted,
              "no projection passed verification after " + std::to_string(opt.max_retries) + " samples");
}

// ---- joins and seeds ----

Construction join_product(const ProjParam& x1, const ProjParam& x2, const ConstructOptions& opt) {
  const RingPtr& R1 = x1.ring();
  const RingPtr& R2 = x2.ring();
  require(R1->field() == R2->field(), ErrorCode::InvalidArgument, "join factors over different fields");
  for (const auto& nm : R2->names())
    require(!R1->index_of(nm), ErrorCode::InvalidArgument, "join factors share the parameter '" + nm + "'");
  require(is_immersive(x1) && is_immersive(x2), ErrorCode::Precondition, "join factors must be immersive");
  std::vector<std::string> names = R1->names();
  names.insert(names.end(), R2->names().begin(), R2->names().end());
  RingPtr R = Ring::make(R1->field(), names);
  const std::size_t n1 = R1->nvars(), n2 = R2->nvars();
  std::vector<std::size_t> m1(n1), m2(n2);
  for (std::size_t i = 0; i < n1; ++i) m1[i] = i;
  for (std::size_t i = 0; i < n2; ++i) m2[i] = n1 + i;

  std::vector<RatFunc> coords{RatFunc::from_int(R, 1)};
  for (const auto& f : x1.affine()) coords.push_back(f.remap(R, m1));
  for (const auto& f : x2.affine()) coords.push_back(f.remap(R, m2));
  ProjParam X(coords);

  Report rep;
  GaussData g1 = gauss_data(x1), g2 = gauss_data(x2);
  const bool imm = is_immersive(X);
  rep.check("immersive", imm);
  if (imm) {
    GaussData g = gauss_data(X);
    const std::size_t c1 = g1.chart.N() - n1, c2 = g2.chart.N() - n2;
    MatrixRF expect(R, n1 + n2 + 1, c1 + c2);
    for (std::size_t j = 0; j < c1; ++j) {
      expect(0, j) = g1.chart.entries()(0, j).remap(R, m1);
      for (std::size_t i = 1; i <= n1; ++i) expect(i, j) = g1.chart.entries()(i, j).remap(R, m1);
    }
    for (std::size_t j = 0; j < c2; ++j) {
      expect(0, c1 + j) = g2.chart.entries()(0, j).remap(R, m2);
      for (std::size_t i = 1; i <= n2; ++i) expect(n1 + i, c1 + j) = g2.chart.entries()(i, j).remap(R, m2);
    }
    rep.check("Gauss chart has the block form", g.chart.entries() == expect);
    rep.check("rank is additive", g.rank == g1.rank + g2.rank,
              std::to_string(g.rank) + " = " + std::to_string(g1.rank) + " + " + std::to_string(g2.rank));
    rep.fact("ranks", std::to_string(g1.rank) + " + " + std::to_string(g2.rank) + " = " + std::to_string(g.rank));
  }
  (void)opt;
  enforce(rep, "join");
  return Construction{X, std::nullopt, rep};
}

Construction birational_gauss_seed(const FieldPtr& field, std::size_t r, std::uint64_t seed, std::optional<RatFunc> f,
                                   const ConstructOptions& opt) {
  require(r >= 1, ErrorCode::InvalidArgument, "seed varieties need r >= 1");
  const unsigned p = field->characteristic();
  require(!(p == 2 && r == 1), ErrorCode::Precondition, "rank 1 is impossible for a Gauss map in characteristic 2");
  RingPtr R;
  if (f) {
    R = f->ring();
    require(R->field() == field && R->nvars() == r, ErrorCode::DimensionMismatch,
            "f must live in a ring with exactly r parameters over the chosen field");
  } else {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= r; ++i) names.push_back("z" + std::to_string(i));
    R = Ring::make(field, names);
  }
  const auto z = variables(R);
  const bool odd_char2 = p == 2 && r % 2 == 1;
  SeededRng rng(seed);
  Report rep;
  rep.seed = seed;
  for (unsigned attempt = 0; attempt < opt.max_retries; ++attempt) {
    if (attempt > 0) ++rep.retries;
    RatFunc extra(R);
    Elem t = 0;
    RatFunc fv(R);
    if (f || odd_char2) {
      if (f) {
        fv = *f;
      } else {
        for (int k = 0; k < 3; ++k) {
          RatFunc mono = RatFunc::constant(R, 1 + static_cast<Elem>(rng.below(field->order() - 1)));
          for (std::size_t i = 0; i < r; ++i) mono *= z[i].pow(static_cast<long long>(rng.below(3)));
          fv += mono;
        }
      }
      t = 1 + static_cast<Elem>(rng.below(field->order() - 1));
      extra = fv.scale(t);
    }
    std::vector<RatFunc> coords{RatFunc::from_int(R, 1)};
    coords.insert(coords.end(), z.begin(), z.end());
    RatFunc q = extra;
    if (p != 2) {
      for (const auto& zi : z) q += zi * zi;
      coords.push_back(q);
    } else if (r % 2 == 0) {
      for (std::size_t l = 0; l + 1 < r; l += 2) q += z[l] * z[l + 1];
      coords.push_back(q);
    } else {
      for (std::size_t l = 0; l + 2 < r; l += 2) q += z[l] * z[l + 1];
      coords.push_back(q);
      coords.push_back(z[r - 2] * z[r - 1]);
    }
    ProjParam X(coords);
    if (!is_immersive(X)) continue;
    GaussData g = gauss_data(X);
    if (g.rank != r) continue;
    if (!fields_equal(g.image_gens, SubfieldPresentation::of(X.affine()), opt.elim)) continue;
    rep.check("immersive", true);
    rep.check("Gauss rank equals r", true, "rank " + std::to_string(r));
    rep.check("Gauss map is birational onto its image", true);
    if (f || odd_char2) {
      rep.fact("f", fv.to_string());
      rep.fact("t", field->format(t));
    }
    rep.fact("ambient", "P^" + std::to_string(X.N()));
    return Construction{X, std::nullopt, rep};
  }
  throw Error(ErrorCode::SearchExhausted, "no seeded choice gave a birational Gauss map of rank " + std::to_string(r));
}

}  // namespace gmap
