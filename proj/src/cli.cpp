#include "gmap/cli.hpp"

#include <algorithm>
#include <sstream>

#include "gmap/acceptance.hpp"
#include "gmap/construct.hpp"
#include "gmap/version.hpp"

namespace gmap {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

// ---- value conversion ----

ParseError shape_error(const Value& v, const std::string& msg) {
  return ParseError(v.pos, msg, ErrorCode::InvalidArgument);
}

const RatFunc& scalar(const Value& v, const std::string& what) {
  if (!v.is_scalar()) throw shape_error(v, what + " must be a scalar expression, found " + v.to_string());
  return v.scalar();
}

std::vector<RatFunc> scalars(const Value& v, const std::string& what) {
  if (!v.is_list()) throw shape_error(v, what + " must be a bracketed list, found " + v.to_string());
  std::vector<RatFunc> out;
  for (const auto& e : v.list()) out.push_back(scalar(e, "each entry of " + what));
  return out;
}

std::vector<RatFunc> nonempty(const Value& v, const std::string& what) {
  auto out = scalars(v, what);
  if (out.empty()) throw shape_error(v, what + " must not be empty");
  return out;
}

const Call& call_named(const Value& v, const std::string& name, std::size_t lo, std::size_t hi) {
  if (!v.is_call() || v.call().name != name)
    throw shape_error(v, "expected " + name + "(...), found " + v.to_string());
  if (v.call().args.size() < lo || v.call().args.size() > hi)
    throw shape_error(v, name + "(...) takes " + std::to_string(lo) + (hi != lo ? "-" + std::to_string(hi) : "") +
                             " arguments");
  return v.call();
}

ProjParam to_param(const Value& v) {
  auto c = nonempty(v, "a parametrized variety");
  if (c.size() < 2) throw shape_error(v, "a parametrized variety needs at least two coordinates");
  if (std::all_of(c.begin(), c.end(), [](const RatFunc& f) { return f.is_zero(); }))
    throw shape_error(v, "all coordinates are zero");
  return ProjParam(c);
}

// chart(M) or a bare matrix: n+1 rows of N-n entries.
ChartMap to_chart(const Value& v, const RingPtr& ring) {
  const Value& m = v.is_call() ? call_named(v, "chart", 1, 1).args[0] : v;
  if (!m.is_list() || m.list().empty()) throw shape_error(m, "a chart is a nonempty list of rows");
  std::vector<RFVector> rows;
  for (const auto& r : m.list()) {
    rows.push_back(nonempty(r, "a chart row"));
    if (rows.back().size() != rows.front().size())
      throw ParseError(r.pos, "chart rows have different lengths", ErrorCode::DimensionMismatch);
  }
  return ChartMap::from_rows(ring, rows);
}

GraphParam to_graph(const Value& v, const RingPtr& ring) {
  const Call& c = call_named(v, "graph", 2, 2);
  ChartMap chart = to_chart(c.args[0], ring);
  auto z = scalars(c.args[1], "the point z");
  if (z.size() != chart.n() + 1)
    throw ParseError(c.args[1].pos,
                     "z needs " + std::to_string(chart.n() + 1) + " entries for a chart with " +
                         std::to_string(chart.n() + 1) + " rows",
                     ErrorCode::DimensionMismatch);
  if (std::all_of(z.begin(), z.end(), [](const RatFunc& f) { return f.is_zero(); }))
    throw shape_error(c.args[1], "z must not vanish identically");
  return GraphParam{chart, z};
}

InsepSpec to_insep(const Value& v) {
  const Call& c = call_named(v, "insep", 4, 4);
  return InsepSpec{scalars(c.args[0], "the x part"), scalars(c.args[1], "the y part"), scalar(c.args[2], "a"),
                   scalars(c.args[3], "the tail")};
}

bool uses(const RatFunc& f, std::size_t var) { return f.num().uses_var(var) || f.den().uses_var(var); }

std::vector<bool> used_vars(const std::vector<RatFunc>& fs, std::size_t n) {
  std::vector<bool> u(n, false);
  for (const auto& f : fs)
    for (std::size_t i = 0; i < n; ++i) u[i] = u[i] || uses(f, i);
  return u;
}

// Sub-ring on the listed variables of `ring` and the source-to-target index map.
std::pair<RingPtr, std::vector<std::size_t>> subring(const RingPtr& ring, const std::vector<std::size_t>& vars) {
  std::vector<std::string> names;
  std::vector<std::size_t> map(ring->nvars(), kAbsent);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    names.push_back(ring->name(vars[k]));
    map[vars[k]] = k;
  }
  return {Ring::make(ring->field(), names), map};
}

RatFunc move_to(const RatFunc& f, const RingPtr& target, const std::vector<std::size_t>& map, const Value& where,
                const std::string& what) {
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] == kAbsent && uses(f, i))
      throw shape_error(where, what + " may not use '" + f.ring()->name(i) + "'");
  return f.remap(target, map);
}

std::vector<RatFunc> move_all(const std::vector<RatFunc>& fs, const RingPtr& target,
                              const std::vector<std::size_t>& map, const Value& where, const std::string& what) {
  std::vector<RatFunc> out;
  for (const auto& f : fs) out.push_back(move_to(f, target, map, where, what));
  return out;
}

// family(C, [s...], [images...], [fiber...]): C is the base chart in the
// variables s; the remaining variables parametrize the total space, ordered
// so that those appearing in the base images come first.
FamilySpec to_family(const Value& v, const RingPtr& ring) {
  const Call& c = call_named(v, "family", 4, 4);
  std::vector<std::size_t> base;
  for (const auto& s : nonempty(c.args[1], "the base variables")) {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      if (s == RatFunc::variable(ring, i)) idx = i;
    if (!idx) throw shape_error(c.args[1], "base variables must be declared variables, found " + s.to_string());
    if (std::find(base.begin(), base.end(), *idx) != base.end())
      throw shape_error(c.args[1], "base variable '" + s.to_string() + "' listed twice");
    base.push_back(*idx);
  }
  auto images = nonempty(c.args[2], "the base images");
  if (images.size() != base.size())
    throw ParseError(c.args[2].pos, "need one base image per base variable", ErrorCode::DimensionMismatch);
  auto fiber = nonempty(c.args[3], "the fiber");

  auto in_images = used_vars(images, ring->nvars());
  std::vector<std::size_t> total;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      if (std::find(base.begin(), base.end(), i) == base.end() && in_images[i] == (pass == 0)) total.push_back(i);
  if (total.empty()) throw shape_error(v, "no variables left for the total space");

  auto [B, bmap] = subring(ring, base);
  auto [T, tmap] = subring(ring, total);
  ChartMap chart = to_chart(c.args[0], ring);
  MatrixRF a(B, chart.entries().rows(), chart.entries().cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) = move_to(chart.entries()(i, j), B, bmap, c.args[0], "the base chart");
  return FamilySpec{ChartMap(a), move_all(images, T, tmap, c.args[2], "a base image"),
                    move_all(fiber, T, tmap, c.args[3], "the fiber")};
}

// Restricts a variety to the variables it uses.
ProjParam own_ring(const ProjParam& x, const std::vector<bool>& used, const Value& where) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) vars.push_back(i);
  if (vars.empty()) throw shape_error(where, "a join factor must use at least one variable");
  auto [R, map] = subring(x.ring(), vars);
  return ProjParam(move_all(x.coords(), R, map, where, "a join factor"));
}

// ---- report assembly ----

std::string list_text(const std::vector<RatFunc>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + "]";
}

json strings(const std::vector<RatFunc>& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(f.to_string());
  return a;
}

json indices(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (auto i : v) a.push_back(i);
  return a;
}

json param_json(const ProjParam& x) {
  return json{{"ambient_dimension", x.N()}, {"parameters", x.ring()->names()}, {"coords", strings(x.coords())}};
}

struct Builder {
  json verdicts = json::array();
  json result = json::object();
  json facts = json::object();
  json output = nullptr;
  json permutation = nullptr;
  json change = nullptr;
  unsigned retries = 0;

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    verdicts.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
  }
  void absorb(const Report& r) {
    for (const auto& v : r.verdicts) check(v.name, v.pass, v.detail);
    for (const auto& [k, val] : r.facts) facts[k] = val;
    retries += r.retries;
  }
  void set_output(const ProjParam& x) {
    output = param_json(x);
    try {
      if (is_immersive(x)) permutation = indices(gauss_data(x).permutation);
    } catch (const Error&) {
    }
  }
};

ConstructOptions construct_options(const RunOptions& o) {
  ConstructOptions c;
  if (o.max_degree) c.elim.limits.max_degree = o.max_degree;
  if (o.max_ext) c.max_ext = o.max_ext;
  return c;
}

std::size_t count_arg(const Command& cmd, std::size_t k) {
  const std::string& a = cmd.args[k];
  if (a.empty() || !std::all_of(a.begin(), a.end(), ::isdigit) || a.size() > 4)
    throw ParseError(cmd.pos, "'" + cmd.verb + "' expects a small integer, found '" + a + "'",
                     ErrorCode::InvalidArgument);
  return std::stoul(a);
}

const Value& binding_arg(const Scenario& s, std::size_t k) {
  const std::string& a = s.command.args[k];
  if (a.empty() || std::isdigit(static_cast<unsigned char>(a[0])))
    throw ParseError(s.command.pos, "'" + s.command.verb + "' expects a binding name, found '" + a + "'",
                     ErrorCode::InvalidArgument);
  return s.lookup(a, s.command.pos);
}

// ---- commands ----

void analyze(const Scenario& s, const ConstructOptions& co, Builder& b) {
  ProjParam x = to_param(binding_arg(s, 0));
  const bool imm = is_immersive(x);
  b.check("immersive", imm);
  b.result["parameters"] = x.ring()->nvars();
  b.result["ambient_dimension"] = x.N();
  if (!imm) return;
  GaussData g = gauss_data(x);
  b.permutation = indices(g.permutation);
  const bool sep = is_separable_gauss(g, co.elim);
  b.result["rank"] = g.rank;
  // Distinct non-constant chart entries; constants add nothing to the field.
  std::vector<RatFunc> gens;
  for (const auto& f : g.image_gens.gens)
    if (!f.is_constant() && std::find(gens.begin(), gens.end(), f) == gens.end()) gens.push_back(f);
  b.result["image_field_generators"] = strings(gens);
  b.result["image_dimension"] = image_dimension(g.image_gens, co.elim);
  b.result["separable"] = sep;
  b.result["separating_coordinates"] = indices(g.separating);
  b.result["gauss_chart"] = g.chart.to_string();
  GraphParam graph = graph_of_gauss(g);
  b.check("Gauss graph differential condition", graph_differential_condition(graph).holds);
  b.check("Gauss graph kernel condition", graph_kernel_condition(graph));
  SFFData sff = second_fundamental_form(g);
  b.check("second fundamental form symmetric", sff.symmetric());
  ShrinkResult deg = degeneracy_map(g);
  b.result["degeneracy_plane_dimension"] = deg.plane_dim;
  b.check("degeneracy map equals shrink of the Gauss chart", degeneracy_matches_shrink(g));
  if (sep) {
    DegeneracyFactorization f = verify_degeneracy_factorization(g, co.elim);
    b.check("degeneracy map factors through the image", f.holds,
            "image dimension " + std::to_string(f.image_dim) + ", image shrink plane dimension " +
                std::to_string(f.image_shrink_plane_dim));
  }
  b.output = param_json(x);
}

void shrink_cmd(const Scenario& s, Builder& b) {
  ChartMap c = to_chart(binding_arg(s, 0), s.ring);
  ShrinkResult r = shrink(c);
  json kernel = json::array();
  for (const auto& v : r.kernel) kernel.push_back(list_text(v));
  json locus = json::array();
  for (const auto& f : r.undefined_locus) locus.push_back(f.to_string());
  b.result["n"] = c.n();
  b.result["N"] = c.N();
  b.result["plane_dimension"] = r.plane_dim;
  b.result["kernel"] = kernel;
  b.result["plane"] = r.plane.to_string();
  b.result["pluecker"] = r.pluecker.to_string();
  b.result["forced_zero"] = indices(r.forced_zero);
  b.result["undefined_locus"] = locus;

  // Independent checks of the returned basis against the chart differential.
  MatrixRF d = chart_differential_matrix(c);
  bool annihilates = true;
  for (const auto& v : r.kernel) {
    RFVector img = d * v;
    annihilates = annihilates && std::all_of(img.begin(), img.end(), [](const RatFunc& f) { return f.is_zero(); });
  }
  b.check("kernel vectors annihilate the chart differential", annihilates);
  b.check("Pluecker vector matches the plane", equal_as_maps(pluecker_of_rows(r.plane), r.pluecker));
  for (std::size_t i = 0; i <= c.n(); ++i) {
    const bool forced = std::find(r.forced_zero.begin(), r.forced_zero.end(), i) != r.forced_zero.end();
    const bool vanishes = std::all_of(r.kernel.begin(), r.kernel.end(), [&](const RFVector& v) { return v[i].is_zero(); });
    if (forced || vanishes)
      b.check("z" + std::to_string(i) + " = 0 forced on the kernel", forced == vanishes,
              vanishes ? "every kernel vector has a zero in position " + std::to_string(i) : "listed but not forced");
  }
}

void graphcheck(const Scenario& s, Builder& b) {
  GraphParam g = to_graph(binding_arg(s, 0), s.ring);
  DifferentialConditionResult ii = graph_differential_condition(g);
  ShrinkResult sh = shrink(g.chart);
  const bool iii = graph_kernel_condition(g, sh);
  std::string witness;
  if (!ii.holds && ii.failing_j) witness = "j=" + std::to_string(*ii.failing_j) + ", residual " + ii.residual.to_string();
  b.check("graph differential condition", ii.holds, witness);
  b.check("graph kernel condition", iii, iii ? "" : "z is not in the shrink kernel");
  b.check("differential and kernel conditions agree", ii.holds == iii);
  b.result["differential_condition"] = ii.holds;
  b.result["kernel_condition"] = iii;
  b.result["failing_j"] = ii.failing_j ? json(*ii.failing_j) : json(nullptr);
  b.result["residual"] = ii.holds ? json(nullptr) : json(ii.residual.to_string());
  b.result["shrink_plane_dimension"] = sh.plane_dim;
  b.result["forced_zero"] = indices(sh.forced_zero);
  ProjParam x = project_graph(g);
  b.result["projection"] = x.to_string();
}

void construction(const Construction& c, Builder& b) {
  b.absorb(c.report);
  b.set_output(c.X);
  if (c.graph) b.result["graph"] = c.graph->to_string();
  auto proj = std::find_if(c.report.facts.begin(), c.report.facts.end(),
                           [](const auto& kv) { return kv.first == "projection"; });
  if (proj != c.report.facts.end()) b.change = proj->second;
}

void seed_verify(const Scenario& s, const RunOptions& o, const ConstructOptions& co, Builder& b) {
  const std::size_t r = count_arg(s.command, 0);
  std::optional<RatFunc> f;
  if (s.command.args.size() > 1) {
    const Value& fv = binding_arg(s, 1);
    f = scalar(fv, "f");
    if (s.ring->nvars() != r)
      throw ParseError(fv.pos, "f must be written in exactly " + std::to_string(r) + " declared variables",
                       ErrorCode::DimensionMismatch);
  }
  Construction c = birational_gauss_seed(s.ring->field(), r, o.seed, f, co);
  construction(c, b);
  // Recomputed from the output alone.
  GaussData g = gauss_data(c.X);
  b.check("recomputed rank equals r", g.rank == r, "rank " + std::to_string(g.rank));
  b.check("recomputed image field equals the function field",
          fields_equal(g.image_gens, SubfieldPresentation::of(c.X.affine()), co.elim));
  b.result["rank"] = g.rank;
}

void selftest(const RunOptions& o, Builder& b) {
  // Timings stay out of the report so it is reproducible; over-budget runs
  // still fail their criterion.
  for (const auto& out : run_acceptance(o.seed)) b.check(std::to_string(out.id) + ". " + out.title, out.pass, out.detail);
}

json field_json(unsigned p, unsigned ext) {
  unsigned long long q = 1;
  for (unsigned i = 0; i < ext; ++i) q *= p;
  return json{{"characteristic", p}, {"extension_degree", ext}, {"order", q}};
}

json skeleton(const std::string& command, const RunOptions& opt) {
  return json{{"version", kVersion},
              {"command", command},
              {"field", nullptr},
              {"seed", opt.seed},
              {"retries", 0},
              {"chart_permutation", nullptr},
              {"coordinate_change", nullptr},
              {"verdicts", json::array()},
              {"facts", json::object()},
              {"result", json::object()},
              {"output", nullptr},
              {"status", "pass"},
              {"error", nullptr}};
}

}  // namespace

RunResult error_report(const std::string& command, const std::string& code, const std::string& message,
                       const RunOptions& opt) {
  json j = skeleton(command, opt);
  j["status"] = "error";
  j["error"] = json{{"code", code}, {"message", message}};
  return {j, 2};
}

RunResult run_scenario(const Scenario& s, const RunOptions& opt) {
  const Command& cmd = s.command;
  Builder b;
  const ConstructOptions co = construct_options(opt);
  try {
    if (cmd.verb == "analyze") {
      analyze(s, co, b);
    } else if (cmd.verb == "shrink") {
      shrink_cmd(s, b);
    } else if (cmd.verb == "graphcheck") {
      graphcheck(s, b);
    } else if (cmd.verb == "construct insep") {
      construction(construct_insep(to_insep(binding_arg(s, 0)), opt.seed, co), b);
    } else if (cmd.verb == "construct rank0") {
      construction(construct_rank0(to_chart(binding_arg(s, 0), s.ring), opt.seed, co), b);
    } else if (cmd.verb == "construct family") {
      construction(construct_family(to_family(binding_arg(s, 0), s.ring), opt.seed, co), b);
    } else if (cmd.verb == "join") {
      const Value& va = binding_arg(s, 0);
      const Value& vb = binding_arg(s, 1);
      ProjParam x1 = to_param(va), x2 = to_param(vb);
      auto u1 = used_vars(x1.coords(), s.ring->nvars()), u2 = used_vars(x2.coords(), s.ring->nvars());
      for (std::size_t i = 0; i < u1.size(); ++i)
        if (u1[i] && u2[i]) throw shape_error(vb, "join factors share the variable '" + s.ring->name(i) + "'");
      construction(join_product(own_ring(x1, u1, va), own_ring(x2, u2, vb), co), b);
    } else if (cmd.verb == "pad") {
      construction(pad_embed(to_param(binding_arg(s, 0)), count_arg(cmd, 1), opt.seed, co), b);
    } else if (cmd.verb == "seed-verify") {
      seed_verify(s, opt, co, b);
    } else if (cmd.verb == "selftest") {
      selftest(opt, b);
    } else {
      throw ParseError(cmd.pos, "unknown command '" + cmd.verb + "'");
    }
  } catch (const Error& e) {
    RunResult r = error_report(cmd.verb, code_name(e.code()), e.what(), opt);
    r.report["field"] = field_json(s.p, s.ext);
    r.report["verdicts"] = b.verdicts;
    return r;
  }

  json j = skeleton(cmd.verb, opt);
  j["field"] = field_json(s.p, s.ext);
  j["retries"] = b.retries;
  j["chart_permutation"] = b.permutation;
  j["coordinate_change"] = b.change;
  j["verdicts"] = b.verdicts;
  j["facts"] = b.facts;
  j["result"] = b.result;
  j["output"] = b.output;
  bool all = true;
  for (const auto& v : b.verdicts) all = all && v["pass"].get<bool>();
  j["status"] = all ? "pass" : "fail";
  return {j, all ? 0 : 1};
}

RunResult run_text(const std::string& text, const RunOptions& opt, const std::string& expected_verb) {
  Scenario s;
  try {
    s = parse_scenario(text);
  } catch (const Error& e) {
    return error_report(expected_verb, code_name(e.code()), e.what(), opt);
  }
  if (!expected_verb.empty() && s.command.verb != expected_verb)
    return error_report(expected_verb, code_name(ErrorCode::InvalidArgument),
                        s.command.pos.to_string() + ": the scenario's command is '" + s.command.verb + "', not '" +
                            expected_verb + "'",
                        opt);
  return run_scenario(s, opt);
}

std::string render_text(const json& j) {
  std::ostringstream out;
  auto str = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  out << "gmap " << str(j["version"]);
  if (!str(j["command"]).empty()) out << "  " << str(j["command"]);
  if (!j["field"].is_null()) out << "  F_" << j["field"]["order"].dump();
  out << "  seed " << j["seed"].dump() << "  retries " << j["retries"].dump() << "\n";

  std::size_t width = 0;
  for (const auto& v : j["verdicts"]) width = std::max(width, v["name"].get<std::string>().size());
  for (const char* key : {"facts", "result"})
    for (const auto& [k, v] : j[key].items()) width = std::max(width, k.size());
  auto pad = [&](const std::string& s) { return s + std::string(width + 2 - std::min(width, s.size()), ' '); };

  if (!j["verdicts"].empty()) {
    out << "verdicts:\n";
    for (const auto& v : j["verdicts"]) {
      const std::string detail = v["detail"].get<std::string>();
      const std::string name = v["name"].get<std::string>();
      out << "  " << (v["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << (detail.empty() ? name : pad(name) + detail)
          << "\n";
    }
  }
  for (const char* key : {"facts", "result"}) {
    if (j[key].empty()) continue;
    out << key << ":\n";
    for (const auto& [k, v] : j[key].items()) out << "        " << pad(k) << str(v) << "\n";
  }
  if (!j["chart_permutation"].is_null()) out << "chart permutation: " << j["chart_permutation"].dump() << "\n";
  if (!j["coordinate_change"].is_null()) out << "coordinate change: " << str(j["coordinate_change"]) << "\n";
  if (!j["output"].is_null()) {
    out << "output: [";
    const auto& c = j["output"]["coords"];
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " : " : "") << c[i].get<std::string>();
    out << "]\n";
  }
  if (!j["error"].is_null())
    out << "error: " << str(j["error"]["code"]) << ": " << str(j["error"]["message"]) << "\n";
  out << "status: " << str(j["status"]) << "\n";
  return out.str();
}

}  // namespace gmap
