#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gmap/cli.hpp"
#include "gmap/version.hpp"

namespace {

struct Shared {
  std::string in;
  std::uint64_t seed = 0;
  bool json = false;
  unsigned max_degree = 0;
  unsigned max_ext = 0;
};

void add_common(CLI::App* sub, Shared& o, bool needs_input) {
  auto* in = sub->add_option("--in", o.in, "scenario file");
  if (needs_input) in->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "seed for every general choice");
  sub->add_flag("--json", o.json, "print the JSON report");
  sub->add_option("--max-degree", o.max_degree, "Groebner degree cap (0 = default)");
  sub->add_option("--max-ext", o.max_ext, "largest field extension factor tried (0 = default)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss maps of parametrized varieties over finite fields"};
  app.set_version_flag("--version", std::string("gmap ") + gmap::kVersion);
  app.require_subcommand(1);

  Shared o;
  std::string construct_kind;
  struct Verb {
    const char* name;
    const char* help;
  };
  const Verb verbs[] = {
      {"run", "run whatever command the scenario names"},
      {"analyze", "Gauss map invariants of a parametrized variety"},
      {"shrink", "shrinking map of a Grassmannian chart"},
      {"graphcheck", "differential and kernel conditions for a graph candidate"},
      {"construct", "build a variety: insep, rank0 or family"},
      {"join", "join of two varieties in disjoint variables"},
      {"pad", "append coordinates without changing the Gauss image"},
      {"seed-verify", "variety with birational Gauss map of a given rank"},
      {"selftest", "run the acceptance corpus"},
  };
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    add_common(sub, o, std::string(v.name) != "selftest");
    if (std::string(v.name) == "construct")
      sub->add_option("kind", construct_kind, "insep, rank0 or family")
          ->required()
          ->check(CLI::IsMember({"insep", "rank0", "family"}));
  }
  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  gmap::RunOptions ro{o.seed, o.max_degree, o.max_ext};
  gmap::RunResult r;
  if (name == "selftest" && o.in.empty()) {
    r = gmap::run_text("char 2; vars t; selftest;", ro);
  } else {
    std::ifstream f(o.in);
    std::stringstream buf;
    buf << f.rdbuf();
    std::string expected = name == "run" ? "" : name == "construct" ? "construct " + construct_kind : name;
    r = gmap::run_text(buf.str(), ro, expected);
  }
  if (o.json)
    std::cout << r.report.dump(2) << "\n";
  else
    std::cout << gmap::render_text(r.report);
  return r.exit_code;
}
