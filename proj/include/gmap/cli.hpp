#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "gmap/scenario.hpp"

namespace gmap {

struct RunOptions {
  std::uint64_t seed = 0;
  // Groebner degree cap; 0 keeps the library default.
  unsigned max_degree = 0;
  // Largest field extension factor tried by constructions; 0 keeps the default.
  unsigned max_ext = 0;
};

// Exit codes: 0 every verdict passed, 1 some verdict failed, 2 error.
struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;
};

RunResult run_scenario(const Scenario& s, const RunOptions& opt);

// Parses and runs; parse failures become error reports.  When `expected_verb`
// is non-empty the scenario's command must match it.
RunResult run_text(const std::string& text, const RunOptions& opt, const std::string& expected_verb = "");

RunResult error_report(const std::string& command, const std::string& code, const std::string& message,
                       const RunOptions& opt);

// Aligned human-readable rendering of a report.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace gmap
