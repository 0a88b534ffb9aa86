#pragma once

#include <string>
#include <vector>

#include "gmap/parse.hpp"

namespace gmap {

// Commands and their argument shapes:
//   analyze X | shrink C | graphcheck G | pad X k | join A B
//   construct insep S | construct rank0 C | construct family F
//   seed-verify r [f] | selftest
// Arguments are binding names or integer literals.
struct Command {
  std::string verb;  // "construct insep", "analyze", ...
  std::vector<std::string> args;
  SourcePos pos;
};

struct Binding {
  std::string name;
  Value value;
};

struct Scenario {
  unsigned p = 0;
  unsigned ext = 1;
  RingPtr ring;
  std::vector<Binding> bindings;
  Command command;

  const Value& lookup(const std::string& name, SourcePos where) const;
  // Canonical text: header, one binding per line with evaluated values, then
  // the command.  parse_scenario(to_string()) reproduces the same text.
  std::string to_string() const;
};

// Grammar:  char p [ext e]; vars id, ...; (name = expr;)* command [;]
Scenario parse_scenario(const std::string& text);

// Verbs recognized by parse_scenario, in display order.
const std::vector<std::string>& scenario_verbs();

}  // namespace gmap
