#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gmap {

struct CriterionOutcome {
  unsigned id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // counts, or the first failing case
  double seconds = 0;
  double budget_seconds = 0;
};

struct AcceptanceCriterion {
  unsigned id;
  std::string title;
  double budget_seconds;
  // Fills `detail` and returns whether every case passed.  Timing is added
  // by run_criterion.
  std::function<bool(std::uint64_t seed, std::string& detail)> run;
};

// The fixed acceptance corpus, in order.  Seed 0 reproduces the frozen
// corpus; other seeds resample the random families.
const std::vector<AcceptanceCriterion>& acceptance_criteria();

// Runs one criterion; exceptions become failures.  A criterion over its time
// budget fails even when every case passed.
CriterionOutcome run_criterion(const AcceptanceCriterion& c, std::uint64_t seed);

// `only` empty means all criteria.
std::vector<CriterionOutcome> run_acceptance(std::uint64_t seed = 0, const std::vector<unsigned>& only = {});

std::string format_outcome(const CriterionOutcome& o);

}  // namespace gmap
