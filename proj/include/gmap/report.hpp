#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace gmap {

// One checked identity and its outcome.
struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<Verdict> verdicts;
  std::uint64_t seed = 0;
  unsigned retries = 0;
  // Ordered key/value facts worth printing (chosen constants, solved b, ...).
  std::vector<std::pair<std::string, std::string>> facts;

  void check(std::string name, bool pass, std::string detail = "") {
    verdicts.push_back({std::move(name), pass, std::move(detail)});
  }
  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

// Seeded source for every "general" choice.  Uses only the engine's raw
// output so streams are identical across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : g_() % n; }

 private:
  std::mt19937_64 g_;
};

}  // namespace gmap
