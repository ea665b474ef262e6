#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kmc {

struct SuiteConfig {
  uint64_t seed = 1;
  int count = 0;        // cases per part; 0 picks the suite default
  int teich_depth = 3;
  int bound = 64;       // Witt simplification rounds
};

struct SuiteReport {
  std::string name;
  bool pass = false;
  int cases = 0;
  int failures = 0;
  double seconds = 0;
  std::string summary;
  std::vector<std::string> details;  // first failures
};

// reciprocity, gamma, closedforms, roundtrip, exactness, wellposed, teichmuller.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg = {});

}  // namespace kmc
