#include <cstdio>
#include <string>
#include <vector>

#include "kmcoh/selftest.hpp"

using namespace kmc;

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  int count;
  double seconds_limit;
};

// Case counts and time limits are fixed; closedforms additionally requires >= 80% EQUAL per kind.
const std::vector<Criterion> kCriteria = {
    {1, "reciprocity over generator corpora", "reciprocity", 200, 300.0},
    {2, "gamma arithmetic and generating function", "gamma", 50, 10.0},
    {3, "Gram transfer against closed forms", "closedforms", 30, 120.0},
    {4, "normal form round trip and perturbation detection", "roundtrip", 100, 60.0},
    {5, "exactness properties", "exactness", 50, 300.0},
    {6, "invariance under wp(omega) + d(eta)", "wellposed", 100, 300.0},
    {7, "Teichmuller lifts modulo p^(2^N), N <= 3", "teichmuller", 4, 60.0},
};

constexpr uint64_t kSeed = 20261015;

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : kCriteria) {
    SuiteConfig cfg;
    cfg.seed = kSeed + c.id;
    cfg.count = c.count;
    cfg.teich_depth = 3;
    SuiteReport r = run_suite(c.suite, cfg);
    bool ok = r.pass && r.seconds <= c.seconds_limit;
    failed += !ok;
    std::printf("[%s] criterion %d: %s: %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                r.summary.c_str(), r.seconds, c.seconds_limit);
    for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(kCriteria.size()) - failed, kCriteria.size());
  return failed == 0 ? 0 : 1;
}
