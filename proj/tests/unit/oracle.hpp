#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "kmcoh/mpoly.hpp"

// Distributed F_2 polynomials as sets of exponent vectors.
namespace oracle {

using Mono = std::vector<int>;
using Dist = std::set<Mono>;

inline Dist from(const kmc::MPoly& p) {
  Dist d;
  for (auto& e : p.terms()) d.insert(e);
  return d;
}

inline void toggle(Dist& d, const Mono& m) {
  if (!d.erase(m)) d.insert(m);
}

inline Dist add(const Dist& a, const Dist& b) {
  Dist r = a;
  for (auto& m : b) toggle(r, m);
  return r;
}

inline Dist mul(const Dist& a, const Dist& b) {
  Dist r;
  for (auto& x : a)
    for (auto& y : b) {
      Mono m(x.size());
      for (size_t i = 0; i < x.size(); ++i) m[i] = x[i] + y[i];
      toggle(r, m);
    }
  return r;
}

inline Dist partial(const Dist& a, int v) {
  Dist r;
  for (auto m : a)
    if (m[v] % 2 == 1) {
      m[v] -= 1;
      toggle(r, m);
    }
  return r;
}

inline kmc::MPoly random_mpoly(std::mt19937_64& rng, int nv, int maxdeg, int terms) {
  kmc::MPoly p(nv);
  std::uniform_int_distribution<int> e(0, maxdeg);
  for (int k = 0; k < terms; ++k) {
    std::vector<int> m(nv);
    for (auto& x : m) x = e(rng);
    p += kmc::MPoly::monomial(m);
  }
  return p;
}

}  // namespace oracle
