#pragma once

#include <random>
#include <string>
#include <vector>

#include "kmcoh/cohomology.hpp"

namespace kmc {

// Seeded random elements over the tower F_2(t1..t_{level-1})(x).
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}
  std::mt19937_64& rng() { return rng_; }
  int uniform(int lo, int hi) { return lo + int(rng_() % uint64_t(hi - lo + 1)); }
  bool coin() { return rng_() & 1; }

  // Polynomial with F_2 coefficients in nv variables, degree <= deg in each.
  Rat poly(int nv, int deg);
  // Element of F_2(t1..t_nv) whose denominators have finite or rational residue fields.
  Rat ground(int nv);
  Rat ground_nonzero(int nv);
  // Element of F[x] of degree <= deg with ground coefficients.
  Poly ground_poly(int cnv, int deg);
  Mask subset(Mask allowed, int size);
  // A random m-form over the given level with coefficients from ground().
  LogForm form(int nv, int m, int terms);

  // A random generator of one of L0, S_p, S'_{p,r} at P (level 2 and up).
  CohomClass generator(const Place& P, int m);

 private:
  std::mt19937_64 rng_;
};

// Places of degree <= 3 over F_2(t1)(x), including the inseparable place x^2+t1.
std::vector<Place> corpus_places();
// Options whose factorisation hints are the corpus places.
ZeroOptions corpus_options();

}  // namespace kmc
