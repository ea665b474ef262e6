#include <random>

#include "doctest.h"
#include "kmcoh/cohomology.hpp"
#include "kmcoh/parse.hpp"
#include "kmcoh/sampling.hpp"
#include "kmcoh/transfers.hpp"

using namespace kmc;

namespace {

const std::vector<std::string> N1 = {"t1"};
const std::vector<std::string> N2 = {"t1", "x"};

Rat rnd_poly_rat(std::mt19937_64& rng, int nv, int deg) {
  Rat a(nv);
  for (int k = 0; k < 4; ++k) {
    std::vector<int> e(nv);
    for (auto& x : e) x = int(rng() % (deg + 1));
    a += Rat(MPoly::monomial(e));
  }
  return a;
}

// Denominators over F_2(t)(x) come from places with recognised residue fields.
Rat rnd_rat(std::mt19937_64& rng, int nv) {
  Rat num = rnd_poly_rat(rng, nv, 2);
  if (nv == 1) {
    Rat den = rnd_poly_rat(rng, nv, 2);
    if (den.is_zero() || rng() % 2) den = Rat::one(nv);
    return num / den;
  }
  static const char* dens[] = {"1", "t1", "t1+1", "x", "x+t1", "x^2+t1", "x^2+x+t1", "x*(x+1)", "(x+t1)^2"};
  return num / parse_rat(dens[rng() % 9], N2);
}

LogForm rnd_form(std::mt19937_64& rng, int nv, int m, int terms = 2) {
  LogForm f(nv);
  for (int k = 0; k < terms; ++k) {
    Mask S = 0;
    int guard = 0;
    while (popcount(S) < m && guard++ < 100) S |= 1u << (rng() % nv);
    if (popcount(S) == m) f.add(S, rnd_rat(rng, nv));
  }
  return f;
}

}  // namespace

TEST_CASE("odd pole class is nonzero") {
  ZeroOptions o;
  o.names = N1;
  ZeroResult z = is_zero(parse_class("(1/t1)", N1), 0, o);
  CHECK(z.verdict == Verdict::NonZero);
  CHECK(z.place == "t1");
}

TEST_CASE("constant classes over F_2(t)") {
  CHECK(is_zero(parse_class("(1)", N1), 0).verdict == Verdict::NonZero);
  CHECK(is_zero(parse_class("(t1^2+t1)", N1), 0).verdict == Verdict::Zero);
  CHECK(is_zero(parse_class("(1/(t1^2+t1+1))", N1), 0).verdict == Verdict::NonZero);
}

TEST_CASE("residues at infinity") {
  LogForm exact = parse_class("(t1) dlog(t1) ^ dlog(x)", N2);
  ZeroResult z = is_zero(exact, 2);
  CHECK(z.verdict == Verdict::Zero);
  CHECK(check_witness(exact, z.witness));
  z = is_zero(parse_class("(1/(t1+1)) dlog(t1) ^ dlog(x)", N2), 2);
  CHECK(z.verdict == Verdict::NonZero);
  CHECK(z.place == "x");
}

TEST_CASE("wp(omega) + d(eta) is zero with a recombining witness") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    int nv = 1 + it % 2, m = it % 3;
    if (m > nv) m = nv;
    LogForm om = rnd_form(rng, nv, m);
    LogForm et = m == 0 ? LogForm(nv) : rnd_form(rng, nv, m - 1);
    LogForm phi = wp(om) + dform(et);
    ZeroResult z = is_zero(phi, m);
    INFO(it, " ", phi.str(var_names(nv, true)), " ", z.place, " ", z.reason);
    REQUIRE(z.verdict == Verdict::Zero);
    CHECK(check_witness(phi, z.witness));
  }
}

TEST_CASE("classes with inseparable and rational residue fields") {
  std::mt19937_64 rng(12);
  ZeroOptions opt;
  for (const char* ps : {"x^2+t1", "x^2+x+t1", "x^3+t1*x+t1"}) {
    Poly p = parse_poly(ps, N2);
    opt.hints = {p};
    Rat pr = p.to_rat();
    for (int it = 0; it < 8; ++it) {
      LogForm om(2), et(2);
      om.add(1u << (it % 2), rnd_poly_rat(rng, 2, 2) / pr.pow(1 + it % 3));
      et.add(0, rnd_poly_rat(rng, 2, 2) / pr.pow(1 + it % 2));
      LogForm phi = wp(om) + dform(et);
      ZeroResult z = is_zero(phi, 1, opt);
      REQUIRE(z.verdict == Verdict::Zero);
      CHECK(check_witness(phi, z.witness));
    }
  }
}

TEST_CASE("worked reciprocity instance") {
  LogForm phi = parse_class("(t1) dlog(t1) ^ dlog(x+t1)", N2);
  ReciprocityReport r = reciprocity_sum(phi, 2);
  REQUIRE(r.terms.size() == 2);
  CHECK(r.terms[0].place.str(N2) == "x+t1");
  CHECK(r.terms[1].place.is_inf());
  CHECK(r.terms[0].value == parse_class("(t1) dlog(t1)", N1));
  CHECK(r.terms[1].value == parse_class("(t1) dlog(t1)", N1));
  CHECK(r.verdict.verdict == Verdict::Zero);
}

TEST_CASE("transfer closed forms at small places") {
  Place P = Place::finite(parse_poly("x+t1", N2));
  ResForm psi;
  psi[1u] = Poly::x(1);
  CHECK(t_p_star(psi, P) == parse_class("(t1) dlog(t1)", N1));
  Place Q = Place::finite(parse_poly("x^2+t1", N2));
  ResForm chi;
  chi[1u << 1] = Poly::constant(Rat::one(1));
  CHECK(t_p_star(chi, Q) == parse_class("dlog(t1)", N1));
}

TEST_CASE("reciprocity on random generator sums") {
  Sampler smp(21);
  auto places = corpus_places();
  int zero = 0, total = 0;
  for (int it = 0; it < 40; ++it) {
    int m = 1 + it % 2;
    LogForm phi(2);
    for (int k = 0; k < 2; ++k) phi += smp.generator(places[smp.uniform(0, int(places.size()) - 1)], m).rep;
    if (phi.is_zero()) continue;
    ZeroOptions o;
    for (const auto& P : places)
      if (!P.is_inf()) o.hints.push_back(P.p());
    ReciprocityReport r = reciprocity_sum(phi, m, o);
    INFO(it, " ", phi.str(N2), " ", r.verdict.place, " ", r.verdict.reason);
    CHECK(r.verdict.verdict != Verdict::NonZero);
    ++total;
    zero += r.verdict.verdict == Verdict::Zero;
  }
  MESSAGE("reciprocity zero ", zero, " of ", total);
}

TEST_CASE("reciprocity over two ground variables") {
  const std::vector<std::string> N3 = {"t1", "t2", "x"};
  std::vector<Place> pl = {Place::finite(parse_poly("x^2+t1", N3)), Place::finite(parse_poly("x^2+t1*t2", N3)),
                           Place::finite(parse_poly("x+t2", N3)), Place::infinity(3)};
  ZeroOptions o;
  o.names = N3;
  for (const auto& P : pl)
    if (!P.is_inf()) o.hints.push_back(P.p());
  Sampler smp(22);
  for (int it = 0; it < 150; ++it) {
    int m = 1 + it % 3;
    LogForm phi(3);
    for (int k = 0; k < 2; ++k) phi += smp.generator(pl[smp.uniform(0, int(pl.size()) - 1)], m).rep;
    ReciprocityReport r = reciprocity_sum(phi, m, o);
    INFO(it, " ", phi.str(N3), " ", r.verdict.reason);
    CHECK(r.verdict.verdict == Verdict::Zero);
  }
}
