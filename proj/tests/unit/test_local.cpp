#include <random>

#include "doctest.h"
#include "kmcoh/local.hpp"
#include "kmcoh/parse.hpp"

using namespace kmc;

namespace {

const std::vector<std::string> N2 = {"t1", "x"};

Rat small_ground(std::mt19937_64& rng, int cnv) {
  Rat a(cnv);
  for (int k = 0; k <= 2; ++k)
    if (rng() & 1) a += Rat::var(cnv, 0).pow(k);
  return a;
}

Poly small_poly(std::mt19937_64& rng, int cnv, int deg) {
  std::vector<Rat> c;
  for (int i = 0; i <= deg; ++i) c.push_back(small_ground(rng, cnv));
  return Poly(cnv, c);
}

Rat random_coeff(std::mt19937_64& rng, const Place& P, int maxpole) {
  int n = P.level();
  Rat num = small_poly(rng, n - 1, 3).to_rat();
  if (num.is_zero()) num = Rat::one(n);
  Rat den = Rat::one(n);
  if (P.is_inf()) return num * Rat::var(n, n - 1).pow(int(rng() % (maxpole + 1)));
  int k = int(rng() % (maxpole + 1));
  den = P.to_rat().pow(k);
  if (rng() % 3 == 0) den *= parse_rat("x+t1+1", N2);
  return num / den;
}

LogForm random_form(std::mt19937_64& rng, const Place& P, int m, int maxpole) {
  int n = P.level();
  LogForm f(n);
  for (int k = 0; k < 3; ++k) {
    Mask S = 0;
    while (popcount(S) < m) S |= 1u << (rng() % n);
    f.add(S, random_coeff(rng, P, maxpole));
  }
  return f;
}

std::vector<Place> places() {
  return {Place::finite(parse_poly("x", N2)),        Place::finite(parse_poly("x+t1", N2)),
          Place::finite(parse_poly("x^2+t1", N2)),   Place::finite(parse_poly("x^2+x+t1", N2)),
          Place::finite(parse_poly("x^3+t1*x+t1", N2)), Place::finite(parse_poly("x^2+t1*x+1", N2)),
          Place::infinity(2)};
}

}  // namespace

TEST_CASE("adapted basis conversion is invertible") {
  std::mt19937_64 rng(1);
  for (const auto& P : places()) {
    for (int it = 0; it < 10; ++it) {
      LogForm f = random_form(rng, P, 1 + it % 2, 2);
      CHECK(to_global(to_adapted(f, P), P) == f);
    }
  }
}

TEST_CASE("partial fractions reassemble the coefficient") {
  std::mt19937_64 rng(2);
  for (const auto& P : places()) {
    Rat ipi = uniformizer(P).inv();
    for (int it = 0; it < 15; ++it) {
      Rat c = random_coeff(rng, P, 4);
      Digits dg = partial_fractions(c, P);
      Rat s = dg.regular;
      for (size_t l = 0; l < dg.polar.size(); ++l) s += dg.polar[l].to_rat() * ipi.pow(int(l) + 1);
      CHECK(s == c);
      if (!P.is_inf()) {
        Poly num, den;
        Poly::from_rat(c, &num, &den);
        bool pole = den.mod(P.p()).is_zero();
        CHECK(dg.polar.empty() != pole);
      }
    }
  }
}

TEST_CASE("residue field decomposition is exact") {
  std::mt19937_64 rng(3);
  for (const auto& P : places()) {
    if (P.is_inf()) continue;
    for (int it = 0; it < 20; ++it) {
      Poly f = small_poly(rng, 1, 2 * P.d() - 1);
      Decomposition dec = residue_field_decompose(f, P);
      Poly s = P.p() * dec.k;
      for (const auto& [J, fj] : dec.parts) {
        CHECK((J & ~residue_basis(P)) == 0u);
        CHECK(fj.deg() < P.d());
        s += basis_monomial(P, J) * fj.square();
      }
      CHECK(s == f);
    }
  }
}

TEST_CASE("local rewrite satisfies the witnessed identity") {
  std::mt19937_64 rng(4);
  for (const auto& P : places()) {
    for (int it = 0; it < 12; ++it) {
      int m = it % 3;
      LogForm phi = random_form(rng, P, m, 5);
      LocalReduction R = local_reduce(phi, m, P, true);
      W1Class polar = R.w;
      polar.phi.clear();
      LogForm rhs = to_global(w1_representative_adapted(polar) + R.carry + R.regular + wp(R.omega), P) +
                    dform(to_global(R.eta, P));
      CHECK(rhs == phi);
    }
  }
}

TEST_CASE("W1Class representative round trips") {
  std::mt19937_64 rng(5);
  for (const auto& P : places()) {
    int n = P.level(), inf = inf_symbol(P);
    Mask B = residue_basis(P);
    Mask adapted = B | (1u << inf);
    for (int it = 0; it < 12; ++it) {
      int m = 1 + it % 2;
      W1Class w;
      w.place = P;
      w.m = m;
      for (int k = 0; k < 4; ++k) {
        Mask I = 0;
        int guard = 0;
        while (popcount(I) < m && guard++ < 50) I |= 1u << (rng() % (n + 1));
        if ((I & ~adapted) || popcount(I) != m) continue;
        Mask J = Mask(rng()) & B;
        int r = int(rng() % 3);
        Poly c = small_poly(rng, n - 1, P.d() - 1);
        if (c.is_zero()) continue;
        bool odd = rng() & 1;
        if (odd) {
          if (has(I, inf)) continue;
          w.u[{r, I, J}] = c;
        } else {
          if (r == 0 || J == 0 || has(I, top_index(J))) continue;
          w.v[{r, I, J}] = c;
        }
      }
      Poly phc = small_poly(rng, n - 1, P.d() - 1);
      Mask S = 0;
      for (int i = 0; i < 32 && popcount(S) < m - 1; ++i)
        if (has(B, i) && (rng() & 1)) S |= 1u << i;
      if (popcount(S) == m - 1 && !phc.is_zero()) w.phi[S] = phc;
      W1Class back = residue(w1_representative(w), m, P);
      CHECK(back == w);
    }
  }
}

TEST_CASE("Teichmuller lift is multiplicative and independent of the base lift") {
  std::mt19937_64 rng(6);
  for (const auto& s : {"x^2+x+1", "x^2+t1", "x^2+x+t1", "x^3+t1*x+t1"}) {
    Place P = Place::finite(parse_poly(s, N2));
    for (int N = 1; N <= 3; ++N) {
      Poly mod = Poly::constant(Rat::one(1));
      for (int i = 0; i < (1 << N); ++i) mod = mod * P.p();
      Poly a = small_poly(rng, 1, P.d() - 1), b = small_poly(rng, 1, P.d() - 1);
      Poly ta = teichmuller_lift(a, P, N), tb = teichmuller_lift(b, P, N);
      CHECK(teichmuller_lift(a.mulmod(b, P.p()), P, N) == ta.mulmod(tb, mod));
      Poly noise = small_poly(rng, 1, 2);
      Poly alt = teichmuller_lift(a, P, N, [&](const Poly& u) { return u + noise * P.p(); });
      CHECK(alt == ta);
    }
  }
  Place P = Place::finite(parse_poly("x^2+x+1", N2));
  CHECK(teichmuller_lift(Poly::x(1), P, 1) == parse_poly("x^2+1", N2));
}
