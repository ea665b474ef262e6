#include <random>

#include "doctest.h"
#include "kmcoh/parse.hpp"
#include "kmcoh/poly.hpp"

using namespace kmc;

namespace {

const std::vector<std::string> N2 = {"t1", "x"};

Poly P(const std::string& s) { return parse_poly(s, N2); }

Poly random_poly(std::mt19937_64& rng, int deg, int cdeg) {
  std::vector<Rat> c;
  for (int i = 0; i < deg; ++i) {
    Rat a(1);
    for (int k = 0; k <= cdeg; ++k)
      if (rng() & 1) a += Rat::var(1, 0).pow(k);
    c.push_back(a);
  }
  c.push_back(Rat::one(1));
  return Poly(1, c);
}

}  // namespace

TEST_CASE("gamma sequence for x^2+t1") {
  Place pl = Place::finite(P("x^2+t1"));
  auto g = pl.gamma(4);
  std::vector<std::string> tn = {"t1"};
  CHECK(g[0] == parse_rat("1", tn));
  CHECK(g[1] == parse_rat("0", tn));
  CHECK(g[2] == parse_rat("t1", tn));
  CHECK(g[3] == parse_rat("0", tn));
  CHECK(g[4] == parse_rat("t1^2", tn));
}

TEST_CASE("gamma agrees with reduction of powers of x") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    Poly p = random_poly(rng, 1 + it % 5, 2);
    Place pl = Place::finite(p, false);
    int d = pl.d();
    auto g = pl.gamma(20);
    for (int i = 0; i <= 20; ++i) {
      Poly xi = Poly::monomial(Rat::one(1), d - 1 + i).mod(p);
      CHECK(g[i] == xi.coeff(d - 1));
      CHECK(trace_form(Poly::monomial(Rat::one(1), d - 1 + i), pl) == g[i]);
    }
    // sum_i gamma_i y^i times sum_k p_k y^k is 1 modulo y^21
    for (int n = 0; n <= 20; ++n) {
      Rat s(1);
      for (int k = 0; k <= std::min(n, d); ++k) s += pl.pcoef(k) * g[n - k];
      CHECK(s == (n == 0 ? Rat::one(1) : Rat(1)));
    }
  }
}

TEST_CASE("inverse modulo and polynomial division") {
  std::mt19937_64 rng(4);
  Poly p = P("x^3+t1*x+t1");
  for (int it = 0; it < 30; ++it) {
    Poly a = random_poly(rng, 2, 3);
    Poly ia = Poly::inv_mod(a, p);
    CHECK((a * ia).mod(p).is_one());
    Poly q, r;
    Poly b = random_poly(rng, 5, 2);
    Poly::divmod(b, p, &q, &r);
    CHECK(q * p + r == b);
    CHECK(r.deg() < 3);
  }
}

TEST_CASE("conversion between fractions and polynomial pairs") {
  Rat r = parse_rat("(x^2+t1)/(t1*x+1)", N2);
  Poly n, d;
  Poly::from_rat(r, &n, &d);
  CHECK(d.lc().is_one());
  CHECK(n.to_rat() / d.to_rat() == r);
}

TEST_CASE("classification of small places") {
  CHECK(classify_place(P("x^2+t1")).status == PlaceStatus::Finite);
  CHECK(classify_place(P("x^2+x+t1")).status == PlaceStatus::Finite);
  CHECK(classify_place(P("x^3+t1")).status == PlaceStatus::Finite);
  CHECK(classify_place(P("x^2+t1^2")).status == PlaceStatus::Reducible);
  CHECK(classify_place(P("x^2+(t1+1)*x+t1")).status == PlaceStatus::Reducible);
  Place ins = Place::finite(P("x^2+t1"));
  CHECK(!ins.separable());
  CHECK(ins.iprime() == 0);
  CHECK(Place::finite(P("x^2+x+t1")).separable());
}

TEST_CASE("products of places are never classified irreducible") {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int it = 0; it < 60 && checked < 25; ++it) {
    Poly a = random_poly(rng, 1 + it % 2, 1), b = random_poly(rng, 1 + (it / 2) % 3, 1);
    Poly f = a * b;
    auto c = classify_place(f);
    CHECK(c.status != PlaceStatus::Finite);
    if (c.status == PlaceStatus::Reducible) {
      CHECK(f.mod(c.factor).is_zero());
      ++checked;
    }
    auto fs = factor_poly(f, {});
    Poly prod = Poly::constant(Rat::one(1));
    for (auto& fa : fs)
      for (int k = 0; k < fa.mult; ++k) prod = prod * fa.p;
    CHECK(prod == f);
  }
  CHECK(checked >= 20);
}

TEST_CASE("irreducibility over F_2 matches exhaustive search") {
  for (int d = 1; d <= 8; ++d) {
    for (uint32_t m = 0; m < (1u << d); ++m) {
      std::vector<MPoly> co;
      for (int i = 0; i < d; ++i) co.push_back(MPoly::constant(0, (m >> i) & 1));
      co.push_back(MPoly::constant(0, true));
      MPoly f = MPoly::from_main(1, co);
      bool brute = true;
      for (int k = 1; k <= d / 2 && brute; ++k)
        for (uint32_t g = 0; g < (1u << k) && brute; ++g) {
          std::vector<MPoly> gc;
          for (int i = 0; i < k; ++i) gc.push_back(MPoly::constant(0, (g >> i) & 1));
          gc.push_back(MPoly::constant(0, true));
          MPoly r;
          MPoly::divmod1(f, MPoly::from_main(1, gc), nullptr, &r);
          if (r.is_zero()) brute = false;
        }
      CHECK(irreducible_f2(f) == brute);
    }
  }
}
