#include <random>

#include "doctest.h"
#include "kmcoh/ground.hpp"
#include "kmcoh/parse.hpp"
#include "oracle.hpp"

using namespace kmc;

namespace {

// Univariate F_2 polynomials as machine words.
uint64_t clmul(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  for (int i = 0; i < 64; ++i)
    if ((a >> i) & 1) r ^= b << i;
  return r;
}
int wdeg(uint64_t a) { return a ? 63 - __builtin_clzll(a) : -1; }
uint64_t wmod(uint64_t a, uint64_t b) {
  while (wdeg(a) >= wdeg(b)) a ^= b << (wdeg(a) - wdeg(b));
  return a;
}
uint64_t wgcd(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t r = wmod(a, b);
    a = b;
    b = r;
  }
  return a;
}
MPoly from_word(uint64_t w) {
  MPoly p(1);
  for (int i = 0; i < 64; ++i)
    if ((w >> i) & 1) p += MPoly::monomial({i});
  return p;
}

}  // namespace

TEST_CASE("multivariate product and derivative agree with distributed oracle") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    int nv = 1 + it % 3;
    MPoly a = oracle::random_mpoly(rng, nv, 4, 5), b = oracle::random_mpoly(rng, nv, 4, 5);
    CHECK(oracle::from(a * b) == oracle::mul(oracle::from(a), oracle::from(b)));
    CHECK(oracle::from(a + b) == oracle::add(oracle::from(a), oracle::from(b)));
    CHECK(oracle::from(a.square()) == oracle::mul(oracle::from(a), oracle::from(a)));
    for (int v = 0; v < nv; ++v) CHECK(oracle::from(a.partial(v)) == oracle::partial(oracle::from(a), v));
  }
}

TEST_CASE("univariate gcd matches word oracle") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 300; ++it) {
    uint64_t a = rng() & 0xfffff, b = rng() & 0xffff, c = rng() & 0xff;
    if (!a || !b || !c) continue;
    a = clmul(a, c);
    b = clmul(b, c);
    CHECK(MPoly::gcd(from_word(a), from_word(b)) == from_word(wgcd(a, b)));
  }
}

TEST_CASE("multivariate gcd recovers planted common factors") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 120; ++it) {
    int nv = 2 + it % 2;
    MPoly a = oracle::random_mpoly(rng, nv, 3, 4), b = oracle::random_mpoly(rng, nv, 3, 4);
    MPoly c = oracle::random_mpoly(rng, nv, 2, 3);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    MPoly g = MPoly::gcd(a * c, b * c);
    CHECK(MPoly::divide_exact(g, c, nullptr));
    CHECK(MPoly::divide_exact(a * c, g, nullptr));
    CHECK(MPoly::divide_exact(b * c, g, nullptr));
    MPoly g0 = MPoly::gcd(a, b);
    CHECK(g == g0 * c);
  }
}

TEST_CASE("fractions are canonical and satisfy field identities") {
  std::mt19937_64 rng(3);
  auto rnd = [&](int nv) {
    MPoly n = oracle::random_mpoly(rng, nv, 3, 3), d = oracle::random_mpoly(rng, nv, 3, 3);
    if (d.is_zero()) d = MPoly::constant(nv, true);
    return Rat(n, d);
  };
  for (int it = 0; it < 150; ++it) {
    int nv = 1 + it % 2;
    Rat a = rnd(nv), b = rnd(nv), c = rnd(nv);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + a == Rat(nv));
    if (!a.is_zero()) CHECK(a * a.inv() == Rat::one(nv));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK((a * b).partial(0) == a.partial(0) * b + a * b.partial(0));
  }
}

TEST_CASE("frobenius decomposition reconstructs the element") {
  std::vector<std::string> names = {"t1", "t2", "x"};
  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    MPoly n = oracle::random_mpoly(rng, 3, 4, 4), d = oracle::random_mpoly(rng, 3, 3, 3);
    if (d.is_zero()) continue;
    Rat a(n, d);
    Rat s(3);
    for (auto& [J, aj] : frobenius_decompose(a)) s += Rat(monomial_mask(3, J)) * aj.square();
    CHECK(s == a);
  }
  Rat a = parse_rat("t1^3 + t1*x^2", names);
  auto dec = frobenius_decompose(a);
  CHECK(dec.size() == 1);
  CHECK(dec.begin()->first == 1u);
  CHECK(dec.begin()->second == parse_rat("t1+x", names));
}

TEST_CASE("parser reads fractions, powers and integers mod 2") {
  std::vector<std::string> names = {"t1", "x"};
  CHECK(parse_rat("2*x + 3", names) == Rat::one(2));
  CHECK(parse_rat("(x^2+t1^2)/(x+t1)", names) == parse_rat("x+t1", names));
  CHECK(parse_rat("x^-2", names) == parse_rat("1/(x*x)", names));
  CHECK_THROWS_AS(parse_rat("y+1", names), ParseError);
  CHECK_THROWS_AS(parse_rat("1/(x+x)", names), ParseError);
}
