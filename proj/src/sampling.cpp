#include "kmcoh/sampling.hpp"

#include <algorithm>
#include <stdexcept>

#include "kmcoh/parse.hpp"

namespace kmc {

Rat Sampler::poly(int nv, int deg) {
  Rat a(nv);
  if (nv == 0) return Rat::constant(0, coin());
  int terms = uniform(1, 3);
  for (int k = 0; k < terms; ++k) {
    std::vector<int> e(nv);
    for (auto& x : e) x = uniform(0, deg);
    a += Rat(MPoly::monomial(e));
  }
  return a;
}

Rat Sampler::ground(int nv) {
  if (nv == 0) return Rat::constant(0, coin());
  Rat num = poly(nv, 2);
  Rat t = Rat::var(nv, nv - 1), one = Rat::one(nv);
  Rat alt = nv == 1 ? t * t + t + one : t * t + Rat::var(nv, 0);
  switch (uniform(0, 6)) {
    case 0: return num / t;
    case 1: return num / (t + one);
    case 2: return num / alt;
    case 3: return nv == 1 ? num : num / (t + Rat::var(nv, 0));
    default: return num;
  }
}

Rat Sampler::ground_nonzero(int nv) {
  for (;;) {
    Rat a = ground(nv);
    if (!a.is_zero()) return a;
  }
}

Poly Sampler::ground_poly(int cnv, int deg) {
  std::vector<Rat> c;
  for (int i = 0; i <= deg; ++i) c.push_back(coin() ? ground(cnv) : Rat(cnv));
  return Poly(cnv, c);
}

Mask Sampler::subset(Mask allowed, int size) {
  std::vector<int> ids;
  for (int i = 0; i < 32; ++i)
    if (has(allowed, i)) ids.push_back(i);
  if (int(ids.size()) < size) throw std::invalid_argument("subset larger than the basis");
  std::shuffle(ids.begin(), ids.end(), rng_);
  Mask S = 0;
  for (int i = 0; i < size; ++i) S |= 1u << ids[i];
  return S;
}

LogForm Sampler::form(int nv, int m, int terms) {
  LogForm f(nv);
  if (m > nv) return f;
  for (int k = 0; k < terms; ++k) f.add(subset((1u << nv) - 1, m), ground(nv));
  return f;
}

CohomClass Sampler::generator(const Place& P, int m) {
  int n = P.level(), cnv = n - 1, inf = inf_symbol(P);
  for (int attempt = 0; attempt < 200; ++attempt) {
    SubgroupSpec spec;
    GeneratorParams g;
    g.m = m;
    try {
      switch (uniform(0, 3)) {
        case 0: {
          spec.kind = SubgroupKind::L0;
          g.with_x = m >= 1 && coin();
          int slots = g.with_x ? m - 1 : m;
          for (int i = 0; i < slots; ++i) g.cs.push_back(ground_nonzero(cnv));
          g.h = ground_poly(cnv, 3);
          if (g.with_x) g.h = g.h.shift(1);
          if (g.h.is_zero()) continue;
          return subgroup_generator(spec, g);
        }
        case 1: {
          if (P.is_inf()) continue;
          spec.kind = SubgroupKind::Sp;
          spec.place = P;
          g.I = subset(((1u << cnv) - 1) | (1u << inf), m);
          g.h = ground_poly(cnv, P.d() + 1);
          g.e = uniform(0, 3);
          if (g.h.is_zero()) continue;
          return subgroup_generator(spec, g);
        }
        default: {
          spec.kind = SubgroupKind::Sprime_pr;
          spec.place = P;
          spec.r = uniform(1, 4);
          Mask B = P.is_inf() ? (1u << cnv) - 1 : residue_basis(P);
          Mask allowed = B | (spec.r % 2 == 0 ? 1u << inf : 0u);
          g.I = subset(allowed, m);
          g.J = Mask(rng_()) & B;
          if (P.is_inf()) g.c = ground_nonzero(cnv);
          else {
            g.s = ground_poly(cnv, P.d() - 1);
            if (g.s.is_zero()) continue;
          }
          return subgroup_generator(spec, g);
        }
      }
    } catch (const ConstraintViolation&) {
      continue;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::runtime_error("could not sample a generator");
}

std::vector<Place> corpus_places() {
  const std::vector<std::string> names = {"t1", "x"};
  std::vector<Place> out;
  for (const char* s : {"x", "x+1", "x+t1", "x+t1+1", "x^2+x+1", "x^2+t1", "x^2+x+t1", "x^2+t1*x+1", "x^3+x+1",
                        "x^3+t1*x+t1", "x^3+x^2+t1"}) {
    Classification c = classify_place(parse_poly(s, names));
    if (c.status != PlaceStatus::Finite) throw std::logic_error(std::string("corpus place not irreducible: ") + s);
    out.push_back(c.place);
  }
  out.push_back(Place::infinity(2));
  return out;
}

ZeroOptions corpus_options() {
  ZeroOptions o;
  for (const auto& P : corpus_places())
    if (!P.is_inf()) o.hints.push_back(P.p());
  o.names = {"t1", "x"};
  return o;
}

}  // namespace kmc
