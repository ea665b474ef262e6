#include "kmcoh/selftest.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "kmcoh/parse.hpp"
#include "kmcoh/sampling.hpp"
#include "kmcoh/transfers.hpp"
#include "kmcoh/witt.hpp"

namespace kmc {

namespace {

const std::vector<std::string> N1 = {"t1"};
const std::vector<std::string> N2 = {"t1", "x"};

Place place(const char* s) { return Place::finite(parse_poly(s, N2)); }

struct Tally {
  SuiteReport& rep;
  void check(bool ok, const std::string& what) {
    ++rep.cases;
    if (ok) return;
    ++rep.failures;
    if (rep.details.size() < 8) rep.details.push_back(what);
  }
};

int count_or(const SuiteConfig& c, int dflt) { return c.count > 0 ? c.count : dflt; }

LogForm random_generator_sum(Sampler& s, const std::vector<Place>& places, int m, int gens) {
  LogForm phi(2);
  Place insep = place("x^2+t1");
  for (int k = 0; k < gens; ++k) {
    const Place& P = s.uniform(0, 2) == 0 ? insep : places[s.uniform(0, int(places.size()) - 1)];
    phi += s.generator(P, m).rep;
  }
  return phi;
}

// wp(omega) + d(eta) for random omega of degree m and eta of degree m-1.
LogForm random_trivial(Sampler& s, int nv, int m) {
  LogForm om = s.form(nv, m, 2);
  LogForm et = m == 0 ? LogForm(nv) : s.form(nv, m - 1, 2);
  return wp(om) + dform(et);
}

void suite_reciprocity(const SuiteConfig& cfg, SuiteReport& rep) {
  Tally t{rep};
  Sampler s(cfg.seed);
  auto places = corpus_places();
  ZeroOptions o = corpus_options();
  int n = count_or(cfg, 200), nontrivial = 0;
  for (int it = 0; it < n; ++it) {
    int m = 1 + it % 2;
    LogForm phi = random_generator_sum(s, places, m, 3);
    ReciprocityReport r = reciprocity_sum(phi, m, o);
    bool ok = r.verdict.verdict == Verdict::Zero;
    if (ok && !r.sum.is_zero()) ok = check_witness(r.sum, r.verdict.witness);
    for (const auto& term : r.terms) nontrivial += !term.value.is_zero();
    t.check(ok, phi.str(N2) + ": " + verdict_name(r.verdict.verdict) + " " + r.verdict.reason);
  }
  rep.summary = std::to_string(rep.cases - rep.failures) + "/" + std::to_string(rep.cases) +
                " sums vanish; nonzero transferred residues: " + std::to_string(nontrivial);
  rep.pass = rep.failures == 0;
}

void suite_gamma(const SuiteConfig& cfg, SuiteReport& rep) {
  Tally t{rep};
  Sampler s(cfg.seed);
  int n = count_or(cfg, 50);
  for (int it = 0; it < n; ++it) {
    int d = 1 + it % 5;
    Place P;
    for (;;) {
      std::vector<Rat> c;
      for (int i = 0; i < d; ++i) c.push_back(s.poly(1, 2) + (s.coin() ? Rat::one(1) : Rat(1)));
      c.push_back(Rat::one(1));
      Classification cl = classify_place(Poly(1, c));
      if (cl.status == PlaceStatus::Finite) {
        P = cl.place;
        break;
      }
    }
    auto g = P.gamma(20);
    bool ok = true;
    for (int i = 0; i <= 20; ++i) ok = ok && g[i] == Poly::monomial(Rat::one(1), d + i - 1).mod(P.p()).coeff(d - 1);
    for (int k = 0; k <= 20; ++k) {
      Rat c(1);
      for (int j = 0; j <= std::min(k, d); ++j) c += P.pcoef(j) * g[k - j];
      ok = ok && c == (k == 0 ? Rat::one(1) : Rat(1));
    }
    t.check(ok, P.str(N2));
  }
  rep.summary = std::to_string(rep.cases - rep.failures) + "/" + std::to_string(rep.cases) + " places exact";
  rep.pass = rep.failures == 0;
}

void suite_closedforms(const SuiteConfig& cfg, SuiteReport& rep) {
  Sampler s(cfg.seed);
  std::vector<Place> sep = {place("x+t1"),       place("x+1"),         place("x^2+x+t1"), place("x^2+t1*x+1"),
                            place("x^2+x+1"),    place("x^3+t1*x+t1"), place("x^3+x+1"),  place("x^3+x^2+t1")};
  std::vector<Place> insep = {place("x^2+t1"), place("x^2+t1+1"), place("x^2+t1^2+t1+1"), place("x^2+t1^3")};
  int n = count_or(cfg, 30), equal = 0, noteq = 0, inconc = 0;
  WittOptions wo;
  wo.bound = cfg.bound;
  wo.zero.names = N1;
  std::map<std::string, int> per_kind;
  for (const char* kname : {"unit", "x_pfister", "insep_const"}) {
    ClosedFormKind kind = closed_form_kind(kname);
    for (int it = 0; it < n; ++it) {
      const Place& P = kind == ClosedFormKind::InsepConst ? insep[it % insep.size()] : sep[it % sep.size()];
      int i = kind == ClosedFormKind::InsepConst ? 0 : s.uniform(kind == ClosedFormKind::XPfister ? 1 : 0, 6);
      Rat a = s.ground_nonzero(1);
      QuadForm g = scharlau_transfer_gram(closed_form_input(kind, a, i, P));
      WittResult r = witt_equal_bounded(g, transfer_closed_form(kind, a, i, P), wo);
      ++rep.cases;
      if (r.verdict == WittVerdict::Equal) {
        ++equal;
        ++per_kind[kname];
      } else if (r.verdict == WittVerdict::NotEqual) {
        ++noteq;
        ++rep.failures;
        if (rep.details.size() < 8)
          rep.details.push_back(std::string(kname) + " " + P.str(N2) + " i=" + std::to_string(i) + " a=" + a.str(N1) +
                                ": " + r.invariant);
      } else {
        ++inconc;
      }
    }
  }
  std::ostringstream os;
  os << "EQUAL " << equal << "/" << rep.cases << " (unit " << per_kind["unit"] << ", x_pfister "
     << per_kind["x_pfister"] << ", insep_const " << per_kind["insep_const"] << "), NOT_EQUAL " << noteq
     << ", INCONCLUSIVE " << inconc;
  rep.summary = os.str();
  bool ratio = true;
  for (const auto& [k, v] : per_kind) ratio = ratio && 5 * v >= 4 * n;
  rep.pass = noteq == 0 && per_kind.size() == 3 && ratio;
}

Poly reduce_at(const Poly& c, const Place& P) { return P.is_inf() ? c : c.mod(P.p()); }

W1Class random_w1(Sampler& s, const Place& P, int m) {
  int n = P.level(), inf = inf_symbol(P);
  Mask B = residue_basis(P), adapted = B | (1u << inf);
  W1Class w;
  w.place = P;
  w.m = m;
  for (int k = 0; k < 4; ++k) {
    Mask I = s.subset(adapted, m);
    Mask J = Mask(s.rng()()) & B;
    int r = s.uniform(0, 2);
    Poly c = s.ground_poly(n - 1, P.d() - 1);
    if (c.is_zero()) continue;
    if (s.coin()) {
      if (has(I, inf)) continue;
      w.u[{r, I, J}] = c;
    } else {
      if (r == 0 || J == 0 || has(I, top_index(J))) continue;
      w.v[{r, I, J}] = c;
    }
  }
  Poly phc = s.ground_poly(n - 1, P.d() - 1);
  if (!phc.is_zero() && popcount(B) >= m - 1) w.phi[s.subset(B, m - 1)] = phc;
  return w;
}

void suite_roundtrip(const SuiteConfig& cfg, SuiteReport& rep) {
  Tally t{rep};
  Sampler s(cfg.seed);
  auto places = corpus_places();
  int n = count_or(cfg, 100), detected = 0;
  for (int it = 0; it < n; ++it) {
    const Place& P = places[it % places.size()];
    int m = 1 + it % 2;
    W1Class w = random_w1(s, P, m);
    W1Class back = residue(w1_representative(w), m, P);
    t.check(back == w, "round trip at " + P.str(N2));
    W1Class pert = w;
    Poly c;
    do c = s.ground_poly(P.level() - 1, P.d() - 1);
    while (c.is_zero());
    int which = s.uniform(0, 2);
    if (which == 0 && !w.u.empty()) {
      auto it2 = std::next(w.u.begin(), s.uniform(0, int(w.u.size()) - 1));
      Poly nv = reduce_at(it2->second + c, P);
      if (nv.is_zero()) pert.u.erase(it2->first);
      else pert.u[it2->first] = nv;
    } else if (which == 1 && !w.v.empty()) {
      auto it2 = std::next(w.v.begin(), s.uniform(0, int(w.v.size()) - 1));
      Poly nv = reduce_at(it2->second + c, P);
      if (nv.is_zero()) pert.v.erase(it2->first);
      else pert.v[it2->first] = nv;
    } else {
      Mask B = residue_basis(P);
      if (popcount(B) < m - 1) continue;
      Mask S = s.subset(B, m - 1);
      Poly nv = reduce_at(pert.phi.count(S) ? pert.phi[S] + c : c, P);
      if (nv.is_zero()) pert.phi.erase(S);
      else pert.phi[S] = nv;
    }
    bool seen = residue(w1_representative(pert), m, P) != w;
    detected += seen;
    t.check(seen, "perturbation missed at " + P.str(N2));
  }
  rep.summary = std::to_string(n) + " round trips, " + std::to_string(detected) + " perturbations detected, " +
                std::to_string(rep.failures) + " failures";
  rep.pass = rep.failures == 0;
}

bool residue_trivial(const W1Class& w) { return w.polar_zero() && res_is_zero(w.phi); }

void suite_exactness(const SuiteConfig& cfg, SuiteReport& rep) {
  Tally t{rep};
  Sampler s(cfg.seed);
  auto places = corpus_places();
  ZeroOptions o2 = corpus_options(), o1;
  o1.names = N1;
  int n = count_or(cfg, 50);
  // (a) residues of classes from the ground field vanish
  for (int it = 0; it < 2 * n; ++it) {
    int m = it % 2;
    LogForm psi = s.form(1, m, 3);
    LogForm phi = include_form(psi);
    bool ok = true;
    std::vector<Place> ps = places;
    for (const auto& P : support(phi, o2).places) ps.push_back(P);
    for (const auto& P : ps) ok = ok && residue_trivial(residue(phi, m, P));
    t.check(ok, "(a) " + psi.str(N1));
  }
  // (b) injectivity on decisive cases
  int decisive = 0, zeros = 0;
  for (int it = 0; decisive < n && it < 4 * n; ++it) {
    int m = it % 2;
    LogForm psi = s.form(1, m, 2);
    if (it % 4 >= 2) psi += random_trivial(s, 1, m);
    ZeroResult a = is_zero(psi, m, o1);
    if (a.verdict == Verdict::Unknown) continue;
    ++decisive;
    zeros += a.verdict == Verdict::Zero;
    ZeroResult b = is_zero(include_form(psi), m, o2);
    t.check(a.verdict == b.verdict, "(b) " + psi.str(N1) + ": " + verdict_name(a.verdict) + " vs " + verdict_name(b.verdict));
  }
  t.check(decisive >= n, "(b) too few decisive cases");
  // (c) s_inf^* of the residue of psi ^ dlog x recovers psi
  int exact = 0;
  for (int it = 0; it < n; ++it) {
    int m = 1;
    LogForm psi = s.form(1, m, 3);
    LogForm phi = wedge_dlog(include_form(psi), 1);
    LogForm back = s_p_star(residue(phi, m + 1, Place::infinity(2)));
    exact += back == psi;
    t.check(is_zero(back + psi, m, o1).verdict == Verdict::Zero, "(c) " + psi.str(N1) + " -> " + back.str(N1));
  }
  // (d) classes with vanishing residues come from the ground field
  for (int it = 0; it < n; ++it) {
    int m = it % 3;
    LogForm psi = m <= 1 ? s.form(1, m, 2) : LogForm(1);
    LogForm phi = include_form(psi) + random_trivial(s, 2, m);
    GroundReduction g = reduce_to_ground(phi, m, o2);
    bool ok = g.verdict == Verdict::Zero && check_witness(phi + include_form(g.ground), g.witness) &&
              is_zero(g.ground + psi, m, o1).verdict == Verdict::Zero;
    t.check(ok, "(d) " + phi.str(N2) + ": " + g.reason);
  }
  rep.summary = std::to_string(rep.cases - rep.failures) + "/" + std::to_string(rep.cases) + " checks; " +
                std::to_string(decisive) + " decisive injectivity cases (" + std::to_string(zeros) + " zero); " +
                std::to_string(exact) + "/" + std::to_string(n) + " exact s_inf recoveries";
  rep.pass = rep.failures == 0;
}

void suite_wellposed(const SuiteConfig& cfg, SuiteReport& rep) {
  Tally t{rep};
  Sampler s(cfg.seed);
  auto places = corpus_places();
  ZeroOptions o2 = corpus_options(), o1;
  o1.names = N1;
  int n = count_or(cfg, 100);
  for (int it = 0; it < n; ++it) {
    int m = 1 + it % 2;
    LogForm phi = random_generator_sum(s, places, m, 2);
    LogForm pert = phi + random_trivial(s, 2, m);
    bool ok = true;
    std::string why;
    for (const auto& P : places) {
      W1Class a = residue(phi, m, P), b = residue(pert, m, P);
      if (a.u != b.u || a.v != b.v) {
        ok = false;
        why = "polar part moved at " + P.str(N2);
        break;
      }
      LogForm sa = s_p_star(a), sb = s_p_star(b);
      if (sa != sb && is_zero(sa + sb, m - 1, o1).verdict != Verdict::Zero) {
        ok = false;
        why = "transferred residue moved at " + P.str(N2);
        break;
      }
    }
    if (ok) {
      ReciprocityReport r = reciprocity_sum(pert, m, o2);
      ok = r.verdict.verdict == Verdict::Zero;
      if (!ok) why = std::string("reciprocity ") + verdict_name(r.verdict.verdict);
    }
    t.check(ok, phi.str(N2) + ": " + why);
  }
  rep.summary = std::to_string(rep.cases - rep.failures) + "/" + std::to_string(rep.cases) + " perturbations invariant";
  rep.pass = rep.failures == 0;
}

void suite_teichmuller(const SuiteConfig& cfg, SuiteReport& rep) {
  Tally t{rep};
  Sampler s(cfg.seed);
  int trials = count_or(cfg, 4);
  for (const char* ps : {"x+t1", "x^2+x+1", "x^2+t1", "x^2+x+t1", "x^3+t1*x+t1"}) {
    Place P = place(ps);
    for (int N = 1; N <= cfg.teich_depth; ++N) {
      Poly mod = Poly::constant(Rat::one(1));
      for (int i = 0; i < (1 << N); ++i) mod = mod * P.p();
      for (int k = 0; k < trials; ++k) {
        Poly a = s.ground_poly(1, P.d() - 1), b = s.ground_poly(1, P.d() - 1);
        Poly ta = teichmuller_lift(a, P, N), tb = teichmuller_lift(b, P, N);
        t.check(teichmuller_lift(a.mulmod(b, P.p()), P, N) == ta.mulmod(tb, mod),
                std::string("multiplicativity at ") + ps + " N=" + std::to_string(N));
        Poly noise = s.ground_poly(1, 2);
        Poly alt = teichmuller_lift(a, P, N, [&](const Poly& u) { return u + noise * P.p(); });
        t.check(alt == ta, std::string("lift choice at ") + ps + " N=" + std::to_string(N));
        t.check(ta.mod(P.p()) == a.mod(P.p()), std::string("residue of the lift at ") + ps);
      }
    }
  }
  rep.summary = std::to_string(rep.cases - rep.failures) + "/" + std::to_string(rep.cases) + " modular identities";
  rep.pass = rep.failures == 0;
}

const std::map<std::string, std::function<void(const SuiteConfig&, SuiteReport&)>>& registry() {
  static const std::map<std::string, std::function<void(const SuiteConfig&, SuiteReport&)>> r = {
      {"reciprocity", suite_reciprocity}, {"gamma", suite_gamma},         {"closedforms", suite_closedforms},
      {"roundtrip", suite_roundtrip},     {"exactness", suite_exactness}, {"wellposed", suite_wellposed},
      {"teichmuller", suite_teichmuller}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"reciprocity", "gamma",     "closedforms",    "roundtrip",
                                                 "exactness",   "wellposed", "teichmuller"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite: " + name);
  SuiteReport rep;
  rep.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(cfg, rep);
  } catch (const std::exception& e) {
    rep.pass = false;
    ++rep.failures;
    rep.details.push_back(std::string("exception: ") + e.what());
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace kmc
