#include "kmcoh/cohomology.hpp"

#include <algorithm>
#include <map>

#include "kmcoh/transfers.hpp"

namespace kmc {

namespace {

ZeroResult zero_result(int n) {
  ZeroResult r;
  r.verdict = Verdict::Zero;
  r.witness = {LogForm(n), LogForm(n)};
  return r;
}

void check_degree(const LogForm& phi, int m) {
  for (const auto& [S, c] : phi.terms())
    if (popcount(S) != m) throw std::invalid_argument("form is not homogeneous of the stated degree");
}

bool has_pole(const LogForm& phi, const Place& P) {
  for (const auto& [S, c] : phi.terms()) {
    Poly num, den;
    Poly::from_rat(c, &num, &den);
    if (den.deg() > 0 && den.mod(P.p()).is_zero()) return true;
  }
  return false;
}

std::vector<std::string> names_for(const ZeroOptions& opt, int n) {
  if (int(opt.names.size()) >= n) return std::vector<std::string>(opt.names.begin(), opt.names.begin() + n);
  return var_names(n, true);
}

// Options for the field one level down (cnv = its number of ground variables).
ZeroOptions sub_options(const ZeroOptions& opt, int cnv) {
  ZeroOptions o = opt;
  o.hints.clear();
  for (const auto& h : opt.hints)
    if (h.cnv() == cnv) o.hints.push_back(h);
  o.names = names_for(opt, cnv + 2);
  o.names.pop_back();
  return o;
}

Poly reduce_mod(const Rat& c, const Poly& p) {
  Poly num, den;
  Poly::from_rat(c, &num, &den);
  return num.mod(p).mulmod(Poly::inv_mod(den.mod(p), p), p);
}

ResForm res_sum(const ResForm& a, const ResForm& b, const Poly& mod) {
  ResForm r = a;
  for (const auto& [S, c] : b) res_add(r, S, c, mod);
  return r;
}

Poly modulus(const Place& P) { return P.is_inf() ? Poly(P.level() - 1) : P.p(); }

std::string place_name(const Place& P, const ZeroOptions& opt) { return P.str(names_for(opt, P.level())); }

// b with b^2 + b = a in F_2[x]/p, by linear algebra over F_2.
bool solve_wp_finite(const Poly& a, const Poly& p, Poly* b) {
  int d = p.deg();
  std::vector<std::vector<uint8_t>> M(d, std::vector<uint8_t>(d + 1, 0));
  for (int k = 0; k < d; ++k) {
    Poly xk = Poly::monomial(Rat::one(0), k);
    Poly img = (xk.square() + xk).mod(p);
    for (int i = 0; i < d; ++i) M[i][k] = img.coeff(i).is_one();
  }
  for (int i = 0; i < d; ++i) M[i][d] = a.coeff(i).is_one();
  std::vector<int> pivcol;
  int row = 0;
  for (int col = 0; col < d && row < d; ++col) {
    int piv = -1;
    for (int i = row; i < d; ++i)
      if (M[i][col]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[piv], M[row]);
    for (int i = 0; i < d; ++i)
      if (i != row && M[i][col])
        for (int k = col; k <= d; ++k) M[i][k] ^= M[row][k];
    pivcol.push_back(col);
    ++row;
  }
  for (int i = row; i < d; ++i)
    if (M[i][d]) return false;
  std::vector<Rat> coef(d, Rat(0));
  for (int i = 0; i < row; ++i)
    if (M[i][d]) coef[pivcol[i]] = Rat::one(0);
  *b = Poly(0, coef);
  return true;
}

// p = A + t_i B with A, B free of t_i and B nonzero.
bool linear_in(const Poly& p, int i, Poly* A, Poly* B) {
  int cnv = p.cnv();
  Poly b = p.partial(i);
  if (b.is_zero()) return false;
  Poly a = p + b * Poly::constant(Rat::var(cnv, i));
  auto free_of = [&](const Poly& f) {
    for (const auto& c : f.coeffs())
      if (c.num().deg(i) > 0 || c.den().deg(i) > 0) return false;
    return true;
  };
  if (!free_of(a) || !free_of(b)) return false;
  *A = a;
  *B = b;
  return true;
}

std::string nested_reason(const ZeroResult& z) {
  if (z.place.empty() || z.place == "F_2") return z.reason;
  return "residue at " + z.place + ": " + z.reason;
}

ResidueVerdict from_ground(const ZeroResult& z, const Place& P) {
  ResidueVerdict rv;
  rv.verdict = z.verdict;
  rv.reason = nested_reason(z);
  if (z.verdict != Verdict::Zero) return rv;
  Poly mod = modulus(P);
  for (const auto& [S, c] : z.witness.omega.terms()) res_add(rv.omega, S, Poly::constant(c), mod);
  for (const auto& [S, c] : z.witness.eta.terms()) res_add(rv.eta, S, Poly::constant(c), mod);
  return rv;
}

ResidueVerdict rational_residue(const ResForm& f, int deg, const Place& P, int i, const Poly& A, const Poly& B,
                                const ZeroOptions& opt) {
  int n = P.level(), cnv = n - 1, xid = cnv;
  const Poly& p = P.p();
  // E = F_2(t_j (j != i), s); residue field iso xbar -> s, t_i -> A(s)/B(s).
  auto eid = [&](int j) { return j < i ? j : j - 1; };
  std::vector<Rat> to_e(n);
  for (int j = 0; j < cnv; ++j) to_e[j] = j == i ? Rat(cnv) : Rat::var(cnv, eid(j));
  to_e[xid] = Rat::var(cnv, cnv - 1);
  Rat ti = A.to_rat().substitute(to_e) / B.to_rat().substitute(to_e);
  to_e[i] = ti;
  std::vector<Rat> back(cnv);
  for (int j = 0; j < cnv; ++j)
    if (j != i) back[eid(j)] = Rat::var(n, j);
  back[cnv - 1] = Rat::var(n, xid);

  std::vector<LogForm> sym(n);
  for (int j = 0; j < n; ++j) {
    if (j == i) sym[j] = dlog_expand(ti);
    else if (j == xid) sym[j] = LogForm::term(Rat::one(cnv), 1u << (cnv - 1));
    else sym[j] = LogForm::term(Rat::one(cnv), 1u << eid(j));
  }
  LogForm g(cnv);
  for (const auto& [S, c] : f) {
    LogForm t = LogForm::term(c.to_rat().substitute(to_e), 0);
    for (int j = 0; j < n; ++j)
      if (has(S, j)) t = wedge(t, sym[j]);
    g += t;
  }
  ZeroOptions eopt = sub_options(opt, cnv - 1);
  eopt.names.erase(eopt.names.begin() + i);
  eopt.names.push_back("xbar");
  ZeroResult z = is_zero(g, deg, eopt);
  ResidueVerdict rv;
  rv.verdict = z.verdict;
  if (z.verdict != Verdict::Zero) {
    rv.reason = "rational residue field, " + nested_reason(z);
    return rv;
  }
  auto pull = [&](const LogForm& h) {
    ResForm gen;
    for (const auto& [S, c] : h.terms()) {
      Mask T = 0;
      for (int j = 0; j < cnv; ++j)
        if (has(S, j)) T |= 1u << (j == cnv - 1 ? xid : (j < i ? j : j + 1));
      res_add(gen, T, reduce_mod(c.substitute(back), p), p);
    }
    return res_to_basis(gen, P);
  };
  rv.omega = pull(z.witness.omega);
  rv.eta = pull(z.witness.eta);
  ResForm delta = res_sum(res_sum(f, res_wp(rv.omega, P), p), res_d(rv.eta, P), p);
  if (!delta.empty()) rv.eta = res_sum(rv.eta, res_integrate(delta, P), p);
  return rv;
}

Witness lift_witness(const Witness& w) { return {w.omega.lift(), w.eta.lift()}; }

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "ZERO";
    case Verdict::NonZero: return "NONZERO";
    default: return "UNKNOWN";
  }
}

bool check_witness(const LogForm& phi, const Witness& w) {
  LogForm r = phi;
  r += wp(w.omega);
  r += dform(w.eta);
  return r.is_zero();
}

Support support(const LogForm& phi, const ZeroOptions& opt) {
  Support s;
  int n = phi.nv();
  if (n == 0) return s;
  int cnv = n - 1, xid = n - 1;
  std::vector<Poly> hints;
  for (const auto& h : opt.hints)
    if (h.cnv() == cnv && h.deg() >= 1) hints.push_back(h.monic());
  std::vector<Poly> dens;
  bool need_x = false;
  for (const auto& [S, c] : phi.terms()) {
    if (has(S, xid)) need_x = true;
    Poly num, den;
    Poly::from_rat(c, &num, &den);
    if (den.deg() > 0 && std::find(dens.begin(), dens.end(), den) == dens.end()) dens.push_back(den);
  }
  std::vector<Place> places;
  auto add = [&](const Poly& q, bool cert) {
    for (const auto& P : places)
      if (P.p() == q) return;
    places.push_back(Place::finite(q, cert));
  };
  for (const auto& den : dens) {
    for (const auto& fa : factor_poly(den, hints, opt.factor_budget)) {
      if (!fa.certified) {
        s.complete = false;
        s.issue = "irreducibility of " + fa.p.str(names_for(opt, n)) + " undecided";
      }
      add(fa.p, fa.certified);
      hints.push_back(fa.p);
    }
  }
  if (need_x) add(Poly::x(cnv), true);
  Poly x = Poly::x(cnv);
  std::sort(places.begin(), places.end(), [&](const Place& a, const Place& b) {
    if (a.d() != b.d()) return a.d() > b.d();
    bool ax = a.p() == x, bx = b.p() == x;
    if (ax != bx) return bx;
    return a.p() < b.p();
  });
  s.places = places;
  return s;
}

void add_adapted_witness(Witness& w, const LogForm& oa, const LogForm& ea, const Place& P) {
  LogForm O = to_global(oa, P);
  LogForm H = to_global(ea, P);
  LogForm diff = to_global(wp(oa), P) + wp(O);
  if (!diff.is_zero()) H += integrate_exact(diff);
  w.omega += O;
  w.eta += H;
}

ResidueVerdict residue_is_zero(const ResForm& f, int deg, const Place& P, const ZeroOptions& opt) {
  ResidueVerdict rv;
  if (f.empty()) {
    rv.verdict = Verdict::Zero;
    return rv;
  }
  int n = P.level(), cnv = n - 1;
  for (const auto& [S, c] : f)
    if (popcount(S) != deg) throw std::invalid_argument("residue form degree mismatch");
  if (P.is_inf() || P.d() == 1) {
    LogForm g(cnv);
    for (const auto& [S, c] : f) g.add(S, c.coeff(0));
    return from_ground(is_zero(g, deg, sub_options(opt, cnv - 1)), P);
  }
  if (cnv == 0) {
    Poly b;
    if (solve_wp_finite(f.at(0), P.p(), &b)) {
      rv.verdict = Verdict::Zero;
      res_add(rv.omega, 0, b, P.p());
    } else {
      rv.verdict = Verdict::NonZero;
      rv.reason = "residue has nonzero trace over F_2";
    }
    return rv;
  }
  for (int i = cnv - 1; i >= 0; --i) {
    Poly A, B;
    if (linear_in(P.p(), i, &A, &B)) return rational_residue(f, deg, P, i, A, B, opt);
  }
  LogForm t = t_p_star(f, P);
  ZeroResult z = is_zero(t, deg, sub_options(opt, cnv - 1));
  if (z.verdict == Verdict::NonZero) {
    rv.verdict = Verdict::NonZero;
    rv.reason = "transfer of the residue is nonzero";
  } else {
    rv.verdict = Verdict::Unknown;
    rv.reason = "residue field of degree " + std::to_string(P.d()) + " is not recognised as rational";
  }
  return rv;
}

GroundReduction reduce_to_ground(const LogForm& phi, int m, const ZeroOptions& opt) {
  check_degree(phi, m);
  int n = phi.nv();
  GroundReduction res;
  res.witness = {LogForm(n), LogForm(n)};
  if (n == 0) throw std::invalid_argument("no place to reduce at over F_2");
  Support sup = support(phi, opt);
  if (!sup.complete) {
    res.reason = sup.issue;
    return res;
  }
  LogForm cur = phi;
  Witness& W = res.witness;
  auto step = [&](const Place& P) {
    LocalReduction R = local_reduce(cur, m, P, true);
    if (!R.w.polar_zero()) {
      res.verdict = Verdict::NonZero;
      res.place = place_name(P, opt);
      res.reason = "polar residue component";
      return false;
    }
    LogForm oa = R.omega, ea = R.eta;
    if (!R.w.phi.empty()) {
      ResidueVerdict rv = residue_is_zero(R.w.phi, m - 1, P, opt);
      if (rv.verdict != Verdict::Zero) {
        res.verdict = rv.verdict;
        res.place = place_name(P, opt);
        res.reason = rv.reason.empty() ? "residue field component" : rv.reason;
        return false;
      }
      Mask infb = 1u << inf_symbol(P);
      for (const auto& [S, c] : rv.omega) oa.add(S | infb, c.to_rat());
      for (const auto& [S, c] : rv.eta) ea.add(S | infb, c.to_rat());
    }
    Witness st{LogForm(n), LogForm(n)};
    add_adapted_witness(st, oa, ea, P);
    cur = cur + wp(st.omega) + dform(st.eta);
    W.omega += st.omega;
    W.eta += st.eta;
    if (!P.is_inf() && has_pole(cur, P)) throw std::logic_error("pole survived reduction at " + place_name(P, opt));
    return true;
  };
  int steps = 0;
  for (const auto& P : sup.places) {
    if (++steps > opt.max_steps) {
      res.reason = "step limit reached";
      return res;
    }
    if (!step(P)) return res;
  }
  if (!step(Place::infinity(n))) return res;
  int xid = n - 1;
  for (const auto& [S, c] : cur.terms())
    if (has(S, xid) || c.num().deg(xid) > 0 || c.den().deg(xid) > 0)
      throw std::logic_error("reduction left a non-constant remainder");
  res.verdict = Verdict::Zero;
  res.ground = cur.lower();
  return res;
}

ZeroResult is_zero(const LogForm& phi, int m, const ZeroOptions& opt) {
  check_degree(phi, m);
  int n = phi.nv();
  if (phi.is_zero()) return zero_result(n);
  if (n == 0) {
    ZeroResult r;
    r.verdict = Verdict::NonZero;
    r.place = "F_2";
    r.reason = "1 is not in wp(F_2)";
    return r;
  }
  GroundReduction g = reduce_to_ground(phi, m, opt);
  if (g.verdict != Verdict::Zero) {
    ZeroResult r;
    r.verdict = g.verdict;
    r.place = g.place;
    r.reason = g.reason;
    return r;
  }
  Witness W = g.witness;
  ZeroResult sub = is_zero(g.ground, m, sub_options(opt, n - 2));
  if (sub.verdict != Verdict::Zero) {
    sub.reason = "ground class, " + nested_reason(sub);
    sub.place = "ground";
    return sub;
  }
  Witness lw = lift_witness(sub.witness);
  W.omega += lw.omega;
  W.eta += lw.eta;
  if (!check_witness(phi, W)) throw std::logic_error("witness does not recombine");
  ZeroResult r = zero_result(n);
  r.witness = W;
  return r;
}

ReducedClass class_reduce(const LogForm& phi, const Place* P) {
  int n = phi.nv();
  ReducedClass out{LogForm(n), {LogForm(n), LogForm(n)}, LogForm(n)};
  LogForm cur = phi;
  if (P) {
    LogForm a = to_adapted(cur, *P);
    LogForm kept(n), dropped(n);
    for (const auto& [S, c] : a.terms()) {
      bool pos;
      if (P->is_inf()) {
        Poly num, den;
        Poly::from_rat(c, &num, &den);
        pos = den.deg() > num.deg();
      } else {
        Poly num, den;
        Poly::from_rat(c, &num, &den);
        pos = num.mod(P->p()).is_zero();
      }
      (pos ? dropped : kept).add(S, c);
    }
    out.local_dropped = to_global(dropped, *P);
    cur = to_global(kept, *P);
  }
  // c^2 dlog S = c dlog S + wp(c dlog S); repeat on the square part.
  for (int guard = 0; guard < 64; ++guard) {
    LogForm next(n);
    bool changed = false;
    for (const auto& [S, c] : cur.terms()) {
      auto parts = frobenius_decompose(c);
      auto it = parts.find(0);
      if (it == parts.end() || it->second.square() == it->second) {
        next.add(S, c);
        continue;
      }
      Rat c0 = it->second;
      next.add(S, c + c0.square() + c0);
      out.witness.omega.add(S, c0);
      changed = true;
    }
    cur = next;
    if (!changed) break;
  }
  out.rep = cur;
  return out;
}

SubgroupKind subgroup_kind(const std::string& name) {
  static const std::map<std::string, SubgroupKind> k = {
      {"L0", SubgroupKind::L0},         {"Ld", SubgroupKind::Ld},       {"Sp", SubgroupKind::Sp},
      {"Sp_tilde", SubgroupKind::Sp_tilde}, {"Sprime_pr", SubgroupKind::Sprime_pr},
      {"S0_pr", SubgroupKind::S0_pr},   {"Up", SubgroupKind::Up},       {"Up0", SubgroupKind::Up0}};
  auto it = k.find(name);
  if (it == k.end()) throw std::invalid_argument("unknown subgroup kind " + name);
  return it->second;
}

namespace {

Rat power(const Rat& a, int e) { return e == 0 ? Rat::one(a.nvars()) : a.pow(e); }

CohomClass sprime_generator(const SubgroupSpec& spec, const GeneratorParams& g, bool zero_x) {
  const Place& P = spec.place;
  int n = P.level(), r = spec.r, inf = inf_symbol(P);
  if (r < 1) throw ConstraintViolation("S'_{p,r}: r must be at least 1");
  Mask B = P.is_inf() ? (1u << (n - 1)) - 1 : residue_basis(P);
  Mask I = g.I, J = g.J;
  if (J & ~B) throw ConstraintViolation("S'_{p,r}: J outside the residue 2-basis");
  bool with_p = has(I, inf);
  if ((I & ~(B | (1u << inf))) != 0) throw ConstraintViolation("S'_{p,r}: I outside the 2-basis");
  if (popcount(I) != g.m) throw ConstraintViolation("S'_{p,r}: |I| must equal m");
  if (r % 2 == 1 && with_p) throw ConstraintViolation("S'_{p,r}: r odd admits no dlog p factor");
  if (r % 2 == 0) {
    Mask I0 = I & ~(1u << inf);
    if (J == 0 || has(I0, top_index(J))) throw ConstraintViolation("S'_{p,r}: r even requires J+I > I");
  }
  if (zero_x && !P.is_inf() && has(I, n - 1)) throw ConstraintViolation("S0_{p,r}: requires I_x = 0");
  LogForm a(n);
  if (P.is_inf()) {
    if (g.c.nvars() != n - 1) throw ConstraintViolation("S'_{1/x,r}: c must lie in the ground field");
    Rat coef = Rat(monomial_mask(n, J)) * g.c.lift().square() * Rat::var(n, n - 1).pow(r);
    a.add(I, coef);
    return {a, g.m};
  }
  if (g.s.cnv() != n - 1 || g.s.deg() >= P.d()) throw ConstraintViolation("S'_{p,r}: s must have degree < deg p");
  Poly num = (basis_monomial(P, J) * g.s.square()).mod(P.p());
  a.add(I, num.to_rat() / power(P.to_rat(), r));
  return {to_global(a, P), g.m};
}

}  // namespace

CohomClass subgroup_generator(const SubgroupSpec& spec, const GeneratorParams& g) {
  switch (spec.kind) {
    case SubgroupKind::L0: {
      int n = g.h.cnv() + 1;
      int slots = g.with_x ? g.m - 1 : g.m;
      if (int(g.cs.size()) != slots) throw ConstraintViolation("L0: expected m ground slots, or m-1 with x");
      if (g.with_x && !g.h.coeff(0).is_zero()) throw ConstraintViolation("L0: h must lie in x F[x] when f_m = x");
      std::vector<Rat> fs;
      for (const auto& c : g.cs) {
        if (c.is_zero() || c.nvars() != n - 1) throw ConstraintViolation("L0: slots must be nonzero ground elements");
        fs.push_back(c.lift());
      }
      if (g.with_x) fs.push_back(Rat::var(n, n - 1));
      LogForm f = fs.empty() ? LogForm::term(Rat::one(n), 0) : dlog_product(fs);
      return {f.scale(g.h.to_rat()), g.m};
    }
    case SubgroupKind::Ld: {
      int n = g.h.cnv() + 1;
      if (int(g.fs.size()) != g.m) throw ConstraintViolation("L_d: expected m dlog arguments");
      std::vector<Rat> fs;
      for (const auto& f : g.fs) {
        if (f.is_zero() || f.deg() > spec.d) throw ConstraintViolation("L_d: arguments must be nonzero of degree <= d");
        fs.push_back(f.to_rat());
      }
      Rat coef = g.h.to_rat();
      if (g.e > 0) {
        if (g.u.is_zero()) throw ConstraintViolation("L_d: zero denominator");
        coef = coef / g.u.to_rat().pow(g.e);
      }
      LogForm f = fs.empty() ? LogForm::term(Rat::one(n), 0) : dlog_product(fs);
      return {f.scale(coef), g.m};
    }
    case SubgroupKind::Sp:
    case SubgroupKind::Sp_tilde: {
      const Place& P = spec.place;
      if (P.is_inf()) throw ConstraintViolation("S_p: p must be a finite place");
      int n = P.level();
      if (g.e < 0) throw ConstraintViolation("S_p: e must be nonnegative");
      Mask allowed = (1u << (n - 1)) - 1;
      if (spec.kind == SubgroupKind::Sp_tilde) {
        if (P.separable()) throw ConstraintViolation("S~_p: requires an inseparable place");
        allowed = residue_basis(P);
      }
      allowed |= 1u << inf_symbol(P);
      if ((g.I & ~allowed) || popcount(g.I) != g.m) throw ConstraintViolation("S_p: I must be an m-subset of the basis");
      LogForm f(n);
      f.add(g.I, g.h.to_rat() / power(P.to_rat(), g.e));
      return {to_global(f, P), g.m};
    }
    case SubgroupKind::Sprime_pr:
    case SubgroupKind::Up: return sprime_generator(spec, g, false);
    case SubgroupKind::S0_pr:
    case SubgroupKind::Up0:
      if (spec.place.is_inf() || spec.place.separable()) throw ConstraintViolation("S0_{p,r}: requires an inseparable place");
      return sprime_generator(spec, g, true);
  }
  throw ConstraintViolation("unknown subgroup kind");
}

}  // namespace kmc
