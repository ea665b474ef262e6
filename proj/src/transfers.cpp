#include "kmcoh/transfers.hpp"

#include <stdexcept>

namespace kmc {

ResForm theta(const W1Class& w) { return w.phi; }

LogForm transfer_term(const Rat& a, int i, Mask S, const Place& P) {
  if (P.is_inf()) throw std::invalid_argument("transfer_term needs a finite place");
  int n = P.level(), cnv = n - 1, xid = cnv, d = P.d();
  LogForm out(cnv);
  if (a.is_zero()) return out;
  std::vector<Rat> g = P.gamma(std::max(i, 0));
  auto gam = [&](int k) { return k < 0 ? Rat(cnv) : g[k]; };
  if (!has(S, xid)) {
    Rat c(cnv);
    if (d % 2 == 0) {
      for (int j = 0; j < d / 2; ++j) c += P.pcoef(2 * j + 1) * gam(i - 2 * j - 1);
    } else {
      for (int j = 0; j <= d / 2; ++j) c += P.pcoef(2 * j) * gam(i - 2 * j);
    }
    out.add(S, a * c);
    return out;
  }
  if (P.separable()) throw std::invalid_argument("dlog x is not a residue basis symbol at a separable place");
  Mask S0 = S & ~(1u << xid);
  if (i == 0) return wedge(LogForm::term(a, S0), dlog_expand(P.pcoef(d)));
  for (int j = 1; j <= d; ++j) {
    Rat pj = P.pcoef(j);
    Rat c = a * pj * gam(i - j);
    if (c.is_zero()) continue;
    out += wedge(LogForm::term(c, S0), dlog_expand(pj));
  }
  return out;
}

LogForm t_p_star(const ResForm& psi, const Place& P) {
  int cnv = P.level() - 1;
  LogForm out(cnv);
  for (const auto& [S, c] : psi) {
    if (P.is_inf()) {
      out.add(S, c.coeff(0));
      continue;
    }
    Poly r = c.mod(P.p());
    for (int i = 0; i <= r.deg(); ++i) out += transfer_term(r.coeff(i), i, S, P);
  }
  return out;
}

LogForm s_p_star(const W1Class& w) {
  const Place& P = w.place;
  LogForm out = t_p_star(theta(w), P);
  if (P.is_inf() || P.separable()) return out;
  int n = P.level(), xid = n - 1, inf = n;
  Rat pd = P.pcoef(P.d());
  Mask strip = (1u << xid) | (1u << inf);
  auto cpart = [&](Mask J, const Poly& s) { return (basis_monomial(P, J) * s.square()).mod(P.p()).coeff(0); };
  for (const auto& [key, s] : w.u) {
    auto [r, I, J] = key;
    if (has(I, xid)) out.add(I & ~strip, cpart(J, s) / pd.pow(2 * r + 1));
  }
  for (const auto& [key, s] : w.v) {
    auto [r, I, J] = key;
    if (!has(I, xid)) continue;
    Rat c = cpart(J, s) / pd.pow(2 * r);
    if (has(I, inf)) out += wedge(LogForm::term(c, I & ~strip), dlog_expand(pd));
    else out.add(I & ~strip, c);
  }
  return out;
}

LogForm include_form(const LogForm& psi) { return psi.lift(); }

ReciprocityReport reciprocity_sum(const LogForm& phi, int m, const ZeroOptions& opt) {
  if (m < 1) throw std::invalid_argument("reciprocity needs forms of degree at least 1");
  int n = phi.nv();
  ReciprocityReport rep;
  rep.sum = LogForm(n - 1);
  Support sup = support(phi, opt);
  if (!sup.complete) {
    rep.verdict.reason = sup.issue;
    return rep;
  }
  std::vector<Place> places = sup.places;
  places.push_back(Place::infinity(n));
  for (const auto& P : places) {
    ReciprocityTerm t{P, residue(phi, m, P), LogForm(n - 1)};
    if (t.residue.polar_zero() && t.residue.phi.empty()) continue;
    t.value = s_p_star(t.residue);
    rep.sum += t.value;
    rep.terms.push_back(std::move(t));
  }
  ZeroOptions sub = opt;
  sub.hints.clear();
  if (int(sub.names.size()) < n) sub.names = var_names(n, true);
  sub.names.resize(n - 1);
  rep.verdict = is_zero(rep.sum, m - 1, sub);
  return rep;
}

}  // namespace kmc
