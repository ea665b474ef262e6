#include "kmcoh/local.hpp"

#include <stdexcept>

namespace kmc {

namespace {

Rat ground_monomial(int cnv, Mask J) { return Rat(monomial_mask(cnv, J)); }

Poly ground_monomial_poly(int cnv, Mask J) { return Poly::constant(ground_monomial(cnv, J)); }

// f = sum_J t^J A_J(x)^2 + x sum_J t^J B_J(x)^2 over ground masks J.
void frobenius_poly(const Poly& f, std::map<Mask, Poly>& A, std::map<Mask, Poly>& B) {
  int cnv = f.cnv();
  for (int n = 0; n <= f.deg(); ++n) {
    Rat c = f.coeff(n);
    if (c.is_zero()) continue;
    for (auto& [J, a] : frobenius_decompose(c)) {
      auto& tgt = (n % 2 == 0) ? A : B;
      auto it = tgt.find(J);
      if (it == tgt.end()) it = tgt.emplace(J, Poly(cnv)).first;
      it->second += Poly::monomial(a, n / 2);
    }
  }
}

void acc_add(std::map<Mask, Poly>& m, Mask J, const Poly& c) {
  if (c.is_zero()) return;
  auto it = m.find(J);
  if (it == m.end()) {
    m.emplace(J, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

void split_num(const Place& P, const Poly& num, Poly* h1, Poly* h2) {
  if (P.is_inf()) {
    if (num.deg() > 0) throw std::logic_error("non-constant numerator at infinity");
    *h1 = Poly(num.cnv());
    *h2 = num;
    return;
  }
  Poly::divmod(num, P.p(), h1, h2);
}

Rat poly_value(const Poly& c) { return c.to_rat(); }

}  // namespace

int inf_symbol(const Place& P) { return P.is_inf() ? P.level() - 1 : P.level(); }

Mask residue_basis(const Place& P) {
  int n = P.level();
  Mask g = (1u << (n - 1)) - 1;
  if (!P.is_inf() && !P.separable()) g = (g & ~(1u << P.iprime())) | (1u << (n - 1));
  return g;
}

Rat uniformizer(const Place& P) {
  if (P.is_inf()) return Rat::var(P.level(), P.level() - 1).inv();
  return P.to_rat();
}

Rat symbol_value(const Place& P, int id) {
  if (id == inf_symbol(P)) return uniformizer(P);
  return Rat::var(P.level(), id);
}

Poly basis_monomial(const Place& P, Mask J) {
  int cnv = P.level() - 1;
  Poly m = ground_monomial_poly(cnv, J & ((1u << cnv) - 1));
  if (has(J, cnv)) m = m.shift(1);
  return m;
}

LogForm to_adapted(const LogForm& f, const Place& P) {
  if (P.is_inf()) return f;
  int n = P.level(), cnv = n - 1, xid = n - 1, inf = n;
  Rat pr = P.to_rat();
  LogForm out(n);
  if (P.separable()) {
    Rat den = (Rat::var(n, xid) * P.p().derivative().to_rat()).inv();
    std::vector<Rat> coef(cnv);
    for (int i = 0; i < cnv; ++i) coef[i] = P.p().partial(i).to_rat() * Rat::var(n, i) * den;
    Rat cp = pr * den;
    for (const auto& [S, c] : f.terms()) {
      if (!has(S, xid)) {
        out.add(S, c);
        continue;
      }
      Mask S0 = S & ~(1u << xid);
      out.add(S0 | (1u << inf), c * cp);
      for (int i = 0; i < cnv; ++i)
        if (!has(S0, i) && !coef[i].is_zero()) out.add(S0 | (1u << i), c * coef[i]);
    }
  } else {
    int ip = P.iprime();
    Rat den = (Rat::var(n, ip) * P.p().partial(ip).to_rat()).inv();
    std::vector<Rat> coef(cnv);
    for (int i = 0; i < cnv; ++i)
      if (i != ip) coef[i] = P.p().partial(i).to_rat() * Rat::var(n, i) * den;
    Rat cp = pr * den;
    for (const auto& [S, c] : f.terms()) {
      if (!has(S, ip)) {
        out.add(S, c);
        continue;
      }
      Mask S0 = S & ~(1u << ip);
      out.add(S0 | (1u << inf), c * cp);
      for (int i = 0; i < cnv; ++i)
        if (i != ip && !has(S0, i) && !coef[i].is_zero()) out.add(S0 | (1u << i), c * coef[i]);
    }
  }
  return out;
}

LogForm to_global(const LogForm& f, const Place& P) {
  if (P.is_inf()) return f;
  int n = P.level(), inf = n;
  LogForm dp = dlog_expand(P.to_rat());
  LogForm out(n);
  for (const auto& [S, c] : f.terms()) {
    if (!has(S, inf)) {
      out.add(S, c);
      continue;
    }
    Mask S0 = S & ~(1u << inf);
    for (const auto& [T, e] : dp.terms())
      if (!(S0 & T)) out.add(S0 | T, c * e);
  }
  return out;
}

Digits partial_fractions(const Rat& c, const Place& P, bool want_regular) {
  int n = P.level(), cnv = n - 1;
  Digits out;
  Poly N, D;
  Poly::from_rat(c, &N, &D);
  if (P.is_inf()) {
    Poly Q, Rm;
    Poly::divmod(N, D, &Q, &Rm);
    for (int l = 1; l <= Q.deg(); ++l) out.polar.push_back(Poly::constant(Q.coeff(l)));
    out.order0 = Poly::constant(Q.coeff(0));
    if (want_regular) out.regular = Q.coeff(0).lift() + Rm.to_rat() / D.to_rat();
    return out;
  }
  const Poly& p = P.p();
  int L = 0;
  Poly Dp = D;
  for (;;) {
    Poly q, r;
    Poly::divmod(Dp, p, &q, &r);
    if (!r.is_zero()) break;
    Dp = q;
    ++L;
  }
  if (L == 0) {
    out.order0 = (N.mod(p) * Poly::inv_mod(Dp, p)).mod(p);
    if (want_regular) out.regular = c;
    return out;
  }
  Poly pL = Poly::constant(Rat::one(cnv));
  for (int i = 0; i < L; ++i) pL = pL * p;
  Poly A = (N.mod(pL) * Poly::inv_mod(Dp, pL)).mod(pL);
  out.polar.assign(L, Poly(cnv));
  Poly a = A;
  for (int j = 0; j < L; ++j) {
    Poly q, r;
    Poly::divmod(a, p, &q, &r);
    out.polar[L - j - 1] = r;
    a = q;
  }
  Poly num = N + A * Dp, R, rem;
  Poly::divmod(num, pL, &R, &rem);
  if (!rem.is_zero()) throw std::logic_error("partial fraction remainder not divisible");
  out.order0 = (R.mod(p) * Poly::inv_mod(Dp, p)).mod(p);
  if (want_regular) out.regular = R.to_rat() / Dp.to_rat();
  return out;
}

Decomposition residue_field_decompose(const Poly& f, const Place& P) {
  int cnv = P.level() - 1;
  Decomposition out;
  out.k = Poly(cnv);
  if (P.is_inf()) {
    if (f.deg() > 0) throw std::logic_error("residue at infinity must be constant");
    if (!f.is_zero())
      for (auto& [J, a] : frobenius_decompose(f.coeff(0))) out.parts.emplace(J, Poly::constant(a));
    return out;
  }
  const Poly& p = P.p();
  std::map<Mask, Poly> A, B, PA, PB;
  frobenius_poly(f.mod(p), A, B);
  frobenius_poly(p, PA, PB);
  auto reduce_all = [&](std::map<Mask, Poly>& m) {
    for (auto it = m.begin(); it != m.end();) {
      it->second = it->second.mod(p);
      if (it->second.is_zero()) it = m.erase(it);
      else ++it;
    }
  };
  std::map<Mask, Poly>& parts = out.parts;
  if (P.separable()) {
    std::map<Mask, Poly> cx;
    for (const auto& [J1, P1] : PA)
      for (const auto& [J2, Q2] : PB) acc_add(cx, J1 ^ J2, ground_monomial_poly(cnv, J1 & J2) * P1 * Q2);
    Poly ipd = Poly::inv_mod(p.derivative(), p);
    for (auto& [J, c] : cx) c = (c.mod(p) * ipd).mod(p);
    reduce_all(cx);
    for (const auto& [J, a] : A) acc_add(parts, J, a);
    for (const auto& [J1, c] : cx)
      for (const auto& [J2, b] : B) acc_add(parts, J1 ^ J2, (ground_monomial_poly(cnv, J1 & J2) * c * b).mod(p));
  } else {
    int ip = P.iprime(), xid = cnv;
    Mask ipb = 1u << ip;
    std::map<Mask, Poly> e;
    for (const auto& [J1, P1] : PA) {
      if (J1 & ipb) continue;
      for (const auto& [J2p, P2] : PA) {
        if (!(J2p & ipb)) continue;
        Mask J2 = J2p & ~ipb;
        acc_add(e, J1 ^ J2, ground_monomial_poly(cnv, J1 & J2) * P1 * P2);
      }
    }
    Poly iA = Poly::inv_mod(p.partial(ip).mod(p), p);
    for (auto& [J, c] : e) c = (c.mod(p) * iA).mod(p);
    reduce_all(e);
    auto feed = [&](const std::map<Mask, Poly>& src, Mask extra) {
      for (const auto& [J, a] : src) {
        if (!(J & ipb)) {
          acc_add(parts, J | extra, a);
          continue;
        }
        Mask J0 = J & ~ipb;
        for (const auto& [Jp, ej] : e)
          acc_add(parts, (Jp ^ J0) | extra, (ground_monomial_poly(cnv, Jp & J0) * ej * a).mod(p));
      }
    };
    feed(A, 0);
    feed(B, 1u << xid);
  }
  reduce_all(parts);
  Poly resid = f;
  for (const auto& [J, fj] : parts) resid += basis_monomial(P, J) * fj.square();
  Poly r;
  Poly::divmod(resid, p, &out.k, &r);
  if (!r.is_zero()) throw std::logic_error("residue field decomposition failed");
  return out;
}

LogForm w1_representative_adapted(const W1Class& w) {
  const Place& P = w.place;
  int n = P.level(), inf = inf_symbol(P);
  Rat ipi = uniformizer(P).inv();
  LogForm out(n);
  auto term = [&](const EntryKey& key, const Poly& c, int pole) {
    auto [r, I, J] = key;
    Poly h1, h2;
    split_num(P, basis_monomial(P, J) * c.square(), &h1, &h2);
    out.add(I, poly_value(h2) * ipi.pow(pole));
  };
  for (const auto& [key, c] : w.u) term(key, c, 2 * std::get<0>(key) + 1);
  for (const auto& [key, c] : w.v) term(key, c, 2 * std::get<0>(key));
  for (const auto& [S, c] : w.phi) out.add(S | (1u << inf), poly_value(c));
  return out;
}

LogForm w1_representative(const W1Class& w) { return to_global(w1_representative_adapted(w), w.place); }

LocalReduction local_reduce(const LogForm& phi, int m, const Place& P, bool track) {
  int n = P.level(), cnv = n - 1, inf = inf_symbol(P);
  Mask infb = 1u << inf;
  LocalReduction R;
  R.w.place = P;
  R.w.m = m;
  R.carry = LogForm(n);
  R.regular = LogForm(n);
  R.omega = LogForm(n);
  R.eta = LogForm(n);
  LogForm a = to_adapted(phi, P);
  std::map<std::pair<int, Mask>, Poly, std::greater<>> acc;
  std::map<Mask, Poly> order0, carry;
  auto add = [&](int lvl, Mask S, const Poly& c) {
    if (c.is_zero()) return;
    if (lvl == 0) {
      acc_add(carry, S, c);
      return;
    }
    auto key = std::make_pair(lvl, S);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  };
  for (const auto& [S, c] : a.terms()) {
    Digits dg = partial_fractions(c, P, track);
    for (size_t l = 0; l < dg.polar.size(); ++l) add(int(l) + 1, S, dg.polar[l]);
    acc_add(order0, S, dg.order0);
    if (track) R.regular.add(S, dg.regular);
  }
  Rat ipi = uniformizer(P).inv(), pi = uniformizer(P);
  auto mono = [&](Mask J) {
    Rat r = Rat::one(n);
    for (int i = 0; i < 32; ++i)
      if (has(J, i)) r *= symbol_value(P, i);
    return r;
  };
  auto entry_add = [&](std::map<EntryKey, Poly>& tab, const EntryKey& key, const Poly& c) {
    auto it = tab.find(key);
    if (it == tab.end()) {
      tab.emplace(key, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) tab.erase(it);
  };
  while (!acc.empty()) {
    auto it = acc.begin();
    int lvl = it->first.first;
    Mask S = it->first.second;
    Poly f = it->second;
    acc.erase(it);
    Decomposition dec = residue_field_decompose(f, P);
    add(lvl - 1, S, dec.k);
    for (const auto& [J, fJ] : dec.parts) {
      std::vector<Mask> targets;
      if (lvl % 2 == 0) {
        int e = lvl / 2;
        if (J == 0) {
          if (track) R.omega.add(S, poly_value(fJ) * ipi.pow(e));
          add(e, S, fJ);
          continue;
        }
        int j = top_index(J);
        if (has(S, j)) {
          Mask S0 = S & ~(1u << j);
          for (int i = 0; i < 32; ++i)
            if (has(J, i) && !has(S, i)) targets.push_back(S0 | (1u << i));
          if (track) R.eta.add(S0, mono(J) * (poly_value(fJ) * ipi.pow(e)).square());
        } else {
          targets.push_back(S);
        }
        Poly h1, h2;
        split_num(P, basis_monomial(P, J) * fJ.square(), &h1, &h2);
        for (Mask T : targets) {
          entry_add(R.w.v, {e, T, J}, fJ);
          add(lvl - 1, T, h1);
        }
      } else {
        int e = (lvl - 1) / 2;
        if (has(S, inf)) {
          Mask S0 = S & ~infb;
          for (int i = 0; i < 32; ++i)
            if (has(J, i) && !has(S, i)) targets.push_back(S0 | (1u << i));
          if (track) R.eta.add(S0, pi * mono(J) * (poly_value(fJ) * ipi.pow(e + 1)).square());
        } else {
          targets.push_back(S);
        }
        Poly h1, h2;
        split_num(P, basis_monomial(P, J) * fJ.square(), &h1, &h2);
        for (Mask T : targets) {
          entry_add(R.w.u, {e, T, J}, fJ);
          add(lvl - 1, T, h1);
        }
      }
    }
  }
  Poly modp = P.is_inf() ? Poly(cnv) : P.p();
  for (const auto& [S, c] : carry) {
    if (track) R.carry.add(S, poly_value(c));
    if (has(S, inf)) res_add(R.w.phi, S & ~infb, c, modp);
  }
  for (const auto& [S, c] : order0)
    if (has(S, inf)) res_add(R.w.phi, S & ~infb, c, modp);
  return R;
}

W1Class residue(const LogForm& phi, int m, const Place& P) { return local_reduce(phi, m, P, false).w; }

ResForm res_to_basis(const ResForm& f, const Place& P) {
  if (P.is_inf()) return f;
  int n = P.level(), cnv = n - 1, xid = n - 1;
  const Poly& p = P.p();
  ResForm out;
  int elim = P.separable() ? xid : P.iprime();
  Poly den = P.separable() ? (Poly::x(cnv) * p.derivative()).mod(p)
                           : (Poly::constant(Rat::var(cnv, elim)) * p.partial(elim)).mod(p);
  Poly iden = Poly::inv_mod(den, p);
  std::vector<Poly> coef(cnv);
  for (int i = 0; i < cnv; ++i) {
    if (i == elim) continue;
    coef[i] = (p.partial(i) * Poly::constant(Rat::var(cnv, i))).mod(p).mulmod(iden, p);
  }
  for (const auto& [S, c] : f) {
    if (!has(S, elim)) {
      res_add(out, S, c, p);
      continue;
    }
    Mask S0 = S & ~(1u << elim);
    for (int i = 0; i < cnv; ++i)
      if (i != elim && !has(S0, i) && !coef[i].is_zero()) res_add(out, S0 | (1u << i), c.mulmod(coef[i], p), p);
  }
  return out;
}

ResForm res_wp(const ResForm& f, const Place& P) {
  Poly modp = P.is_inf() ? Poly(P.level() - 1) : P.p();
  ResForm out;
  for (const auto& [S, c] : f) res_add(out, S, c.square() + c, modp);
  return out;
}

ResForm res_d(const ResForm& f, const Place& P) {
  Poly modp = P.is_inf() ? Poly(P.level() - 1) : P.p();
  ResForm out;
  for (const auto& [S, c] : f) {
    for (const auto& [J, cj] : residue_field_decompose(c, P).parts) {
      Poly t = basis_monomial(P, J) * cj.square();
      for (int i = 0; i < 32; ++i)
        if (has(J, i) && !has(S, i)) res_add(out, S | (1u << i), t, modp);
    }
  }
  return out;
}

ResForm res_integrate(const ResForm& f, const Place& P) {
  Poly modp = P.is_inf() ? Poly(P.level() - 1) : P.p();
  ResForm xi;
  for (const auto& [T, c] : f) {
    for (const auto& [J, cj] : residue_field_decompose(c, P).parts) {
      if (J == 0) throw std::domain_error("residue form is not exact");
      int j = top_index(J);
      if (has(T, j)) res_add(xi, T & ~(1u << j), basis_monomial(P, J) * cj.square(), modp);
    }
  }
  if (res_d(xi, P) != f) throw std::domain_error("residue form is not exact");
  return xi;
}

Poly teichmuller_lift(const Poly& u, const Place& P, int N, const std::function<Poly(const Poly&)>& base) {
  if (P.is_inf()) throw std::invalid_argument("teichmuller lift needs a finite place");
  if (N == 0) return base ? base(u.mod(P.p())) : u.mod(P.p());
  Poly mod = Poly::constant(Rat::one(P.level() - 1));
  for (int i = 0; i < (1 << N); ++i) mod = mod * P.p();
  Decomposition dec = residue_field_decompose(u.mod(P.p()), P);
  Poly s(P.level() - 1);
  for (const auto& [J, fJ] : dec.parts) {
    Poly t = teichmuller_lift(fJ, P, N - 1, base);
    s += (basis_monomial(P, J) * t.square()).mod(mod);
  }
  return s.mod(mod);
}

}  // namespace kmc
