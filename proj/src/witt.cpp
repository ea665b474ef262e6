#include "kmcoh/witt.hpp"

#include <algorithm>
#include <set>

#include "kmcoh/parse.hpp"

namespace kmc {

namespace {

std::vector<std::string> ground_names(int nv, const ZeroOptions& opt) {
  if (int(opt.names.size()) >= nv) return {opt.names.begin(), opt.names.begin() + nv};
  return var_names(nv, false);
}

std::vector<Rat> subset_products(const std::vector<Rat>& slots, int nv) {
  std::vector<Rat> prods{Rat::one(nv)};
  for (const auto& s : slots) {
    if (s.is_zero()) throw std::invalid_argument("Pfister slot must be nonzero");
    size_t k = prods.size();
    for (size_t i = 0; i < k; ++i) prods.push_back(prods[i] * s);
  }
  return prods;
}

// a = c^2 a' with the monomial square part of a's numerator and denominator removed.
Rat square_free_part(const Rat& a, Rat* c) {
  int nv = a.nvars();
  Rat num(a.num() * a.den());
  *c = Rat(a.den()).inv();
  std::vector<int> lo;
  for (const auto& e : num.num().terms()) {
    if (lo.empty()) lo = e;
    for (int i = 0; i < nv; ++i) lo[i] = std::min(lo[i], e[i]);
  }
  if (lo.empty()) return num;
  for (auto& x : lo) x /= 2;
  Rat m(MPoly::monomial(lo));
  *c = *c * m;
  return num / m.square();
}

std::string block_str(const QBlock& b, const std::vector<std::string>& names) {
  return "[" + b.a.str(names) + ", " + b.b.str(names) + "]";
}

}  // namespace

QuadForm QuadForm::block(const Rat& a, const Rat& b) {
  QuadForm q(a.nvars());
  q.add_block(a, b);
  return q;
}

QuadForm QuadForm::pfister(const std::vector<Rat>& slots, const Rat& b) {
  int nv = b.nvars();
  QuadForm q(nv);
  for (const auto& t : subset_products(slots, nv)) q.blocks_.push_back({t, b / t});
  q.pres_ = std::vector<Pfister>{{slots, b}};
  return q;
}

void QuadForm::add_block(const Rat& a, const Rat& b) {
  blocks_.push_back({a, b});
  pres_.reset();
}

QuadForm QuadForm::operator+(const QuadForm& o) const {
  QuadForm r(nv_);
  r.blocks_ = blocks_;
  r.blocks_.insert(r.blocks_.end(), o.blocks_.begin(), o.blocks_.end());
  if (pres_ && o.pres_) {
    r.pres_ = *pres_;
    r.pres_->insert(r.pres_->end(), o.pres_->begin(), o.pres_->end());
  } else {
    r.pres_.reset();
  }
  return r;
}

QuadForm QuadForm::scale(const Rat& c) const {
  if (c.is_zero()) throw std::invalid_argument("scaling by zero");
  QuadForm r(nv_);
  for (const auto& b : blocks_) r.blocks_.push_back({b.a * c, b.b / c});
  r.pres_.reset();
  return r;
}

std::string QuadForm::str(const std::vector<std::string>& names) const {
  if (blocks_.empty()) return "0";
  std::string s;
  for (const auto& b : blocks_) s += (s.empty() ? "" : " + ") + block_str(b, names);
  return s;
}

QuadForm parse_quadform(const std::string& text, const std::vector<std::string>& names) {
  int nv = int(names.size());
  QuadForm q(nv);
  size_t i = 0;
  auto split = [&](const std::string& body) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : body) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if ((ch == ',' || ch == ';') && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  auto find_close = [&](size_t from, const std::string& close) {
    size_t j = text.find(close, from);
    if (j == std::string::npos) throw ParseError("unterminated form at position " + std::to_string(from));
    return j;
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == ' ' || ch == '+' || ch == '\t' || ch == '\n') {
      ++i;
    } else if (text.compare(i, 2, "<<") == 0) {
      size_t j = find_close(i + 2, "]]");
      std::string body = text.substr(i + 2, j - i - 2);
      size_t semi = body.rfind(';');
      if (semi == std::string::npos) throw ParseError("Pfister form without ';' at position " + std::to_string(i));
      std::vector<Rat> slots;
      for (const auto& s : split(body.substr(0, semi))) slots.push_back(parse_rat(s, names));
      q += QuadForm::pfister(slots, parse_rat(body.substr(semi + 1), names));
      i = j + 2;
    } else if (ch == '[') {
      size_t j = find_close(i + 1, "]");
      auto parts = split(text.substr(i + 1, j - i - 1));
      if (parts.size() != 2) throw ParseError("binary block needs two entries at position " + std::to_string(i));
      QuadForm b(nv);
      b.add_block(parse_rat(parts[0], names), parse_rat(parts[1], names));
      q += b;
      i = j + 1;
    } else {
      throw ParseError("unexpected '" + std::string(1, ch) + "' at position " + std::to_string(i));
    }
  }
  return q;
}

QuadForm kato_iso(const LogForm& psi) {
  int nv = psi.nv();
  QuadForm q(nv);
  for (const auto& [S, c] : psi.terms()) {
    std::vector<Rat> slots;
    for (int i = 0; i < nv; ++i)
      if (has(S, i)) slots.push_back(Rat::var(nv, i));
    q += QuadForm::pfister(slots, c);
  }
  return q;
}

LogForm kato_inverse(const QuadForm& q) {
  if (!q.presentation()) throw std::invalid_argument("form has no Pfister presentation");
  LogForm r(q.nv());
  for (const auto& pf : *q.presentation()) {
    LogForm t = pf.slots.empty() ? LogForm::term(Rat::one(q.nv()), 0) : dlog_product(pf.slots);
    r += t.scale(pf.b);
  }
  return r;
}

Rat arf(const QuadForm& q) {
  Rat s(q.nv());
  for (const auto& b : q.blocks()) s += b.a * b.b;
  return s;
}

LogForm e2(const QuadForm& q) {
  LogForm s(q.nv());
  for (const auto& b : q.blocks())
    if (!b.a.is_zero()) s += dlog_expand(b.a).scale(b.a * b.b);
  return s;
}

Simplified witt_simplify(const QuadForm& q, int max_rounds) {
  int nv = q.nv();
  auto names = var_names(nv, false);
  std::vector<QBlock> bl = q.blocks();
  std::vector<std::string> chain;
  std::set<Rat> not_wp;
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (size_t k = 0; k < bl.size();) {
      if (bl[k].a.is_zero() || bl[k].b.is_zero()) {
        chain.push_back("hyperbolic " + block_str(bl[k], names));
        bl.erase(bl.begin() + k);
        changed = true;
      } else {
        ++k;
      }
    }
    for (auto& b : bl) {
      Rat c;
      Rat a2 = square_free_part(b.a, &c);
      if (a2 != b.a) {
        QBlock nb{a2, b.b * c.square()};
        chain.push_back(block_str(b, names) + " = " + block_str(nb, names) + " (scale by " + c.str(names) + ")");
        b = nb;
        changed = true;
      }
    }
    for (size_t i = 0; i < bl.size() && !changed; ++i)
      for (size_t j = i + 1; j < bl.size() && !changed; ++j) {
        QBlock u = bl[i], v = bl[j];
        if (u.a != v.a && u.b == v.b) std::swap(u.a, u.b), std::swap(v.a, v.b);
        else if (u.a != v.a && u.a == v.b) std::swap(v.a, v.b);
        else if (u.a != v.a && u.b == v.a) std::swap(u.a, u.b);
        if (u.a != v.a) continue;
        QBlock m{u.a, u.b + v.b};
        chain.push_back(block_str(u, names) + " + " + block_str(v, names) + " = " + block_str(m, names) + " + [0, " +
                        u.b.str(names) + "]");
        bl[i] = m;
        bl.erase(bl.begin() + j);
        changed = true;
      }
    if (!changed)
      for (size_t k = 0; k < bl.size(); ++k) {
        Rat ab = bl[k].a * bl[k].b;
        if (not_wp.count(ab)) continue;
        ZeroResult z = is_zero(LogForm::term(ab, 0), 0);
        if (z.verdict != Verdict::Zero) {
          not_wp.insert(ab);
          continue;
        }
        chain.push_back("hyperbolic " + block_str(bl[k], names) + ": ab = wp(" +
                        z.witness.omega.coeff(0).str(names) + ")");
        bl.erase(bl.begin() + k);
        changed = true;
        break;
      }
    if (!changed) break;
  }
  QuadForm out(nv);
  for (const auto& b : bl) out.add_block(b.a, b.b);
  if (bl.empty()) out = QuadForm(nv);
  return {out, chain};
}

ResQuadForm res_pfister(const std::vector<Poly>& slots, const Poly& b, const Place& P) {
  const Poly& p = P.p();
  std::vector<Poly> prods{Poly::constant(Rat::one(p.cnv()))};
  for (const auto& s : slots) {
    Poly sr = s.mod(p);
    if (sr.is_zero()) throw std::invalid_argument("Pfister slot must be nonzero");
    size_t k = prods.size();
    for (size_t i = 0; i < k; ++i) prods.push_back(prods[i].mulmod(sr, p));
  }
  ResQuadForm q{P, {}};
  for (const auto& t : prods) q.blocks.push_back({t, b.mulmod(Poly::inv_mod(t, p), p)});
  return q;
}

QuadForm scharlau_transfer_gram(const ResQuadForm& q) {
  const Place& P = q.place;
  if (P.is_inf()) throw std::invalid_argument("transfer needs a finite place");
  int d = P.d(), cnv = P.level() - 1;
  int dim = 2 * d * int(q.blocks.size());
  const Poly& p = P.p();
  std::vector<Poly> xp{Poly::constant(Rat::one(cnv))};
  for (int k = 1; k < 2 * d; ++k) xp.push_back(xp.back().shift(1).mod(p));
  std::vector<Rat> Q(dim, Rat(cnv));
  std::vector<std::vector<Rat>> B(dim, std::vector<Rat>(dim, Rat(cnv)));
  for (size_t k = 0; k < q.blocks.size(); ++k) {
    int e0 = int(2 * d * k), f0 = e0 + d;
    for (int i = 0; i < d; ++i) {
      Q[e0 + i] = trace_form(q.blocks[k].a.mulmod(xp[2 * i], p), P);
      Q[f0 + i] = trace_form(q.blocks[k].b.mulmod(xp[2 * i], p), P);
      for (int j = 0; j < d; ++j) {
        Rat t = trace_form(xp[i + j], P);
        B[e0 + i][f0 + j] = t;
        B[f0 + j][e0 + i] = t;
      }
    }
  }
  using Vec = std::vector<Rat>;
  auto bil = [&](const Vec& u, const Vec& w) {
    Rat s(cnv);
    for (int i = 0; i < dim; ++i) {
      if (u[i].is_zero()) continue;
      for (int j = 0; j < dim; ++j)
        if (!w[j].is_zero() && !B[i][j].is_zero()) s += u[i] * w[j] * B[i][j];
    }
    return s;
  };
  auto quad = [&](const Vec& u) {
    Rat s(cnv);
    for (int i = 0; i < dim; ++i) {
      if (u[i].is_zero()) continue;
      s += u[i].square() * Q[i];
      for (int j = i + 1; j < dim; ++j)
        if (!u[j].is_zero() && !B[i][j].is_zero()) s += u[i] * u[j] * B[i][j];
    }
    return s;
  };
  std::vector<Vec> W;
  for (int i = 0; i < dim; ++i) {
    Vec v(dim, Rat(cnv));
    v[i] = Rat::one(cnv);
    W.push_back(v);
  }
  QuadForm out(cnv);
  while (!W.empty()) {
    Vec u = W[0];
    size_t k = 1;
    Rat buv(cnv);
    for (; k < W.size(); ++k) {
      buv = bil(u, W[k]);
      if (!buv.is_zero()) break;
    }
    if (k == W.size()) throw SingularTransfer("transferred form is singular");
    Vec v = W[k];
    Rat inv = buv.inv();
    for (auto& x : v) x *= inv;
    out.add_block(quad(u), quad(v));
    W.erase(W.begin() + k);
    W.erase(W.begin());
    for (auto& z : W) {
      Rat bzv = bil(z, v), bzu = bil(z, u);
      for (int i = 0; i < dim; ++i) z[i] += bzv * u[i] + bzu * v[i];
    }
  }
  return out;
}

ClosedFormKind closed_form_kind(const std::string& name) {
  if (name == "unit") return ClosedFormKind::Unit;
  if (name == "x_pfister") return ClosedFormKind::XPfister;
  if (name == "insep_const") return ClosedFormKind::InsepConst;
  throw std::invalid_argument("unknown closed form kind: " + name);
}

namespace {

void check_kind(ClosedFormKind kind, int i, const Place& P) {
  if (P.is_inf()) throw KindPlaceMismatch("closed forms need a finite place");
  if (kind == ClosedFormKind::XPfister && i < 1) throw KindPlaceMismatch("x_pfister needs i >= 1");
  if (kind == ClosedFormKind::InsepConst && P.separable()) throw KindPlaceMismatch("insep_const needs an inseparable place");
  if (i < 0) throw KindPlaceMismatch("i must be nonnegative");
}

}  // namespace

QuadForm transfer_closed_form(ClosedFormKind kind, const Rat& a, int i, const Place& P) {
  check_kind(kind, i, P);
  int d = P.d(), cnv = P.level() - 1;
  QuadForm q(cnv);
  switch (kind) {
    case ClosedFormKind::Unit:
      if (d % 2 == 0) {
        for (int j = 0; j < d / 2; ++j) q.add_block(P.pcoef(2 * j + 1), a * P.gamma_at(i - 2 * j - 1));
      } else {
        for (int j = 0; j <= d / 2; ++j) q.add_block(P.pcoef(2 * j), a * P.gamma_at(i - 2 * j));
      }
      return q;
    case ClosedFormKind::XPfister:
      for (int j = 1; j <= d; ++j) {
        Rat pj = P.pcoef(j);
        if (!pj.is_zero()) q += QuadForm::pfister({pj}, a * pj * P.gamma_at(i - j));
      }
      return q;
    case ClosedFormKind::InsepConst:
      return QuadForm::pfister({P.pcoef(d)}, a);
  }
  return q;
}

ResQuadForm closed_form_input(ClosedFormKind kind, const Rat& a, int i, const Place& P) {
  check_kind(kind, i, P);
  Poly ax = Poly::monomial(a, i).mod(P.p());
  if (kind == ClosedFormKind::Unit) return {P, {{Poly::constant(Rat::one(a.nvars())), ax}}};
  return res_pfister({Poly::x(a.nvars())}, ax, P);
}

const char* witt_verdict_name(WittVerdict v) {
  switch (v) {
    case WittVerdict::Equal: return "EQUAL";
    case WittVerdict::NotEqual: return "NOT_EQUAL";
    case WittVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

WittResult witt_equal_bounded(const QuadForm& q1, const QuadForm& q2, const WittOptions& opt) {
  if (q1.nv() != q2.nv()) throw std::invalid_argument("forms over different fields");
  int nv = q1.nv();
  auto names = ground_names(nv, opt.zero);
  Simplified s = witt_simplify(q1 + q2, opt.bound);
  WittResult r;
  r.chain = s.chain;
  if (s.form.blocks().empty()) {
    r.verdict = WittVerdict::Equal;
    return r;
  }
  Rat A = arf(s.form);
  ZeroResult za = is_zero(LogForm::term(A, 0), 0, opt.zero);
  if (za.verdict == Verdict::NonZero) {
    r.verdict = WittVerdict::NotEqual;
    r.invariant = "Arf class " + A.str(names) + " is not in wp(F) (" + za.place + ")";
    return r;
  }
  if (za.verdict == Verdict::Unknown) {
    r.invariant = "Arf class undecided: " + za.reason;
    return r;
  }
  r.chain.push_back("Arf " + A.str(names) + " = wp(" + za.witness.omega.coeff(0).str(names) + ")");
  LogForm E = e2(s.form);
  ZeroResult ze = is_zero(E, 1, opt.zero);
  if (ze.verdict == Verdict::NonZero) {
    r.verdict = WittVerdict::NotEqual;
    r.invariant = "e2 class " + E.str(names) + " is nonzero (" + ze.place + ")";
    return r;
  }
  if (ze.verdict == Verdict::Unknown) {
    r.invariant = "e2 class undecided: " + ze.reason;
    return r;
  }
  r.chain.push_back("e2 " + E.str(names) + " = wp(" + ze.witness.omega.str(names) + ") + d(" +
                    ze.witness.eta.str(names) + ")");
  if (nv > 1) {
    r.invariant = "Arf and e2 vanish; higher invariants not decided";
    return r;
  }
  r.chain.push_back("I_q^3 = 0 over a field with a 2-basis of size <= 1");
  r.verdict = WittVerdict::Equal;
  return r;
}

}  // namespace kmc
