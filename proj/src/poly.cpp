#include "kmcoh/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace kmc {

Poly::Poly(int cnv, std::vector<Rat> c) : cnv_(cnv), c_(std::move(c)) {
  for (const auto& r : c_)
    if (r.nvars() != cnv_) throw std::invalid_argument("coefficient level mismatch");
  trim();
}

Poly Poly::monomial(const Rat& c, int k) {
  Poly p(c.nvars());
  if (c.is_zero()) return p;
  p.c_.assign(k + 1, Rat(c.nvars()));
  p.c_[k] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  if (cnv_ != o.cnv_) throw std::invalid_argument("coefficient level mismatch");
  Poly r = *this;
  if (r.c_.size() < o.c_.size()) r.c_.resize(o.c_.size(), Rat(cnv_));
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (cnv_ != o.cnv_) throw std::invalid_argument("coefficient level mismatch");
  Poly r(cnv_);
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rat(cnv_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (!o.c_[j].is_zero()) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.trim();
  return r;
}

Poly Poly::scale(const Rat& a) const {
  Poly r(cnv_);
  if (a.is_zero()) return r;
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(c * a);
  return r;
}

Poly Poly::square() const {
  Poly r(cnv_);
  if (is_zero()) return r;
  r.c_.assign(2 * c_.size() - 1, Rat(cnv_));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[2 * i] = c_[i].square();
  r.trim();
  return r;
}

Poly Poly::shift(int k) const {
  Poly r = *this;
  if (is_zero() || k == 0) return r;
  r.c_.insert(r.c_.begin(), size_t(k), Rat(cnv_));
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || lc().is_one()) return *this;
  return scale(lc().inv());
}

bool Poly::operator<(const Poly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] < o.c_[i]) return true;
    if (o.c_[i] < c_[i]) return false;
  }
  return false;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly* q, Poly* r) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly rem = a, quo(a.cnv_);
  int db = b.deg();
  if (a.deg() >= db) quo.c_.assign(a.deg() - db + 1, Rat(a.cnv_));
  Rat ilc = b.lc().inv();
  bool unit = b.lc().is_one();
  while (!rem.is_zero() && rem.deg() >= db) {
    int s = rem.deg() - db;
    Rat c = unit ? rem.lc() : rem.lc() * ilc;
    quo.c_[s] = c;
    for (int i = 0; i <= db; ++i)
      if (!b.c_[i].is_zero()) rem.c_[i + s] += c * b.c_[i];
    rem.trim();
  }
  quo.trim();
  if (q) *q = quo;
  if (r) *r = rem;
}

Poly Poly::mod(const Poly& m) const {
  if (deg() < m.deg()) return *this;
  Poly r;
  divmod(*this, m, nullptr, &r);
  return r;
}

Poly Poly::div(const Poly& m) const {
  Poly q;
  divmod(*this, m, &q, nullptr);
  return q;
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x.mod(y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly Poly::inv_mod(const Poly& a, const Poly& m) {
  int cnv = m.cnv_;
  Poly r0 = m, r1 = a.mod(m);
  Poly s0(cnv), s1 = constant(Rat::one(cnv));
  while (!r1.is_zero()) {
    Poly q, r;
    divmod(r0, r1, &q, &r);
    Poly s2 = s0 + q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.deg() != 0) throw std::domain_error("not invertible modulo");
  return s0.scale(r0.lc().inv()).mod(m);
}

Poly Poly::derivative() const {
  Poly r(cnv_);
  if (c_.size() <= 1) return r;
  r.c_.assign(c_.size() - 1, Rat(cnv_));
  for (size_t i = 1; i < c_.size(); i += 2) r.c_[i - 1] = c_[i];
  r.trim();
  return r;
}

Poly Poly::partial(int var) const {
  Poly r(cnv_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(c.partial(var));
  r.trim();
  return r;
}

Rat Poly::eval(const Rat& a) const {
  Rat acc(cnv_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
  return acc;
}

Poly Poly::lift_coeffs() const {
  Poly r(cnv_ + 1);
  for (const auto& c : c_) r.c_.push_back(c.lift());
  return r;
}

Rat Poly::to_rat() const {
  int nv = cnv_ + 1;
  if (is_zero()) return Rat(nv);
  MPoly L = MPoly::constant(cnv_, true);
  for (const auto& c : c_) {
    if (c.is_zero() || c.den().is_one()) continue;
    MPoly g = MPoly::gcd(L, c.den());
    L = L * MPoly::exact_div(c.den(), g);
  }
  std::vector<MPoly> co;
  co.reserve(c_.size());
  for (const auto& c : c_) {
    if (c.is_zero()) co.push_back(MPoly(cnv_));
    else co.push_back(c.num() * MPoly::exact_div(L, c.den()));
  }
  return Rat(MPoly::from_main(nv, std::move(co)), L.lift());
}

void Poly::from_rat(const Rat& r, Poly* num, Poly* den) {
  int cnv = r.nvars() - 1;
  if (cnv < 0) throw std::invalid_argument("from_rat needs a variable");
  auto conv = [&](const MPoly& m) {
    Poly p(cnv);
    for (int j = 0; j <= m.deg_main(); ++j) p.c_.push_back(Rat(m.coeff_main(j)));
    p.trim();
    return p;
  };
  Poly n = conv(r.num()), d = conv(r.den());
  Rat l = d.lc();
  if (!l.is_one()) {
    Rat il = l.inv();
    n = n.scale(il);
    d = d.scale(il);
  }
  if (num) *num = n;
  if (den) *den = d;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::string x = names.back();
  std::vector<std::string> cn(names.begin(), names.end() - 1);
  std::string out;
  for (int i = deg(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string xs = i == 0 ? "" : (i == 1 ? x : x + "^" + std::to_string(i));
    if (c_[i].is_one()) {
      out += xs.empty() ? "1" : xs;
    } else {
      std::string cs = c_[i].str(cn);
      bool simple = cs.find_first_of("+/") == std::string::npos;
      if (!simple) cs = "(" + cs + ")";
      out += xs.empty() ? cs : cs + "*" + xs;
    }
  }
  return out;
}

Place Place::finite(const Poly& p, bool certified) {
  if (p.deg() < 1) throw std::invalid_argument("place polynomial must have positive degree");
  Place P;
  P.kind_ = PlaceKind::Finite;
  P.p_ = p.monic();
  P.level_ = p.cnv() + 1;
  P.d_ = p.deg();
  P.separable_ = !P.p_.derivative().is_zero();
  P.iprime_ = -1;
  if (!P.separable_) {
    for (int i = 0; i < p.cnv(); ++i) {
      if (!P.p_.partial(i).is_zero()) {
        P.iprime_ = i;
        break;
      }
    }
    if (P.iprime_ < 0) throw std::invalid_argument("polynomial is a square");
  }
  P.certified_ = certified;
  P.gcache_ = std::make_shared<GammaCache>();
  return P;
}

Place Place::infinity(int level) {
  Place P;
  P.kind_ = PlaceKind::Infinite;
  P.level_ = level;
  P.d_ = 1;
  P.p_ = Poly(level - 1);
  P.separable_ = true;
  P.gcache_ = std::make_shared<GammaCache>();
  return P;
}

Rat Place::pcoef(int i) const { return p_.coeff(d_ - i); }

std::vector<Rat> Place::gamma(int n) const {
  if (is_inf()) throw std::logic_error("gamma at infinity");
  std::lock_guard<std::mutex> lock(gcache_->mu);
  auto& g = gcache_->g;
  int cnv = level_ - 1;
  if (g.empty()) g.push_back(Rat::one(cnv));
  while (int(g.size()) <= n) {
    int i = int(g.size());
    Rat s(cnv);
    for (int k = 1; k <= std::min(i, d_); ++k) {
      Rat pk = pcoef(k);
      if (!pk.is_zero() && !g[i - k].is_zero()) s += g[i - k] * pk;
    }
    g.push_back(s);
  }
  return std::vector<Rat>(g.begin(), g.begin() + n + 1);
}

Rat Place::gamma_at(int i) const {
  if (i < 0) return Rat(level_ - 1);
  return gamma(i)[i];
}

Rat Place::to_rat() const {
  if (is_inf()) throw std::logic_error("no uniformizer polynomial at infinity");
  return p_.to_rat();
}

bool Place::operator<(const Place& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_;
  if (d_ != o.d_) return d_ > o.d_;
  return p_ < o.p_;
}

std::string Place::str(const std::vector<std::string>& names) const {
  if (is_inf()) return "inf";
  return p_.str(names);
}

namespace {

bool eval_at_point(const MPoly& m, uint32_t point) {
  bool v = false;
  m.for_each_term([&](const std::vector<int>& e) {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] && !((point >> i) & 1)) return;
    v = !v;
  });
  return v;
}

MPoly univariate_f2(const std::vector<bool>& c) {
  std::vector<MPoly> co;
  for (bool b : c) co.push_back(MPoly::constant(0, b));
  return MPoly::from_main(1, co);
}

MPoly powmod_x2k(const MPoly& f, int k) {
  MPoly h = MPoly::var(1, 0);
  for (int i = 0; i < k; ++i) {
    MPoly r;
    MPoly::divmod1(h.square(), f, nullptr, &r);
    h = r;
  }
  return h;
}

// Integral monic rescaling: returns coefficients ft[i] of y^i with
// ft(y) = L^d f(y / L).
std::vector<MPoly> integral_form(const Poly& f, MPoly* Lout) {
  int cnv = f.cnv(), d = f.deg();
  MPoly L = MPoly::constant(cnv, true);
  for (const auto& c : f.coeffs()) {
    if (c.is_zero() || c.den().is_one()) continue;
    MPoly g = MPoly::gcd(L, c.den());
    L = L * MPoly::exact_div(c.den(), g);
  }
  std::vector<MPoly> ft(d + 1, MPoly(cnv));
  MPoly Lp = MPoly::constant(cnv, true);
  for (int i = 0; i <= d; ++i) {
    Rat c = f.coeff(d - i);
    if (!c.is_zero()) ft[d - i] = (Rat(Lp) * c).num();
    Lp = Lp * L;
  }
  if (Lout) *Lout = L;
  return ft;
}

std::vector<MPoly> monomials_upto(int nv, int B) {
  std::vector<MPoly> out;
  std::vector<int> e(nv, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nv) {
      out.push_back(MPoly::monomial(e));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (B >= 0) rec(0, B);
  return out;
}

}  // namespace

bool irreducible_f2(const MPoly& f) {
  int d = f.deg_main();
  if (d <= 0) return false;
  if (d == 1) return true;
  MPoly x = MPoly::var(1, 0);
  MPoly h = x;
  for (int i = 1; i <= d / 2; ++i) {
    MPoly r;
    MPoly::divmod1(h.square(), f, nullptr, &r);
    h = r;
    if (!MPoly::gcd(h + x, f).is_one()) return false;
  }
  return true;
}

int find_factor(const Poly& f0, long budget, Poly* factor) {
  Poly f = f0.monic();
  int d = f.deg(), cnv = f.cnv();
  if (d <= 1) return 0;
  MPoly L;
  std::vector<MPoly> ft = integral_form(f, &L);
  auto back = [&](const std::vector<MPoly>& g) {
    int k = int(g.size()) - 1;
    std::vector<Rat> c(k + 1, Rat(cnv));
    Rat Li = Rat(L).inv(), s = Rat::one(cnv);
    for (int i = k; i >= 0; --i) {
      c[i] = Rat(g[i]) * s;
      s = s * Li;
    }
    return Poly(cnv, c);
  };
  if (cnv == 0) {
    std::vector<bool> bits;
    for (const auto& c : ft) bits.push_back(c.is_one());
    MPoly u = univariate_f2(bits);
    if (irreducible_f2(u)) return 0;
    for (int k = 1; k <= d / 2; ++k) {
      for (uint64_t m = 0; m < (uint64_t(1) << k); ++m) {
        std::vector<bool> gb(k + 1);
        for (int i = 0; i < k; ++i) gb[i] = (m >> i) & 1;
        gb[k] = true;
        MPoly g = univariate_f2(gb), r;
        MPoly::divmod1(u, g, nullptr, &r);
        if (r.is_zero()) {
          std::vector<MPoly> gc;
          for (bool b : gb) gc.push_back(MPoly::constant(0, b));
          if (factor) *factor = back(gc);
          return 1;
        }
      }
    }
    return 0;
  }
  if (cnv <= 4) {
    for (uint32_t pt = 0; pt < (1u << cnv); ++pt) {
      std::vector<bool> bits;
      for (const auto& c : ft) bits.push_back(eval_at_point(c, pt));
      if (irreducible_f2(univariate_f2(bits))) return 0;
    }
  }
  double mu = 0;
  for (int i = 1; i <= d; ++i) {
    const MPoly& c = ft[d - i];
    if (!c.is_zero()) mu = std::max(mu, double(c.total_degree()) / i);
  }
  bool complete = true;
  Poly ftp(cnv);
  {
    std::vector<Rat> c;
    for (const auto& m : ft) c.push_back(Rat(m));
    ftp = Poly(cnv, c);
  }
  for (int k = 1; k <= d / 2; ++k) {
    std::vector<std::vector<MPoly>> mons(k + 1);
    double bits = 0;
    for (int j = 1; j <= k; ++j) {
      mons[j] = monomials_upto(cnv, int(std::floor(j * mu + 1e-9)));
      bits += double(mons[j].size());
    }
    if (bits > std::log2(double(budget))) {
      complete = false;
      continue;
    }
    std::vector<MPoly> g(k + 1, MPoly(cnv));
    g[0] = MPoly::constant(cnv, true);
    const MPoly& fd = ft[0];
    std::vector<MPoly> lastc;
    for (uint64_t m = 0; m < (uint64_t(1) << mons[k].size()); ++m) {
      MPoly c(cnv);
      for (size_t i = 0; i < mons[k].size(); ++i)
        if ((m >> i) & 1) c += mons[k][i];
      if (c.is_zero() && !fd.is_zero()) continue;
      if (!fd.is_zero() && !MPoly::divide_exact(fd, c, nullptr)) continue;
      lastc.push_back(c);
    }
    std::function<bool(int)> rec = [&](int j) {
      if (j == k) {
        for (const auto& c : lastc) {
          g[k] = c;
          std::vector<Rat> gc;
          for (int i = k; i >= 0; --i) gc.push_back(Rat(g[i]));
          Poly gp(cnv, gc);
          if (ftp.mod(gp).is_zero()) {
            if (factor) {
              std::vector<MPoly> asc(g.rbegin(), g.rend());
              *factor = back(asc);
            }
            return true;
          }
        }
        return false;
      }
      for (uint64_t m = 0; m < (uint64_t(1) << mons[j].size()); ++m) {
        MPoly c(cnv);
        for (size_t i = 0; i < mons[j].size(); ++i)
          if ((m >> i) & 1) c += mons[j][i];
        g[j] = c;
        if (rec(j + 1)) return true;
      }
      return false;
    };
    if (rec(1)) return 1;
  }
  return complete ? 0 : -1;
}

Classification classify_place(const Poly& p, long budget) {
  Classification c;
  if (p.deg() < 1) throw std::invalid_argument("place polynomial must have positive degree");
  Poly f;
  int r = find_factor(p, budget, &f);
  if (r == 1) {
    c.status = PlaceStatus::Reducible;
    c.factor = f;
  } else if (r == 0) {
    c.status = PlaceStatus::Finite;
    c.place = Place::finite(p, true);
  } else {
    c.status = PlaceStatus::Inconclusive;
  }
  return c;
}

std::vector<Factor> factor_poly(const Poly& f0, const std::vector<Poly>& hints, long budget) {
  std::vector<Factor> out;
  Poly f = f0.monic();
  auto add = [&](const Poly& g, bool cert) {
    for (auto& fa : out) {
      if (fa.p == g) {
        fa.mult++;
        return;
      }
    }
    out.push_back({g, 1, cert});
  };
  for (const auto& h0 : hints) {
    if (h0.deg() < 1) continue;
    Poly h = h0.monic();
    while (f.deg() >= h.deg()) {
      Poly q, r;
      Poly::divmod(f, h, &q, &r);
      if (!r.is_zero()) break;
      add(h, true);
      f = q;
    }
  }
  std::vector<Poly> work;
  if (f.deg() >= 1) work.push_back(f);
  while (!work.empty()) {
    Poly g = work.back();
    work.pop_back();
    if (g.deg() == 1) {
      add(g, true);
      continue;
    }
    Poly h;
    int r = find_factor(g, budget, &h);
    if (r == 1) {
      h = h.monic();
      work.push_back(h);
      work.push_back(g.div(h));
    } else {
      add(g, r == 0);
    }
  }
  return out;
}

Rat trace_form(const Poly& a, const Place& P) {
  if (P.is_inf()) return a.coeff(0);
  return a.mod(P.p()).coeff(P.d() - 1);
}

Rat constant_part(const Poly& f) { return f.coeff(0); }

}  // namespace kmc
