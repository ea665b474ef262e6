#include "kmcoh/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace kmc {

namespace {

int top_bit(uint64_t w) { return 63 - __builtin_clzll(w); }

using Words = std::vector<uint64_t>;

void trim_words(Words& w) {
  while (!w.empty() && w.back() == 0) w.pop_back();
}

int deg_words(const Words& w) {
  if (w.empty()) return -1;
  return 64 * (int(w.size()) - 1) + top_bit(w.back());
}

void xor_shifted(Words& acc, const Words& b, int shift) {
  if (b.empty()) return;
  int ws = shift / 64, bs = shift % 64;
  size_t need = b.size() + ws + 1;
  if (acc.size() < need) acc.resize(need, 0);
  for (size_t i = 0; i < b.size(); ++i) {
    acc[i + ws] ^= b[i] << bs;
    if (bs) acc[i + ws + 1] ^= b[i] >> (64 - bs);
  }
}

Words mul_words(const Words& a, const Words& b) {
  if (a.empty() || b.empty()) return {};
  const Words& s = a.size() < b.size() ? a : b;
  const Words& l = a.size() < b.size() ? b : a;
  Words r(s.size() + l.size() + 1, 0);
  for (size_t i = 0; i < s.size(); ++i) {
    uint64_t x = s[i];
    while (x) {
      int k = __builtin_ctzll(x);
      x &= x - 1;
      xor_shifted(r, l, int(64 * i) + k);
    }
  }
  trim_words(r);
  return r;
}

Words sqr_words(const Words& a) {
  Words r(2 * a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < 64; ++k) {
      if ((a[i] >> k) & 1) {
        int pos = 2 * (64 * int(i) + k);
        r[pos / 64] |= uint64_t(1) << (pos % 64);
      }
    }
  }
  trim_words(r);
  return r;
}

void divmod_words(const Words& a, const Words& b, Words* q, Words* r) {
  int db = deg_words(b);
  if (db < 0) throw std::domain_error("division by zero polynomial");
  Words rem = a;
  int dr = deg_words(rem);
  Words quo;
  if (dr >= db) quo.assign((dr - db) / 64 + 1, 0);
  while (dr >= db) {
    int s = dr - db;
    quo[s / 64] ^= uint64_t(1) << (s % 64);
    xor_shifted(rem, b, s);
    trim_words(rem);
    dr = deg_words(rem);
  }
  trim_words(quo);
  if (q) *q = quo;
  if (r) *r = rem;
}

}  // namespace

MPoly MPoly::constant(int nv, bool c) {
  MPoly p(nv);
  if (!c) return p;
  if (nv == 0) p.c_ = true;
  else if (nv == 1) p.w_ = {1};
  else p.co_ = {constant(nv - 1, true)};
  return p;
}

MPoly MPoly::var(int nv, int i) {
  if (i < 0 || i >= nv) throw std::out_of_range("variable index");
  std::vector<int> e(nv, 0);
  e[i] = 1;
  return monomial(e);
}

MPoly MPoly::monomial(const std::vector<int>& e) {
  int nv = int(e.size());
  MPoly p(nv);
  if (nv == 0) {
    p.c_ = true;
  } else if (nv == 1) {
    p.w_.assign(e[0] / 64 + 1, 0);
    p.w_[e[0] / 64] = uint64_t(1) << (e[0] % 64);
  } else {
    std::vector<int> rest(e.begin(), e.end() - 1);
    p.co_.assign(e.back() + 1, MPoly(nv - 1));
    p.co_[e.back()] = monomial(rest);
  }
  return p;
}

MPoly MPoly::from_main(int nv, std::vector<MPoly> coeffs) {
  MPoly p(nv);
  if (nv == 0) throw std::invalid_argument("from_main needs a variable");
  if (nv == 1) {
    for (size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j].c_) {
        if (p.w_.size() <= j / 64) p.w_.resize(j / 64 + 1, 0);
        p.w_[j / 64] |= uint64_t(1) << (j % 64);
      }
    }
  } else {
    p.co_ = std::move(coeffs);
  }
  p.trim();
  return p;
}

void MPoly::trim() {
  if (nv_ == 1) trim_words(w_);
  else if (nv_ >= 2)
    while (!co_.empty() && co_.back().is_zero()) co_.pop_back();
}

bool MPoly::is_zero() const {
  if (nv_ == 0) return !c_;
  if (nv_ == 1) return w_.empty();
  return co_.empty();
}

bool MPoly::is_constant() const { return deg_main() <= 0 && (nv_ < 2 || co_.empty() || co_[0].is_constant()); }

bool MPoly::is_one() const {
  if (nv_ == 0) return c_;
  if (nv_ == 1) return w_.size() == 1 && w_[0] == 1;
  return co_.size() == 1 && co_[0].is_one();
}

int MPoly::deg_main() const {
  if (nv_ == 0) return c_ ? 0 : -1;
  if (nv_ == 1) return deg_words(w_);
  return int(co_.size()) - 1;
}

int MPoly::deg(int var) const {
  if (is_zero()) return -1;
  if (var == nv_ - 1) return deg_main();
  if (nv_ == 0) return 0;
  int m = -1;
  for (const auto& c : co_) m = std::max(m, c.deg(var));
  return m;
}

int MPoly::total_degree() const {
  if (is_zero()) return -1;
  if (nv_ == 0) return 0;
  if (nv_ == 1) return deg_main();
  int m = -1;
  for (size_t j = 0; j < co_.size(); ++j)
    if (!co_[j].is_zero()) m = std::max(m, int(j) + co_[j].total_degree());
  return m;
}

bool MPoly::bit(int i) const {
  if (i < 0 || size_t(i / 64) >= w_.size()) return false;
  return (w_[i / 64] >> (i % 64)) & 1;
}

MPoly MPoly::coeff_main(int j) const {
  if (nv_ == 0) throw std::logic_error("coeff_main on constant ring");
  MPoly r(nv_ - 1);
  if (nv_ == 1) r.c_ = bit(j);
  else if (j >= 0 && size_t(j) < co_.size()) r = co_[j];
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  r += o;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (nv_ != o.nv_) throw std::invalid_argument("variable count mismatch");
  if (nv_ == 0) {
    c_ ^= o.c_;
  } else if (nv_ == 1) {
    if (w_.size() < o.w_.size()) w_.resize(o.w_.size(), 0);
    for (size_t i = 0; i < o.w_.size(); ++i) w_[i] ^= o.w_[i];
    trim_words(w_);
  } else {
    if (co_.size() < o.co_.size()) co_.resize(o.co_.size(), MPoly(nv_ - 1));
    for (size_t i = 0; i < o.co_.size(); ++i) co_[i] += o.co_[i];
    trim();
  }
  return *this;
}

MPoly MPoly::operator*(const MPoly& o) const {
  if (nv_ != o.nv_) throw std::invalid_argument("variable count mismatch");
  MPoly r(nv_);
  if (is_zero() || o.is_zero()) return r;
  if (nv_ == 0) {
    r.c_ = true;
  } else if (nv_ == 1) {
    r.w_ = mul_words(w_, o.w_);
  } else {
    r.co_.assign(co_.size() + o.co_.size() - 1, MPoly(nv_ - 1));
    for (size_t i = 0; i < co_.size(); ++i) {
      if (co_[i].is_zero()) continue;
      for (size_t j = 0; j < o.co_.size(); ++j) {
        if (o.co_[j].is_zero()) continue;
        r.co_[i + j] += co_[i] * o.co_[j];
      }
    }
    r.trim();
  }
  return r;
}

MPoly MPoly::square() const {
  if (nv_ == 1) {
    MPoly r(1);
    r.w_ = sqr_words(w_);
    return r;
  }
  if (nv_ == 0) return *this;
  MPoly r(nv_);
  if (co_.empty()) return r;
  r.co_.assign(2 * co_.size() - 1, MPoly(nv_ - 1));
  for (size_t i = 0; i < co_.size(); ++i) r.co_[2 * i] = co_[i].square();
  r.trim();
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(nv_, true), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b.square();
  }
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  if (nv_ != o.nv_) return false;
  if (nv_ == 0) return c_ == o.c_;
  if (nv_ == 1) return w_ == o.w_;
  return co_ == o.co_;
}

bool MPoly::operator<(const MPoly& o) const {
  if (nv_ != o.nv_) return nv_ < o.nv_;
  if (nv_ == 0) return c_ < o.c_;
  if (nv_ == 1) {
    if (w_.size() != o.w_.size()) return w_.size() < o.w_.size();
    for (size_t i = w_.size(); i-- > 0;)
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
  }
  if (co_.size() != o.co_.size()) return co_.size() < o.co_.size();
  for (size_t i = co_.size(); i-- > 0;) {
    if (co_[i] < o.co_[i]) return true;
    if (o.co_[i] < co_[i]) return false;
  }
  return false;
}

MPoly MPoly::shift_main(int k) const {
  MPoly r(nv_);
  if (is_zero() || k == 0) return *this;
  if (nv_ == 1) {
    xor_shifted(r.w_, w_, k);
    trim_words(r.w_);
  } else {
    r.co_.assign(k, MPoly(nv_ - 1));
    r.co_.insert(r.co_.end(), co_.begin(), co_.end());
  }
  return r;
}

MPoly MPoly::lift() const {
  MPoly r(nv_ + 1);
  if (is_zero()) return r;
  if (nv_ == 0) r.w_ = {1};
  else r.co_ = {*this};
  return r;
}

MPoly MPoly::lower() const {
  if (deg_main() > 0) throw std::logic_error("lower: depends on top variable");
  return coeff_main(0);
}

MPoly MPoly::partial(int var) const {
  MPoly r(nv_);
  if (nv_ == 0 || is_zero()) return r;
  if (var == nv_ - 1) {
    if (nv_ == 1) {
      for (int i = 1; i <= deg_main(); i += 2) {
        if (bit(i)) {
          if (r.w_.size() <= size_t((i - 1) / 64)) r.w_.resize((i - 1) / 64 + 1, 0);
          r.w_[(i - 1) / 64] |= uint64_t(1) << ((i - 1) % 64);
        }
      }
    } else {
      r.co_.assign(co_.size(), MPoly(nv_ - 1));
      for (size_t i = 1; i < co_.size(); i += 2) r.co_[i - 1] = co_[i];
    }
  } else {
    r.co_.reserve(co_.size());
    for (const auto& c : co_) r.co_.push_back(c.partial(var));
  }
  r.trim();
  return r;
}

void MPoly::walk(std::vector<int>& e, const std::function<void(const std::vector<int>&)>& f) const {
  if (nv_ == 0) {
    if (c_) f(e);
    return;
  }
  if (nv_ == 1) {
    for (int i = 0; i <= deg_main(); ++i) {
      if (bit(i)) {
        e[0] = i;
        f(e);
      }
    }
    e[0] = 0;
    return;
  }
  for (size_t j = 0; j < co_.size(); ++j) {
    e[nv_ - 1] = int(j);
    co_[j].walk(e, f);
  }
  e[nv_ - 1] = 0;
}

void MPoly::for_each_term(const std::function<void(const std::vector<int>&)>& f) const {
  std::vector<int> e(nv_, 0);
  walk(e, f);
}

std::vector<std::vector<int>> MPoly::terms() const {
  std::vector<std::vector<int>> out;
  for_each_term([&](const std::vector<int>& e) { out.push_back(e); });
  return out;
}

void MPoly::divmod1(const MPoly& a, const MPoly& b, MPoly* q, MPoly* r) {
  if (a.nv_ != 1 || b.nv_ != 1) throw std::invalid_argument("divmod1 is univariate");
  MPoly qq(1), rr(1);
  divmod_words(a.w_, b.w_, &qq.w_, &rr.w_);
  if (q) *q = qq;
  if (r) *r = rr;
}

bool MPoly::divide_exact(const MPoly& a, const MPoly& b, MPoly* q) {
  if (a.nv_ != b.nv_) throw std::invalid_argument("variable count mismatch");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  int nv = a.nv_;
  if (a.is_zero()) {
    if (q) *q = MPoly(nv);
    return true;
  }
  if (nv == 0) {
    if (q) *q = a;
    return true;
  }
  if (nv == 1) {
    MPoly qq(1), rr(1);
    divmod_words(a.w_, b.w_, &qq.w_, &rr.w_);
    if (!rr.is_zero()) return false;
    if (q) *q = qq;
    return true;
  }
  int db = b.deg_main();
  if (a.deg_main() < db) return false;
  if (a.total_degree() < b.total_degree()) return false;
  MPoly rem = a;
  MPoly quo(nv);
  quo.co_.assign(a.deg_main() - db + 1, MPoly(nv - 1));
  const MPoly& lb = b.co_.back();
  while (!rem.is_zero()) {
    int dr = rem.deg_main();
    if (dr < db) return false;
    MPoly c(nv - 1);
    if (!divide_exact(rem.co_.back(), lb, &c)) return false;
    quo.co_[dr - db] = c;
    for (int i = 0; i <= db; ++i) {
      if (b.co_[i].is_zero()) continue;
      rem.co_[i + dr - db] += c * b.co_[i];
    }
    rem.trim();
  }
  quo.trim();
  if (q) *q = quo;
  return true;
}

MPoly MPoly::exact_div(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!divide_exact(a, b, &q)) throw std::logic_error("inexact polynomial division");
  return q;
}

MPoly MPoly::content() const {
  MPoly g(nv_ - 1);
  for (const auto& c : co_) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

MPoly MPoly::prem(const MPoly& b) const {
  MPoly r = *this;
  int db = b.deg_main();
  const MPoly& lb = b.co_.back();
  while (!r.is_zero() && r.deg_main() >= db) {
    int dr = r.deg_main();
    MPoly lr = r.co_.back();
    for (auto& c : r.co_) c = c * lb;
    for (int i = 0; i <= db; ++i) {
      if (b.co_[i].is_zero()) continue;
      r.co_[i + dr - db] += lr * b.co_[i];
    }
    r.trim();
  }
  return r;
}

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  if (a.nv_ != b.nv_) throw std::invalid_argument("variable count mismatch");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int nv = a.nv_;
  if (nv == 0) return constant(0, true);
  if (nv == 1) {
    Words x = a.w_, y = b.w_;
    while (!y.empty()) {
      Words r;
      divmod_words(x, y, nullptr, &r);
      x = std::move(y);
      y = std::move(r);
    }
    MPoly g(1);
    g.w_ = x;
    return g;
  }
  if (a.is_one() || b.is_one()) return constant(nv, true);
  MPoly ca = a.content(), cb = b.content();
  MPoly gc = gcd(ca, cb);
  auto pp = [&](const MPoly& p, const MPoly& c) {
    if (c.is_one()) return p;
    MPoly r(nv);
    r.co_.reserve(p.co_.size());
    for (const auto& x : p.co_) r.co_.push_back(exact_div(x, c));
    return r;
  };
  MPoly x = pp(a, ca), y = pp(b, cb);
  if (x.deg_main() < y.deg_main()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.deg_main() == 0) {
      x = constant(nv, true);
      break;
    }
    MPoly r = x.prem(y);
    x = std::move(y);
    y = r.is_zero() ? r : pp(r, r.content());
  }
  MPoly g = pp(x, x.content());
  if (gc.is_one()) return g;
  for (auto& c : g.co_) c = c * gc;
  return g;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::sort(ts.begin(), ts.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    int da = 0, db = 0;
    for (int v : a) da += v;
    for (int v : b) db += v;
    if (da != db) return da > db;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  });
  std::string out;
  for (const auto& e : ts) {
    if (!out.empty()) out += "+";
    std::string m;
    for (size_t i = e.size(); i-- > 0;) {
      if (!e[i]) continue;
      if (!m.empty()) m += "*";
      m += names[i];
      if (e[i] > 1) m += "^" + std::to_string(e[i]);
    }
    out += m.empty() ? "1" : m;
  }
  return out;
}

size_t MPoly::hash() const {
  size_t h = std::hash<int>()(nv_) * 1000003u;
  if (nv_ == 0) return h ^ size_t(c_);
  if (nv_ == 1) {
    for (auto w : w_) h = h * 1099511628211ull ^ std::hash<uint64_t>()(w);
    return h;
  }
  for (const auto& c : co_) h = h * 1099511628211ull ^ c.hash();
  return h;
}

}  // namespace kmc
