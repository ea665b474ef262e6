#include "kmcoh/ground.hpp"

#include <stdexcept>

namespace kmc {

Rat::Rat(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  if (num.nvars() != den.nvars()) throw std::invalid_argument("variable count mismatch");
  if (num.is_zero()) {
    num_ = num;
    den_ = MPoly::constant(num.nvars(), true);
    return;
  }
  if (den.is_one()) {
    num_ = num;
    den_ = den;
    return;
  }
  MPoly g = MPoly::gcd(num, den);
  if (g.is_one()) {
    num_ = num;
    den_ = den;
  } else {
    num_ = MPoly::exact_div(num, g);
    den_ = MPoly::exact_div(den, g);
  }
}

Rat Rat::operator+(const Rat& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    if (den_.is_one()) return Rat(num_ + o.num_);
    return Rat(num_ + o.num_, den_);
  }
  if (den_.is_one()) return Rat(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return Rat(num_ + o.num_ * den_, den_);
  MPoly g = MPoly::gcd(den_, o.den_);
  if (g.is_one()) {
    Rat r;
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
    if (r.num_.is_zero()) return Rat(nvars());
    return r;
  }
  MPoly a = MPoly::exact_div(den_, g), b = MPoly::exact_div(o.den_, g);
  MPoly n = num_ * b + o.num_ * a;
  if (n.is_zero()) return Rat(nvars());
  MPoly g2 = MPoly::gcd(n, g);
  Rat r;
  if (g2.is_one()) {
    r.num_ = n;
    r.den_ = a * o.den_;
  } else {
    r.num_ = MPoly::exact_div(n, g2);
    r.den_ = a * MPoly::exact_div(o.den_, g2);
  }
  return r;
}

Rat Rat::operator*(const Rat& o) const {
  if (is_zero() || o.is_zero()) return Rat(nvars());
  if (den_.is_one() && o.den_.is_one()) return Rat(num_ * o.num_);
  MPoly g1 = MPoly::gcd(num_, o.den_), g2 = MPoly::gcd(o.num_, den_);
  MPoly a = g1.is_one() ? num_ : MPoly::exact_div(num_, g1);
  MPoly od = g1.is_one() ? o.den_ : MPoly::exact_div(o.den_, g1);
  MPoly b = g2.is_one() ? o.num_ : MPoly::exact_div(o.num_, g2);
  MPoly d = g2.is_one() ? den_ : MPoly::exact_div(den_, g2);
  Rat r;
  r.num_ = a * b;
  r.den_ = d * od;
  return r;
}

Rat Rat::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Rat r;
  r.num_ = den_;
  r.den_ = num_;
  return r;
}

Rat Rat::square() const {
  Rat r;
  r.num_ = num_.square();
  r.den_ = den_.square();
  return r;
}

Rat Rat::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  Rat r;
  r.num_ = num_.pow(unsigned(e));
  r.den_ = den_.pow(unsigned(e));
  return r;
}

bool Rat::operator<(const Rat& o) const {
  if (num_ < o.num_) return true;
  if (o.num_ < num_) return false;
  return den_ < o.den_;
}

Rat Rat::partial(int var) const {
  MPoly dn = num_.partial(var), dd = den_.partial(var);
  if (dd.is_zero()) return Rat(dn, den_);
  return Rat(dn * den_ + num_ * dd, den_.square());
}

Rat Rat::substitute_top(const Rat& r) const {
  int nv = nvars();
  auto horner = [&](const MPoly& p) {
    Rat acc(nv);
    for (int j = p.deg_main(); j >= 0; --j) acc = acc * r + Rat(p.coeff_main(j).lift());
    return acc;
  };
  if (nv == 0) return *this;
  return horner(num_) / horner(den_);
}

namespace {

Rat eval_mpoly(const MPoly& p, const std::vector<Rat>& images, int tl) {
  int nv = p.nvars();
  if (nv == 0) return Rat::constant(tl, !p.is_zero());
  Rat acc(tl);
  for (int j = p.deg_main(); j >= 0; --j) {
    acc = acc * images[nv - 1];
    MPoly c = p.coeff_main(j);
    if (!c.is_zero()) acc += eval_mpoly(c, images, tl);
  }
  return acc;
}

}  // namespace

Rat Rat::substitute(const std::vector<Rat>& images) const {
  if (int(images.size()) != nvars()) throw std::invalid_argument("substitute: wrong number of images");
  int tl = images.empty() ? 0 : images[0].nvars();
  return eval_mpoly(num_, images, tl) / eval_mpoly(den_, images, tl);
}

std::string Rat::str(const std::vector<std::string>& names) const {
  std::string n = num_.str(names);
  if (den_.is_one()) return n;
  return "(" + n + ")/(" + den_.str(names) + ")";
}

MPoly monomial_mask(int nv, uint32_t mask) {
  std::vector<int> e(nv, 0);
  for (int i = 0; i < nv; ++i) e[i] = (mask >> i) & 1;
  return MPoly::monomial(e);
}

std::map<uint32_t, MPoly> frobenius_split(const MPoly& a) {
  std::map<uint32_t, MPoly> out;
  int nv = a.nvars();
  a.for_each_term([&](const std::vector<int>& e) {
    uint32_t mask = 0;
    std::vector<int> h(nv);
    for (int i = 0; i < nv; ++i) {
      if (e[i] & 1) mask |= 1u << i;
      h[i] = e[i] >> 1;
    }
    auto it = out.find(mask);
    if (it == out.end()) it = out.emplace(mask, MPoly(nv)).first;
    it->second += MPoly::monomial(h);
  });
  return out;
}

std::map<uint32_t, Rat> frobenius_decompose(const Rat& a) {
  std::map<uint32_t, Rat> out;
  if (a.is_zero()) return out;
  MPoly n = a.den().is_one() ? a.num() : a.num() * a.den();
  for (auto& [mask, m] : frobenius_split(n)) out.emplace(mask, Rat(m, a.den()));
  return out;
}

std::vector<std::string> var_names(int nv, bool top_is_x) {
  std::vector<std::string> names;
  for (int i = 0; i < nv; ++i) names.push_back("t" + std::to_string(i + 1));
  if (top_is_x && nv > 0) names.back() = "x";
  return names;
}

}  // namespace kmc
