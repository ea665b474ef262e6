#include "kmcoh/forms.hpp"

#include <stdexcept>

namespace kmc {

LogForm LogForm::term(const Rat& c, Mask S) {
  LogForm f(c.nvars());
  f.add(S, c);
  return f;
}

Rat LogForm::coeff(Mask S) const {
  auto it = t_.find(S);
  return it == t_.end() ? Rat(nv_) : it->second;
}

void LogForm::add(Mask S, const Rat& c) {
  if (c.nvars() != nv_) throw std::invalid_argument("form coefficient level mismatch");
  if (c.is_zero()) return;
  auto it = t_.find(S);
  if (it == t_.end()) {
    t_.emplace(S, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

int LogForm::degree() const {
  int d = -1;
  for (const auto& [S, c] : t_) {
    int k = popcount(S);
    if (d == -1) d = k;
    else if (d != k) return -2;
  }
  return d;
}

LogForm LogForm::operator+(const LogForm& o) const {
  LogForm r = *this;
  r += o;
  return r;
}

LogForm& LogForm::operator+=(const LogForm& o) {
  if (o.nv_ != nv_ && !o.is_zero()) throw std::invalid_argument("form level mismatch");
  for (const auto& [S, c] : o.t_) add(S, c);
  return *this;
}

LogForm LogForm::scale(const Rat& a) const {
  LogForm r(nv_);
  if (a.is_zero()) return r;
  for (const auto& [S, c] : t_) r.t_.emplace(S, c * a);
  return r;
}

LogForm LogForm::lift() const {
  LogForm r(nv_ + 1);
  for (const auto& [S, c] : t_) r.t_.emplace(S, c.lift());
  return r;
}

LogForm LogForm::lower() const {
  LogForm r(nv_ - 1);
  for (const auto& [S, c] : t_) r.t_.emplace(S, c.lower());
  return r;
}

std::string LogForm::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [S, c] : t_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str(names) + ")";
    for (int i = 0; i < 32; ++i)
      if (has(S, i)) out += " dlog(" + (i < int(names.size()) ? names[i] : "p") + ")";
  }
  return out;
}

LogForm wedge(const LogForm& a, const LogForm& b) {
  LogForm r(a.nv());
  for (const auto& [S, c] : a.terms())
    for (const auto& [T, e] : b.terms())
      if (!(S & T)) r.add(S | T, c * e);
  return r;
}

LogForm wedge_dlog(const LogForm& a, int symbol) {
  LogForm r(a.nv());
  for (const auto& [S, c] : a.terms())
    if (!has(S, symbol)) r.add(S | (1u << symbol), c);
  return r;
}

LogForm dform(const LogForm& a) {
  int nv = a.nv();
  LogForm r(nv);
  for (const auto& [S, c] : a.terms()) {
    for (int i = 0; i < nv; ++i) {
      if (has(S, i)) continue;
      Rat di = c.partial(i);
      if (di.is_zero()) continue;
      r.add(S | (1u << i), di * Rat::var(nv, i));
    }
  }
  return r;
}

LogForm wp(const LogForm& a) {
  LogForm r(a.nv());
  for (const auto& [S, c] : a.terms()) r.add(S, c.square() + c);
  return r;
}

LogForm dlog_expand(const Rat& a) {
  if (a.is_zero()) throw std::domain_error("dlog of zero");
  int nv = a.nvars();
  LogForm r(nv);
  Rat ia = a.inv();
  for (int i = 0; i < nv; ++i) {
    Rat di = a.partial(i);
    if (!di.is_zero()) r.add(1u << i, di * Rat::var(nv, i) * ia);
  }
  return r;
}

LogForm integrate_exact(const LogForm& a) {
  int nv = a.nv();
  LogForm xi(nv);
  for (const auto& [T, c] : a.terms()) {
    for (const auto& [J, cj] : frobenius_decompose(c)) {
      if (J == 0) throw std::domain_error("form is not exact");
      int j = top_index(J);
      if (has(T, j)) xi.add(T & ~(1u << j), Rat(monomial_mask(nv, J)) * cj.square());
    }
  }
  if (dform(xi) != a) throw std::domain_error("form is not exact");
  return xi;
}

LogForm dlog_product(const std::vector<Rat>& fs) {
  if (fs.empty()) throw std::invalid_argument("empty dlog product");
  LogForm r = LogForm::term(Rat::one(fs[0].nvars()), 0);
  for (const auto& f : fs) r = wedge(r, dlog_expand(f));
  return r;
}

void res_add(ResForm& f, Mask S, const Poly& c, const Poly& mod) {
  Poly v = mod.is_zero() ? c : c.mod(mod);
  if (v.is_zero()) return;
  auto it = f.find(S);
  if (it == f.end()) {
    f.emplace(S, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) f.erase(it);
}

bool res_is_zero(const ResForm& f) { return f.empty(); }

}  // namespace kmc
