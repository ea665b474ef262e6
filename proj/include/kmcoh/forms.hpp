#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kmcoh/ground.hpp"
#include "kmcoh/poly.hpp"

namespace kmc {

using Mask = uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }
inline int top_index(Mask m) { return m ? 31 - __builtin_clz(m) : -1; }
inline bool has(Mask m, int i) { return (m >> i) & 1u; }

// sum_S c_S dlog b_S; in the global basis b_i is the i-th variable.
class LogForm {
 public:
  LogForm() = default;
  explicit LogForm(int nv) : nv_(nv) {}
  static LogForm term(const Rat& c, Mask S);

  int nv() const { return nv_; }
  const std::map<Mask, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Rat coeff(Mask S) const;
  void add(Mask S, const Rat& c);
  // -1 for the zero form, -2 for mixed degrees.
  int degree() const;

  LogForm operator+(const LogForm& o) const;
  LogForm& operator+=(const LogForm& o);
  LogForm operator-(const LogForm& o) const { return *this + o; }
  LogForm scale(const Rat& a) const;
  bool operator==(const LogForm& o) const { return nv_ == o.nv_ && t_ == o.t_; }
  bool operator!=(const LogForm& o) const { return !(*this == o); }

  LogForm lift() const;
  LogForm lower() const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  int nv_ = 0;
  std::map<Mask, Rat> t_;
};

LogForm wedge(const LogForm& a, const LogForm& b);
LogForm wedge_dlog(const LogForm& a, int symbol);
// Exterior derivative in the global basis.
LogForm dform(const LogForm& a);
// c dlog b_S -> (c^2 + c) dlog b_S.
LogForm wp(const LogForm& a);
LogForm dlog_expand(const Rat& a);
// xi with d(xi) = a; throws std::domain_error when a is not exact.
LogForm integrate_exact(const LogForm& a);
LogForm dlog_product(const std::vector<Rat>& fs);

// Form over a residue field with coefficients reduced modulo p.
using ResForm = std::map<Mask, Poly>;
void res_add(ResForm& f, Mask S, const Poly& c, const Poly& mod);
bool res_is_zero(const ResForm& f);

}  // namespace kmc
