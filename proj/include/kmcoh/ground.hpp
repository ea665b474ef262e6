#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kmcoh/mpoly.hpp"

namespace kmc {

// Element of F_2(v_0, ..., v_{nv-1}) kept as a reduced fraction.
class Rat {
 public:
  Rat() : num_(0), den_(MPoly::constant(0, true)) {}
  explicit Rat(int nv) : num_(nv), den_(MPoly::constant(nv, true)) {}
  Rat(const MPoly& num, const MPoly& den);
  explicit Rat(const MPoly& num) : num_(num), den_(MPoly::constant(num.nvars(), true)) {}

  static Rat constant(int nv, bool c) { return Rat(MPoly::constant(nv, c)); }
  static Rat one(int nv) { return constant(nv, true); }
  static Rat var(int nv, int i) { return Rat(MPoly::var(nv, i)); }

  int nvars() const { return num_.nvars(); }
  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_poly() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  Rat operator+(const Rat& o) const;
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat operator-(const Rat& o) const { return *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this + o; }
  Rat operator*(const Rat& o) const;
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat operator/(const Rat& o) const { return *this * o.inv(); }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }
  Rat inv() const;
  Rat square() const;
  Rat pow(int e) const;
  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;

  Rat lift() const { return Rat(num_.lift(), den_.lift()); }
  Rat lower() const { return Rat(num_.lower(), den_.lower()); }
  Rat partial(int var) const;
  // Replaces the top variable by r (same variable count).
  Rat substitute_top(const Rat& r) const;
  // Variable i replaced by images[i]; all images share one variable count.
  Rat substitute(const std::vector<Rat>& images) const;

  std::string str(const std::vector<std::string>& names) const;
  size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  MPoly num_, den_;
};

// a = sum_J v^J a_J^2 over subsets J of the variables.
std::map<uint32_t, Rat> frobenius_decompose(const Rat& a);
std::map<uint32_t, MPoly> frobenius_split(const MPoly& a);

MPoly monomial_mask(int nv, uint32_t mask);

// Default names: t1..t_{nv-1} and x for the top variable, or t1..t_nv.
std::vector<std::string> var_names(int nv, bool top_is_x);

}  // namespace kmc
