#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kmcoh/ground.hpp"

namespace kmc {

// Univariate polynomial in x over F_2(v_0..v_{cnv-1}).
class Poly {
 public:
  Poly() = default;
  explicit Poly(int cnv) : cnv_(cnv) {}
  Poly(int cnv, std::vector<Rat> c);

  static Poly x(int cnv) { return monomial(Rat::one(cnv), 1); }
  static Poly constant(const Rat& c) { return Poly(c.nvars(), {c}); }
  static Poly monomial(const Rat& c, int k);

  int cnv() const { return cnv_; }
  int deg() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  Rat coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : Rat(cnv_); }
  const Rat& lc() const { return c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly operator-(const Poly& o) const { return *this + o; }
  Poly operator*(const Poly& o) const;
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scale(const Rat& a) const;
  Poly square() const;
  Poly shift(int k) const;
  Poly monic() const;
  bool operator==(const Poly& o) const { return cnv_ == o.cnv_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const;

  static void divmod(const Poly& a, const Poly& b, Poly* q, Poly* r);
  Poly mod(const Poly& m) const;
  Poly div(const Poly& m) const;
  static Poly gcd(const Poly& a, const Poly& b);
  // Inverse of a modulo m; throws if not invertible.
  static Poly inv_mod(const Poly& a, const Poly& m);
  Poly mulmod(const Poly& o, const Poly& m) const { return (*this * o).mod(m); }

  Poly derivative() const;
  Poly partial(int var) const;
  Rat eval(const Rat& a) const;
  Poly lift_coeffs() const;

  // As an element of F_2(v_0..v_{cnv-1}, x).
  Rat to_rat() const;
  // Numerator and denominator of r as polynomials in its top variable, denominator monic.
  static void from_rat(const Rat& r, Poly* num, Poly* den);

  std::string str(const std::vector<std::string>& names) const;

 private:
  void trim();
  int cnv_ = 0;
  std::vector<Rat> c_;
};

enum class PlaceKind { Finite, Infinite };

// A place of F = F_2(v_0..v_{level-2})(x) trivial on the ground field.
class Place {
 public:
  Place() = default;
  static Place finite(const Poly& p, bool certified = true);
  static Place infinity(int level);

  PlaceKind kind() const { return kind_; }
  bool is_inf() const { return kind_ == PlaceKind::Infinite; }
  int level() const { return level_; }
  int d() const { return d_; }
  const Poly& p() const { return p_; }
  bool separable() const { return separable_; }
  int iprime() const { return iprime_; }
  bool certified() const { return certified_; }
  // p_i: coefficient of x^{d-i}, p_0 = 1.
  Rat pcoef(int i) const;
  // gamma_0..gamma_n.
  std::vector<Rat> gamma(int n) const;
  Rat gamma_at(int i) const;
  Rat to_rat() const;
  bool operator==(const Place& o) const { return kind_ == o.kind_ && level_ == o.level_ && p_ == o.p_; }
  bool operator<(const Place& o) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  PlaceKind kind_ = PlaceKind::Infinite;
  int level_ = 1;
  int d_ = 1;
  Poly p_;
  bool separable_ = true;
  int iprime_ = -1;
  bool certified_ = true;
  struct GammaCache {
    std::mutex mu;
    std::vector<Rat> g;
  };
  std::shared_ptr<GammaCache> gcache_;
};

enum class PlaceStatus { Finite, Reducible, Inconclusive };

struct Classification {
  PlaceStatus status = PlaceStatus::Inconclusive;
  Place place;
  Poly factor;
};

// Irreducibility of a monic polynomial by specialisation certificates and a
// bounded factor search; budget caps the number of candidate factors.
Classification classify_place(const Poly& p, long budget = 1L << 18);

// 1: factor found, 0: certified irreducible, -1: undecided.
int find_factor(const Poly& f, long budget, Poly* factor);

struct Factor {
  Poly p;
  int mult = 1;
  bool certified = true;
};

// Monic irreducible factorisation; hints are tried first.
std::vector<Factor> factor_poly(const Poly& f, const std::vector<Poly>& hints, long budget = 1L << 18);

bool irreducible_f2(const MPoly& f);

// t_p(a) = coefficient of x^{d-1} in a mod p.
Rat trace_form(const Poly& a, const Place& P);
Rat constant_part(const Poly& f);

}  // namespace kmc
