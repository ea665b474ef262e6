#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kmc {

// Polynomial over F_2 in nv variables, stored recursively on the last
// variable. One-variable polynomials are packed bit vectors.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(int nv) : nv_(nv) {}

  static MPoly constant(int nv, bool c);
  static MPoly var(int nv, int i);
  static MPoly monomial(const std::vector<int>& exps);
  static MPoly from_main(int nv, std::vector<MPoly> coeffs);

  int nvars() const { return nv_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_constant() const;

  int deg_main() const;
  int deg(int var) const;
  int total_degree() const;
  MPoly coeff_main(int j) const;
  MPoly lc_main() const { return coeff_main(deg_main()); }

  MPoly operator+(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o);
  MPoly operator-(const MPoly& o) const { return *this + o; }
  MPoly operator*(const MPoly& o) const;
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }
  bool operator<(const MPoly& o) const;

  MPoly shift_main(int k) const;
  MPoly square() const;
  MPoly pow(unsigned e) const;
  // Adds one new variable at the top; the value does not depend on it.
  MPoly lift() const;
  // Drops the top variable; requires deg_main() <= 0.
  MPoly lower() const;

  MPoly partial(int var) const;
  void for_each_term(const std::function<void(const std::vector<int>&)>& f) const;
  std::vector<std::vector<int>> terms() const;

  static bool divide_exact(const MPoly& a, const MPoly& b, MPoly* q);
  static MPoly exact_div(const MPoly& a, const MPoly& b);
  static MPoly gcd(const MPoly& a, const MPoly& b);
  // Univariate only.
  static void divmod1(const MPoly& a, const MPoly& b, MPoly* q, MPoly* r);

  std::string str(const std::vector<std::string>& names) const;
  size_t hash() const;

 private:
  void trim();
  void walk(std::vector<int>& e, const std::function<void(const std::vector<int>&)>& f) const;
  bool bit(int i) const;
  MPoly content() const;
  MPoly prem(const MPoly& b) const;

  int nv_ = 0;
  bool c_ = false;
  std::vector<uint64_t> w_;
  std::vector<MPoly> co_;
};

}  // namespace kmc
