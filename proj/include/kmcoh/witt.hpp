#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmcoh/cohomology.hpp"
#include "kmcoh/forms.hpp"
#include "kmcoh/poly.hpp"

namespace kmc {

// <<a_1,...,a_m; b]] = <<a_1,...,a_m>>_b (x) [1,b].
struct Pfister {
  std::vector<Rat> slots;
  Rat b;
};

// [a,b] = aX^2 + XY + bY^2.
struct QBlock {
  Rat a, b;
};

// Orthogonal sum of binary blocks over F_2(t_1..t_nv).
class QuadForm {
 public:
  QuadForm() = default;
  explicit QuadForm(int nv) : nv_(nv) {}
  static QuadForm block(const Rat& a, const Rat& b);
  static QuadForm pfister(const std::vector<Rat>& slots, const Rat& b);

  int nv() const { return nv_; }
  int dim() const { return 2 * int(blocks_.size()); }
  const std::vector<QBlock>& blocks() const { return blocks_; }
  // Pfister presentation whose expansion is the block list, when known.
  const std::optional<std::vector<Pfister>>& presentation() const { return pres_; }
  void add_block(const Rat& a, const Rat& b);
  QuadForm operator+(const QuadForm& o) const;
  QuadForm& operator+=(const QuadForm& o) { return *this = *this + o; }
  // <c> (x) q.
  QuadForm scale(const Rat& c) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  int nv_ = 0;
  std::vector<QBlock> blocks_;
  std::optional<std::vector<Pfister>> pres_ = std::vector<Pfister>{};
};

// Text syntax: "[a,b] + <<a1,a2;b]] + ...".
QuadForm parse_quadform(const std::string& text, const std::vector<std::string>& names);

// a dlog t_I -> <<t_I; a]] termwise.
QuadForm kato_iso(const LogForm& psi);
// Inverse on a Pfister presentation: <<a_1..a_m; b]] -> b dlog a_1 ^ ... ^ dlog a_m.
LogForm kato_inverse(const QuadForm& q);

Rat arf(const QuadForm& q);
// Degree-two invariant of a form with trivial Arf class: sum a b dlog a over blocks.
LogForm e2(const QuadForm& q);

struct Simplified {
  QuadForm form;
  std::vector<std::string> chain;
};
Simplified witt_simplify(const QuadForm& q, int max_rounds = 64);

// Form over the residue field F(p): entries are polynomials reduced modulo p.
struct ResBlock {
  Poly a, b;
};
struct ResQuadForm {
  Place place;
  std::vector<ResBlock> blocks;
};
ResQuadForm res_pfister(const std::vector<Poly>& slots, const Poly& b, const Place& P);

struct SingularTransfer : std::logic_error {
  using std::logic_error::logic_error;
};
// Scharlau transfer along t_p via the F-basis 1, x, ..., x^{d-1}, split into binary blocks.
QuadForm scharlau_transfer_gram(const ResQuadForm& q);

enum class ClosedFormKind { Unit, XPfister, InsepConst };
ClosedFormKind closed_form_kind(const std::string& name);
struct KindPlaceMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// unit: t_p'([1, a x^i]); x_pfister: t_p'(<<x; a x^i]]), i >= 1; insep_const: t_p'(<<x; a]]).
QuadForm transfer_closed_form(ClosedFormKind kind, const Rat& a, int i, const Place& P);
// The residue-field input matching transfer_closed_form.
ResQuadForm closed_form_input(ClosedFormKind kind, const Rat& a, int i, const Place& P);

enum class WittVerdict { Equal, NotEqual, Inconclusive };
const char* witt_verdict_name(WittVerdict v);

struct WittResult {
  WittVerdict verdict = WittVerdict::Inconclusive;
  std::vector<std::string> chain;  // Equal: relation steps and invariant witnesses
  std::string invariant;           // NotEqual: the mismatching invariant
};

struct WittOptions {
  int bound = 64;  // simplification rounds
  ZeroOptions zero;
};
WittResult witt_equal_bounded(const QuadForm& q1, const QuadForm& q2, const WittOptions& opt = {});

}  // namespace kmc
