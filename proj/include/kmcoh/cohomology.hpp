#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kmcoh/forms.hpp"
#include "kmcoh/local.hpp"

namespace kmc {

// Class of an m-form in H_2^{m+1} of the level-n tower field.
struct CohomClass {
  LogForm rep;
  int m = 0;
  int level() const { return rep.nv(); }
  CohomClass operator+(const CohomClass& o) const { return {rep + o.rep, m}; }
};

enum class Verdict { Zero, NonZero, Unknown };
const char* verdict_name(Verdict v);

// phi = wp(omega) + d(eta) in the global basis.
struct Witness {
  LogForm omega, eta;
};
bool check_witness(const LogForm& phi, const Witness& w);

struct ZeroResult {
  Verdict verdict = Verdict::Unknown;
  Witness witness;
  std::string place;   // where a nonzero or undecided component was found
  std::string reason;
};

struct ZeroOptions {
  long factor_budget = 1L << 16;
  std::vector<Poly> hints;  // candidate place polynomials tried first
  int max_steps = 512;
  std::vector<std::string> names;  // variable names for reports; defaults to t1.., x
};

// Finite places where phi may have a nonzero residue, in processing order.
struct Support {
  std::vector<Place> places;
  bool complete = true;
  std::string issue;
};
Support support(const LogForm& phi, const ZeroOptions& opt = {});

ZeroResult is_zero(const LogForm& phi, int m, const ZeroOptions& opt = {});

// When every residue vanishes: phi = ground.lift() + wp(omega) + d(eta), verdict Zero.
struct GroundReduction {
  Verdict verdict = Verdict::Unknown;
  LogForm ground;
  Witness witness;
  std::string place, reason;
};
GroundReduction reduce_to_ground(const LogForm& phi, int m, const ZeroOptions& opt = {});
inline ZeroResult is_zero(const CohomClass& c, const ZeroOptions& opt = {}) { return is_zero(c.rep, c.m, opt); }

// Residue-field forms of degree deg at P: f = res_wp(omega) + res_d(eta).
struct ResidueVerdict {
  Verdict verdict = Verdict::Unknown;
  ResForm omega, eta;
  std::string reason;
};
ResidueVerdict residue_is_zero(const ResForm& f, int deg, const Place& P, const ZeroOptions& opt = {});

// Adds to w a pair (Omega, H) with wp(Omega) + dH = to_global(wp(oa) + d(ea)) for adapted oa, ea.
void add_adapted_witness(Witness& w, const LogForm& oa, const LogForm& ea, const Place& P);

struct ReducedClass {
  LogForm rep;
  Witness witness;        // input = rep + local_dropped + wp(omega) + d(eta)
  LogForm local_dropped;  // positive valuation at the place, hence in wp of the completion
};
// Valuation-aware simplification; with a place, terms of positive valuation there are removed.
ReducedClass class_reduce(const LogForm& phi, const Place* P = nullptr);

struct ConstraintViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class SubgroupKind { L0, Ld, Sp, Sp_tilde, Sprime_pr, S0_pr, Up, Up0 };
SubgroupKind subgroup_kind(const std::string& name);

struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::L0;
  Place place;     // Sp, Sp_tilde, Sprime_pr, S0_pr, Up, Up0
  int r = 1;       // Sprime_pr, S0_pr
  int d = 1;       // Ld: degree bound for the dlog arguments
};

// Generator parameters; unused fields are ignored for the kind.
struct GeneratorParams {
  int m = 1;
  Poly h;                 // numerator polynomial
  int e = 0;              // power of the denominator
  Poly s;                 // Sprime_pr / S0_pr coefficient, degree < deg p
  Mask I = 0, J = 0;      // index sets in adapted ids; inf_symbol(P) stands for dlog p
  std::vector<Rat> cs;    // L0: ground slots c_1..c_{m-1}
  bool with_x = false;    // L0: last slot x instead of a ground element
  std::vector<Poly> fs;   // Ld: dlog arguments
  Poly u;                 // Ld: denominator base
  Rat c;                  // Sprime_pr at infinity: c_{r,I,J} in the ground field
};

CohomClass subgroup_generator(const SubgroupSpec& spec, const GeneratorParams& g);

}  // namespace kmc
