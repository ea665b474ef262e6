#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "kmcoh/forms.hpp"
#include "kmcoh/poly.hpp"

namespace kmc {

// Symbol ids at a place of F (nv = level): ground variables 0..nv-2, x = nv-1,
// and the uniformizer symbol inf_symbol(P) (nv at finite places, x at infinity).
int inf_symbol(const Place& P);
// Basis of the residue field: ground variables, minus i' plus x when inseparable.
Mask residue_basis(const Place& P);
// p at finite places, 1/x at infinity.
Rat uniformizer(const Place& P);
// Element whose dlog is the given adapted symbol.
Rat symbol_value(const Place& P, int id);
// Monomial in the residue-field basis as a polynomial in x.
Poly basis_monomial(const Place& P, Mask J);

LogForm to_adapted(const LogForm& f, const Place& P);
LogForm to_global(const LogForm& f, const Place& P);

struct Digits {
  std::vector<Poly> polar;  // polar[l-1] multiplies pi^{-l}
  Poly order0;
  Rat regular;
};
Digits partial_fractions(const Rat& c, const Place& P, bool want_regular = true);

struct Decomposition {
  std::map<Mask, Poly> parts;  // f = sum_J t^J f_J^2 + p k
  Poly k;
};
Decomposition residue_field_decompose(const Poly& f, const Place& P);

using EntryKey = std::tuple<int, Mask, Mask>;  // (r, I, J)

struct W1Class {
  Place place;
  int m = 0;
  std::map<EntryKey, Poly> u;  // pole 2r+1, J excludes the uniformizer
  std::map<EntryKey, Poly> v;  // pole 2r
  ResForm phi;                 // theta-component over the residue field
  bool polar_zero() const { return u.empty() && v.empty(); }
  bool operator==(const W1Class& o) const { return m == o.m && u == o.u && v == o.v && phi == o.phi; }
};

// Adapted-basis form represented by a W1Class.
LogForm w1_representative_adapted(const W1Class& w);
LogForm w1_representative(const W1Class& w);

struct LocalReduction {
  W1Class w;
  LogForm carry;     // order-0 carries produced by the rewrite (adapted)
  LogForm regular;   // non-polar part of the input (adapted)
  LogForm omega;     // wp-witness (adapted)
  LogForm eta;       // d-witness (adapted)
};

// phi (global basis, degree m+1 class) rewritten at P:
// to_adapted(phi) = rep(u,v) + carry + regular + wp(omega) + d(eta).
LocalReduction local_reduce(const LogForm& phi, int m, const Place& P, bool track = false);

W1Class residue(const LogForm& phi, int m, const Place& P);
inline W1Class local_normal_form(const LogForm& phi, int m, const Place& P) { return residue(phi, m, P); }

// Residue-field forms: generator coordinates (ground vars and x) to the basis.
ResForm res_to_basis(const ResForm& f, const Place& P);

// Operations over the residue field in its basis.
ResForm res_wp(const ResForm& f, const Place& P);
ResForm res_d(const ResForm& f, const Place& P);
ResForm res_integrate(const ResForm& f, const Place& P);

Poly teichmuller_lift(const Poly& u, const Place& P, int N,
                      const std::function<Poly(const Poly&)>& base = nullptr);

}  // namespace kmc
