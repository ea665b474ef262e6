#pragma once

#include <string>
#include <vector>

#include "kmcoh/cohomology.hpp"
#include "kmcoh/local.hpp"

namespace kmc {

// Residue-field component of a W1Class (constant forms over F at infinity).
ResForm theta(const W1Class& w);

// t_p^*(a xbar^i dlog t_S) for a in the ground field and S in residue-basis ids.
LogForm transfer_term(const Rat& a, int i, Mask S, const Place& P);

// Forms over F(p) of any degree to forms over F (one level down).
LogForm t_p_star(const ResForm& psi, const Place& P);
LogForm s_p_star(const W1Class& w);

// Lifts a form over F to F(x).
LogForm include_form(const LogForm& psi);

struct ReciprocityTerm {
  Place place;
  W1Class residue;
  LogForm value;
};

struct ReciprocityReport {
  std::vector<ReciprocityTerm> terms;
  LogForm sum;
  ZeroResult verdict;
};

ReciprocityReport reciprocity_sum(const LogForm& phi, int m, const ZeroOptions& opt = {});

}  // namespace kmc
