#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kmcoh/forms.hpp"
#include "kmcoh/ground.hpp"
#include "kmcoh/poly.hpp"

namespace kmc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Variables are looked up in names; integers are read modulo 2.
Rat parse_rat(const std::string& text, const std::vector<std::string>& names);
// Polynomial in the last name over the field of the others.
Poly parse_poly(const std::string& text, const std::vector<std::string>& names);
// "(a) dlog(f) ^ dlog(g) + ..." expanded in the global basis.
LogForm parse_class(const std::string& text, const std::vector<std::string>& names, int* degree = nullptr);

}  // namespace kmc
