#pragma once

#include <string>
#include <vector>

#include "latticerect/fraction.hpp"
#include "latticerect/poly.hpp"

namespace latticerect {

/// Recursive-descent parser for the polynomial/fraction grammar:
///   expression := ['-'] term (('+'|'-') term)*
///   term       := factor ('*' factor)*
///   factor     := atom ('^' nonneg-int)?
///   atom       := integer | variable | '(' expression ')'
/// with a single division of atoms allowed at top level only.
/// Variables are the declared names; whitespace is insignificant.
Poly parse_poly(const std::string& text, BaseField field,
                const std::vector<std::string>& variables);

FieldElem parse_field_elem(const std::string& text, BaseField field,
                           const std::vector<std::string>& variables);

}  // namespace latticerect
