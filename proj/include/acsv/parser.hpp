#pragma once

#include <string>
#include <vector>

#include "acsv/multipoly.hpp"

namespace acsv {

// A rational function G/H as supplied by the user.  The combinatorial flag
// records an explicit assertion that the coefficient array is nonnegative;
// it is never inferred.
struct RationalFunctionInput {
  MultiPoly numerator;
  MultiPoly denominator;
  bool combinatorial_asserted = false;
};

// Grammar (whitespace insignificant, no implicit multiplication):
//   expression := term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := base ('^' natural)?
//   base       := integer | variable | '(' expression ')'
// An integer literal may carry a leading sign, so "-5*x" parses while "-x"
// does not.
MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

// Accepts "G/H" with exactly one division at parenthesis depth zero, or a
// bare polynomial (denominator 1).  Any other '/' is rejected.
RationalFunctionInput parse_rational_function(const std::string& text,
                                              const std::vector<std::string>& vars);

}  // namespace acsv
