#pragma once

#include <string>
#include <vector>

#include "acsv/multipoly.hpp"

namespace acsv {

// Reduced lexicographic Groebner basis; variable_order[0] is the most
// significant variable.  Generators are primitive with positive leading
// coefficient, over variable_order as their variable list, sorted by
// decreasing leading term.
struct LexIdealBasis {
  std::vector<MultiPoly> generators;
  std::vector<std::string> variable_order;
};

// Reduced Groebner basis for the graded reverse lexicographic order, the
// cheap order: use it when any basis will do, e.g. to decide ideal
// membership or triviality.
struct GradedIdealBasis {
  std::vector<MultiPoly> generators;
  std::vector<std::string> variable_order;

  bool is_trivial() const;  // the whole ring
};

// Remainder of multivariate division by the basis: no term of the result is
// divisible by the leading term of any generator.  Computed fraction-free,
// so the result is the true normal form up to a positive rational factor;
// zero exactly for ideal members when the basis is a Groebner basis.
MultiPoly normal_form(const MultiPoly& p, const LexIdealBasis& basis);

// Buchberger's algorithm with the coprimality and chain criteria, then full
// inter-reduction.  Deterministic for a fixed variable order.  Throws
// ResourceError when more than spair_cap S-pairs get processed.
//
// A lexicographic basis is rarely reachable by direct elimination at a
// useful cost.  For ideals with finitely many solutions this routine instead
// computes the graded basis and converts it, walking monomials in increasing
// lexicographic order and reading each new basis element off a linear
// dependence in the quotient algebra; only positive-dimensional ideals fall
// back to direct lexicographic elimination.
LexIdealBasis buchberger_lex(const std::vector<MultiPoly>& polys,
                             const std::vector<std::string>& variable_order,
                             long spair_cap = 100000);

GradedIdealBasis buchberger_graded(const std::vector<MultiPoly>& polys,
                                   const std::vector<std::string>& variable_order,
                                   long spair_cap = 100000);

// True when some generator's leading term is a pure power of each variable
// (or the ideal is all of the ring), which confines the solution set to
// finitely many points.
bool is_zero_dimensional(const LexIdealBasis& basis);

}  // namespace acsv
