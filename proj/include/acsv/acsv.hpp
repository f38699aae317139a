#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acsv/algnum.hpp"
#include "acsv/kronecker.hpp"
#include "acsv/multipoly.hpp"
#include "acsv/numbers.hpp"

namespace acsv {

// Diagonal direction: one strictly positive integer per variable.
using Direction = std::vector<Int>;

// A solution of the extended critical point system with t = 1, addressed by
// a root of the Kronecker eliminant.  Coordinates, lambda and t are exact;
// the flags are filled in by the minimality and grouping passes.
struct CriticalPoint {
  std::shared_ptr<const KroneckerRep> rep;
  std::size_t root_index = 0;           // into isolate_complex_roots(rep->P)
  AlgebraicNumber u;                    // the eliminant root indexing this solution
  std::vector<AlgebraicNumber> coords;  // parallel to the original variables
  AlgebraicNumber lambda;
  AlgebraicNumber t;
  bool real_positive = false;
  bool minimal = false;
  bool contributing = false;
};

// The (d-1) x (d-1) matrix controlling the saddle point contribution, kept
// with its audit data: U[i][j] = w_i w_j H_{z_i z_j}(w) / (w_p H_{z_p}(w))
// over all pairs, V[i] = r_i / r_p, and the pivot coordinate p that was
// placed last (p is the highest index whose partial derivative does not
// vanish at w, so usually d-1).
struct PhaseHessian {
  std::vector<std::vector<AlgebraicNumber>> entries;  // symmetric
  AlgebraicNumber determinant;
  std::vector<std::vector<AlgebraicNumber>> U;        // d x d
  std::vector<Rat> V;                                 // length d
  std::size_t pivot = 0;
};

// One summand C * rho^n * (pi n)^alpha of the dominant asymptotics.  C is
// real whenever rho is; a nonreal rho keeps its conjugate partner as a
// separate term.
struct ExpansionTerm {
  AlgebraicNumber C;
  AlgebraicNumber rho;
  Rat alpha;  // (1 - d) / 2
};

struct AssumptionEntry {
  std::string name;
  std::string verdict;  // pass, fail, or assumed
  std::string note;
};

struct AssumptionReport {
  std::vector<AssumptionEntry> entries;
  bool all_ok() const;  // true when nothing failed
};

struct AsymptoticExpansion {
  std::vector<ExpansionTerm> terms;  // pairwise distinct rho values
  std::string error_order = "O(1/n)";  // relative accuracy of the sum of terms
  AssumptionReport report;
};

struct AnalysisOptions {
  std::optional<std::vector<Int>> linear_form;
  std::uint64_t seed = 0;
  // The caller vouches that the coefficient array is eventually nonnegative;
  // the pipeline's minimality certificate is only valid under it.
  bool combinatorial_asserted = false;
};

struct Analysis {
  AsymptoticExpansion expansion;
  std::vector<CriticalPoint> points;        // every t = 1 solution, flags set
  std::vector<CriticalPoint> contributors;  // same-modulus set of the minimal point
  std::shared_ptr<const KroneckerRep> rep;  // over the extended variables
  std::vector<std::string> ext_vars;
  Direction r;
  bool h_was_reduced = false;  // denominator replaced by its square-free part
};

// The d polynomials cutting out the critical set: H itself and the d-1
// proportionality equations r_k z_1 H_{z_1} - r_1 z_k H_{z_k}.
std::vector<MultiPoly> build_critical_system(const MultiPoly& H, const Direction& r);

// The critical system extended for minimality testing: H(z), H(t z), and
// z_i H_{z_i} - r_i lambda for every i, over the variables of H followed by
// two fresh names for lambda and t.
struct ExtendedSystem {
  std::vector<MultiPoly> polys;
  std::vector<std::string> vars;
  std::size_t lambda_pos = 0;
  std::size_t t_pos = 0;
};
ExtendedSystem build_extended_system(const MultiPoly& H, const Direction& r);

// Materializes every solution with t = 1 from the representation, marks the
// real positive ones, and decides minimality: a candidate w is minimal when
// no solution has the same coordinates and a real t strictly between 0 and
// 1.  Throws MinimalityError when no candidate survives or more than one
// positive real minimal point does.
std::vector<CriticalPoint> find_minimal_critical_points(
    const ExtendedSystem& ext, std::shared_ptr<const KroneckerRep> rep);

// The contributing set: all critical points whose coordinate-wise moduli
// equal those of w_star, certified exactly.  Each member is checked to be a
// smooth point of the variety; the returned set is conjugation-closed.
std::vector<CriticalPoint> group_by_modulus(const MultiPoly& H,
                                            const std::vector<CriticalPoint>& all_points,
                                            const CriticalPoint& w_star);

PhaseHessian phase_hessian(const MultiPoly& H, const CriticalPoint& w, const Direction& r);

// One term per distinct value of rho = w^{-r} over the contributors, with
// coefficients merged by summation.  alpha is (1-d)/2 throughout.
AsymptoticExpansion asymptotic_expansion(const MultiPoly& G, const MultiPoly& H,
                                         const Direction& r,
                                         const std::vector<CriticalPoint>& contributors);

// Runs the pipeline in report mode: failed stages become fail verdicts
// instead of exceptions, and later stages that depend on them are skipped.
AssumptionReport check_assumptions(const MultiPoly& G, const MultiPoly& H, const Direction& r,
                                   const AnalysisOptions& options = {});

// The full pipeline.  Throws AssumptionError, MinimalityError or
// ResourceError as soon as a stage cannot be certified.
Analysis analyze(const MultiPoly& G, const MultiPoly& H, const Direction& r,
                 const AnalysisOptions& options = {});

}  // namespace acsv
