#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acsv/multipoly.hpp"
#include "acsv/upoly.hpp"

namespace acsv {

// Kronecker representation of a zero-dimensional solution set: a separating
// linear form u = kappa . vars whose values run over the roots of P, plus one
// numerator polynomial per coordinate so that each solution is recovered as
//
//   z_i = Q_i(u) / (denom_scale * P'(u))   for u a root of P.
//
// P is square-free, primitive, with positive leading coefficient; each Q_i is
// reduced mod P. denom_scale clears the denominators forced by non-monic
// shape generators (it is 1 whenever the coordinate relations are monic).
struct KroneckerRep {
  std::vector<std::string> vars;
  std::vector<Int> kappa;
  UPoly P;
  std::vector<UPoly> Q;  // parallel to vars
  Int denom_scale = Int(1);

  const UPoly& q(const std::string& var) const;
};

// Outcome of re-deriving the defining identities from scratch.
struct KroneckerCheck {
  bool square_free = false;
  std::vector<bool> identity_ok;  // one entry per system polynomial
  bool all_passed() const;
};

// Builds a Kronecker representation of the solutions of `system` (polynomials
// over `vars`, which must generate a zero-dimensional ideal). When
// linear_form is supplied it is used as kappa and non-separation is a hard
// error; otherwise coefficients are drawn from {-10,...,10} (seeded) and the
// computation retries with a fresh form, up to 10 attempts, whenever the
// eliminated basis fails to take shape position.
KroneckerRep kronecker_rep(const std::vector<MultiPoly>& system,
                           const std::vector<std::string>& vars,
                           const std::optional<std::vector<Int>>& linear_form = std::nullopt,
                           std::uint64_t seed = 0);

// Certifies rep against the system it claims to represent: square-freeness of
// P, and for every system polynomial f the vanishing of the numerator of
// f(Q_1/(s P'), ..., Q_k/(s P')) modulo P.
KroneckerCheck verify_kronecker(const KroneckerRep& rep, const std::vector<MultiPoly>& system);

// Number of solutions of the represented system, with multiplicities removed.
long solution_count(const KroneckerRep& rep);

}  // namespace acsv
