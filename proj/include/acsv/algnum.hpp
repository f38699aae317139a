#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "acsv/interval.hpp"
#include "acsv/upoly.hpp"

namespace acsv {

// Isolating rectangle with rational corners.  Real numbers use ylo == yhi
// == 0; nonreal numbers keep the rectangle strictly off the real axis.
struct Region {
  Rat xlo, xhi, ylo, yhi;

  bool is_real_line() const { return ylo == 0 && yhi == 0; }
  bool is_point() const { return xlo == xhi && ylo == yhi; }
};

// A root of a square-free integer polynomial, identified by an isolating
// region.  Values are immutable; the region cache shrinks under refinement
// and is shared between copies, guarded by a mutex.
class AlgebraicNumber {
 public:
  AlgebraicNumber();  // zero

  static AlgebraicNumber from_rat(const Rat& v);
  static AlgebraicNumber from_int(long v);
  // Validates that exactly one real root of p lies in (lo, hi) and that the
  // endpoints are not roots.
  static AlgebraicNumber make_real(const UPoly& square_free, const Rat& lo, const Rat& hi);
  // Validates a one-root winding count; the box must avoid the real axis.
  static AlgebraicNumber make_complex(const UPoly& square_free, const Region& box);

  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()
  bool is_real() const { return real_; }
  const UPoly& poly() const { return p_; }

  Region region() const;      // current cached region
  void refine() const;        // one subdivision round
  void refine_below(const Rat& width) const;  // both dimensions under width

  FInterval real_enclosure(long prec = 128) const;  // requires is_real()
  CInterval enclosure(long prec = 128) const;
  // Enclosure tightened by interval Newton at the working precision: far
  // tighter than the cached region once the derivative separates from zero
  // on it, and always a valid enclosure.  Exact refinement only runs the few
  // rounds needed to get the iteration started.
  CInterval tight_enclosure(long prec = 128) const;
  std::string decimal(int digits) const;            // real part midpoint
  std::string decimal_imag(int digits) const;

 private:
  UPoly p_;
  bool real_ = true;
  struct Cell {
    std::mutex m;
    Region r;
  };
  std::shared_ptr<Cell> cell_;

  friend AlgebraicNumber certify_root(const UPoly&, const std::function<CInterval(int)>&,
                                      bool);
  friend int an_sign(const AlgebraicNumber&);
  friend bool an_equal(const AlgebraicNumber&, const AlgebraicNumber&);
};

// Exact arithmetic.  Defining polynomials are combined through resultants
// and reduced to their square-free part; regions are certified by counting
// roots in refined enclosures.
AlgebraicNumber an_add(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber an_sub(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber an_mul(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber an_neg(const AlgebraicNumber& a);
AlgebraicNumber an_inv(const AlgebraicNumber& a);  // requires a != 0
AlgebraicNumber an_conj(const AlgebraicNumber& a);
// Nonnegative real square root of a nonnegative real number.
AlgebraicNumber an_sqrt(const AlgebraicNumber& a);
// Principal branch for arbitrary arguments (nonreal allowed).
AlgebraicNumber an_sqrt_any(const AlgebraicNumber& a);
AlgebraicNumber an_pow(const AlgebraicNumber& a, long e);

bool an_is_zero(const AlgebraicNumber& a);
int an_sign(const AlgebraicNumber& a);  // requires a real
bool an_equal(const AlgebraicNumber& a, const AlgebraicNumber& b);
// Decides whether the value is real; exact.
bool an_is_real_value(const AlgebraicNumber& a);

AlgebraicNumber an_modulus_squared(const AlgebraicNumber& a);

// The unique irreducible factor of poly() that vanishes at the value.
UPoly minimal_polynomial(const AlgebraicNumber& a);
// The same value, re-certified over its minimal polynomial.
AlgebraicNumber an_minimized(const AlgebraicNumber& a);

// All real roots, sorted ascending, by Descartes bisection.
std::vector<AlgebraicNumber> isolate_real_roots(const UPoly& p);
// All roots (real and complex), conjugation-symmetric, deterministic order.
std::vector<AlgebraicNumber> isolate_complex_roots(const UPoly& p);

// Number of roots of p strictly inside the rectangle, counted with
// multiplicity by the argument principle; nullopt when the contour is
// degenerate for p (root on the boundary, vanishing corner data).
std::optional<long> count_roots_in_rect(const UPoly& p, const Rat& xlo, const Rat& xhi,
                                        const Rat& ylo, const Rat& yhi);

// Builds the number for the unique root of `square_free` inside the
// enclosures produced by `approx`, which must return nested boxes that
// converge to the value as the round index grows.  `known_real` certifies a
// real result through a one-dimensional region.
AlgebraicNumber certify_root(const UPoly& square_free,
                             const std::function<CInterval(int)>& approx, bool known_real);

}  // namespace acsv
