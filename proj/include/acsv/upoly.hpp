#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acsv/numbers.hpp"

namespace acsv {

// Dense univariate polynomial over the integers.  coeff(i) is the
// coefficient of x^i; the representation never stores leading zeros, so the
// zero polynomial has an empty coefficient vector.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(Int c);
  explicit UPoly(std::vector<Int> coeffs);

  static UPoly x();

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Int& coeff(std::size_t i) const;  // 0 beyond the degree
  const Int& lc() const;                  // leading coefficient; 0 for zero

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return c_ != o.c_; }

  UPoly scaled(const Int& k) const;
  UPoly shifted(std::size_t k) const;  // multiply by x^k

  UPoly derivative() const;

  Int content() const;  // nonnegative
  UPoly primitive_part() const;
  UPoly normalized() const;  // primitive, positive leading coefficient

  Rat evaluate(const Rat& t) const;
  Int evaluate_int(const Int& t) const;
  int sign_at(const Rat& t) const;
  int sign_at_pos_inf() const;
  int sign_at_neg_inf() const;

  UPoly compose_neg_x() const;     // p(-x)
  UPoly compose_x_squared() const; // p(x^2)
  UPoly reversed() const;          // x^deg * p(1/x)

  // Positive rational B with every complex root of modulus < B; a power of
  // two.  Requires a nonzero polynomial.
  Rat root_bound() const;

  std::string to_string(const std::string& var = "x") const;

  const std::vector<Int>& coeffs() const { return c_; }

 private:
  std::vector<Int> c_;
  void trim();
};

// Quotient if b divides a exactly over the integers.
std::optional<UPoly> try_divide(const UPoly& a, const UPoly& b);

// Pseudo-remainder scaled by lc(b)^(deg a - deg b + 1).
UPoly pseudo_rem(const UPoly& a, const UPoly& b);

UPoly upoly_gcd(const UPoly& a, const UPoly& b);       // normalized
UPoly upoly_square_free(const UPoly& p);               // normalized

// Resultant of a and b, by the subresultant pseudo-remainder sequence.
Int upoly_resultant(const UPoly& a, const UPoly& b);

// Sturm chain of a square-free polynomial, with remainders scaled by
// positive constants only so that sign variation counting stays valid.
std::vector<UPoly> sturm_chain(const UPoly& p);

int sign_variations_at(const std::vector<UPoly>& chain, const Rat& t);
int sign_variations_at_pos_inf(const std::vector<UPoly>& chain);
int sign_variations_at_neg_inf(const std::vector<UPoly>& chain);

// Distinct real roots of square-free p in the half-open interval (a, b].
int count_real_roots(const std::vector<UPoly>& chain, const Rat& a, const Rat& b);
int count_real_roots_total(const std::vector<UPoly>& chain);

// Polynomial in v whose coefficients are integer polynomials in a second
// variable; used for resultant-based constructions on algebraic numbers.
class BPoly {
 public:
  BPoly() = default;
  explicit BPoly(std::vector<UPoly> coeffs);

  static BPoly from_univariate_in_v(const UPoly& p);  // p(v)
  static BPoly from_univariate_in_x(const UPoly& p);  // p(x), constant in v

  long degree_v() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const UPoly& coeff(std::size_t i) const;
  const UPoly& lc() const;

  BPoly operator+(const BPoly& o) const;
  BPoly operator-(const BPoly& o) const;
  BPoly operator*(const BPoly& o) const;
  BPoly scaled(const UPoly& k) const;

  const std::vector<UPoly>& coeffs() const { return c_; }

 private:
  std::vector<UPoly> c_;
  void trim();
};

// Resultant with respect to v; an integer polynomial in x.
UPoly bpoly_resultant_v(const BPoly& a, const BPoly& b);

}  // namespace acsv
