#pragma once

#include <mpfr.h>

#include <string>

#include "acsv/numbers.hpp"

namespace acsv {

// Closed interval [lo, hi] with mpfr endpoints and outward rounding, so any
// arithmetic result encloses the exact value.
class FInterval {
 public:
  explicit FInterval(long prec = 128);
  FInterval(const FInterval& o);
  FInterval(FInterval&& o) noexcept;
  FInterval& operator=(const FInterval& o);
  FInterval& operator=(FInterval&& o) noexcept;
  ~FInterval();

  static FInterval from_rat(const Rat& v, long prec = 128);
  static FInterval from_rats(const Rat& lo, const Rat& hi, long prec = 128);
  static FInterval from_long(long v, long prec = 128);
  static FInterval pi(long prec = 128);

  long prec() const { return prec_; }

  bool contains_zero() const;
  // +1 if the interval is strictly positive, -1 strictly negative, else 0.
  int sign() const;
  bool is_finite() const;

  Rat lo_rat() const;  // exact
  Rat hi_rat() const;  // exact
  double mid_double() const;
  std::string mid_decimal(int digits) const;

  bool disjoint_from(const FInterval& o) const;
  bool strictly_less_than(const FInterval& o) const;
  // hi - lo <= eps * max(|lo|, |hi|); false when zero is inside.
  bool relative_width_below(const Rat& eps) const;

  FInterval operator-() const;
  FInterval operator+(const FInterval& o) const;
  FInterval operator-(const FInterval& o) const;
  FInterval operator*(const FInterval& o) const;
  // Requires an interval not containing zero in the divisor.
  FInterval operator/(const FInterval& o) const;
  FInterval sqrt_enclosure() const;  // requires lo >= 0
  FInterval abs_enclosure() const;

  mpfr_t lo, hi;

 private:
  long prec_;
};

// Rectangle re + i*im enclosing a complex value.
struct CInterval {
  FInterval re, im;

  CInterval() = default;
  CInterval(FInterval r, FInterval i) : re(std::move(r)), im(std::move(i)) {}

  CInterval operator+(const CInterval& o) const { return {re + o.re, im + o.im}; }
  CInterval operator-(const CInterval& o) const { return {re - o.re, im - o.im}; }
  CInterval operator*(const CInterval& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  // Requires a divisor whose modulus interval excludes zero.
  CInterval operator/(const CInterval& o) const {
    FInterval m2 = o.modulus_squared();
    return {(re * o.re + im * o.im) / m2, (im * o.re - re * o.im) / m2};
  }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  FInterval modulus_squared() const { return re * re + im * im; }
};

}  // namespace acsv
