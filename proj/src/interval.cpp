#include "acsv/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace acsv {

FInterval::FInterval(long prec) : prec_(prec) {
  mpfr_init2(lo, prec);
  mpfr_init2(hi, prec);
  mpfr_set_zero(lo, 1);
  mpfr_set_zero(hi, 1);
}

FInterval::FInterval(const FInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo, prec_);
  mpfr_init2(hi, prec_);
  mpfr_set(lo, o.lo, MPFR_RNDD);
  mpfr_set(hi, o.hi, MPFR_RNDU);
}

FInterval::FInterval(FInterval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo, prec_);
  mpfr_init2(hi, prec_);
  mpfr_swap(lo, o.lo);
  mpfr_swap(hi, o.hi);
}

FInterval& FInterval::operator=(const FInterval& o) {
  if (this != &o) {
    mpfr_set_prec(lo, o.prec_);
    mpfr_set_prec(hi, o.prec_);
    prec_ = o.prec_;
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
  }
  return *this;
}

FInterval& FInterval::operator=(FInterval&& o) noexcept {
  if (this != &o) {
    mpfr_swap(lo, o.lo);
    mpfr_swap(hi, o.hi);
    std::swap(prec_, o.prec_);
  }
  return *this;
}

FInterval::~FInterval() {
  mpfr_clear(lo);
  mpfr_clear(hi);
}

FInterval FInterval::from_rat(const Rat& v, long prec) {
  FInterval r(prec);
  mpfr_set_q(r.lo, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

FInterval FInterval::from_rats(const Rat& lo, const Rat& hi, long prec) {
  FInterval r(prec);
  mpfr_set_q(r.lo, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

FInterval FInterval::from_long(long v, long prec) {
  FInterval r(prec);
  mpfr_set_si(r.lo, v, MPFR_RNDD);
  mpfr_set_si(r.hi, v, MPFR_RNDU);
  return r;
}

FInterval FInterval::pi(long prec) {
  FInterval r(prec);
  mpfr_const_pi(r.lo, MPFR_RNDD);
  mpfr_const_pi(r.hi, MPFR_RNDU);
  return r;
}

bool FInterval::contains_zero() const {
  return mpfr_sgn(lo) <= 0 && mpfr_sgn(hi) >= 0;
}

int FInterval::sign() const {
  if (mpfr_sgn(lo) > 0) return 1;
  if (mpfr_sgn(hi) < 0) return -1;
  return 0;
}

bool FInterval::is_finite() const { return mpfr_number_p(lo) && mpfr_number_p(hi); }

Rat FInterval::lo_rat() const {
  if (!mpfr_number_p(lo)) throw std::logic_error("non-finite interval endpoint");
  Rat q;
  mpfr_get_q(q.get_mpq_t(), lo);
  return q;
}

Rat FInterval::hi_rat() const {
  if (!mpfr_number_p(hi)) throw std::logic_error("non-finite interval endpoint");
  Rat q;
  mpfr_get_q(q.get_mpq_t(), hi);
  return q;
}

double FInterval::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_add(m, lo, hi, MPFR_RNDN);
  mpfr_div_ui(m, m, 2, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

std::string FInterval::mid_decimal(int digits) const {
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_add(m, lo, hi, MPFR_RNDN);
  mpfr_div_ui(m, m, 2, MPFR_RNDN);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, m);
  std::string out(s);
  mpfr_free_str(s);
  mpfr_clear(m);
  return out;
}

bool FInterval::disjoint_from(const FInterval& o) const {
  return mpfr_cmp(hi, o.lo) < 0 || mpfr_cmp(o.hi, lo) < 0;
}

bool FInterval::strictly_less_than(const FInterval& o) const {
  return mpfr_cmp(hi, o.lo) < 0;
}

bool FInterval::relative_width_below(const Rat& eps) const {
  if (contains_zero()) return false;
  if (!is_finite()) return false;
  FInterval w(prec_);
  mpfr_sub(w.hi, hi, lo, MPFR_RNDU);
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_t a, b;
  mpfr_init2(a, prec_);
  mpfr_init2(b, prec_);
  mpfr_abs(a, lo, MPFR_RNDD);
  mpfr_abs(b, hi, MPFR_RNDD);
  mpfr_max(m, a, b, MPFR_RNDD);
  mpfr_t e;
  mpfr_init2(e, prec_);
  mpfr_set_q(e, eps.get_mpq_t(), MPFR_RNDD);
  mpfr_mul(m, m, e, MPFR_RNDD);
  bool ok = mpfr_cmp(w.hi, m) <= 0;
  mpfr_clear(m);
  mpfr_clear(a);
  mpfr_clear(b);
  mpfr_clear(e);
  return ok;
}

FInterval FInterval::operator-() const {
  FInterval r(prec_);
  mpfr_neg(r.lo, hi, MPFR_RNDD);
  mpfr_neg(r.hi, lo, MPFR_RNDU);
  return r;
}

FInterval FInterval::operator+(const FInterval& o) const {
  FInterval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo, lo, o.lo, MPFR_RNDD);
  mpfr_add(r.hi, hi, o.hi, MPFR_RNDU);
  return r;
}

FInterval FInterval::operator-(const FInterval& o) const {
  FInterval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo, lo, o.hi, MPFR_RNDD);
  mpfr_sub(r.hi, hi, o.lo, MPFR_RNDU);
  return r;
}

FInterval FInterval::operator*(const FInterval& o) const {
  long p = std::max(prec_, o.prec_);
  FInterval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_t* xs[2] = {&lo, &hi};
  const mpfr_t* ys[2] = {&o.lo, &o.hi};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, *xs[i], *ys[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo) < 0) mpfr_set(r.lo, t, MPFR_RNDD);
      mpfr_mul(t, *xs[i], *ys[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi) > 0) mpfr_set(r.hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

FInterval FInterval::operator/(const FInterval& o) const {
  if (o.contains_zero()) throw std::logic_error("interval division by zero-straddling interval");
  long p = std::max(prec_, o.prec_);
  FInterval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_t* xs[2] = {&lo, &hi};
  const mpfr_t* ys[2] = {&o.lo, &o.hi};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t, *xs[i], *ys[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo) < 0) mpfr_set(r.lo, t, MPFR_RNDD);
      mpfr_div(t, *xs[i], *ys[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi) > 0) mpfr_set(r.hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

FInterval FInterval::sqrt_enclosure() const {
  if (mpfr_sgn(lo) < 0) throw std::logic_error("sqrt of interval with negative part");
  FInterval r(prec_);
  mpfr_sqrt(r.lo, lo, MPFR_RNDD);
  mpfr_sqrt(r.hi, hi, MPFR_RNDU);
  return r;
}

FInterval FInterval::abs_enclosure() const {
  FInterval r(prec_);
  if (mpfr_sgn(lo) >= 0) return *this;
  if (mpfr_sgn(hi) <= 0) return -*this;
  mpfr_set_zero(r.lo, 1);
  mpfr_t a, b;
  mpfr_init2(a, prec_);
  mpfr_init2(b, prec_);
  mpfr_abs(a, lo, MPFR_RNDU);
  mpfr_abs(b, hi, MPFR_RNDU);
  mpfr_max(r.hi, a, b, MPFR_RNDU);
  mpfr_clear(a);
  mpfr_clear(b);
  return r;
}

}  // namespace acsv
