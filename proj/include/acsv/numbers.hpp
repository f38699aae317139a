#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace acsv {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Exact quotient; caller guarantees divisibility.
inline Int divexact(const Int& a, const Int& b) {
  Int r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_pow(const Int& a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& a, long e) {
  if (e == 0) return Rat(1);
  Rat base = e < 0 ? Rat(1) / a : a;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  Rat r(1);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

inline int sign_of(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sign_of(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

// Deterministic RNG used anywhere randomness enters the pipeline.  The
// distribution is hand-rolled so the byte stream does not depend on the
// standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [lo, hi] inclusive via rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
    for (;;) {
      std::uint64_t v = eng_();
      if (v < limit || span == 0) return lo + static_cast<std::int64_t>(v % span);
    }
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace acsv
