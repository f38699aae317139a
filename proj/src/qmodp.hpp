#pragma once

// Arithmetic for quantities attached to the roots of a Kronecker eliminant P.
// Residues of Q[u]/(P) are dense rational coefficient vectors (index =
// degree, length < deg P after reduction).  Fractions of residues defer
// inversion entirely: P is square-free but rarely irreducible, so a nonzero
// denominator need not be a unit, only nonzero at the root in play.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "acsv/interval.hpp"
#include "acsv/multipoly.hpp"
#include "acsv/numbers.hpp"
#include "acsv/upoly.hpp"

namespace acsv {

using RatVec = std::vector<Rat>;

inline void rv_trim(RatVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RatVec rv_from(const UPoly& p) {
  RatVec out;
  for (long i = 0; i <= p.degree(); ++i) out.emplace_back(p.coeff(i));
  rv_trim(out);
  return out;
}

inline RatVec rv_mul(const RatVec& a, const RatVec& b) {
  if (a.empty() || b.empty()) return {};
  RatVec out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  rv_trim(out);
  return out;
}

inline RatVec rv_scale(RatVec a, const Rat& c) {
  for (auto& x : a) x *= c;
  rv_trim(a);
  return a;
}

inline RatVec rv_add(const RatVec& a, const RatVec& b) {
  RatVec out = a;
  if (out.size() < b.size()) out.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  rv_trim(out);
  return out;
}

inline RatVec rv_sub(const RatVec& a, const RatVec& b) {
  RatVec out = a;
  if (out.size() < b.size()) out.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  rv_trim(out);
  return out;
}

inline RatVec rv_rem(RatVec a, const RatVec& m) {
  while (a.size() >= m.size()) {
    Rat q = a.back() / m.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] -= q * m[i];
    a.pop_back();
    rv_trim(a);
  }
  return a;
}

inline bool rv_is_zero(const RatVec& a) { return a.empty(); }

// Largest coefficient size in bits, a lower bound on the working precision
// needed before evaluation of the polynomial stops drowning in cancellation.
inline long rv_bits(const RatVec& a) {
  std::size_t bits = 1;
  for (const auto& c : a) {
    bits = std::max(bits, mpz_sizeinbase(c.get_num().get_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(c.get_den().get_mpz_t(), 2));
  }
  return static_cast<long>(bits);
}

// Horner evaluation over a complex box enclosing u.
inline CInterval rv_eval_ci(const RatVec& a, const CInterval& u, long prec) {
  CInterval zero(FInterval::from_rat(Rat(0), prec), FInterval::from_rat(Rat(0), prec));
  CInterval acc = zero;
  for (std::size_t i = a.size(); i-- > 0;) {
    CInterval c(FInterval::from_rat(a[i], prec), FInterval::from_rat(Rat(0), prec));
    acc = acc * u + c;
  }
  return acc;
}

inline FInterval rv_eval_fi(const RatVec& a, const FInterval& u, long prec) {
  FInterval acc = FInterval::from_rat(Rat(0), prec);
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * u + FInterval::from_rat(a[i], prec);
  return acc;
}

// num/den with both parts reduced mod P.  The denominator must be nonzero at
// whichever root of P the fraction is read at; nothing here checks that.
struct QFrac {
  RatVec num, den;
};

// Joint rescale by one rational so the value is untouched but the integer
// content stays small.
inline void qf_tidy(QFrac& a) {
  Int l(1);
  for (const auto& x : a.num) l = int_lcm(l, Int(x.get_den()));
  for (const auto& x : a.den) l = int_lcm(l, Int(x.get_den()));
  Int g(0);
  for (const auto& x : a.num) g = int_gcd(g, Int(x.get_num() * l / x.get_den()));
  for (const auto& x : a.den) g = int_gcd(g, Int(x.get_num() * l / x.get_den()));
  if (g == 0) return;
  Rat s(l);
  s /= Rat(g);  // division canonicalizes; Rat(l, g) would not
  for (auto& x : a.num) x *= s;
  for (auto& x : a.den) x *= s;
}

inline QFrac qf_const(const Rat& c) { return {c == 0 ? RatVec{} : RatVec{c}, RatVec{Rat(1)}}; }

inline QFrac qf_from(RatVec n, const RatVec& pm) {
  return {rv_rem(std::move(n), pm), RatVec{Rat(1)}};
}

inline QFrac qf_mul(const QFrac& a, const QFrac& b, const RatVec& pm) {
  QFrac out{rv_rem(rv_mul(a.num, b.num), pm), rv_rem(rv_mul(a.den, b.den), pm)};
  qf_tidy(out);
  return out;
}

inline QFrac qf_add(const QFrac& a, const QFrac& b, const RatVec& pm) {
  QFrac out{rv_rem(rv_add(rv_mul(a.num, b.den), rv_mul(b.num, a.den)), pm),
            rv_rem(rv_mul(a.den, b.den), pm)};
  qf_tidy(out);
  return out;
}

inline QFrac qf_sub(const QFrac& a, const QFrac& b, const RatVec& pm) {
  QFrac out{rv_rem(rv_sub(rv_mul(a.num, b.den), rv_mul(b.num, a.den)), pm),
            rv_rem(rv_mul(a.den, b.den), pm)};
  qf_tidy(out);
  return out;
}

inline QFrac qf_neg(QFrac a) {
  for (auto& x : a.num) x = -x;
  return a;
}

inline QFrac qf_div(const QFrac& a, const QFrac& b, const RatVec& pm) {
  QFrac out{rv_rem(rv_mul(a.num, b.den), pm), rv_rem(rv_mul(a.den, b.num), pm)};
  qf_tidy(out);
  return out;
}

// True only when the numerator is zero mod P, which forces the value to
// vanish at every root with a nonzero denominator.
inline bool qf_num_zero(const QFrac& a) { return rv_is_zero(a.num); }

// f folded into a single fraction with denominator sden^(total degree): each
// term of degree e is multiplied by images of its variables and topped up by
// sden^(T-e).  `images` is parallel to the leading positions of f's variable
// list; any variable past it must not occur.
inline QFrac qf_eval_uniform(const MultiPoly& f, const std::vector<RatVec>& images,
                             const RatVec& sden, const RatVec& pm) {
  long T = std::max(0L, f.total_degree());
  RatVec acc;
  for (const auto& [m, c] : f.terms()) {
    RatVec term{Rat(c)};
    long e = 0;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (v >= images.size()) {
        if (m[v] != 0) throw std::logic_error("variable outside the substitution");
        continue;
      }
      for (std::uint32_t p = 0; p < m[v]; ++p) term = rv_rem(rv_mul(term, images[v]), pm);
      e += m[v];
    }
    for (long p = e; p < T; ++p) term = rv_rem(rv_mul(term, sden), pm);
    acc = rv_add(acc, term);
  }
  RatVec dpow{Rat(1)};
  for (long p = 0; p < T; ++p) dpow = rv_rem(rv_mul(dpow, sden), pm);
  QFrac out{std::move(acc), std::move(dpow)};
  qf_tidy(out);
  return out;
}

// Monic minimal relation satisfied by num/den on the components of Q[u]/(P)
// where den is a unit: the first linear dependency among num^i den^(n-i)
// mod P.  Those components form a product of fields, so the relation is
// automatically square-free, and it vanishes at the fraction's value at every
// root of P that keeps den nonzero.
inline UPoly qf_annihilator(const QFrac& a, const UPoly& P) {
  const long n = P.degree();
  if (n < 1) throw std::logic_error("annihilator needs a nonconstant eliminant");
  RatVec pm = rv_from(P);
  RatVec num = rv_rem(a.num, pm), den = rv_rem(a.den, pm);
  if (rv_is_zero(den)) throw std::logic_error("zero denominator in annihilator");

  std::vector<RatVec> numpow{RatVec{Rat(1)}}, denpow{RatVec{Rat(1)}};
  for (long i = 1; i <= n; ++i) {
    numpow.push_back(rv_rem(rv_mul(numpow.back(), num), pm));
    denpow.push_back(rv_rem(rv_mul(denpow.back(), den), pm));
  }

  // Row-reduce the vectors one by one; the augmented tail records each row as
  // a combination of the originals, so the first degenerate row hands back
  // the dependency coefficients directly.
  std::vector<std::pair<std::size_t, std::vector<Rat>>> pivots;
  const std::size_t w = static_cast<std::size_t>(n);
  for (long i = 0; i <= n; ++i) {
    std::vector<Rat> row(w + static_cast<std::size_t>(n) + 1, Rat(0));
    RatVec prod = rv_rem(rv_mul(numpow[i], denpow[n - i]), pm);
    for (std::size_t j = 0; j < prod.size(); ++j) row[j] = prod[j];
    row[w + static_cast<std::size_t>(i)] = Rat(1);
    for (const auto& [p, r] : pivots) {
      if (row[p] == 0) continue;
      Rat f = row[p] / r[p];
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * r[j];
    }
    std::size_t lead = w;
    for (std::size_t j = 0; j < w; ++j) {
      if (row[j] != 0) {
        lead = j;
        break;
      }
    }
    if (lead == w) {
      if (i == 0) throw std::logic_error("nilpotent denominator; eliminant not square-free");
      std::vector<Int> cs;
      Int l(1);
      for (long j = 0; j <= i; ++j) l = int_lcm(l, Int(row[w + j].get_den()));
      for (long j = 0; j <= i; ++j)
        cs.push_back(Int(row[w + j].get_num()) * divexact(l, Int(row[w + j].get_den())));
      return upoly_square_free(UPoly(cs).normalized());
    }
    pivots.emplace_back(lead, std::move(row));
  }
  throw std::logic_error("no dependency found below the eliminant degree");
}

}  // namespace acsv
