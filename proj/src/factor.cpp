#include "acsv/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace acsv {

namespace {

// Polynomials over Z/l, coefficients kept in [0, l).
using MPoly = std::vector<Int>;

void mtrim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

MPoly mreduce(const UPoly& p, const Int& l) {
  MPoly r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Int v = c % l;
    if (v < 0) v += l;
    r.push_back(v);
  }
  mtrim(r);
  return r;
}

long mdeg(const MPoly& a) { return static_cast<long>(a.size()) - 1; }

Int minv_scalar(const Int& a, const Int& l) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), l.get_mpz_t()) == 0)
    throw std::logic_error("modular inverse does not exist");
  return r;
}

MPoly mscale(const MPoly& a, const Int& k, const Int& l) {
  MPoly r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(c * k % l);
  mtrim(r);
  return r;
}

MPoly madd(const MPoly& a, const MPoly& b, const Int& l) {
  MPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % l;
  mtrim(r);
  return r;
}

MPoly msub(const MPoly& a, const MPoly& b, const Int& l) {
  MPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    r[i] = (r[i] - b[i]) % l;
    if (r[i] < 0) r[i] += l;
  }
  mtrim(r);
  return r;
}

MPoly mmul(const MPoly& a, const MPoly& b, const Int& l) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) c %= l;
  mtrim(r);
  return r;
}

// Division with remainder; b need not be monic but its lc must be a unit.
void mdivmod(const MPoly& a, const MPoly& b, const Int& l, MPoly& q, MPoly& r) {
  if (b.empty()) throw std::logic_error("modular division by zero");
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Int(0));
  Int inv = minv_scalar(b.back(), l);
  while (mdeg(r) >= mdeg(b)) {
    std::size_t k = r.size() - b.size();
    Int c = r.back() * inv % l;
    for (std::size_t i = 0; i < b.size(); ++i) {
      r[k + i] = (r[k + i] - c * b[i]) % l;
      if (r[k + i] < 0) r[k + i] += l;
    }
    q[k] = c;
    mtrim(r);
  }
  mtrim(q);
}

MPoly mrem(const MPoly& a, const MPoly& b, const Int& l) {
  MPoly q, r;
  mdivmod(a, b, l, q, r);
  return r;
}

MPoly monic(const MPoly& a, const Int& l) {
  if (a.empty()) return a;
  return mscale(a, minv_scalar(a.back(), l), l);
}

MPoly mgcd(MPoly a, MPoly b, const Int& l) {
  while (!b.empty()) {
    MPoly r = mrem(a, b, l);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, l);
}

MPoly mderiv(const MPoly& a, const Int& l) {
  if (a.size() <= 1) return {};
  MPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Int(static_cast<long>(i)) % l;
  mtrim(r);
  return r;
}

MPoly mpowmod(MPoly base, Int e, const MPoly& mod, const Int& l) {
  MPoly r{Int(1)};
  base = mrem(base, mod, l);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mrem(mmul(r, base, l), mod, l);
    base = mrem(mmul(base, base, l), mod, l);
    e >>= 1;
  }
  return r;
}

// Extended gcd: s*a + t*b = 1 for coprime a, b.
void mexgcd(const MPoly& a, const MPoly& b, const Int& l, MPoly& s, MPoly& t) {
  MPoly r0 = a, r1 = b;
  MPoly s0{Int(1)}, s1{}, t0{}, t1{Int(1)};
  while (!r1.empty()) {
    MPoly q, r;
    mdivmod(r0, r1, l, q, r);
    MPoly s2 = msub(s0, mmul(q, s1, l), l);
    MPoly t2 = msub(t0, mmul(q, t1, l), l);
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (mdeg(r0) != 0) throw std::logic_error("polynomials are not coprime in exgcd");
  Int inv = minv_scalar(r0[0], l);
  s = mscale(s0, inv, l);
  t = mscale(t0, inv, l);
}

// Distinct-degree splitting of a monic square-free polynomial.
void distinct_degree(const MPoly& f, const Int& l, std::vector<std::pair<MPoly, long>>& out) {
  MPoly rest = f;
  MPoly h{Int(0), Int(1)};  // x
  long d = 0;
  while (2 * (d + 1) <= mdeg(rest)) {
    ++d;
    h = mpowmod(h, l, rest, l);
    MPoly x{Int(0), Int(1)};
    MPoly g = mgcd(msub(h, x, l), rest, l);
    if (mdeg(g) > 0) {
      out.emplace_back(g, d);
      MPoly q, r;
      mdivmod(rest, g, l, q, r);
      rest = q;
      h = mrem(h, rest, l);
    }
  }
  if (mdeg(rest) > 0) out.emplace_back(rest, mdeg(rest));
}

// Cantor-Zassenhaus equal-degree splitting (odd modulus).
void equal_degree(const MPoly& f, long d, const Int& l, Rng& rng, std::vector<MPoly>& out) {
  if (mdeg(f) == d) {
    out.push_back(monic(f, l));
    return;
  }
  Int exp = (int_pow(l, static_cast<unsigned long>(d)) - 1) / 2;
  for (;;) {
    MPoly a(static_cast<std::size_t>(mdeg(f)), Int(0));
    for (auto& c : a) c = Int(rng.uniform(0, 1000000)) % l;
    mtrim(a);
    if (mdeg(a) < 1) continue;
    MPoly b = mpowmod(a, exp, f, l);
    MPoly g = mgcd(msub(b, MPoly{Int(1)}, l), f, l);
    if (mdeg(g) > 0 && mdeg(g) < mdeg(f)) {
      equal_degree(g, d, l, rng, out);
      MPoly q, r;
      mdivmod(f, g, l, q, r);
      equal_degree(q, d, l, rng, out);
      return;
    }
  }
}

// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m),
// h monic, to the same congruences mod m^2 with h still monic.
void hensel_step(const UPoly& f, MPoly& g, MPoly& h, MPoly& s, MPoly& t, const Int& m) {
  Int m2 = m * m;
  MPoly fm = mreduce(f, m2);
  MPoly e = msub(fm, mmul(g, h, m2), m2);
  MPoly q, r;
  mdivmod(mmul(s, e, m2), h, m2, q, r);
  MPoly gs = madd(madd(g, mmul(t, e, m2), m2), mmul(q, g, m2), m2);
  MPoly hs = madd(h, r, m2);
  MPoly b = msub(madd(mmul(s, gs, m2), mmul(t, hs, m2), m2), MPoly{Int(1)}, m2);
  MPoly c, dpoly;
  mdivmod(mmul(s, b, m2), hs, m2, c, dpoly);
  MPoly ss = msub(s, dpoly, m2);
  MPoly ts = msub(msub(t, mmul(t, b, m2), m2), mmul(c, gs, m2), m2);
  g = std::move(gs);
  h = std::move(hs);
  s = std::move(ss);
  t = std::move(ts);
}

// Lifts the monic modular factors of f (f = lc * prod factors mod l) to
// monic factors mod at least l^K; returns the final modulus in `modulus`.
std::vector<MPoly> hensel_lift_list(const UPoly& f, const std::vector<MPoly>& factors,
                                    const Int& l, const Int& target, Int& modulus) {
  if (factors.size() == 1) {
    Int m = l;
    while (m < target) m = m * m;
    modulus = m;
    MPoly fm = mreduce(f, m);
    return {mscale(fm, minv_scalar(fm.back(), m), m)};
  }
  std::size_t half = factors.size() / 2;
  MPoly left{Int(1)}, right{Int(1)};
  for (std::size_t i = 0; i < half; ++i) left = mmul(left, factors[i], l);
  for (std::size_t i = half; i < factors.size(); ++i) right = mmul(right, factors[i], l);
  Int lc = f.lc() % l;
  if (lc < 0) lc += l;
  MPoly g = mscale(left, lc, l);  // carries the leading coefficient
  MPoly h = right;                // monic
  MPoly s, t;
  mexgcd(g, h, l, s, t);
  Int m = l;
  while (m < target) {
    hensel_step(f, g, h, s, t, m);
    m = m * m;
  }
  // Split recursively; each side keeps the factors of its own half.
  UPoly gf;  // g over Z, for recursion
  {
    std::vector<Int> cs(g.begin(), g.end());
    gf = UPoly(std::move(cs));
  }
  UPoly hf;
  {
    std::vector<Int> cs(h.begin(), h.end());
    hf = UPoly(std::move(cs));
  }
  std::vector<MPoly> lo(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<MPoly> hi(factors.begin() + static_cast<long>(half), factors.end());
  Int m1, m2;
  std::vector<MPoly> out = hensel_lift_list(gf, lo, l, target, m1);
  std::vector<MPoly> rhs = hensel_lift_list(hf, hi, l, target, m2);
  if (m1 != m2) throw std::logic_error("inconsistent lift moduli");
  modulus = m1;
  out.insert(out.end(), rhs.begin(), rhs.end());
  return out;
}

Int symmetric(const Int& a, const Int& m) {
  Int v = a % m;
  if (v < 0) v += m;
  if (2 * v > m) v -= m;
  return v;
}

UPoly assemble_candidate(const Int& lc, const std::vector<MPoly>& lifted,
                         const std::vector<std::size_t>& subset, const Int& m) {
  MPoly prod{lc % m};
  if (prod[0] < 0) prod[0] += m;
  for (auto i : subset) prod = mmul(prod, lifted[i], m);
  std::vector<Int> cs;
  cs.reserve(prod.size());
  for (const auto& c : prod) cs.push_back(symmetric(c, m));
  return UPoly(std::move(cs)).primitive_part();
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<UPoly> factor_square_free(const UPoly& input) {
  UPoly f = input.normalized();
  if (f.degree() < 1) return {};
  if (f.degree() == 1) return {f};

  // Prime with invertible leading coefficient and square-free image.
  Int l(2);
  for (;;) {
    mpz_nextprime(l.get_mpz_t(), l.get_mpz_t());
    if (f.lc() % l == 0) continue;
    MPoly fm = mreduce(f, l);
    if (mdeg(mgcd(fm, mderiv(fm, l), l)) == 0) break;
  }

  MPoly fmon = monic(mreduce(f, l), l);
  std::vector<std::pair<MPoly, long>> byDegree;
  distinct_degree(fmon, l, byDegree);
  Rng rng(0x5eed);
  std::vector<MPoly> modular;
  for (const auto& [g, d] : byDegree) equal_degree(g, d, l, rng, modular);
  if (modular.size() == 1) return {f};

  // Landau-Mignotte style bound on coefficients of lc(f) times any factor.
  Int maxc(0);
  for (const auto& c : f.coeffs()) {
    Int a = abs(c);
    if (a > maxc) maxc = a;
  }
  Int bound = abs(f.lc()) * maxc * Int(f.degree() + 1);
  bound <<= static_cast<unsigned long>(f.degree());
  Int target = 2 * bound + 1;

  Int modulus;
  std::vector<MPoly> lifted = hensel_lift_list(f, modular, l, target, modulus);

  std::vector<UPoly> result;
  UPoly remaining = f;
  std::vector<std::size_t> alive(lifted.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  for (std::size_t size = 1; !alive.empty() && size <= alive.size() / 2;) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    bool found = false;
    do {
      std::vector<std::size_t> subset;
      subset.reserve(size);
      for (auto i : pick) subset.push_back(alive[i]);
      UPoly cand = assemble_candidate(remaining.lc(), lifted, subset, modulus);
      if (cand.degree() < 1) continue;
      auto quot = try_divide(remaining, cand);
      if (quot) {
        result.push_back(cand.normalized());
        remaining = quot->primitive_part();
        std::vector<std::size_t> next_alive;
        for (auto i : alive) {
          if (std::find(subset.begin(), subset.end(), i) == subset.end())
            next_alive.push_back(i);
        }
        alive = std::move(next_alive);
        found = true;
        break;
      }
    } while (next_subset(pick, alive.size()));
    if (!found) ++size;
  }
  if (remaining.degree() >= 1) result.push_back(remaining.normalized());

  std::sort(result.begin(), result.end(), [](const UPoly& a, const UPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  return result;
}

}  // namespace acsv
