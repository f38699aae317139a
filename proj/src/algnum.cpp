#include "acsv/algnum.hpp"

#include "acsv/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace acsv {

namespace {

Rat rat_mid(const Rat& a, const Rat& b) { return (a + b) / 2; }

Int pow10(unsigned long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

// p(x + 1) by repeated Horner-style accumulation.
UPoly taylor_shift_1(const UPoly& p) {
  if (p.is_zero()) return p;
  std::vector<Int> c = p.coeffs();
  std::size_t n = c.size();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = n - 1; j >= i; --j) c[j - 1] += c[j];
  }
  return UPoly(std::move(c));
}

// 2^deg * p(x/2), integer coefficients.
UPoly stretch_half(const UPoly& p) {
  if (p.is_zero()) return p;
  std::vector<Int> c = p.coeffs();
  std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) c[i] <<= static_cast<unsigned long>(n - 1 - i);
  return UPoly(std::move(c));
}

int descartes_variations(const UPoly& q) {
  int v = 0, prev = 0;
  for (const auto& c : q.coeffs()) {
    int s = sign_of(c);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// Sign variation bound for roots in (0, 1): variations of (1+x)^n q(1/(1+x)).
int descartes_01(const UPoly& q) { return descartes_variations(taylor_shift_1(q.reversed())); }

// Exact quotient by (x - 1); the caller guarantees q(1) == 0.
UPoly divide_root_one(const UPoly& q) {
  std::vector<Int> c = q.coeffs();
  std::vector<Int> out(c.size() - 1, Int(0));
  Int carry(0);
  for (std::size_t i = c.size(); i-- > 1;) {
    carry += c[i];
    out[i - 1] = carry;
  }
  return UPoly(std::move(out));
}

struct DyadicInterval {
  Int numerator;      // interval (num/2^k, (num+1)/2^k) in unit coordinates
  unsigned long k;
};

struct Vca {
  std::vector<DyadicInterval> intervals;
  std::vector<Rat> exact;  // unit-coordinate rational roots found at midpoints

  void run(UPoly q, Int num, unsigned long k, int depth) {
    if (depth > 256) throw std::logic_error("root isolation recursion too deep");
    // Roots at the node endpoints were recorded by an ancestor.
    while (!q.is_zero() && q.coeff(0) == 0) {
      std::vector<Int> c(q.coeffs().begin() + 1, q.coeffs().end());
      q = UPoly(std::move(c));
    }
    while (!q.is_zero() && q.evaluate_int(Int(1)) == 0) q = divide_root_one(q);
    if (q.degree() <= 0) return;
    int v = descartes_01(q);
    if (v == 0) return;
    if (v == 1) {
      intervals.push_back({num, k});
      return;
    }
    UPoly left = stretch_half(q);        // roots of q in (0, 1/2) -> (0, 1)
    if (left.evaluate_int(Int(1)) == 0) {
      exact.push_back(Rat(2 * num + 1) / Rat(Int(1) << (k + 1)));
    }
    run(left, 2 * num, k + 1, depth + 1);
    run(taylor_shift_1(left), 2 * num + 1, k + 1, depth + 1);
  }
};

std::vector<UPoly>& chain_cache(const UPoly& p, std::vector<UPoly>& storage) {
  if (storage.empty()) storage = sturm_chain(p);
  return storage;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rectangle root counting by the argument principle.

namespace {

// Real and imaginary parts of p along z(t) = t + i*c (horizontal) or
// z(t) = c + i*t (vertical), as integer polynomials in t scaled by a common
// positive constant.
void edge_parts(const UPoly& p, const Rat& c, bool horizontal, UPoly& A, UPoly& B) {
  std::vector<Rat> re, im;
  re.assign(1, Rat(0));
  im.assign(1, Rat(0));
  auto mul_z_add = [&](const Int& coeff) {
    // (re + i*im) * z(t) + coeff
    std::size_t n = std::max(re.size(), im.size()) + 1;
    std::vector<Rat> nre(n, Rat(0)), nim(n, Rat(0));
    if (horizontal) {
      // z = t + i c
      for (std::size_t i = 0; i < re.size(); ++i) {
        nre[i + 1] += re[i];
        nim[i] += re[i] * c;
      }
      for (std::size_t i = 0; i < im.size(); ++i) {
        nim[i + 1] += im[i];
        nre[i] -= im[i] * c;
      }
    } else {
      // z = c + i t
      for (std::size_t i = 0; i < re.size(); ++i) {
        nre[i] += re[i] * c;
        nim[i + 1] += re[i];
      }
      for (std::size_t i = 0; i < im.size(); ++i) {
        nim[i] += im[i] * c;
        nre[i + 1] -= im[i];
      }
    }
    nre[0] += Rat(coeff);
    re = std::move(nre);
    im = std::move(nim);
  };
  const auto& cs = p.coeffs();
  for (std::size_t i = cs.size(); i-- > 0;) mul_z_add(cs[i]);
  // Clear denominators jointly; a positive factor preserves all signs.
  Int den(1);
  for (const auto& r : re) den = int_lcm(den, r.get_den());
  for (const auto& r : im) den = int_lcm(den, r.get_den());
  std::vector<Int> ai, bi;
  ai.reserve(re.size());
  bi.reserve(im.size());
  for (const auto& r : re) {
    Rat v = r * Rat(den);
    ai.push_back(v.get_num());
  }
  for (const auto& r : im) {
    Rat v = r * Rat(den);
    bi.push_back(v.get_num());
  }
  A = UPoly(std::move(ai));
  B = UPoly(std::move(bi));
}

// Sturm-type chain for the pair (A, B); sign variation differences give the
// Cauchy index of B/A.
std::vector<UPoly> pair_chain(const UPoly& A, const UPoly& B) {
  std::vector<UPoly> chain{A, B};
  while (true) {
    const UPoly& a = chain[chain.size() - 2];
    const UPoly& b = chain.back();
    if (b.is_zero() || b.degree() == 0) break;
    UPoly next;
    if (a.degree() < b.degree()) {
      next = -a;
    } else {
      long e = a.degree() - b.degree() + 1;
      UPoly r = pseudo_rem(a, b);
      if (r.is_zero()) {
        next = UPoly();
      } else {
        int s = (sign_of(b.lc()) < 0 && (e % 2 != 0)) ? -1 : 1;
        r = r.primitive_part();
        next = s < 0 ? r : -r;
      }
    }
    if (next.is_zero()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

// Cauchy index of B/A over [t0, t1]; requires A(t0) != 0 and A(t1) != 0.
long cauchy_index(const UPoly& A, const UPoly& B, const Rat& t0, const Rat& t1) {
  auto chain = pair_chain(A, B);
  return sign_variations_at(chain, t0) - sign_variations_at(chain, t1);
}

}  // namespace

std::optional<long> count_roots_in_rect(const UPoly& p, const Rat& xlo, const Rat& xhi,
                                        const Rat& ylo, const Rat& yhi) {
  if (p.is_zero() || p.degree() < 1) return p.degree() == 0 ? std::optional<long>(0) : std::nullopt;
  if (!(xlo < xhi) || !(ylo < yhi)) return std::nullopt;

  struct Edge {
    UPoly A, B;
    Rat t0, t1;
  };
  Edge edges[4];
  // Counterclockwise: bottom, right, top, left.
  edge_parts(p, ylo, true, edges[0].A, edges[0].B);
  edges[0].t0 = xlo;
  edges[0].t1 = xhi;
  edge_parts(p, xhi, false, edges[1].A, edges[1].B);
  edges[1].t0 = ylo;
  edges[1].t1 = yhi;
  edge_parts(p, yhi, true, edges[2].A, edges[2].B);
  edges[2].t0 = xhi;
  edges[2].t1 = xlo;
  edge_parts(p, xlo, false, edges[3].A, edges[3].B);
  edges[3].t0 = yhi;
  edges[3].t1 = ylo;

  long total = 0;
  for (auto& e : edges) {
    // A root of p on the closed edge makes the contour invalid.
    UPoly g = upoly_gcd(e.A, e.B);
    if (g.is_zero()) return std::nullopt;  // p vanishes identically on the edge
    if (g.degree() >= 1) {
      Rat lo = std::min(e.t0, e.t1), hi = std::max(e.t0, e.t1);
      if (g.sign_at(lo) == 0 || g.sign_at(hi) == 0) return std::nullopt;
      auto gch = sturm_chain(upoly_square_free(g));
      if (count_real_roots(gch, lo, hi) > 0) return std::nullopt;
    }
    if (e.A.is_zero()) continue;  // purely imaginary along the edge, no turning
    if (e.A.sign_at(e.t0) == 0 || e.A.sign_at(e.t1) == 0) return std::nullopt;
    total += cauchy_index(e.A, e.B, e.t0, e.t1);
  }
  if (total % 2 != 0) throw std::logic_error("odd winding sum over closed contour");
  long w = -total / 2;
  if (w < 0) throw std::logic_error("negative root count from winding");
  return w;
}

// ---------------------------------------------------------------------------
// Real root isolation.

namespace {

// Affine composition p(a*x + b) for integers a, b.
UPoly compose_affine(const UPoly& p, const Int& a, const Int& b) {
  UPoly acc;
  UPoly lin(std::vector<Int>{b, a});
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * lin + UPoly(p.coeffs()[i]);
  }
  return acc;
}

}  // namespace

std::vector<AlgebraicNumber> isolate_real_roots(const UPoly& p) {
  if (p.is_zero()) throw std::logic_error("root isolation of the zero polynomial");
  UPoly s = upoly_square_free(p);
  std::vector<AlgebraicNumber> out;
  if (s.degree() < 1) return out;
  if (s.degree() == 1) {
    out.push_back(AlgebraicNumber::from_rat(Rat(-s.coeff(0)) / Rat(s.coeff(1))));
    return out;
  }
  Rat bound = s.root_bound();
  Int b = bound.get_num();  // power of two
  // Map (-b, b) onto (0, 1): q(x) = s(2b*x - b).
  UPoly q = compose_affine(s, 2 * b, -b);
  Vca vca;
  vca.run(q, Int(0), 0, 0);

  std::vector<Rat> exact;
  exact.reserve(vca.exact.size());
  for (const auto& u : vca.exact) exact.push_back(u * Rat(2 * b) - Rat(b));

  auto chain = sturm_chain(s);
  struct Entry {
    Rat key, lo, hi;
    bool point;
  };
  std::vector<Entry> entries;
  for (const auto& r : exact) entries.push_back({r, r, r, true});
  for (const auto& iv : vca.intervals) {
    Rat lo = Rat(iv.numerator) / Rat(Int(1) << iv.k) * Rat(2 * b) - Rat(b);
    Rat hi = Rat(iv.numerator + 1) / Rat(Int(1) << iv.k) * Rat(2 * b) - Rat(b);
    // Endpoints that are themselves roots (recorded separately) get nudged
    // inward without crossing the interval's own root.  The right endpoint
    // goes first: the counting interval is half-open on that side.
    for (int j = 2; s.sign_at(hi) == 0; ++j) {
      Rat cand = hi - (hi - lo) / Rat(Int(1) << j);
      if (s.sign_at(cand) != 0 && count_real_roots(chain, lo, cand) == 1) hi = cand;
      if (j > 64) throw std::logic_error("failed to nudge isolation endpoint");
    }
    for (int j = 2; s.sign_at(lo) == 0; ++j) {
      Rat cand = lo + (hi - lo) / Rat(Int(1) << j);
      if (s.sign_at(cand) != 0 && count_real_roots(chain, cand, hi) == 1) lo = cand;
      if (j > 64) throw std::logic_error("failed to nudge isolation endpoint");
    }
    entries.push_back({rat_mid(lo, hi), lo, hi, false});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });
  // Neighboring intervals may share a (non-root) endpoint; pull the right
  // neighbor's lower bound inward so the closed regions are disjoint.
  for (std::size_t i = 1; i < entries.size(); ++i) {
    Entry& e = entries[i];
    if (e.point || entries[i - 1].point) continue;
    if (e.lo > entries[i - 1].hi) continue;
    for (int j = 2;; ++j) {
      Rat cand = e.lo + (e.hi - e.lo) / Rat(Int(1) << j);
      if (s.sign_at(cand) != 0 && count_real_roots(chain, cand, e.hi) == 1) {
        e.lo = cand;
        break;
      }
      if (j > 64) throw std::logic_error("failed to separate adjacent intervals");
    }
  }
  for (const auto& e : entries) {
    out.push_back(e.point ? AlgebraicNumber::from_rat(e.lo)
                          : AlgebraicNumber::make_real(s, e.lo, e.hi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complex root isolation.

namespace {

// Deterministic fractions used to pick subdivision cuts that avoid
// degenerate contours.
const int kCutNum[] = {1, 7, 9, 13, 19, 27, 37, 23, 41, 55, 29, 35, 43, 53, 11, 21};
const int kCutDen[] = {2, 16, 16, 32, 32, 64, 64, 64, 64, 64, 64, 64, 64, 64, 16, 32};

Rat cut_candidate(const Rat& lo, const Rat& hi, int j) {
  return lo + (hi - lo) * Rat(kCutNum[j]) / Rat(kCutDen[j]);
}

constexpr int kCutCandidates = 16;

struct CCell {
  Rat xlo, xhi, ylo, yhi;  // ylo == 0 marks a cell sitting on the real axis
  long count;              // nonreal roots with Im > 0 strictly inside
};

// Counts nonreal upper-half roots in the cell.  Axis cells use the
// conjugate-symmetric rectangle minus the real roots inside.
std::optional<long> upper_count(const UPoly& s, const std::vector<UPoly>& chain,
                                const CCell& c) {
  if (c.ylo > 0) return count_roots_in_rect(s, c.xlo, c.xhi, c.ylo, c.yhi);
  auto sym = count_roots_in_rect(s, c.xlo, c.xhi, -c.yhi, c.yhi);
  if (!sym) return std::nullopt;
  if (s.sign_at(c.xlo) == 0 || s.sign_at(c.xhi) == 0) return std::nullopt;
  long reals = count_real_roots(chain, c.xlo, c.xhi);
  if ((*sym - reals) % 2 != 0) throw std::logic_error("asymmetric conjugate count");
  return (*sym - reals) / 2;
}

}  // namespace

std::vector<AlgebraicNumber> isolate_complex_roots(const UPoly& p) {
  if (p.is_zero()) throw std::logic_error("root isolation of the zero polynomial");
  UPoly s = upoly_square_free(p);
  std::vector<AlgebraicNumber> reals = isolate_real_roots(s);
  long pairs = (s.degree() - static_cast<long>(reals.size())) / 2;
  std::vector<AlgebraicNumber> out = std::move(reals);
  if (pairs == 0) return out;

  auto chain = sturm_chain(s);
  Rat b = s.root_bound();

  // The outer contour must avoid degeneracies; widen until it does.
  std::vector<CCell> work;
  for (int j = 0; j < kCutCandidates; ++j) {
    Rat bj = b * (Rat(1) + Rat(1, 1 + j));
    CCell top{-bj, bj, Rat(0), bj, 0};
    auto c = upper_count(s, chain, top);
    if (c && *c == pairs) {
      top.count = *c;
      work.push_back(top);
      break;
    }
  }
  if (work.empty()) throw std::logic_error("failed to initialize complex isolation");

  std::vector<CCell> leaves;
  int steps = 0;
  while (!work.empty()) {
    if (++steps > 20000) throw std::logic_error("complex isolation did not converge");
    CCell c = work.back();
    work.pop_back();
    if (c.count == 0) continue;
    if (c.count == 1 && c.ylo > 0) {
      leaves.push_back(c);
      continue;
    }
    bool split_x = (c.xhi - c.xlo) > (c.yhi - c.ylo);
    bool done = false;
    for (int j = 0; j < kCutCandidates && !done; ++j) {
      CCell a = c, d = c;
      if (split_x) {
        Rat m = cut_candidate(c.xlo, c.xhi, j);
        a.xhi = m;
        d.xlo = m;
      } else {
        Rat m = cut_candidate(c.ylo, c.yhi, j);
        a.yhi = m;
        d.ylo = m;
      }
      auto ca = upper_count(s, chain, a);
      if (!ca) continue;
      auto cd = upper_count(s, chain, d);
      if (!cd) continue;
      if (*ca + *cd != c.count) throw std::logic_error("subdivision lost a root");
      a.count = *ca;
      d.count = *cd;
      work.push_back(a);
      work.push_back(d);
      done = true;
    }
    if (!done) throw std::logic_error("no valid subdivision cut found");
  }

  std::sort(leaves.begin(), leaves.end(), [](const CCell& a, const CCell& b) {
    if (a.xlo != b.xlo) return a.xlo < b.xlo;
    return a.ylo < b.ylo;
  });
  for (const auto& c : leaves) {
    AlgebraicNumber upper = AlgebraicNumber::make_complex(s, {c.xlo, c.xhi, c.ylo, c.yhi});
    out.push_back(upper);
    out.push_back(an_conj(upper));
  }
  return out;
}

// ---------------------------------------------------------------------------
// AlgebraicNumber basics.

AlgebraicNumber::AlgebraicNumber() {
  p_ = UPoly::x();
  real_ = true;
  cell_ = std::make_shared<Cell>();
  cell_->r = {Rat(0), Rat(0), Rat(0), Rat(0)};
}

AlgebraicNumber AlgebraicNumber::from_rat(const Rat& v) {
  AlgebraicNumber a;
  a.p_ = UPoly(std::vector<Int>{-v.get_num(), v.get_den()});
  a.cell_->r = {v, v, Rat(0), Rat(0)};
  return a;
}

AlgebraicNumber AlgebraicNumber::from_int(long v) { return from_rat(Rat(v)); }

AlgebraicNumber AlgebraicNumber::make_real(const UPoly& square_free, const Rat& lo,
                                           const Rat& hi) {
  if (lo == hi) {
    if (square_free.sign_at(lo) != 0) throw std::logic_error("point region is not a root");
    return from_rat(lo);
  }
  if (square_free.sign_at(lo) == 0 || square_free.sign_at(hi) == 0)
    throw std::logic_error("region endpoint is a root");
  auto chain = sturm_chain(square_free);
  if (count_real_roots(chain, lo, hi) != 1)
    throw std::logic_error("region does not isolate one real root");
  AlgebraicNumber a;
  a.p_ = square_free.normalized();
  a.real_ = true;
  a.cell_ = std::make_shared<Cell>();
  a.cell_->r = {lo, hi, Rat(0), Rat(0)};
  return a;
}

AlgebraicNumber AlgebraicNumber::make_complex(const UPoly& square_free, const Region& box) {
  if (!(box.ylo > 0) && !(box.yhi < 0))
    throw std::logic_error("complex region touches the real axis");
  auto n = count_roots_in_rect(square_free, box.xlo, box.xhi, box.ylo, box.yhi);
  if (!n || *n != 1) throw std::logic_error("region does not isolate one complex root");
  AlgebraicNumber a;
  a.p_ = square_free.normalized();
  a.real_ = false;
  a.cell_ = std::make_shared<Cell>();
  a.cell_->r = box;
  return a;
}

bool AlgebraicNumber::is_rational() const {
  if (p_.degree() == 1) return true;
  std::lock_guard<std::mutex> g(cell_->m);
  return cell_->r.is_point();
}

Rat AlgebraicNumber::rational_value() const {
  if (p_.degree() == 1) return Rat(-p_.coeff(0)) / Rat(p_.coeff(1));
  std::lock_guard<std::mutex> g(cell_->m);
  if (!cell_->r.is_point()) throw std::logic_error("not a rational value");
  return cell_->r.xlo;
}

Region AlgebraicNumber::region() const {
  std::lock_guard<std::mutex> g(cell_->m);
  return cell_->r;
}

void AlgebraicNumber::refine() const {
  std::lock_guard<std::mutex> g(cell_->m);
  Region& r = cell_->r;
  if (r.is_point()) return;
  if (real_) {
    Rat m = rat_mid(r.xlo, r.xhi);
    if (p_.sign_at(m) == 0) {
      r.xlo = r.xhi = m;
      return;
    }
    if (p_.sign_at(r.xlo) * p_.sign_at(m) < 0) {
      r.xhi = m;
    } else {
      r.xlo = m;
    }
    return;
  }
  // One quadtree round with degeneracy-avoiding cuts.
  for (int jx = 0; jx < kCutCandidates; ++jx) {
    Rat mx = cut_candidate(r.xlo, r.xhi, jx);
    for (int jy = 0; jy < kCutCandidates; ++jy) {
      Rat my = cut_candidate(r.ylo, r.yhi, jy);
      Rat xs[3] = {r.xlo, mx, r.xhi};
      Rat ys[3] = {r.ylo, my, r.yhi};
      long found = -1;
      long total = 0;
      bool ok = true;
      Region pick;
      for (int qx = 0; qx < 2 && ok; ++qx) {
        for (int qy = 0; qy < 2 && ok; ++qy) {
          auto c = count_roots_in_rect(p_, xs[qx], xs[qx + 1], ys[qy], ys[qy + 1]);
          if (!c) {
            ok = false;
            break;
          }
          total += *c;
          if (*c == 1) {
            found = 1;
            pick = {xs[qx], xs[qx + 1], ys[qy], ys[qy + 1]};
          }
        }
      }
      if (ok && total == 1 && found == 1) {
        r = pick;
        return;
      }
    }
  }
  throw std::logic_error("failed to refine complex region");
}

void AlgebraicNumber::refine_below(const Rat& width) const {
  for (int i = 0; i < 4096; ++i) {
    Region r = region();
    if (r.is_point()) return;
    if (r.xhi - r.xlo <= width && r.yhi - r.ylo <= width) return;
    refine();
  }
  throw std::logic_error("refinement did not reach the requested width");
}

FInterval AlgebraicNumber::real_enclosure(long prec) const {
  if (!real_) throw std::logic_error("real enclosure of a nonreal number");
  Region r = region();
  return FInterval::from_rats(r.xlo, r.xhi, prec);
}

CInterval AlgebraicNumber::enclosure(long prec) const {
  Region r = region();
  return {FInterval::from_rats(r.xlo, r.xhi, prec), FInterval::from_rats(r.ylo, r.yhi, prec)};
}

namespace {

CInterval upoly_eval_ci(const UPoly& p, const CInterval& z, long prec) {
  CInterval acc{FInterval::from_long(0, prec), FInterval::from_long(0, prec)};
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * z;
    if (c[k] != 0) acc.re = acc.re + FInterval::from_rat(Rat(c[k]), prec);
  }
  return acc;
}

FInterval point_mid(const FInterval& x, long prec) {
  FInterval m(prec);
  mpfr_add(m.lo, x.lo, x.hi, MPFR_RNDN);
  mpfr_div_2ui(m.lo, m.lo, 1, MPFR_RNDN);
  mpfr_set(m.hi, m.lo, MPFR_RNDN);
  return m;
}

bool intersect_into(FInterval& a, const FInterval& b) {
  if (mpfr_cmp(a.lo, b.lo) < 0) mpfr_set(a.lo, b.lo, MPFR_RNDD);
  if (mpfr_cmp(a.hi, b.hi) > 0) mpfr_set(a.hi, b.hi, MPFR_RNDU);
  return mpfr_cmp(a.lo, a.hi) <= 0;
}

// Rounding in the midpoint computation can land a hair outside the box; the
// Newton step needs its expansion point inside.
void clamp_point_into(FInterval& m, const FInterval& x) {
  if (mpfr_cmp(m.lo, x.lo) < 0) mpfr_set(m.lo, x.lo, MPFR_RNDN);
  if (mpfr_cmp(m.lo, x.hi) > 0) mpfr_set(m.lo, x.hi, MPFR_RNDN);
  mpfr_set(m.hi, m.lo, MPFR_RNDN);
}

void box_width_ub(const CInterval& z, mpfr_t w) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(w));
  mpfr_sub(w, z.re.hi, z.re.lo, MPFR_RNDU);
  mpfr_sub(t, z.im.hi, z.im.lo, MPFR_RNDU);
  mpfr_add(w, w, t, MPFR_RNDU);
  mpfr_clear(t);
}

bool box_subset(const CInterval& a, const CInterval& b) {
  return mpfr_cmp(a.re.lo, b.re.lo) >= 0 && mpfr_cmp(a.re.hi, b.re.hi) <= 0 &&
         mpfr_cmp(a.im.lo, b.im.lo) >= 0 && mpfr_cmp(a.im.hi, b.im.hi) <= 0;
}

// Unvalidated Newton iteration from the middle of the isolating region,
// followed by one rigorous verification step on a small box around the
// limit.  The region can be enormous (the root bound of a large-coefficient
// polynomial), where subdividing it exactly is hopeless; floating point gets
// to the root in microseconds and the verification needs no exact
// arithmetic.  Returns a certified enclosure of this region's root, or
// nothing when the iteration escapes the region or the checks fail, in
// which case the caller falls back to exact subdivision.
std::optional<CInterval> newton_fast_box(const UPoly& p, const UPoly& dp, const Region& reg,
                                         bool real_root, const CInterval& X, long prec) {
  CInterval m{point_mid(X.re, prec), point_mid(X.im, prec)};
  mpfr_t du, eps, t;
  mpfr_init2(du, 64);
  mpfr_init2(eps, 64);
  mpfr_init2(t, 64);
  auto cleanup = [&]() {
    mpfr_clear(du);
    mpfr_clear(eps);
    mpfr_clear(t);
  };
  bool converged = false;
  for (int step = 0; step < 4096; ++step) {
    if (!m.re.is_finite() || !m.im.is_finite()) break;
    CInterval pm = upoly_eval_ci(p, m, prec);
    CInterval dm = upoly_eval_ci(dp, m, prec);
    if (dm.modulus_squared().contains_zero()) break;
    CInterval delta = pm / dm;
    CInterval next = m - delta;
    m = {point_mid(next.re, prec), point_mid(next.im, prec)};
    // |delta| against resolution at the current point.
    mpfr_sqrt(du, delta.modulus_squared().hi, MPFR_RNDU);
    mpfr_hypot(eps, m.re.lo, m.im.lo, MPFR_RNDU);
    mpfr_add_ui(eps, eps, 1, MPFR_RNDU);
    mpfr_mul_2si(eps, eps, -(prec - 24), MPFR_RNDU);
    if (mpfr_cmp(du, eps) <= 0) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    cleanup();
    return std::nullopt;
  }

  // Candidate box around the limit.
  mpfr_mul_2ui(du, du, 4, MPFR_RNDU);
  if (mpfr_cmp(du, eps) < 0) mpfr_set(du, eps, MPFR_RNDU);
  CInterval B = m;
  mpfr_sub(B.re.lo, B.re.lo, du, MPFR_RNDD);
  mpfr_add(B.re.hi, B.re.hi, du, MPFR_RNDU);
  if (!real_root) {
    mpfr_sub(B.im.lo, B.im.lo, du, MPFR_RNDD);
    mpfr_add(B.im.hi, B.im.hi, du, MPFR_RNDU);
  }

  // The certified root is this region's root only if the box stays inside
  // the region, so round the region inward.
  CInterval RI{FInterval(prec), FInterval(prec)};
  mpfr_set_q(RI.re.lo, reg.xlo.get_mpq_t(), MPFR_RNDU);
  mpfr_set_q(RI.re.hi, reg.xhi.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(RI.im.lo, reg.ylo.get_mpq_t(), MPFR_RNDU);
  mpfr_set_q(RI.im.hi, reg.yhi.get_mpq_t(), MPFR_RNDD);
  if (mpfr_cmp(RI.re.lo, RI.re.hi) > 0 || mpfr_cmp(RI.im.lo, RI.im.hi) > 0 ||
      !box_subset(B, RI)) {
    cleanup();
    return std::nullopt;
  }

  CInterval D = upoly_eval_ci(dp, B, prec);
  if (D.modulus_squared().contains_zero()) {
    cleanup();
    return std::nullopt;
  }
  CInterval pm = upoly_eval_ci(p, m, prec);
  std::optional<CInterval> out;
  if (real_root) {
    // One-dimensional interval Newton: containment proves existence, and
    // the nonvanishing derivative proves uniqueness.
    CInterval N = m - pm / D;
    CInterval Y = B;
    if (box_subset(N, B) && intersect_into(Y.re, N.re) && intersect_into(Y.im, N.im)) out = Y;
  } else {
    // Krawczyk operator with the midpoint derivative as preconditioner;
    // strict containment proves existence and uniqueness in the box.
    CInterval dm = upoly_eval_ci(dp, m, prec);
    if (!dm.modulus_squared().contains_zero()) {
      CInterval one{FInterval::from_long(1, prec), FInterval::from_long(0, prec)};
      CInterval K = m - pm / dm + (one - D / dm) * (B - m);
      bool strict = mpfr_cmp(K.re.lo, B.re.lo) > 0 && mpfr_cmp(K.re.hi, B.re.hi) < 0 &&
                    mpfr_cmp(K.im.lo, B.im.lo) > 0 && mpfr_cmp(K.im.hi, B.im.hi) < 0;
      CInterval Y = B;
      if (strict && intersect_into(Y.re, K.re) && intersect_into(Y.im, K.im)) out = Y;
    }
  }
  cleanup();
  return out;
}

}  // namespace

CInterval AlgebraicNumber::tight_enclosure(long prec) const {
  if (p_.degree() <= 1) return enclosure(prec);
  {
    std::lock_guard<std::mutex> g(cell_->m);
    if (cell_->r.is_point())
      return {FInterval::from_rats(cell_->r.xlo, cell_->r.xhi, prec),
              FInterval::from_rats(cell_->r.ylo, cell_->r.yhi, prec)};
  }
  UPoly dp = p_.derivative();
  CInterval X = enclosure(prec);
  {
    Region reg;
    {
      std::lock_guard<std::mutex> g(cell_->m);
      reg = cell_->r;
    }
    if (auto fast = newton_fast_box(p_, dp, reg, real_, X, prec)) X = *fast;
  }
  mpfr_t wx, wy, th;
  mpfr_init2(wx, 64);
  mpfr_init2(wy, 64);
  mpfr_init2(th, 64);
  int stagnant = 0;
  for (int it = 0; it < 512 && stagnant < 4; ++it) {
    box_width_ub(X, wx);
    // Done when the width sits at the working precision's resolution.
    mpfr_abs(th, X.re.lo, MPFR_RNDU);
    for (const mpfr_t* e : {&X.re.hi, &X.im.lo, &X.im.hi}) {
      mpfr_abs(wy, *e, MPFR_RNDU);
      mpfr_max(th, th, wy, MPFR_RNDU);
    }
    mpfr_add_ui(th, th, 1, MPFR_RNDU);
    mpfr_mul_2si(th, th, -(prec - 16), MPFR_RNDU);
    if (mpfr_cmp(wx, th) <= 0) break;

    bool newton_strong = false;
    CInterval D = upoly_eval_ci(dp, X, prec);
    if (!D.modulus_squared().contains_zero()) {
      CInterval M{point_mid(X.re, prec), point_mid(X.im, prec)};
      clamp_point_into(M.re, X.re);
      clamp_point_into(M.im, X.im);
      CInterval N = M - upoly_eval_ci(p_, M, prec) / D;
      CInterval Y = X;
      if (intersect_into(Y.re, N.re) && intersect_into(Y.im, N.im)) {
        X = Y;
        box_width_ub(X, wy);
        mpfr_mul_2ui(wy, wy, 1, MPFR_RNDD);
        newton_strong = mpfr_cmp(wy, wx) < 0;  // at least halved
      }
    }
    if (newton_strong) {
      stagnant = 0;
      continue;
    }
    // Before the operator bites, exact subdivision makes the guaranteed
    // progress.  Both boxes hold the root, so intersecting keeps whichever
    // bound is better per side.
    refine();
    CInterval Z = enclosure(prec);
    if (intersect_into(Z.re, X.re) && intersect_into(Z.im, X.im)) X = Z;
    // Progress means shrinking by at least 8/7, so an exact halving by the
    // subdivision above always counts.
    box_width_ub(X, wy);
    mpfr_mul_2ui(wy, wy, 3, MPFR_RNDD);
    mpfr_mul_ui(wx, wx, 7, MPFR_RNDU);
    stagnant = mpfr_cmp(wy, wx) < 0 ? 0 : stagnant + 1;
  }
  mpfr_clear(wx);
  mpfr_clear(wy);
  mpfr_clear(th);
  return X;
}

namespace {

Rat region_scale(const Region& r) {
  Rat s = Rat(abs(r.xlo)) + Rat(abs(r.xhi)) + Rat(abs(r.ylo)) + Rat(abs(r.yhi)) + 1;
  return s;
}

}  // namespace

std::string AlgebraicNumber::decimal(int digits) const {
  long prec = static_cast<long>((digits + 12) * 4);
  Rat eps = Rat(1, pow10(static_cast<unsigned long>(digits) + 4));
  CInterval box = tight_enclosure(prec);
  Rat w = box.re.hi_rat() - box.re.lo_rat() + box.im.hi_rat() - box.im.lo_rat();
  if (w > eps) {
    // Newton could not engage; fall back to exact refinement scaled by the
    // magnitude.
    refine_below(eps * region_scale(region()));
    box = enclosure(prec);
  }
  return box.re.mid_decimal(digits);
}

std::string AlgebraicNumber::decimal_imag(int digits) const {
  long prec = static_cast<long>((digits + 12) * 4);
  Rat eps = Rat(1, pow10(static_cast<unsigned long>(digits) + 4));
  CInterval box = tight_enclosure(prec);
  Rat w = box.re.hi_rat() - box.re.lo_rat() + box.im.hi_rat() - box.im.lo_rat();
  if (w > eps) {
    refine_below(eps * region_scale(region()));
    box = enclosure(prec);
  }
  return box.im.mid_decimal(digits);
}

// ---------------------------------------------------------------------------
// Certification of arithmetic results.

namespace {

std::optional<long> count_real_closed(const UPoly& s, std::vector<UPoly>& chain_store,
                                      const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) return std::nullopt;
  if (s.sign_at(lo) == 0 || s.sign_at(hi) == 0) return std::nullopt;
  auto& chain = chain_cache(s, chain_store);
  return count_real_roots(chain, lo, hi);
}

// Rational root of s inside (lo, hi) reachable from the midpoint through
// continued-fraction convergents; height-capped.
std::optional<Rat> rational_root_inside(const UPoly& s, const Rat& lo, const Rat& hi) {
  Rat m = rat_mid(lo, hi);
  // Convergents of m.
  Int num = m.get_num(), den = m.get_den();
  Int p0(0), q0(1), p1(1), q1(0);
  Int a, r;
  Int height = pow10(15);
  bool negative = num < 0;
  if (negative) num = -num;
  while (den != 0 && q1 < height) {
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    Rat cand = Rat(negative ? -p2 : p2) / Rat(q2);
    cand.canonicalize();
    if (lo < cand && cand < hi && s.sign_at(cand) == 0) return cand;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    num = den;
    den = r;
  }
  return std::nullopt;
}

}  // namespace

namespace {

// Exact value of the endpoint after outward rounding to the given precision.
// The approximation loops hand over boxes whose endpoints carry tens of
// thousands of bits; counting routines evaluate sign chains at these
// rationals, and their cost scales with the height, so shed the excess
// precision the certificate does not need.
Rat endpoint_rat(const mpfr_t v, long prec, mpfr_rnd_t dir) {
  if (!mpfr_number_p(v)) throw std::logic_error("non-finite interval endpoint");
  Rat q;
  if (mpfr_get_prec(v) <= prec) {
    mpfr_get_q(q.get_mpq_t(), v);
    return q;
  }
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set(t, v, dir);
  mpfr_get_q(q.get_mpq_t(), t);
  mpfr_clear(t);
  return q;
}

}  // namespace

AlgebraicNumber certify_root(const UPoly& square_free,
                             const std::function<CInterval(int)>& approx, bool known_real) {
  UPoly s = square_free.normalized();
  if (s.degree() < 1) throw std::logic_error("certification against a constant polynomial");
  if (s.degree() == 1) return AlgebraicNumber::from_rat(Rat(-s.coeff(0)) / Rat(s.coeff(1)));
  std::vector<UPoly> chain_store;
  for (int round = 0; round < 64; ++round) {
    CInterval box = approx(round);
    if (!box.re.is_finite() || !box.im.is_finite()) continue;
    long ep = 192 + 64L * round;
    Rat xlo = endpoint_rat(box.re.lo, ep, MPFR_RNDD), xhi = endpoint_rat(box.re.hi, ep, MPFR_RNDU);
    Rat ylo = endpoint_rat(box.im.lo, ep, MPFR_RNDD), yhi = endpoint_rat(box.im.hi, ep, MPFR_RNDU);
    bool maybe_real = known_real || (ylo <= 0 && yhi >= 0);

    if (maybe_real) {
      // Try a one-dimensional certificate on the real axis first.
      Rat pad = (xhi - xlo + Rat(abs(yhi)) + Rat(abs(ylo))) / 64;
      if (pad == 0) pad = Rat(1, 1048576);
      for (int j = 0; j < 8; ++j) {
        Rat lo = xlo - pad, hi = xhi + pad;
        auto cnt = count_real_closed(s, chain_store, lo, hi);
        if (cnt && *cnt == 1) {
          if (known_real) {
            auto q = rational_root_inside(s, lo, hi);
            if (q) return AlgebraicNumber::from_rat(*q);
            return AlgebraicNumber::make_real(s, lo, hi);
          }
          // Unknown realness: a symmetric box holding exactly one root,
          // which is real, pins the value to that root.
          Rat h = Rat(abs(ylo)) + Rat(abs(yhi)) + pad;
          auto w = count_roots_in_rect(s, lo, hi, -h, h);
          if (w && *w == 1) {
            auto q = rational_root_inside(s, lo, hi);
            if (q) return AlgebraicNumber::from_rat(*q);
            return AlgebraicNumber::make_real(s, lo, hi);
          }
        }
        pad = pad / 3 + (xhi - xlo) / Rat(Int(1) << (j + 7));
        if (pad == 0) pad = Rat(1, Int(1) << (20 + j));
      }
    }
    if (!known_real && (ylo > 0 || yhi < 0)) {
      // Certified nonreal: grow the box slightly until the contour is clean.
      Rat padx = (xhi - xlo) / 64, pady = (yhi - ylo) / 64;
      if (padx == 0) padx = pady;
      if (pady == 0) pady = padx;
      if (padx == 0) {
        padx = Rat(1, 1048576);
        pady = padx;
      }
      for (int j = 0; j < 8; ++j) {
        Rat bx0 = xlo - padx, bx1 = xhi + padx;
        Rat by0 = ylo - pady, by1 = yhi + pady;
        if (ylo > 0 && by0 <= 0) by0 = ylo / 2;
        if (yhi < 0 && by1 >= 0) by1 = yhi / 2;
        auto w = count_roots_in_rect(s, bx0, bx1, by0, by1);
        if (w && *w == 1)
          return AlgebraicNumber::make_complex(s, {bx0, bx1, by0, by1});
        if (w && *w > 1) break;  // need a tighter approximation
        padx = padx * Rat(3, 7);
        pady = pady * Rat(5, 11);
      }
    }
  }
  throw std::logic_error("certification failed to converge");
}

// ---------------------------------------------------------------------------
// Arithmetic.

namespace {

UPoly strip_zero_roots(const UPoly& p) {
  std::size_t k = 0;
  while (k < p.coeffs().size() && p.coeffs()[k] == 0) ++k;
  if (k == 0) return p;
  std::vector<Int> c(p.coeffs().begin() + static_cast<long>(k), p.coeffs().end());
  return UPoly(std::move(c));
}

// Annihilator of a + b via Res_v(pa(v), pb(x - v)).
UPoly sum_annihilator(const UPoly& pa, const UPoly& pb) {
  BPoly x_minus_v(std::vector<UPoly>{UPoly::x(), UPoly(Int(-1))});
  BPoly acc;  // pb(x - v)
  BPoly powv(std::vector<UPoly>{UPoly(Int(1))});
  for (std::size_t k = 0; k < pb.coeffs().size(); ++k) {
    if (k > 0) powv = powv * x_minus_v;
    acc = acc + powv.scaled(UPoly(pb.coeffs()[k]));
  }
  return bpoly_resultant_v(BPoly::from_univariate_in_v(pa), acc);
}

// Annihilator of a * b via Res_v(pa(v), v^m pb(x/v)).
UPoly product_annihilator(const UPoly& pa, const UPoly& pb) {
  std::size_t m = pb.coeffs().size() - 1;
  std::vector<UPoly> cs(m + 1);
  for (std::size_t k = 0; k <= m; ++k) cs[m - k] = UPoly(pb.coeffs()[k]).shifted(k);
  return bpoly_resultant_v(BPoly::from_univariate_in_v(pa), BPoly(std::move(cs)));
}

// p(x - r), denominators cleared.
UPoly shift_by_rat(const UPoly& p, const Rat& r) {
  Int n = r.get_num(), d = r.get_den();
  UPoly lin(std::vector<Int>{-n, d});  // d*x - n
  UPoly acc;
  std::size_t deg = p.coeffs().size() - 1;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * lin;
    acc = acc + UPoly(p.coeffs()[i] * int_pow(d, static_cast<unsigned long>(deg - i)));
  }
  return acc;
}

// Annihilator of a * (n/d) from p(x*d/n); requires n != 0.
UPoly scale_by_rat(const UPoly& p, const Rat& r) {
  Int n = r.get_num(), d = r.get_den();
  std::size_t deg = p.coeffs().size() - 1;
  std::vector<Int> c(p.coeffs());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= int_pow(d, static_cast<unsigned long>(k)) *
            int_pow(n, static_cast<unsigned long>(deg - k));
  }
  return UPoly(std::move(c));
}

CInterval op_enclosures(const AlgebraicNumber& a, const AlgebraicNumber& b, int round,
                        bool add) {
  long prec = 128 + 64L * round;
  CInterval ea = a.tight_enclosure(prec), eb = b.tight_enclosure(prec);
  return add ? ea + eb : ea * eb;
}

CInterval inverse_enclosure(const CInterval& z) {
  FInterval m2 = z.modulus_squared();
  if (m2.contains_zero()) throw std::logic_error("inverse enclosure straddles zero");
  return {z.re / m2, (-z.im) / m2};
}

}  // namespace

AlgebraicNumber an_add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational())
    return AlgebraicNumber::from_rat(a.rational_value() + b.rational_value());
  if (a.is_rational()) return an_add(b, a);
  if (b.is_rational()) {
    Rat r = b.rational_value();
    UPoly ann = upoly_square_free(shift_by_rat(a.poly(), r));
    AlgebraicNumber ac = a;
    return certify_root(
        ann,
        [ac, r](int round) {
          long prec = 128 + 64L * round;
          return ac.tight_enclosure(prec) + CInterval{FInterval::from_rat(r, prec),
                                                      FInterval::from_long(0, prec)};
        },
        ac.is_real());
  }
  UPoly ann = upoly_square_free(sum_annihilator(a.poly(), b.poly()));
  AlgebraicNumber ac = a, bc = b;
  return certify_root(
      ann, [ac, bc](int round) { return op_enclosures(ac, bc, round, true); },
      a.is_real() && b.is_real());
}

AlgebraicNumber an_neg(const AlgebraicNumber& a) {
  if (a.is_rational()) return AlgebraicNumber::from_rat(-a.rational_value());
  Region r = a.region();
  UPoly q = upoly_square_free(a.poly().compose_neg_x());
  if (a.is_real()) return AlgebraicNumber::make_real(q, -r.xhi, -r.xlo);
  return AlgebraicNumber::make_complex(q, {-r.xhi, -r.xlo, -r.yhi, -r.ylo});
}

AlgebraicNumber an_sub(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return an_add(a, an_neg(b));
}

AlgebraicNumber an_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational())
    return AlgebraicNumber::from_rat(a.rational_value() * b.rational_value());
  if (a.is_rational()) return an_mul(b, a);
  if (b.is_rational()) {
    Rat r = b.rational_value();
    if (r == 0) return AlgebraicNumber::from_rat(Rat(0));
    UPoly ann = upoly_square_free(scale_by_rat(a.poly(), r));
    AlgebraicNumber ac = a;
    return certify_root(
        ann,
        [ac, r](int round) {
          long prec = 128 + 64L * round;
          CInterval e = ac.tight_enclosure(prec);
          CInterval rr{FInterval::from_rat(r, prec), FInterval::from_long(0, prec)};
          return e * rr;
        },
        ac.is_real());
  }
  UPoly pa = strip_zero_roots(a.poly());
  UPoly pb = strip_zero_roots(b.poly());
  UPoly ann = upoly_square_free(product_annihilator(pa, pb));
  AlgebraicNumber ac = a, bc = b;
  return certify_root(
      ann, [ac, bc](int round) { return op_enclosures(ac, bc, round, false); },
      a.is_real() && b.is_real());
}

AlgebraicNumber an_inv(const AlgebraicNumber& a) {
  if (a.is_rational()) {
    Rat v = a.rational_value();
    if (v == 0) throw std::logic_error("inverse of zero");
    return AlgebraicNumber::from_rat(1 / v);
  }
  if (an_is_zero(a)) throw std::logic_error("inverse of zero");
  UPoly ann = upoly_square_free(strip_zero_roots(a.poly()).reversed());
  AlgebraicNumber ac = a;
  return certify_root(
      ann,
      [ac](int round) {
        long prec = 128 + 64L * round;
        CInterval e = ac.tight_enclosure(prec);
        for (int extra = 0; e.modulus_squared().contains_zero() && extra < 512; ++extra) {
          ac.refine();
          e = ac.tight_enclosure(prec);
        }
        return inverse_enclosure(e);
      },
      a.is_real());
}

AlgebraicNumber an_conj(const AlgebraicNumber& a) {
  if (a.is_real()) return a;
  Region r = a.region();
  return AlgebraicNumber::make_complex(a.poly(), {r.xlo, r.xhi, -r.yhi, -r.ylo});
}

AlgebraicNumber an_sqrt(const AlgebraicNumber& a) {
  if (!a.is_real()) throw std::logic_error("square root branch requires a real argument");
  int sg = an_sign(a);
  if (sg < 0) throw std::logic_error("square root of a negative number");
  if (sg == 0) return AlgebraicNumber::from_rat(Rat(0));
  if (a.is_rational()) {
    Rat v = a.rational_value();
    Int n = v.get_num(), d = v.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
      Int rn, rd;
      mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
      return AlgebraicNumber::from_rat(Rat(rn) / Rat(rd));
    }
  }
  UPoly ann = upoly_square_free(a.poly().compose_x_squared());
  AlgebraicNumber ac = a;
  return certify_root(
      ann,
      [ac](int round) {
        long prec = 128 + 64L * round;
        FInterval e = ac.tight_enclosure(prec).re;
        if (mpfr_sgn(e.lo) < 0) mpfr_set_zero(e.lo, 1);
        FInterval s = e.sqrt_enclosure();
        return CInterval{s, FInterval::from_long(0, prec)};
      },
      true);
}

AlgebraicNumber an_sqrt_any(const AlgebraicNumber& a) {
  if (a.is_real()) {
    int sg = an_sign(a);
    if (sg >= 0) return an_sqrt(a);
    // Purely imaginary result i*sqrt(-a).
    AlgebraicNumber mag = an_sqrt(an_neg(a));
    UPoly ann = upoly_square_free(a.poly().compose_x_squared());
    AlgebraicNumber mc = mag;
    return certify_root(
        ann,
        [mc](int round) {
          long prec = 128 + 64L * round;
          return CInterval{FInterval::from_long(0, prec), mc.tight_enclosure(prec).re};
        },
        false);
  }
  UPoly ann = upoly_square_free(a.poly().compose_x_squared());
  AlgebraicNumber ac = a;
  return certify_root(
      ann,
      [ac](int round) {
        // The principal branch needs the sign of the imaginary part.
        for (int extra = 0; extra < 512; ++extra) {
          Region r = ac.region();
          if (r.ylo > 0 || r.yhi < 0) break;
          ac.refine();
        }
        long prec = 128 + 64L * round;
        CInterval z = ac.tight_enclosure(prec);
        FInterval mod = z.modulus_squared().sqrt_enclosure();
        FInterval two = FInterval::from_long(2, prec);
        FInterval u2 = (mod + z.re) / two;
        FInterval v2 = (mod - z.re) / two;
        if (mpfr_sgn(u2.lo) < 0) mpfr_set_zero(u2.lo, 1);
        if (mpfr_sgn(v2.lo) < 0) mpfr_set_zero(v2.lo, 1);
        FInterval u = u2.sqrt_enclosure(), v = v2.sqrt_enclosure();
        if (ac.region().yhi < 0) v = -v;
        return CInterval{u, v};
      },
      false);
}

AlgebraicNumber an_pow(const AlgebraicNumber& a, long e) {
  if (e == 0) return AlgebraicNumber::from_rat(Rat(1));
  if (e < 0) return an_inv(an_pow(a, -e));
  AlgebraicNumber acc = AlgebraicNumber::from_rat(Rat(1));
  AlgebraicNumber base = a;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc = an_mul(acc, base);
    if (n >>= 1) base = an_mul(base, base);
  }
  return acc;
}

bool an_is_zero(const AlgebraicNumber& a) {
  if (a.is_rational()) return a.rational_value() == 0;
  if (a.poly().coeff(0) != 0) return false;
  Region r = a.region();
  return r.xlo <= 0 && 0 <= r.xhi && r.ylo <= 0 && 0 <= r.yhi;
}

int an_sign(const AlgebraicNumber& a) {
  if (!a.is_real()) throw std::logic_error("sign of a nonreal number");
  if (a.is_rational()) return sign_of(a.rational_value());
  if (an_is_zero(a)) return 0;
  for (int i = 0; i < 4096; ++i) {
    Region r = a.region();
    if (r.xlo > 0) return 1;
    if (r.xhi < 0) return -1;
    a.refine();
  }
  throw std::logic_error("sign did not resolve");
}

namespace {

// Number of roots of q inside the region of a; q divides a's defining
// polynomial, so the count is 0 or 1.  Refines a when the region boundary is
// degenerate for q.
long count_in_own_region(const UPoly& q, const AlgebraicNumber& a) {
  std::vector<UPoly> chain_store;
  for (int tries = 0; tries < 64; ++tries) {
    Region r = a.region();
    if (a.is_real()) {
      if (r.is_point()) return q.sign_at(r.xlo) == 0 ? 1 : 0;
      auto c = count_real_closed(q, chain_store, r.xlo, r.xhi);
      if (c) return *c;
    } else {
      auto c = count_roots_in_rect(q, r.xlo, r.xhi, r.ylo, r.yhi);
      if (c) return *c;
    }
    a.refine();
  }
  throw std::logic_error("root membership test did not resolve");
}

}  // namespace

bool an_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_real() != b.is_real()) return false;
  if (a.is_rational() && b.is_rational()) return a.rational_value() == b.rational_value();
  if (a.is_rational() || b.is_rational()) {
    const AlgebraicNumber& alg = a.is_rational() ? b : a;
    Rat v = (a.is_rational() ? a : b).rational_value();
    if (alg.poly().sign_at(v) != 0) return false;
    Region r = alg.region();
    return r.xlo <= v && v <= r.xhi && r.ylo <= 0 && 0 <= r.yhi;
  }
  UPoly g = upoly_gcd(a.poly(), b.poly());
  if (g.degree() < 1) return false;
  if (count_in_own_region(g, a) == 0) return false;
  if (count_in_own_region(g, b) == 0) return false;
  std::vector<UPoly> chain_store;
  for (int tries = 0; tries < 64; ++tries) {
    Region ra = a.region(), rb = b.region();
    Rat xlo = std::max(ra.xlo, rb.xlo), xhi = std::min(ra.xhi, rb.xhi);
    Rat ylo = std::max(ra.ylo, rb.ylo), yhi = std::min(ra.yhi, rb.yhi);
    if (xlo > xhi || ylo > yhi) return false;
    if (a.is_real()) {
      if (xlo == xhi) {
        if (g.sign_at(xlo) == 0) return true;
        return false;
      }
      auto c = count_real_closed(g, chain_store, xlo, xhi);
      if (c) return *c == 1;
    } else {
      if (ylo < yhi && xlo < xhi) {
        auto c = count_roots_in_rect(g, xlo, xhi, ylo, yhi);
        if (c) return *c == 1;
      }
    }
    a.refine();
    b.refine();
  }
  throw std::logic_error("equality test did not resolve");
}

bool an_is_real_value(const AlgebraicNumber& a) { return a.is_real(); }

AlgebraicNumber an_modulus_squared(const AlgebraicNumber& a) {
  if (a.is_rational()) {
    Rat v = a.rational_value();
    return AlgebraicNumber::from_rat(v * v);
  }
  if (a.is_real()) return an_mul(a, a);
  UPoly pa = strip_zero_roots(a.poly());
  UPoly ann = upoly_square_free(product_annihilator(pa, pa));
  AlgebraicNumber ac = a;
  return certify_root(
      ann,
      [ac](int round) {
        long prec = 128 + 64L * round;
        return CInterval{ac.tight_enclosure(prec).modulus_squared(),
                         FInterval::from_long(0, prec)};
      },
      true);
}

UPoly minimal_polynomial(const AlgebraicNumber& a) {
  if (a.poly().degree() <= 1) return a.poly();
  std::vector<UPoly> fs = factor_square_free(a.poly().normalized());
  if (fs.size() == 1) return fs[0];
  for (const auto& g : fs) {
    if (count_in_own_region(g, a) == 1) return g;
  }
  throw std::logic_error("no factor annihilates the value");
}

AlgebraicNumber an_minimized(const AlgebraicNumber& a) {
  UPoly m = minimal_polynomial(a);
  if (m == a.poly()) return a;
  if (m.degree() == 1) return AlgebraicNumber::from_rat(Rat(-m.coeff(0), m.coeff(1)));
  Region r = a.region();
  if (a.is_real()) return AlgebraicNumber::make_real(m, r.xlo, r.xhi);
  return AlgebraicNumber::make_complex(m, r);
}

}  // namespace acsv
