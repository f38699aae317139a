#include "acsv/acsv.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "acsv/error.hpp"
#include "acsv/groebner.hpp"
#include "qmodp.hpp"

namespace acsv {

namespace {

AlgebraicNumber an_div(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return an_mul(a, an_inv(b));
}

Rat rat_ratio(const Int& a, const Int& b) {
  Rat q(a);
  q /= Rat(b);
  return q;
}

// The exact value of num/den at the eliminant root u.  The annihilator is
// certified against enclosures that shrink u until the denominator interval
// excludes zero, which must happen because the callers only divide by
// quantities that are nonzero at u.
AlgebraicNumber algebraic_value(const QFrac& v, const AlgebraicNumber& u, const UPoly& ann) {
  if (rv_is_zero(v.num)) return AlgebraicNumber();
  if (ann.degree() == 1)
    return AlgebraicNumber::from_rat(Rat(-ann.coeff(0)) / Rat(ann.coeff(1)));
  QFrac vc = v;
  AlgebraicNumber uu = u;
  // Evaluating the cleared fractions costs precision proportional to their
  // coefficient size: the terms of the Horner sum cancel down to a value many
  // orders of magnitude smaller than themselves.  Start the working precision
  // at that size.  More precision only helps once the enclosure of u has
  // reached the floor the current precision can express; short of that, retry
  // at the same precision, since every call refines u's shared region.
  auto approx = [vc, uu](int round) -> CInterval {
    long scale = 96 + rv_bits(vc.den) + 8 * static_cast<long>(vc.den.size());
    long prec = scale + 64L * static_cast<long>(round) + 128;
    mpfr_t w, t;
    mpfr_init2(w, 64);
    mpfr_init2(t, 64);
    std::optional<CInterval> out;
    for (int tries = 0; tries < 64 && !out; ++tries) {
      CInterval ubox = uu.tight_enclosure(prec);
      CInterval den = rv_eval_ci(vc.den, ubox, prec);
      if (!den.modulus_squared().contains_zero()) {
        out = rv_eval_ci(vc.num, ubox, prec) / den;
        break;
      }
      mpfr_sub(w, ubox.re.hi, ubox.re.lo, MPFR_RNDU);
      mpfr_sub(t, ubox.im.hi, ubox.im.lo, MPFR_RNDU);
      mpfr_add(w, w, t, MPFR_RNDU);
      mpfr_abs(t, ubox.re.hi, MPFR_RNDU);
      mpfr_add_ui(t, t, 1, MPFR_RNDU);
      mpfr_mul_2si(t, t, -(prec - 32), MPFR_RNDU);
      if (mpfr_cmp(w, t) <= 0) prec *= 2;
    }
    mpfr_clear(w);
    mpfr_clear(t);
    if (!out) throw std::logic_error("denominator not separable from zero");
    return *out;
  };
  return an_minimized(certify_root(ann, approx, uu.is_real()));
}

AlgebraicNumber algebraic_value(const QFrac& v, const UPoly& P, const AlgebraicNumber& u) {
  if (rv_is_zero(v.num)) return AlgebraicNumber();
  return algebraic_value(v, u, qf_annihilator(v, P));
}

// Shared per-representation data: every coordinate is images[i] / sden as a
// residue fraction mod P.
struct RepFracs {
  RatVec pm, sden;
  std::vector<RatVec> images;
};

RepFracs rep_fracs(const KroneckerRep& rep) {
  RepFracs out;
  out.pm = rv_from(rep.P);
  out.sden = rv_rem(rv_scale(rv_from(rep.P.derivative()), Rat(rep.denom_scale)), out.pm);
  for (const auto& q : rep.Q) out.images.push_back(rv_rem(rv_from(q), out.pm));
  return out;
}

QFrac coord_frac(const RepFracs& rf, std::size_t i) { return {rf.images[i], rf.sden}; }

QFrac frac_of(const MultiPoly& f, const RepFracs& rf) {
  return qf_eval_uniform(f, rf.images, rf.sden, rf.pm);
}

std::string fresh_symbol(const std::vector<std::string>& vars, std::string base) {
  while (std::find(vars.begin(), vars.end(), base) != vars.end()) base += "_";
  return base;
}

void validate_direction(const Direction& r, std::size_t d) {
  if (r.size() != d) throw std::logic_error("direction length must match the variable count");
  for (const auto& e : r)
    if (e < 1) throw std::logic_error("direction entries must be positive");
}

// Numeric quick reject, then the exact decision.
bool an_eq_checked(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  CInterval ea = a.tight_enclosure(160), eb = b.tight_enclosure(160);
  if (ea.re.disjoint_from(eb.re) || ea.im.disjoint_from(eb.im)) return false;
  return an_equal(a, b);
}

bool coords_equal(const std::vector<AlgebraicNumber>& a, const std::vector<AlgebraicNumber>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!an_eq_checked(a[i], b[i])) return false;
  return true;
}

// Cofactor expansion along the first remaining row or column.
QFrac qf_det_expand(const std::vector<std::vector<QFrac>>& M, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols, const RatVec& pm, bool by_row) {
  if (rows.empty()) return qf_const(Rat(1));
  QFrac acc = qf_const(Rat(0));
  if (by_row) {
    std::vector<std::size_t> rrest(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> crest;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != k) crest.push_back(cols[j]);
      QFrac term = qf_mul(M[rows[0]][cols[k]], qf_det_expand(M, rrest, crest, pm, by_row), pm);
      if (k % 2 == 1) term = qf_neg(term);
      acc = qf_add(acc, term, pm);
    }
  } else {
    std::vector<std::size_t> crest(cols.begin() + 1, cols.end());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::vector<std::size_t> rrest;
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (j != k) rrest.push_back(rows[j]);
      QFrac term = qf_mul(M[rows[k]][cols[0]], qf_det_expand(M, rrest, crest, pm, by_row), pm);
      if (k % 2 == 1) term = qf_neg(term);
      acc = qf_add(acc, term, pm);
    }
  }
  return acc;
}

QFrac qf_scale_rat(QFrac a, const Rat& c) {
  a.num = rv_scale(std::move(a.num), c);
  return a;
}

// All saddle point data attached to one pivot choice, as residue fractions
// shared by every root of the eliminant.
struct HessFracs {
  std::vector<std::vector<QFrac>> hes, U;
  std::vector<Rat> V;
  QFrac det, wHw;
  std::size_t pivot = 0;
};

HessFracs hessian_fracs(const MultiPoly& H, const Direction& r, const RepFracs& rf,
                        std::size_t pivot) {
  const std::size_t d = H.vars().size();
  const RatVec& pm = rf.pm;
  HessFracs out;
  out.pivot = pivot;
  out.wHw = qf_mul(coord_frac(rf, pivot), frac_of(H.derivative(pivot), rf), pm);

  out.U.assign(d, std::vector<QFrac>(d, qf_const(Rat(0))));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      QFrac num = qf_mul(qf_mul(coord_frac(rf, i), coord_frac(rf, j), pm),
                         frac_of(H.derivative(i).derivative(j), rf), pm);
      out.U[i][j] = out.U[j][i] = qf_div(num, out.wHw, pm);
    }
  }
  for (std::size_t i = 0; i < d; ++i) out.V.push_back(rat_ratio(r[i], r[pivot]));

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d; ++i)
    if (i != pivot) idx.push_back(i);
  const std::size_t m = idx.size();
  out.hes.assign(m, std::vector<QFrac>(m, qf_const(Rat(0))));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      std::size_t i = idx[a], j = idx[b];
      const Rat &vi = out.V[i], &vj = out.V[j];
      QFrac e;
      if (a == b) {
        e = qf_add(qf_const(vi + vi * vi), out.U[i][i], pm);
        e = qf_add(e, qf_scale_rat(out.U[i][pivot], Rat(-2) * vi), pm);
        e = qf_add(e, qf_scale_rat(out.U[pivot][pivot], vi * vi), pm);
      } else {
        e = qf_add(qf_const(vi * vj), out.U[i][j], pm);
        e = qf_add(e, qf_scale_rat(out.U[i][pivot], -vj), pm);
        e = qf_add(e, qf_scale_rat(out.U[j][pivot], -vi), pm);
        e = qf_add(e, qf_scale_rat(out.U[pivot][pivot], vi * vj), pm);
      }
      out.hes[a][b] = out.hes[b][a] = e;
    }
  }

  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < m; ++i) all.push_back(i);
  out.det = qf_det_expand(out.hes, all, all, pm, true);
  QFrac check = qf_det_expand(out.hes, all, all, pm, false);
  if (!qf_num_zero(qf_sub(out.det, check, pm)))
    throw std::logic_error("determinant expansions along rows and columns disagree");
  return out;
}

void add_entry(AssumptionReport& rep, std::string name, std::string verdict, std::string note) {
  rep.entries.push_back({std::move(name), std::move(verdict), std::move(note)});
}

// A residue fraction together with its annihilator, so evaluating the same
// fraction at several roots of P pays for the annihilator once.
struct CachedFrac {
  QFrac frac;
  UPoly ann;
};

CachedFrac cache_frac(QFrac f, const UPoly& P) {
  UPoly ann = rv_is_zero(f.num) ? UPoly() : qf_annihilator(f, P);
  return {std::move(f), std::move(ann)};
}

AlgebraicNumber value_at(const CachedFrac& cf, const AlgebraicNumber& u) {
  return algebraic_value(cf.frac, u, cf.ann);
}

// Highest coordinate whose partial derivative is nonzero at the point, or d
// when all of them vanish.
std::size_t pick_pivot(const MultiPoly& H, const RepFracs& rf, const UPoly& P,
                       const CriticalPoint& y,
                       std::vector<std::optional<CachedFrac>>& partial_cache) {
  const std::size_t d = y.coords.size();
  for (std::size_t k = d; k-- > 0;) {
    if (!partial_cache[k]) partial_cache[k] = cache_frac(frac_of(H.derivative(k), rf), P);
    if (!an_is_zero(value_at(*partial_cache[k], y.u))) return k;
  }
  return d;
}

// Expansion terms plus report entries; failures either throw or mark the
// report and yield nothing.
std::optional<std::vector<ExpansionTerm>> expansion_impl(
    const MultiPoly& G, const MultiPoly& H, const Direction& r,
    const std::vector<CriticalPoint>& contributors, AssumptionReport& report, bool throwing) {
  if (contributors.empty()) throw std::logic_error("empty contributor set");
  const std::size_t d = H.vars().size();
  if (G.vars() != H.vars())
    throw std::logic_error("numerator and denominator must share one variable list");
  validate_direction(r, d);
  auto rep = contributors[0].rep;
  for (const auto& y : contributors)
    if (y.rep != rep || y.coords.size() != d)
      throw std::logic_error("contributors come from different representations");

  const UPoly& P = rep->P;
  RepFracs rf = rep_fracs(*rep);
  QFrac g_frac = frac_of(G, rf);

  // rho = 1 / prod z_i^{r_i}: build the product and flip it.
  QFrac zeta = qf_const(Rat(1));
  for (std::size_t i = 0; i < d; ++i) {
    long e = static_cast<long>(r[i].get_si());
    for (long k = 0; k < e; ++k) zeta = qf_mul(zeta, coord_frac(rf, i), rf.pm);
  }
  QFrac rho_frac{zeta.den, zeta.num};

  Rat alpha(Int(1) - Int(d));
  alpha /= Rat(2);

  struct PivotFracs {
    HessFracs hf;
    CachedFrac det;
    CachedFrac a;
  };
  std::vector<std::optional<CachedFrac>> partial_cache(d);
  std::map<std::size_t, PivotFracs> by_pivot;
  CachedFrac g_cf = cache_frac(g_frac, P);
  CachedFrac rho_cf = cache_frac(rho_frac, P);
  std::vector<ExpansionTerm> terms;

  auto fail = [&](const std::string& name, const std::string& msg) {
    add_entry(report, name, "fail", msg);
    if (throwing) throw AssumptionError(msg);
  };

  auto tick = [] { return std::chrono::steady_clock::now(); };
  auto lap = [&](const char* what, std::chrono::steady_clock::time_point t0) {
    if (!getenv("ACSV_STAGE")) return;
    fprintf(stderr, "[exp] %-12s %.2fs\n", what,
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  };

  for (const auto& y : contributors) {
    auto t0 = tick();
    std::size_t pivot = pick_pivot(H, rf, P, y, partial_cache);
    lap("pick_pivot", t0);
    if (pivot == d) {
      fail("smoothness", "every partial derivative vanishes at a contributing point");
      return std::nullopt;
    }
    auto it = by_pivot.find(pivot);
    if (it == by_pivot.end()) {
      t0 = tick();
      HessFracs hfr = hessian_fracs(H, r, rf, pivot);
      lap("hess_fracs", t0);
      if (getenv("ACSV_STAGE"))
        fprintf(stderr, "[exp] det bits=%ld len=%zu/%zu\n", rv_bits(hfr.det.den),
                hfr.det.num.size(), hfr.det.den.size());
      t0 = tick();
      CachedFrac det_cf = cache_frac(hfr.det, P);
      lap("det_ann", t0);
      t0 = tick();
      CachedFrac a_cf = cache_frac(qf_neg(qf_div(g_frac, hfr.wHw, rf.pm)), P);
      lap("a_ann", t0);
      it = by_pivot.emplace(pivot, PivotFracs{std::move(hfr), std::move(det_cf), std::move(a_cf)})
               .first;
    }
    const PivotFracs& pf = it->second;

    t0 = tick();
    AlgebraicNumber det = value_at(pf.det, y.u);
    lap("det_val", t0);
    if (an_is_zero(det)) {
      fail("hessian-nonsingular", "the phase Hessian is singular at a contributing point");
      return std::nullopt;
    }
    t0 = tick();
    AlgebraicNumber gval = value_at(g_cf, y.u);
    lap("g_val", t0);
    if (an_is_zero(gval)) {
      fail("numerator-nonzero",
           "the numerator vanishes at a dominant point, so the leading term of the expansion "
           "is zero; deeper terms are out of scope");
      return std::nullopt;
    }

    t0 = tick();
    AlgebraicNumber a_val = value_at(pf.a, y.u);
    lap("a_val", t0);
    t0 = tick();
    AlgebraicNumber rho = value_at(rho_cf, y.u);
    lap("rho_val", t0);

    // C = A / sqrt((2 r_p)^(d-1) det); the real positive point must produce
    // a positive radicand and takes the real branch, everything else takes
    // the principal branch.
    Int scale = int_pow(Int(2) * r[pivot], static_cast<unsigned long>(d - 1));
    t0 = tick();
    AlgebraicNumber radicand = an_mul(det, AlgebraicNumber::from_rat(Rat(scale)));
    AlgebraicNumber root;
    if (radicand.is_real() && an_sign(radicand) > 0) {
      root = an_sqrt(radicand);
    } else if (y.real_positive) {
      fail("hessian-nonsingular",
           "the phase Hessian determinant is not positive at the real minimal point");
      return std::nullopt;
    } else {
      root = an_sqrt_any(radicand);
    }
    lap("sqrt", t0);
    t0 = tick();
    AlgebraicNumber C = an_div(a_val, root);
    lap("div", t0);

    bool merged = false;
    for (auto& term : terms) {
      if (an_eq_checked(term.rho, rho)) {
        term.C = an_add(term.C, C);
        merged = true;
        break;
      }
    }
    if (!merged) terms.push_back({C, rho, alpha});
  }

  auto t0 = tick();
  for (auto& term : terms) {
    term.C = an_minimized(term.C);
    term.rho = an_minimized(term.rho);
    if (an_is_real_value(term.rho) && !an_is_real_value(term.C))
      throw std::logic_error("merged coefficient of a real growth rate fails to be real");
  }
  lap("minimize", t0);
  add_entry(report, "hessian-nonsingular", "pass",
            "determinant nonzero at every contributing point");
  add_entry(report, "numerator-nonzero", "pass", "numerator nonzero at every contributing point");
  return terms;
}

Analysis run_impl(const MultiPoly& G, const MultiPoly& H_in, const Direction& r,
                  const AnalysisOptions& opts, bool throwing) {
  if (H_in.is_zero()) throw std::logic_error("zero denominator");
  const std::vector<std::string> vars = H_in.vars();
  const std::size_t d = vars.size();
  if (d == 0) throw std::logic_error("the denominator must use at least one variable");
  if (G.vars() != vars)
    throw std::logic_error("numerator and denominator must share one variable list");
  validate_direction(r, d);
  if (!opts.combinatorial_asserted)
    throw std::logic_error("the pipeline requires the combinatorial assertion");

  Analysis res;
  res.r = r;
  AssumptionReport& report = res.expansion.report;

  Rat origin = H_in.evaluate(std::vector<Rat>(d, Rat(0)));
  if (origin == 0) {
    add_entry(report, "origin", "fail", "H vanishes at the origin");
    if (throwing)
      throw AssumptionError("H vanishes at the origin, so the power series of G/H is undefined");
    return res;
  }
  add_entry(report, "origin", "pass", "H(0) = " + Rat(origin).get_str());

  // Work on the square-free part when H has repeated factors; the points
  // survive, the asymptotics do not.
  MultiPoly H = H_in;
  MultiPoly sqf = square_free_part(H_in);
  if (sqf.total_degree() < H_in.total_degree()) {
    res.h_was_reduced = true;
    H = sqf;
    add_entry(report, "square-free", "fail",
              "the denominator is not square-free; minimal points are computed from its "
              "square-free part, and asymptotics for higher-order poles are out of scope");
  }

  bool smooth_global = false;
  std::string deferred_note = "the singular ideal is nontrivial; smoothness is certified at "
                              "the contributing points instead";
  {
    std::vector<MultiPoly> sing{H};
    for (std::size_t i = 0; i < d; ++i) sing.push_back(H.derivative(i));
    try {
      smooth_global = buchberger_graded(sing, vars).is_trivial();
    } catch (const ResourceError&) {
      deferred_note = "the singular ideal computation exceeded its budget; smoothness is "
                      "certified at the contributing points instead";
    }
  }
  if (smooth_global)
    add_entry(report, "smoothness", "pass",
              "the ideal generated by H and its partial derivatives is trivial");

  ExtendedSystem ext = build_extended_system(H, r);
  res.ext_vars = ext.vars;
  try {
    res.rep = std::make_shared<const KroneckerRep>(
        kronecker_rep(ext.polys, ext.vars, opts.linear_form, opts.seed));
  } catch (const AssumptionError& e) {
    add_entry(report, "critical-set-finite", "fail", e.what());
    if (throwing) throw;
    return res;
  }
  if (!verify_kronecker(*res.rep, ext.polys).all_passed())
    throw std::logic_error("the representation failed its own verification");
  add_entry(report, "critical-set-finite", "pass",
            std::to_string(solution_count(*res.rep)) + " solutions of the extended system");

  try {
    res.points = find_minimal_critical_points(ext, res.rep);
  } catch (const MinimalityError& e) {
    add_entry(report, "minimal-point", "fail", e.what());
    if (throwing) throw;
    return res;
  }
  const CriticalPoint* w_star = nullptr;
  for (const auto& p : res.points)
    if (p.real_positive && p.minimal) w_star = &p;
  std::ostringstream wtext;
  for (std::size_t i = 0; i < d; ++i)
    wtext << (i ? ", " : "(") << w_star->coords[i].decimal(8);
  wtext << ")";
  add_entry(report, "minimal-point", "pass", "minimal point near " + wtext.str());

  try {
    res.contributors = group_by_modulus(H, res.points, *w_star);
  } catch (const AssumptionError& e) {
    add_entry(report, "smoothness", "fail", e.what());
    if (throwing) throw;
    return res;
  }
  for (auto& p : res.points)
    for (const auto& c : res.contributors)
      if (p.root_index == c.root_index) p.contributing = true;
  if (!smooth_global) add_entry(report, "smoothness", "pass", deferred_note);
  add_entry(report, "same-modulus-finite", "assumed",
            "finitely many points of the variety share the dominant modulus; certified only "
            "for the critical set");

  if (res.h_was_reduced) {
    if (throwing)
      throw AssumptionError("the denominator is not square-free; asymptotics for higher-order "
                            "poles are out of scope");
    return res;
  }

  auto terms = expansion_impl(G, H, r, res.contributors, report, throwing);
  if (terms) res.expansion.terms = std::move(*terms);
  return res;
}

}  // namespace

bool AssumptionReport::all_ok() const {
  for (const auto& e : entries)
    if (e.verdict == "fail") return false;
  return true;
}

std::vector<MultiPoly> build_critical_system(const MultiPoly& H, const Direction& r) {
  if (H.is_zero()) throw std::logic_error("zero denominator");
  const std::size_t d = H.vars().size();
  validate_direction(r, d);
  std::vector<MultiPoly> out{H};
  MultiPoly first = MultiPoly::variable(H.vars(), 0) * H.derivative(0);
  for (std::size_t k = 1; k < d; ++k) {
    MultiPoly other = MultiPoly::variable(H.vars(), k) * H.derivative(k);
    out.push_back(first.scaled(r[k]) - other.scaled(r[0]));
  }
  return out;
}

ExtendedSystem build_extended_system(const MultiPoly& H, const Direction& r) {
  if (H.is_zero()) throw std::logic_error("zero denominator");
  const std::vector<std::string> vars = H.vars();
  const std::size_t d = vars.size();
  validate_direction(r, d);

  ExtendedSystem ext;
  ext.vars = vars;
  ext.vars.push_back(fresh_symbol(ext.vars, "lambda"));
  ext.vars.push_back(fresh_symbol(ext.vars, "t"));
  ext.lambda_pos = d;
  ext.t_pos = d + 1;

  MultiPoly He = H.with_vars(ext.vars);
  ext.polys.push_back(He);

  MultiPoly tvar = MultiPoly::variable(ext.vars, ext.t_pos);
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < d; ++i)
    images.push_back(MultiPoly::variable(ext.vars, i) * tvar);
  ext.polys.push_back(H.compose(images));

  MultiPoly lambda = MultiPoly::variable(ext.vars, ext.lambda_pos);
  for (std::size_t i = 0; i < d; ++i)
    ext.polys.push_back(MultiPoly::variable(ext.vars, i) * He.derivative(i) - lambda.scaled(r[i]));
  return ext;
}

std::vector<CriticalPoint> find_minimal_critical_points(const ExtendedSystem& ext,
                                                        std::shared_ptr<const KroneckerRep> rep) {
  if (!rep) throw std::logic_error("missing representation");
  if (rep->vars != ext.vars)
    throw std::logic_error("the representation does not match the extended system");
  const std::size_t d = ext.vars.size() - 2;

  std::vector<CriticalPoint> points;
  if (rep->P.degree() < 1) throw MinimalityError("no minimal critical point");

  RepFracs rf = rep_fracs(*rep);
  std::vector<AlgebraicNumber> roots = isolate_complex_roots(rep->P);
  AlgebraicNumber one = AlgebraicNumber::from_int(1);

  // The annihilator of a coordinate fraction depends on the fraction and the
  // eliminant only, so compute each one once, not once per root.
  auto ann_of = [&](std::size_t pos) { return qf_annihilator(coord_frac(rf, pos), rep->P); };
  UPoly t_ann = ann_of(ext.t_pos);
  UPoly l_ann = ann_of(ext.lambda_pos);
  std::vector<UPoly> z_ann;
  for (std::size_t i = 0; i < d; ++i) z_ann.push_back(ann_of(i));

  // Solutions split three ways by t: the critical points (t = 1), the
  // minimality witnesses (real t strictly inside (0,1)), and the rest.
  struct Witness {
    std::vector<AlgebraicNumber> z;
  };
  std::vector<Witness> witnesses;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    AlgebraicNumber t = algebraic_value(coord_frac(rf, ext.t_pos), roots[j], t_ann);
    if (an_eq_checked(t, one)) {
      CriticalPoint p;
      p.rep = rep;
      p.root_index = j;
      p.u = roots[j];
      for (std::size_t i = 0; i < d; ++i)
        p.coords.push_back(algebraic_value(coord_frac(rf, i), roots[j], z_ann[i]));
      p.lambda = algebraic_value(coord_frac(rf, ext.lambda_pos), roots[j], l_ann);
      p.t = t;
      p.real_positive = roots[j].is_real();
      for (const auto& c : p.coords)
        if (!c.is_real() || an_sign(c) <= 0) p.real_positive = false;
      points.push_back(std::move(p));
    } else if (t.is_real() && an_sign(t) > 0 && an_sign(an_sub(t, one)) < 0) {
      Witness w;
      for (std::size_t i = 0; i < d; ++i)
        w.z.push_back(algebraic_value(coord_frac(rf, i), roots[j], z_ann[i]));
      witnesses.push_back(std::move(w));
    }
  }

  std::size_t survivors = 0;
  for (auto& p : points) {
    if (!p.real_positive) continue;
    bool blocked = false;
    for (const auto& w : witnesses) {
      if (coords_equal(w.z, p.coords)) {
        blocked = true;
        break;
      }
    }
    p.minimal = !blocked;
    if (p.minimal) ++survivors;
  }
  if (survivors == 0) throw MinimalityError("no minimal critical point");
  if (survivors > 1) throw MinimalityError("multiple positive real minimal points");
  return points;
}

std::vector<CriticalPoint> group_by_modulus(const MultiPoly& H,
                                            const std::vector<CriticalPoint>& all_points,
                                            const CriticalPoint& w_star) {
  const std::size_t d = w_star.coords.size();
  if (H.vars().size() != d) throw std::logic_error("denominator does not match the point");
  RepFracs rf = rep_fracs(*w_star.rep);
  const UPoly& P = w_star.rep->P;

  std::vector<AlgebraicNumber> wmod;
  for (const auto& c : w_star.coords) wmod.push_back(an_modulus_squared(c));

  std::vector<std::optional<CachedFrac>> partial_cache(d);
  std::vector<CriticalPoint> out;
  for (const auto& y : all_points) {
    bool same = true;
    for (std::size_t i = 0; i < d && same; ++i)
      same = an_eq_checked(an_modulus_squared(y.coords[i]), wmod[i]);
    if (!same) continue;
    if (pick_pivot(H, rf, P, y, partial_cache) == d)
      throw AssumptionError("a point with the dominant modulus is a singular point of the "
                            "variety");
    CriticalPoint c = y;
    c.contributing = true;
    out.push_back(std::move(c));
  }

  // The modulus condition is conjugation invariant, so the set must pair up.
  for (const auto& y : out) {
    if (y.u.is_real()) continue;
    bool found = false;
    for (const auto& z : out) {
      bool match = true;
      for (std::size_t i = 0; i < d && match; ++i)
        match = an_eq_checked(z.coords[i], an_conj(y.coords[i]));
      if (match) {
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("contributing set is not closed under conjugation");
  }
  return out;
}

PhaseHessian phase_hessian(const MultiPoly& H, const CriticalPoint& w, const Direction& r) {
  const std::size_t d = w.coords.size();
  if (H.vars().size() != d) throw std::logic_error("denominator does not match the point");
  validate_direction(r, d);
  RepFracs rf = rep_fracs(*w.rep);
  const UPoly& P = w.rep->P;

  std::vector<std::optional<CachedFrac>> partial_cache(d);
  std::size_t pivot = pick_pivot(H, rf, P, w, partial_cache);
  if (pivot == d)
    throw AssumptionError("every partial derivative vanishes at the point");

  HessFracs hf = hessian_fracs(H, r, rf, pivot);
  PhaseHessian out;
  out.pivot = pivot;
  out.V = hf.V;
  const std::size_t m = d - 1;
  out.entries.assign(m, std::vector<AlgebraicNumber>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      out.entries[a][b] = algebraic_value(hf.hes[a][b], P, w.u);
  out.U.assign(d, std::vector<AlgebraicNumber>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.U[i][j] = algebraic_value(hf.U[i][j], P, w.u);
  out.determinant = algebraic_value(hf.det, P, w.u);

  // Recompute the determinant from the materialized entries; the two paths
  // share no arithmetic.
  std::function<AlgebraicNumber(std::vector<std::size_t>, std::vector<std::size_t>)> det_of =
      [&](std::vector<std::size_t> rows, std::vector<std::size_t> cols) -> AlgebraicNumber {
    if (rows.empty()) return AlgebraicNumber::from_int(1);
    AlgebraicNumber acc;  // zero
    std::vector<std::size_t> rrest(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> crest;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != k) crest.push_back(cols[j]);
      AlgebraicNumber term = an_mul(out.entries[rows[0]][cols[k]], det_of(rrest, crest));
      if (k % 2 == 1) term = an_neg(term);
      acc = an_add(acc, term);
    }
    return acc;
  };
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < m; ++i) all.push_back(i);
  if (!an_equal(out.determinant, det_of(all, all)))
    throw std::logic_error("determinant disagrees with its cofactor recomputation");
  return out;
}

AsymptoticExpansion asymptotic_expansion(const MultiPoly& G, const MultiPoly& H,
                                         const Direction& r,
                                         const std::vector<CriticalPoint>& contributors) {
  AsymptoticExpansion out;
  auto terms = expansion_impl(G, H, r, contributors, out.report, true);
  out.terms = std::move(*terms);
  return out;
}

AssumptionReport check_assumptions(const MultiPoly& G, const MultiPoly& H, const Direction& r,
                                   const AnalysisOptions& options) {
  return run_impl(G, H, r, options, false).expansion.report;
}

Analysis analyze(const MultiPoly& G, const MultiPoly& H, const Direction& r,
                 const AnalysisOptions& options) {
  return run_impl(G, H, r, options, true);
}

}  // namespace acsv
