#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "acsv/acsv.hpp"
#include "acsv/error.hpp"
#include "acsv/kronecker.hpp"
#include "acsv/parser.hpp"
#include "doctest.h"

using namespace acsv;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Rat rq(long n, long d = 1) {
  Rat r(n);
  r /= Rat(d);
  return r;
}

MultiPoly mp(const std::string& text, const std::vector<std::string>& vars) {
  return parse_polynomial(text, vars);
}

MultiPoly one_over(const std::vector<std::string>& vars) { return mp("1", vars); }

AnalysisOptions opts() {
  AnalysisOptions o;
  o.combinatorial_asserted = true;
  return o;
}

bool same_poly(const MultiPoly& a, const MultiPoly& b) { return (a - b).is_zero(); }

bool is_rat(const AlgebraicNumber& a, long n, long d = 1) {
  return a.is_rational() && a.rational_value() == rq(n, d);
}

std::shared_ptr<const KroneckerRep> rep_of(const ExtendedSystem& ext) {
  return std::make_shared<const KroneckerRep>(kronecker_rep(ext.polys, ext.vars));
}

const CriticalPoint& minimal_point(const std::vector<CriticalPoint>& pts) {
  for (const auto& p : pts)
    if (p.minimal) return p;
  REQUIRE(false);
  return pts.front();
}

const AssumptionEntry& entry_named(const AssumptionReport& report, const std::string& name) {
  for (const auto& e : report.entries)
    if (e.name == name) return e;
  REQUIRE(false);
  return report.entries.front();
}

bool has_entry(const AssumptionReport& report, const std::string& name) {
  for (const auto& e : report.entries)
    if (e.name == name) return true;
  return false;
}

}  // namespace

TEST_CASE("critical point systems pair the denominator with direction equations") {
  MultiPoly H = mp("1-x-y", kXY);

  auto sys = build_critical_system(H, {Int(1), Int(1)});
  REQUIRE(sys.size() == 2);
  CHECK(same_poly(sys[0], H));
  CHECK(same_poly(sys[1], mp("y-x", kXY)));

  auto skew = build_critical_system(H, {Int(1), Int(2)});
  REQUIRE(skew.size() == 2);
  CHECK(same_poly(skew[1], mp("y-2*x", kXY)));

  auto single = build_critical_system(mp("1-2*z", {"z"}), {Int(1)});
  CHECK(single.size() == 1);
}

TEST_CASE("extended systems adjoin the scaling and dilation variables") {
  MultiPoly H = mp("1-x-y", kXY);
  auto ext = build_extended_system(H, {Int(1), Int(1)});

  REQUIRE(ext.vars == std::vector<std::string>{"x", "y", "lambda", "t"});
  CHECK(ext.lambda_pos == 2);
  CHECK(ext.t_pos == 3);
  REQUIRE(ext.polys.size() == 4);
  CHECK(same_poly(ext.polys[0], mp("1-x-y", ext.vars)));
  CHECK(same_poly(ext.polys[1], mp("1-x*t-y*t", ext.vars)));
  CHECK(same_poly(ext.polys[2], mp("0-x-lambda", ext.vars)));
  CHECK(same_poly(ext.polys[3], mp("0-y-lambda", ext.vars)));

  auto line = build_extended_system(mp("1-2*z", {"z"}), {Int(1)});
  REQUIRE(line.polys.size() == 3);
  CHECK(same_poly(line.polys[2], mp("0-2*z-lambda", line.vars)));
}

TEST_CASE("extended system variable names dodge collisions") {
  MultiPoly H = mp("1-t-lambda", {"t", "lambda"});
  auto ext = build_extended_system(H, {Int(1), Int(1)});
  REQUIRE(ext.vars == std::vector<std::string>{"t", "lambda", "lambda_", "t_"});
  CHECK(ext.lambda_pos == 2);
  CHECK(ext.t_pos == 3);
  REQUIRE(ext.polys.size() == 4);
  // The dilation equation must use the fresh variable, not the clashing one.
  CHECK(ext.polys[1].degree_in(3) > 0);
}

TEST_CASE("extended system of the ternary example matches its known equations") {
  const std::vector<std::string> v5{"x", "y", "z", "lambda", "t"};
  MultiPoly H = mp("x*y*z-x*z-y*z+x+y+z-1", {"x", "y", "z"});
  auto ext = build_extended_system(H, {Int(1), Int(1), Int(1)});
  REQUIRE(ext.vars == v5);

  std::vector<MultiPoly> expected{
      mp("x*y*z-x*z-y*z+x+y+z-1", v5),
      mp("x*y*z*t^3-x*z*t^2-y*z*t^2+x*t+y*t+z*t-1", v5),
      mp("x*y*z-x*z+x-lambda", v5),
      mp("x*y*z-y*z+y-lambda", v5),
      mp("x*y*z-x*z-y*z+z-lambda", v5),
  };
  REQUIRE(ext.polys.size() == expected.size());
  for (const auto& want : expected) {
    bool found = false;
    for (const auto& got : ext.polys) found = found || same_poly(want, got);
    CHECK(found);
  }
}

TEST_CASE("the binomial diagonal has one minimal critical point") {
  MultiPoly H = mp("1-x-y", kXY);
  auto ext = build_extended_system(H, {Int(1), Int(1)});
  auto pts = find_minimal_critical_points(ext, rep_of(ext));

  REQUIRE(pts.size() == 1);
  const auto& p = pts[0];
  CHECK(is_rat(p.coords[0], 1, 2));
  CHECK(is_rat(p.coords[1], 1, 2));
  CHECK(is_rat(p.lambda, -1, 2));
  CHECK(is_rat(p.t, 1));
  CHECK(p.real_positive);
  CHECK(p.minimal);
}

TEST_CASE("a skew direction moves the minimal point along the variety") {
  MultiPoly H = mp("1-x-y", kXY);
  auto ext = build_extended_system(H, {Int(2), Int(1)});
  auto pts = find_minimal_critical_points(ext, rep_of(ext));

  REQUIRE(pts.size() == 1);
  CHECK(is_rat(pts[0].coords[0], 2, 3));
  CHECK(is_rat(pts[0].coords[1], 1, 3));
  CHECK(is_rat(pts[0].lambda, -1, 3));
  CHECK(pts[0].minimal);
}

TEST_CASE("dilation witnesses block dominated candidates") {
  // 2 - 3x + x^2 = (1-x)(2-x): the root at 2 is shadowed by the root at 1,
  // seen through the extended solution with t = 1/2 on the ray toward 2.
  MultiPoly H = mp("2-3*x+x^2", {"x"});
  auto ext = build_extended_system(H, {Int(1)});
  auto pts = find_minimal_critical_points(ext, rep_of(ext));

  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    REQUIRE(p.coords[0].is_rational());
    Rat x = p.coords[0].rational_value();
    CHECK(p.real_positive);
    CHECK(p.minimal == (x == Rat(1)));
  }

  auto analysis = analyze(one_over({"x"}), H, {Int(1)}, opts());
  REQUIRE(analysis.expansion.terms.size() == 1);
  CHECK(is_rat(analysis.expansion.terms[0].C, 1));
  CHECK(is_rat(analysis.expansion.terms[0].rho, 1));
  CHECK(analysis.expansion.terms[0].alpha == rq(0));
}

TEST_CASE("a variety missing the positive orthant yields no minimal point") {
  MultiPoly H = mp("1+x+y", kXY);
  auto ext = build_extended_system(H, {Int(1), Int(1)});
  auto rep = rep_of(ext);
  CHECK_THROWS_WITH_AS(find_minimal_critical_points(ext, rep),
                       doctest::Contains("no minimal"), MinimalityError);
}

TEST_CASE("two unblocked positive candidates are rejected as ambiguous") {
  // Hand-built solution set {(1,0,1), (2,0,1)}: both candidates survive the
  // witness scan, which the minimality certificate cannot tolerate.
  std::vector<std::string> vars{"x", "lambda", "t"};
  ExtendedSystem ext;
  ext.vars = vars;
  ext.lambda_pos = 1;
  ext.t_pos = 2;
  ext.polys = {mp("x^2-3*x+2", vars), mp("lambda", vars), mp("t-1", vars)};
  auto rep = rep_of(ext);
  CHECK_THROWS_WITH_AS(find_minimal_critical_points(ext, rep),
                       doctest::Contains("multiple"), MinimalityError);
}

TEST_CASE("grouping keeps every point on the dominant torus") {
  MultiPoly H = mp("1-2*x^2-2*y^2", kXY);
  auto ext = build_extended_system(H, {Int(1), Int(1)});
  auto pts = find_minimal_critical_points(ext, rep_of(ext));

  REQUIRE(pts.size() == 4);
  const auto& w = minimal_point(pts);
  CHECK(is_rat(w.coords[0], 1, 2));
  CHECK(is_rat(w.coords[1], 1, 2));

  auto contribs = group_by_modulus(H, pts, w);
  CHECK(contribs.size() == 4);
  for (const auto& c : contribs) {
    CHECK(c.contributing);
    CHECK(is_rat(an_mul(c.coords[0], c.coords[0]), 1, 4));
    CHECK(is_rat(c.lambda, -1));
  }
}

TEST_CASE("phase Hessians come out exactly on rational points") {
  MultiPoly H = mp("1-x-y", kXY);
  auto ext = build_extended_system(H, {Int(1), Int(1)});
  auto pts = find_minimal_critical_points(ext, rep_of(ext));
  REQUIRE(pts.size() == 1);

  auto ph = phase_hessian(H, pts[0], {Int(1), Int(1)});
  CHECK(ph.pivot == 1);
  REQUIRE(ph.entries.size() == 1);
  CHECK(is_rat(ph.entries[0][0], 2));
  CHECK(is_rat(ph.determinant, 2));
  CHECK(ph.V == std::vector<Rat>{rq(1), rq(1)});
  for (const auto& row : ph.U)
    for (const auto& u : row) CHECK(an_is_zero(u));

  auto skew_ext = build_extended_system(H, {Int(2), Int(1)});
  auto skew_pts = find_minimal_critical_points(skew_ext, rep_of(skew_ext));
  auto skew_ph = phase_hessian(H, skew_pts[0], {Int(2), Int(1)});
  CHECK(is_rat(skew_ph.determinant, 6));
  CHECK(skew_ph.V == std::vector<Rat>{rq(2), rq(1)});
}

TEST_CASE("a univariate function has an empty phase Hessian with unit determinant") {
  MultiPoly H = mp("1-2*z", {"z"});
  auto ext = build_extended_system(H, {Int(1)});
  auto pts = find_minimal_critical_points(ext, rep_of(ext));
  REQUIRE(pts.size() == 1);
  CHECK(is_rat(pts[0].coords[0], 1, 2));
  CHECK(is_rat(pts[0].lambda, -1));

  auto ph = phase_hessian(H, pts[0], {Int(1)});
  CHECK(ph.entries.empty());
  CHECK(is_rat(ph.determinant, 1));
}

TEST_CASE("the pivot skips a vanishing partial derivative") {
  // At (1,1) the y-partial of H vanishes while the x-partial does not, so the
  // distinguished coordinate must fall back from the last position.
  MultiPoly H = mp("1-2*x+2*y-y^2", kXY);
  auto rep = std::make_shared<const KroneckerRep>(
      kronecker_rep({H, mp("y-1", kXY)}, kXY));
  auto roots = isolate_real_roots(rep->P);
  REQUIRE(roots.size() == 1);

  CriticalPoint w;
  w.rep = rep;
  w.root_index = 0;
  w.u = roots[0];
  w.coords = {AlgebraicNumber::from_int(1), AlgebraicNumber::from_int(1)};

  auto ph = phase_hessian(H, w, {Int(1), Int(1)});
  CHECK(ph.pivot == 0);
  REQUIRE(ph.entries.size() == 1);
  CHECK(is_rat(ph.entries[0][0], 3));
  CHECK(is_rat(ph.determinant, 3));
}

TEST_CASE("the central binomial diagonal expands to its closed form") {
  auto analysis = analyze(one_over(kXY), mp("1-x-y", kXY), {Int(1), Int(1)}, opts());

  REQUIRE(analysis.expansion.terms.size() == 1);
  const auto& t = analysis.expansion.terms[0];
  CHECK(is_rat(t.C, 1));
  CHECK(is_rat(t.rho, 4));
  CHECK(t.alpha == rq(-1, 2));
  CHECK(analysis.expansion.error_order == "O(1/n)");
  CHECK(analysis.expansion.report.all_ok());
  CHECK(analysis.contributors.size() == 1);
}

TEST_CASE("the skew binomial direction produces an algebraic constant") {
  auto analysis = analyze(one_over(kXY), mp("1-x-y", kXY), {Int(2), Int(1)}, opts());

  REQUIRE(analysis.expansion.terms.size() == 1);
  const auto& t = analysis.expansion.terms[0];
  CHECK(is_rat(t.rho, 27, 4));
  CHECK(t.alpha == rq(-1, 2));
  REQUIRE(t.C.is_real());
  CHECK(an_sign(t.C) > 0);
  CHECK(is_rat(an_mul(t.C, t.C), 3, 4));
}

TEST_CASE("relabeling variables and direction together changes nothing") {
  auto a = analyze(one_over(kXY), mp("1-x-y", kXY), {Int(2), Int(1)}, opts());
  auto b = analyze(one_over({"y", "x"}), mp("1-x-y", {"y", "x"}), {Int(1), Int(2)}, opts());

  REQUIRE(a.expansion.terms.size() == 1);
  REQUIRE(b.expansion.terms.size() == 1);
  CHECK(an_equal(a.expansion.terms[0].rho, b.expansion.terms[0].rho));
  CHECK(an_equal(a.expansion.terms[0].C, b.expansion.terms[0].C));
  CHECK(a.expansion.terms[0].alpha == b.expansion.terms[0].alpha);
}

TEST_CASE("a parity pattern merges contributors into two alternating terms") {
  auto analysis = analyze(one_over(kXY), mp("1-2*x^2-2*y^2", kXY), {Int(1), Int(1)}, opts());

  CHECK(analysis.contributors.size() == 4);
  REQUIRE(analysis.expansion.terms.size() == 2);

  bool saw_plus = false, saw_minus = false;
  for (const auto& t : analysis.expansion.terms) {
    CHECK(t.alpha == rq(-1, 2));
    REQUIRE(t.rho.is_rational());
    REQUIRE(t.C.is_real());
    CHECK(an_sign(t.C) > 0);
    CHECK(is_rat(an_mul(t.C, t.C), 1, 2));
    if (t.rho.rational_value() == rq(4)) saw_plus = true;
    if (t.rho.rational_value() == rq(-4)) saw_minus = true;
  }
  CHECK(saw_plus);
  CHECK(saw_minus);
}

TEST_CASE("complex contributors arrive in conjugate pairs with equal weight") {
  // 1/(1-x-y^3): three critical points share x = 3/4 while y runs over the
  // cube roots of 1/4; all three lie on the dominant torus.
  auto analysis = analyze(one_over(kXY), mp("1-x-y^3", kXY), {Int(1), Int(1)}, opts());

  REQUIRE(analysis.expansion.terms.size() == 3);

  AlgebraicNumber c_sum;
  std::vector<const ExpansionTerm*> complex_terms;
  int real_rho = 0;
  for (const auto& t : analysis.expansion.terms) {
    CHECK(is_rat(an_pow(t.rho, 3), 256, 27));
    CHECK(an_is_real_value(t.C));
    CHECK(is_rat(an_mul(t.C, t.C), 2, 9));
    c_sum = an_add(c_sum, t.C);
    if (t.rho.is_real()) {
      ++real_rho;
      CHECK(an_sign(t.rho) > 0);
    } else {
      complex_terms.push_back(&t);
    }
  }
  CHECK(real_rho == 1);
  REQUIRE(complex_terms.size() == 2);
  CHECK(an_equal(complex_terms[0]->rho, an_conj(complex_terms[1]->rho)));
  // The three weights are each sqrt(2)/3, so they total sqrt(2).
  CHECK(an_equal(c_sum, an_sqrt(AlgebraicNumber::from_int(2))));

  for (const auto& p : analysis.contributors) {
    CHECK(is_rat(p.coords[0], 3, 4));
    CHECK(is_rat(an_pow(p.coords[1], 3), 1, 4));
  }
}

TEST_CASE("a singular crossing away from the dominant torus is tolerated") {
  // (1-x-y)(2-x-2y): the lines cross at (0,1), which is a singular point of
  // the variety but carries no weight on the diagonal; certification falls
  // back to the contributing points and the expansion matches the partial
  // fraction picture, an extra factor 1/(2-x-2y) evaluated at (1/2,1/2).
  MultiPoly H = mp("2-3*x-4*y+x^2+3*x*y+2*y^2", kXY);
  auto analysis = analyze(one_over(kXY), H, {Int(1), Int(1)}, opts());

  CHECK(analysis.points.size() == 3);
  CHECK(analysis.contributors.size() == 1);
  REQUIRE(analysis.expansion.terms.size() == 1);
  CHECK(is_rat(analysis.expansion.terms[0].C, 2));
  CHECK(is_rat(analysis.expansion.terms[0].rho, 4));
  CHECK(analysis.expansion.terms[0].alpha == rq(-1, 2));

  const auto& smooth = entry_named(analysis.expansion.report, "smoothness");
  CHECK(smooth.verdict == "pass");
  CHECK(smooth.note.find("contributing") != std::string::npos);
}

TEST_CASE("a singular point on the dominant torus stops the analysis") {
  // (1-x-y)(3-2x-4y): the crossing point is exactly the minimal critical
  // point, so the smooth-point expansion must refuse.
  MultiPoly H = mp("3-5*x-7*y+2*x^2+6*x*y+4*y^2", kXY);

  auto report = check_assumptions(one_over(kXY), H, {Int(1), Int(1)}, opts());
  CHECK_FALSE(report.all_ok());
  CHECK(entry_named(report, "smoothness").verdict == "fail");
  CHECK(entry_named(report, "minimal-point").verdict == "pass");

  CHECK_THROWS_AS(analyze(one_over(kXY), H, {Int(1), Int(1)}, opts()), AssumptionError);
}

TEST_CASE("assumption reports list the certification trail in pipeline order") {
  auto report = check_assumptions(one_over(kXY), mp("1-x-y", kXY), {Int(1), Int(1)}, opts());

  std::vector<std::string> names;
  for (const auto& e : report.entries) names.push_back(e.name);
  CHECK(names == std::vector<std::string>{"origin", "smoothness", "critical-set-finite",
                                          "minimal-point", "same-modulus-finite",
                                          "hessian-nonsingular", "numerator-nonzero"});
  for (const auto& e : report.entries)
    CHECK(e.verdict == (e.name == "same-modulus-finite" ? "assumed" : "pass"));
  CHECK(report.all_ok());
}

TEST_CASE("a denominator vanishing at the origin is rejected up front") {
  MultiPoly H = mp("x+y", kXY);
  auto report = check_assumptions(one_over(kXY), H, {Int(1), Int(1)}, opts());
  CHECK_FALSE(report.all_ok());
  CHECK(entry_named(report, "origin").verdict == "fail");
  CHECK_THROWS_AS(analyze(one_over(kXY), H, {Int(1), Int(1)}, opts()), AssumptionError);
}

TEST_CASE("a numerator vanishing at the dominant point is reported") {
  MultiPoly G = mp("2-4*x", kXY);
  MultiPoly H = mp("1-x-y", kXY);
  auto report = check_assumptions(G, H, {Int(1), Int(1)}, opts());
  CHECK_FALSE(report.all_ok());
  CHECK(entry_named(report, "numerator-nonzero").verdict == "fail");
  CHECK_THROWS_WITH_AS(analyze(G, H, {Int(1), Int(1)}, opts()),
                       doctest::Contains("numerator"), AssumptionError);
}

TEST_CASE("a repeated denominator factor is flagged and not expanded") {
  MultiPoly H = mp("1-2*x-2*y+x^2+2*x*y+y^2", kXY);
  auto report = check_assumptions(one_over(kXY), H, {Int(1), Int(1)}, opts());
  CHECK_FALSE(report.all_ok());
  CHECK(entry_named(report, "square-free").verdict == "fail");
  // The reduced denominator still certifies a minimal point before stopping.
  CHECK(entry_named(report, "minimal-point").verdict == "pass");
  CHECK_THROWS_WITH_AS(analyze(one_over(kXY), H, {Int(1), Int(1)}, opts()),
                       doctest::Contains("square-free"), AssumptionError);
}

TEST_CASE("the pipeline requires the combinatorial assertion") {
  AnalysisOptions plain;
  CHECK_THROWS_AS(analyze(one_over(kXY), mp("1-x-y", kXY), {Int(1), Int(1)}, plain),
                  std::logic_error);
}

TEST_CASE("direction entries must be positive integers") {
  CHECK_THROWS_AS(analyze(one_over(kXY), mp("1-x-y", kXY), {Int(1)}, opts()),
                  std::logic_error);
  CHECK_THROWS_AS(analyze(one_over(kXY), mp("1-x-y", kXY), {Int(0), Int(1)}, opts()),
                  std::logic_error);
}

TEST_CASE("expansion refuses an empty contributor list") {
  std::vector<CriticalPoint> none;
  CHECK_THROWS_AS(asymptotic_expansion(one_over(kXY), mp("1-x-y", kXY),
                                       {Int(1), Int(1)}, none),
                  std::logic_error);
}

TEST_CASE("the expansion operation composes from the pipeline pieces") {
  MultiPoly H = mp("1-x-y", kXY);
  auto ext = build_extended_system(H, {Int(1), Int(1)});
  auto pts = find_minimal_critical_points(ext, rep_of(ext));
  auto contribs = group_by_modulus(H, pts, minimal_point(pts));

  auto expansion = asymptotic_expansion(one_over(kXY), H, {Int(1), Int(1)}, contribs);
  REQUIRE(expansion.terms.size() == 1);
  CHECK(is_rat(expansion.terms[0].C, 1));
  CHECK(is_rat(expansion.terms[0].rho, 4));
}

TEST_CASE("critical point identities hold exactly at the reported points") {
  MultiPoly H = mp("1-2*x^2-2*y^2", kXY);
  auto analysis = analyze(one_over(kXY), H, {Int(1), Int(1)}, opts());

  for (const auto& p : analysis.contributors) {
    std::vector<Rat> at;
    for (const auto& c : p.coords) {
      REQUIRE(c.is_rational());
      at.push_back(c.rational_value());
    }
    CHECK(H.evaluate(at) == Rat(0));
    REQUIRE(p.lambda.is_rational());
    for (std::size_t i = 0; i < at.size(); ++i) {
      Rat lhs = at[i] * H.derivative(i).evaluate(at);
      CHECK(lhs == p.lambda.rational_value());
    }
    REQUIRE(p.t.is_rational());
    CHECK(p.t.rational_value() == Rat(1));
  }
}

TEST_CASE("the ternary example certifies its quadratic growth rate") {
  const std::vector<std::string> v3{"x", "y", "z"};
  MultiPoly H = mp("1-x-y-z+x*z+y*z-x*y*z", v3);
  AnalysisOptions o = opts();
  o.linear_form = std::vector<Int>{Int(1), Int(0), Int(0), Int(0), Int(1)};

  auto analysis = analyze(one_over(v3), H, {Int(1), Int(1), Int(1)}, o);
  REQUIRE(analysis.expansion.terms.size() == 1);
  const auto& t = analysis.expansion.terms[0];
  CHECK(t.alpha == rq(-1));
  REQUIRE(t.rho.is_real());
  CHECK(an_sign(t.rho) > 0);
  // Growth of the diagonal 1, 3, 19, 147, ...: the larger root of
  // x^2 - 11x - 1.
  UPoly growth({Int(-1), Int(-11), Int(1)});
  CHECK(t.rho.poly() == growth);
  REQUIRE(t.C.is_real());
  CHECK(an_sign(t.C) > 0);

  // The denominator is symmetric in x and y, and so is the minimal point.
  const auto& w = minimal_point(analysis.points);
  CHECK(an_equal(w.coords[0], w.coords[1]));

  // Doubling the direction squares the growth rate, keeps the point, and
  // rescales the constant by the Hessian prefactor.
  auto doubled = analyze(one_over(v3), H, {Int(2), Int(2), Int(2)}, o);
  REQUIRE(doubled.expansion.terms.size() == 1);
  const auto& t2 = doubled.expansion.terms[0];
  CHECK(an_equal(t2.rho, an_mul(t.rho, t.rho)));
  CHECK(an_equal(t2.C, an_mul(t.C, AlgebraicNumber::from_rat(rq(1, 2)))));
  CHECK(t2.alpha == rq(-1));
}

TEST_CASE("repeated runs print identical certified digits") {
  MultiPoly H = mp("1-2*x^2-2*y^2", kXY);
  auto a = analyze(one_over(kXY), H, {Int(1), Int(1)}, opts());
  auto b = analyze(one_over(kXY), H, {Int(1), Int(1)}, opts());

  REQUIRE(a.expansion.terms.size() == b.expansion.terms.size());
  for (std::size_t i = 0; i < a.expansion.terms.size(); ++i) {
    CHECK(a.expansion.terms[i].C.decimal(20) == b.expansion.terms[i].C.decimal(20));
    CHECK(a.expansion.terms[i].rho.decimal(20) == b.expansion.terms[i].rho.decimal(20));
  }
}
