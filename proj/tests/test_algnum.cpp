#include <cmath>
#include <vector>

#include "acsv/algnum.hpp"
#include "doctest.h"

using namespace acsv;

namespace {

UPoly up(std::vector<long> cs) {
  std::vector<Int> v;
  v.reserve(cs.size());
  for (long c : cs) v.emplace_back(c);
  return UPoly(std::move(v));
}

}  // namespace

TEST_CASE("real root isolation produces disjoint sorted certified intervals") {
  auto r = isolate_real_roots(up({-2, 0, 1}));  // x^2 - 2
  REQUIRE(r.size() == 2);
  r[0].refine_below(Rat(1, 64));
  r[1].refine_below(Rat(1, 64));
  Region a = r[0].region(), b = r[1].region();
  CHECK(a.xlo > -2);
  CHECK(a.xhi < -1);
  CHECK(b.xlo > 1);
  CHECK(b.xhi < 2);
  CHECK(a.xhi < b.xlo);

  auto c = isolate_real_roots(up({-1, 0, 0, 1}));  // x^3 - 1
  REQUIRE(c.size() == 1);
  CHECK(an_equal(c[0], AlgebraicNumber::from_int(1)));

  // x(x-1)(x+1): all three roots rational.
  auto t = isolate_real_roots(up({0, -1, 0, 1}));
  REQUIRE(t.size() == 3);
  CHECK(an_equal(t[0], AlgebraicNumber::from_int(-1)));
  CHECK(an_equal(t[1], AlgebraicNumber::from_int(0)));
  CHECK(an_equal(t[2], AlgebraicNumber::from_int(1)));

  // Repeated factors collapse to the square-free part.
  auto d = isolate_real_roots(up({1, -2, 1}));  // (x-1)^2
  REQUIRE(d.size() == 1);
  CHECK(an_equal(d[0], AlgebraicNumber::from_int(1)));
}

TEST_CASE("real root count matches an independent Sturm census") {
  // Degree-8 polynomial from the solved diagonal system; the chain count is
  // computed without the isolation machinery.
  UPoly p = up({790, -2925, 4553, -3922, 2067, -692, 146, -18, 1});
  auto chain = sturm_chain(upoly_square_free(p));
  int expected = count_real_roots_total(chain);
  auto roots = isolate_real_roots(p);
  CHECK(static_cast<int>(roots.size()) == expected);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    CHECK(roots[i - 1].region().xhi < roots[i].region().xlo);
  }
  auto all = isolate_complex_roots(p);
  CHECK(all.size() == 8);

  // Random products of linear factors: every designated root is recovered.
  Rng rng(42);
  for (int iter = 0; iter < 6; ++iter) {
    UPoly q(Int(1));
    std::vector<long> vals;
    for (int k = 0; k < 4; ++k) {
      long v = rng.uniform(-6, 6);
      bool dup = false;
      for (long w : vals) dup = dup || w == v;
      if (dup) continue;
      vals.push_back(v);
      q = q * up({-v, 1});
    }
    auto rr = isolate_real_roots(q);
    CHECK(rr.size() == vals.size());
    for (long v : vals) {
      bool found = false;
      for (const auto& root : rr) found = found || an_equal(root, AlgebraicNumber::from_int(v));
      CHECK(found);
    }
  }
}

TEST_CASE("complex root boxes cover the full root set and mirror conjugates") {
  auto r = isolate_complex_roots(up({1, 0, 1}));  // x^2 + 1
  REQUIRE(r.size() == 2);
  CHECK(!r[0].is_real());
  CHECK(!r[1].is_real());
  Region a = r[0].region(), b = r[1].region();
  CHECK(a.xlo == b.xlo);
  CHECK(a.xhi == b.xhi);
  CHECK(a.ylo == -b.yhi);
  CHECK(a.yhi == -b.ylo);
  CHECK(an_equal(r[0], an_conj(r[1])));

  auto s = isolate_complex_roots(up({-2, 0, 1}));  // x^2 - 2: both roots real
  REQUIRE(s.size() == 2);
  CHECK(s[0].is_real());
  CHECK(s[1].is_real());
  CHECK(s[0].region().ylo == 0);
  CHECK(s[0].region().yhi == 0);

  auto m = isolate_complex_roots(up({-3, 1, -3, 1}));  // (x^2 + 1)(x - 3)
  CHECK(m.size() == 3);
  int reals = 0;
  for (const auto& x : m) reals += x.is_real() ? 1 : 0;
  CHECK(reals == 1);

  auto five = isolate_complex_roots(up({-1, 0, 0, 0, 0, 1}));  // x^5 - 1
  CHECK(five.size() == 5);
}

TEST_CASE("rectangle root counting by contour turning") {
  UPoly z = up({0, 1});
  auto one = count_roots_in_rect(z, Rat(-1), Rat(1), Rat(-1), Rat(1));
  REQUIRE(one.has_value());
  CHECK(*one == 1);
  auto none = count_roots_in_rect(z, Rat(1), Rat(2), Rat(1), Rat(2));
  REQUIRE(none.has_value());
  CHECK(*none == 0);

  UPoly z2p1 = up({1, 0, 1});
  auto both = count_roots_in_rect(z2p1, Rat(-2), Rat(2), Rat(-2), Rat(2));
  REQUIRE(both.has_value());
  CHECK(*both == 2);
  auto upper = count_roots_in_rect(z2p1, Rat(-1, 2), Rat(1, 2), Rat(1, 2), Rat(3, 2));
  REQUIRE(upper.has_value());
  CHECK(*upper == 1);

  // z^2: double root at the origin counts twice inside.  The corners are
  // chosen so p is not purely imaginary at any of them.
  UPoly zz = up({0, 0, 1});
  auto dbl = count_roots_in_rect(zz, Rat(-5, 4), Rat(1), Rat(-3, 4), Rat(7, 8));
  REQUIRE(dbl.has_value());
  CHECK(*dbl == 2);
  UPoly shifted = up({-1, 0, 1});  // roots at +-1
  CHECK(!count_roots_in_rect(shifted, Rat(1), Rat(2), Rat(-1), Rat(1)).has_value());
}

TEST_CASE("square roots and inverses compose exactly") {
  AlgebraicNumber two = AlgebraicNumber::from_int(2);
  AlgebraicNumber s2 = an_sqrt(two);
  CHECK(!s2.is_rational());
  CHECK(s2.poly().degree() == 2);
  CHECK(an_is_zero(an_add(s2, an_neg(s2))));
  CHECK(an_equal(an_mul(s2, s2), two));
  CHECK(an_sign(an_sub(s2, AlgebraicNumber::from_rat(Rat(3, 2)))) == -1);
  CHECK(an_sign(an_sub(s2, AlgebraicNumber::from_rat(Rat(7, 5)))) == 1);

  AlgebraicNumber inv = an_inv(s2);
  CHECK(an_equal(an_mul(inv, s2), AlgebraicNumber::from_int(1)));
  CHECK_THROWS(an_inv(AlgebraicNumber::from_int(0)));
  CHECK_THROWS(an_sqrt(AlgebraicNumber::from_int(-1)));

  CHECK(an_equal(an_pow(s2, 4), AlgebraicNumber::from_int(4)));
  CHECK(an_equal(an_pow(s2, -2), AlgebraicNumber::from_rat(Rat(1, 2))));

  AlgebraicNumber q = an_add(AlgebraicNumber::from_rat(Rat(1, 2)),
                             AlgebraicNumber::from_rat(Rat(1, 3)));
  CHECK(q.is_rational());
  CHECK(q.rational_value() == Rat(5, 6));

  // sqrt(12 + 17/sqrt(2)), assembled purely from field operations.
  AlgebraicNumber seventeen = AlgebraicNumber::from_int(17);
  AlgebraicNumber val = an_add(AlgebraicNumber::from_int(12), an_mul(seventeen, inv));
  AlgebraicNumber root = an_sqrt(val);
  CHECK(root.poly().degree() == 4);
  root.refine_below(Rat(Int(1), Int(1) << 60));
  double mid = root.enclosure(192).re.mid_double();
  CHECK(std::abs(mid - std::sqrt(12.0 + 17.0 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(mid - 4.901096) < 1e-4);
}

TEST_CASE("equality is decided exactly across representations") {
  AlgebraicNumber s2 = an_sqrt(AlgebraicNumber::from_int(2));
  // The same value carved out of a reducible degree-4 polynomial.
  AlgebraicNumber alt = AlgebraicNumber::make_real(up({-4, 0, 0, 0, 1}), Rat(13, 10), Rat(3, 2));
  CHECK(an_equal(s2, alt));
  CHECK(an_equal(alt, s2));
  CHECK(an_equal(s2, s2));
  CHECK(!an_equal(s2, AlgebraicNumber::from_rat(Rat(3, 2))));
  CHECK(!an_equal(s2, an_neg(s2)));

  // Equal values built along different routes stay equal (transitivity).
  AlgebraicNumber a = an_add(s2, s2);                                  // 2*sqrt(2)
  AlgebraicNumber b = an_mul(AlgebraicNumber::from_int(2), s2);        // 2*sqrt(2)
  AlgebraicNumber c = an_sqrt(AlgebraicNumber::from_int(8));           // sqrt(8)
  CHECK(an_equal(a, b));
  CHECK(an_equal(b, c));
  CHECK(an_equal(a, c));

  // Nearby but distinct algebraic numbers separate.
  AlgebraicNumber s2eps = an_sqrt(AlgebraicNumber::from_rat(Rat(2000001, 1000000)));
  CHECK(!an_equal(s2, s2eps));
  CHECK(an_sign(an_sub(s2eps, s2)) == 1);
}

TEST_CASE("signs multiply and refinement nests") {
  Rng rng(7);
  for (int iter = 0; iter < 8; ++iter) {
    long av = rng.uniform(1, 30);
    long bv = rng.uniform(1, 30);
    AlgebraicNumber a = an_sqrt(AlgebraicNumber::from_int(av));
    AlgebraicNumber b = an_sqrt(AlgebraicNumber::from_int(bv));
    if (rng.uniform(0, 1)) a = an_neg(a);
    if (rng.uniform(0, 1)) b = an_neg(b);
    CHECK(an_sign(an_mul(a, b)) == an_sign(a) * an_sign(b));
  }

  AlgebraicNumber s3 = an_sqrt(AlgebraicNumber::from_int(3));
  Region prev = s3.region();
  for (int i = 0; i < 12; ++i) {
    s3.refine();
    Region cur = s3.region();
    CHECK(cur.xlo >= prev.xlo);
    CHECK(cur.xhi <= prev.xhi);
    if (!cur.is_point()) CHECK(cur.xhi - cur.xlo <= (prev.xhi - prev.xlo) / 2);
    prev = cur;
  }

  auto ims = isolate_complex_roots(up({1, 0, 1}));
  AlgebraicNumber i0 = ims[0];
  Region bprev = i0.region();
  Rat w0 = bprev.xhi - bprev.xlo + bprev.yhi - bprev.ylo;
  for (int k = 0; k < 12; ++k) {
    i0.refine();
    Region cur = i0.region();
    CHECK(cur.xlo >= bprev.xlo);
    CHECK(cur.xhi <= bprev.xhi);
    CHECK(cur.ylo >= bprev.ylo);
    CHECK(cur.yhi <= bprev.yhi);
    bprev = cur;
  }
  Rat w1 = bprev.xhi - bprev.xlo + bprev.yhi - bprev.ylo;
  CHECK(w1 <= w0 / 4);
}

TEST_CASE("moduli of complex values are certified real") {
  auto ims = isolate_complex_roots(up({1, 0, 1}));  // +-i
  AlgebraicNumber msq = an_modulus_squared(ims[0]);
  CHECK(msq.is_real());
  CHECK(an_equal(msq, AlgebraicNumber::from_int(1)));

  CHECK(an_equal(an_modulus_squared(AlgebraicNumber::from_rat(Rat(1, 2))),
                 AlgebraicNumber::from_rat(Rat(1, 4))));

  // (1 +- i)/2 are the roots of 2x^2 - 2x + 1.
  auto halves = isolate_complex_roots(up({1, -2, 2}));
  REQUIRE(halves.size() == 2);
  CHECK(an_equal(an_modulus_squared(halves[0]), AlgebraicNumber::from_rat(Rat(1, 2))));

  // Against the numerical shadow: refine the box hard, then |a|^2 must sit
  // within a matching tight window of re^2 + im^2.
  auto roots = isolate_complex_roots(up({-1, -1, 0, 1}));  // x^3 - x - 1
  AlgebraicNumber alpha;
  bool got = false;
  for (const auto& rt : roots) {
    if (!rt.is_real() && !got) {
      alpha = rt;
      got = true;
    }
  }
  REQUIRE(got);
  Rat target(Int(1), int_pow(Int(10), 30));
  alpha.refine_below(target);
  Region box = alpha.region();
  Rat rem = (box.xlo + box.xhi) / 2;
  Rat imm = (box.ylo + box.yhi) / 2;
  Rat shadow = rem * rem + imm * imm;
  AlgebraicNumber diff = an_sub(an_modulus_squared(alpha), AlgebraicNumber::from_rat(shadow));
  diff.refine_below(Rat(Int(1), int_pow(Int(10), 27)));
  Region dr = diff.region();
  CHECK(Rat(abs(dr.xlo)) < Rat(Int(1), int_pow(Int(10), 25)));
  CHECK(Rat(abs(dr.xhi)) < Rat(Int(1), int_pow(Int(10), 25)));
}

TEST_CASE("square roots extend to negative and complex arguments") {
  AlgebraicNumber r = an_sqrt_any(AlgebraicNumber::from_int(-4));
  CHECK(!r.is_real());
  CHECK(an_equal(an_mul(r, r), AlgebraicNumber::from_int(-4)));
  CHECK(an_equal(an_modulus_squared(r), AlgebraicNumber::from_int(4)));

  auto roots = isolate_complex_roots(up({2, -2, 1}));  // 1 +- i
  AlgebraicNumber z = roots[0];
  AlgebraicNumber w = an_sqrt_any(z);
  CHECK(an_equal(an_mul(w, w), z));
}

TEST_CASE("decimal rendering hits the requested precision") {
  AlgebraicNumber s2 = an_sqrt(AlgebraicNumber::from_int(2));
  std::string d = s2.decimal(10);
  CHECK(d.substr(0, 11) == "1.414213562");
  AlgebraicNumber third = AlgebraicNumber::from_rat(Rat(1, 3));
  CHECK(third.decimal(6).substr(0, 8) == "0.333333");
}
