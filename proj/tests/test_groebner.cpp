#include <algorithm>
#include <string>
#include <vector>

#include "acsv/algnum.hpp"
#include "acsv/error.hpp"
#include "acsv/groebner.hpp"
#include "acsv/parser.hpp"
#include "acsv/upoly.hpp"
#include "doctest.h"

using namespace acsv;

namespace {

std::vector<MultiPoly> parse_all(const std::vector<std::string>& texts,
                                 const std::vector<std::string>& vars) {
  std::vector<MultiPoly> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, vars));
  return out;
}

bool lex_greater(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

ExpVec leading_exponent(const MultiPoly& p) {
  ExpVec best;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first || lex_greater(m, best)) best = m;
    first = false;
  }
  return best;
}

Int leading_coeff(const MultiPoly& p) {
  ExpVec lm = leading_exponent(p);
  return p.terms().at(lm);
}

}  // namespace

TEST_CASE("linear systems reduce to their solution point") {
  std::vector<std::string> vars{"x", "y"};
  auto basis = buchberger_lex(parse_all({"x+y-2", "x-y"}, vars), vars);
  REQUIRE(basis.generators.size() == 2);
  CHECK(basis.generators[0] == parse_polynomial("x-1", vars));
  CHECK(basis.generators[1] == parse_polynomial("y-1", vars));
  CHECK(is_zero_dimensional(basis));

  // Critical-point equations of 1/(1-x-y) on the diagonal. Hand solve:
  // x = -l, y = -l, then 1-x-y = 1+2l = 0, so the one solution is
  // x = y = 1/2, l = -1/2 and the reduced basis pins each coordinate.
  std::vector<std::string> v3{"x", "y", "l"};
  auto gens3 = parse_all({"1-x-y", "-1*x-l", "-1*y-l"}, v3);
  auto b3 = buchberger_lex(gens3, v3);
  REQUIRE(b3.generators.size() == 3);
  CHECK(b3.generators[0] == parse_polynomial("2*x-1", v3));
  CHECK(b3.generators[1] == parse_polynomial("2*y-1", v3));
  CHECK(b3.generators[2] == parse_polynomial("2*l+1", v3));
  std::vector<Rat> sol{Rat(1, 2), Rat(1, 2), Rat(-1, 2)};
  for (const auto& g : b3.generators) CHECK(g.evaluate(sol) == 0);

  // Same ideal as the triangular (but unreduced) presentation
  // {x+l, y+l, 2l+1}: each side reduces to zero against the other.
  auto tri = parse_all({"x+l", "y+l", "2*l+1"}, v3);
  auto btri = buchberger_lex(tri, v3);
  for (const auto& g : tri) CHECK(normal_form(g, b3).is_zero());
  for (const auto& g : b3.generators) CHECK(normal_form(g, btri).is_zero());
}

TEST_CASE("elimination produces a triangular basis") {
  std::vector<std::string> vars{"x", "y"};
  auto basis = buchberger_lex(parse_all({"x^2+y^2-1", "x-y"}, vars), vars);
  REQUIRE(basis.generators.size() == 2);
  CHECK(basis.generators[0] == parse_polynomial("x-y", vars));
  CHECK(basis.generators[1] == parse_polynomial("2*y^2-1", vars));

  // Both generators vanish at x = y = 1/sqrt(2), checked with certified
  // arithmetic rather than floating point.
  AlgebraicNumber y = an_sqrt(AlgebraicNumber::from_rat(Rat(1, 2)));
  AlgebraicNumber two_y2 = an_mul(AlgebraicNumber::from_int(2), an_mul(y, y));
  CHECK(an_is_zero(an_sub(two_y2, AlgebraicNumber::from_int(1))));

  CHECK(is_zero_dimensional(basis));
}

TEST_CASE("normal forms strip every reducible term") {
  std::vector<std::string> vars{"x"};
  auto basis = buchberger_lex(parse_all({"x-1"}, vars), vars);
  CHECK(normal_form(parse_polynomial("x", vars), basis) == parse_polynomial("1", vars));

  std::vector<std::string> v2{"x", "y"};
  auto point = buchberger_lex(parse_all({"x-1", "y-1"}, v2), v2);
  CHECK(normal_form(parse_polynomial("x+y-2", v2), point).is_zero());

  auto circ = buchberger_lex(parse_all({"x^2+y^2-1", "x-y"}, v2), v2);
  MultiPoly r = normal_form(parse_polynomial("x^2", v2), circ);
  CHECK(r.degree_in(0) <= 0);
  CHECK(r.degree_in(1) <= 2);

  // Inputs always reduce to zero against their own basis.
  for (const auto& g : parse_all({"x^2+y^2-1", "x-y"}, v2)) {
    CHECK(normal_form(g, circ).is_zero());
  }
}

TEST_CASE("basis is canonical regardless of generator order") {
  std::vector<std::string> vars{"x", "y", "z"};
  auto gens = parse_all({"x^2-y", "y^2-z", "x*z-y^2+1"}, vars);
  auto b1 = buchberger_lex(gens, vars);
  std::reverse(gens.begin(), gens.end());
  auto b2 = buchberger_lex(gens, vars);
  REQUIRE(b1.generators.size() == b2.generators.size());
  for (std::size_t i = 0; i < b1.generators.size(); ++i) {
    CHECK(b1.generators[i] == b2.generators[i]);
  }
}

TEST_CASE("returned bases pass the S-pair criterion post hoc") {
  std::vector<std::string> vars{"x", "y"};
  auto basis = buchberger_lex(parse_all({"x^3-2*x*y", "x^2*y-2*y^2+x"}, vars), vars);
  for (std::size_t i = 0; i < basis.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.generators.size(); ++j) {
      const MultiPoly& f = basis.generators[i];
      const MultiPoly& g = basis.generators[j];
      ExpVec lf = leading_exponent(f), lg = leading_exponent(g);
      ExpVec lcm(lf.size());
      for (std::size_t k = 0; k < lf.size(); ++k) lcm[k] = std::max(lf[k], lg[k]);
      MultiPoly mf(vars), mg(vars);
      ExpVec sf(lf.size()), sg(lf.size());
      for (std::size_t k = 0; k < lf.size(); ++k) {
        sf[k] = lcm[k] - lf[k];
        sg[k] = lcm[k] - lg[k];
      }
      mf.add_term(sf, leading_coeff(g));
      mg.add_term(sg, leading_coeff(f));
      MultiPoly s = mf * f - mg * g;
      CHECK(normal_form(s, basis).is_zero());
    }
  }
}

TEST_CASE("zero dimensionality reads off the leading terms") {
  std::vector<std::string> v2{"x", "y"};
  CHECK(is_zero_dimensional(buchberger_lex(parse_all({"x-1", "y-1"}, v2), v2)));
  CHECK(!is_zero_dimensional(buchberger_lex(parse_all({"x-y"}, v2), v2)));

  // A contradictory system has an empty, hence finite, solution set.
  CHECK(is_zero_dimensional(buchberger_lex(parse_all({"x", "x-1"}, v2), v2)));
}

TEST_CASE("diagonal system with adjoined linear form is zero dimensional") {
  std::vector<std::string> vars{"x", "y", "z", "l", "t", "u"};
  auto gens = parse_all(
      {
          "x*y*z-x*z+x-l",
          "x*y*z-y*z+y-l",
          "x*y*z-x*z-y*z+z-l",
          "x*y*z-x*z-y*z+x+y+z-1",
          "x*y*z*t^3-x*z*t^2-y*z*t^2+x*t+y*t+z*t-1",
          "u-x-t",
      },
      vars);
  auto basis = buchberger_lex(gens, vars);
  CHECK(is_zero_dimensional(basis));

  // The smallest generator eliminates down to u alone. The ideal is not
  // radical, so it carries multiplicity: degree 10 raw, degree 8 after
  // stripping repeated factors (one root per solution of the system).
  const MultiPoly& last = basis.generators.back();
  for (std::size_t v = 0; v + 1 < vars.size(); ++v) CHECK(last.degree_in(v) <= 0);
  CHECK(last.degree_in(5) == 10);
  std::vector<Int> cs(11, Int(0));
  for (const auto& [m, c] : last.terms()) cs[m[5]] = c;
  CHECK(upoly_square_free(UPoly(cs)).degree() == 8);
  CHECK(basis.generators.size() == 6);
  for (std::size_t i = 0; i + 1 < basis.generators.size(); ++i) {
    ExpVec lm = leading_exponent(basis.generators[i]);
    long total = 0;
    for (auto e : lm) total += e;
    CHECK(total == 1);
  }

  for (const auto& g : gens) CHECK(normal_form(g, basis).is_zero());
}

TEST_CASE("the S-pair budget converts blowups into clean errors") {
  std::vector<std::string> vars{"x", "y"};
  CHECK_THROWS_AS(buchberger_lex(parse_all({"x^2+y^2-1", "x-y"}, vars), vars, 0),
                  ResourceError);
}
