#include <vector>

#include "acsv/factor.hpp"
#include "acsv/upoly.hpp"
#include "doctest.h"

using namespace acsv;

namespace {

UPoly up(std::vector<long> cs) {
  std::vector<Int> v;
  v.reserve(cs.size());
  for (long c : cs) v.emplace_back(c);
  return UPoly(std::move(v));
}

UPoly random_upoly(Rng& rng, int max_deg, int max_coeff) {
  std::vector<Int> v(static_cast<std::size_t>(rng.uniform(1, max_deg + 1)));
  for (auto& c : v) c = Int(rng.uniform(-max_coeff, max_coeff));
  return UPoly(std::move(v));
}

// Independent oracle: resultant as the determinant of the Sylvester matrix,
// by fraction-free Gaussian elimination.
Int sylvester_resultant(const UPoly& p, const UPoly& q) {
  long m = p.degree(), n = q.degree();
  if (m < 0 || n < 0) return Int(0);
  if (m == 0) return int_pow(p.coeff(0), static_cast<unsigned long>(n));
  if (n == 0) return int_pow(q.coeff(0), static_cast<unsigned long>(m));
  std::size_t N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Int>> a(N, std::vector<Int>(N, Int(0)));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j <= m; ++j) a[i][i + j] = p.coeff(static_cast<std::size_t>(m - j));
  }
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j <= n; ++j) a[n + i][i + j] = q.coeff(static_cast<std::size_t>(n - j));
  }
  Int den(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k;
      for (std::size_t i = k + 1; i < N; ++i) {
        if (a[i][k] != 0) { swap = i; break; }
      }
      if (swap == k) return Int(0);
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) {
        a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], den);
      }
      a[i][k] = 0;
    }
    den = a[k][k];
  }
  return Int(sign) * a[N - 1][N - 1];
}

}  // namespace

TEST_CASE("univariate arithmetic and division") {
  UPoly p = up({-1, 0, 1});  // x^2 - 1
  UPoly q = up({1, 1});      // x + 1
  CHECK(p.degree() == 2);
  CHECK((q * up({-1, 1})) == p);
  auto d = try_divide(p, q);
  REQUIRE(d.has_value());
  CHECK(*d == up({-1, 1}));
  CHECK(!try_divide(p, up({1, 3})).has_value());
  CHECK(!try_divide(up({1, 0, 1}), q).has_value());
  CHECK(p.evaluate(Rat(3)) == 8);
  CHECK(p.evaluate_int(Int(-2)) == 3);
  CHECK(up({1, 2, 3}).derivative() == up({2, 6}));
  CHECK(up({2, 4, 6}).content() == 2);
  CHECK(up({0, 0, -2}).normalized() == up({0, 0, 1}));
}

TEST_CASE("gcd and square-free part") {
  UPoly a = up({-1, 1});      // x - 1
  UPoly b = up({2, 1});       // x + 2
  UPoly c = up({-3, 2});      // 2x - 3
  CHECK(upoly_gcd(a * b, a * c) == a);
  CHECK(upoly_gcd(b, c).degree() == 0);
  CHECK(upoly_square_free(a * a * b) == (a * b).normalized());
  CHECK(upoly_square_free(a * a * a) == a);

  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    UPoly f = random_upoly(rng, 5, 8);
    UPoly g = random_upoly(rng, 5, 8);
    UPoly h = random_upoly(rng, 4, 8);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    CHECK_NOTHROW((void)try_divide(upoly_gcd(f * h, g * h), h.normalized()));
    UPoly s = upoly_square_free(f * f * g);
    CHECK(upoly_gcd(s, s.derivative()).degree() == 0);
  }
}

TEST_CASE("resultants match the Sylvester determinant") {
  // Res(x-a, x-b) = a - b up to the sign convention.
  CHECK(abs(upoly_resultant(up({-2, 1}), up({-5, 1}))) == 3);
  CHECK(upoly_resultant(up({-1, 1}) * up({1, 1}), up({-1, 0, 1})) == 0);

  Rng rng(43);
  for (int i = 0; i < 30; ++i) {
    UPoly p = random_upoly(rng, 5, 6);
    UPoly q = random_upoly(rng, 5, 6);
    if (p.degree() < 1 || q.degree() < 1) continue;
    CHECK(abs(upoly_resultant(p, q)) == abs(sylvester_resultant(p, q)));
  }
  // Multiplicative in the first argument.
  for (int i = 0; i < 10; ++i) {
    UPoly p = random_upoly(rng, 4, 5);
    UPoly r = random_upoly(rng, 4, 5);
    UPoly q = random_upoly(rng, 4, 5);
    if (p.degree() < 1 || q.degree() < 1 || r.degree() < 1) continue;
    CHECK(abs(upoly_resultant(p * r, q)) ==
          abs(upoly_resultant(p, q) * upoly_resultant(r, q)));
  }
}

TEST_CASE("bivariate resultant specializes correctly") {
  Rng rng(47);
  for (int i = 0; i < 20; ++i) {
    // Random small bivariate polynomials in v over Z[x].
    auto rand_bp = [&](int dv, int dx, int mc) {
      std::vector<UPoly> cs(static_cast<std::size_t>(rng.uniform(1, dv + 1)));
      for (auto& c : cs) c = random_upoly(rng, dx, mc);
      return BPoly(std::move(cs));
    };
    BPoly A = rand_bp(3, 2, 4), B = rand_bp(3, 2, 4);
    if (A.degree_v() < 1 || B.degree_v() < 1) continue;
    UPoly res = bpoly_resultant_v(A, B);
    Int x0(rng.uniform(-6, 6));
    // Specialization commutes when neither leading coefficient vanishes.
    if (A.lc().evaluate_int(x0) == 0 || B.lc().evaluate_int(x0) == 0) continue;
    auto specialize = [&](const BPoly& P) {
      std::vector<Int> cs;
      for (const auto& c : P.coeffs()) cs.push_back(c.evaluate_int(x0));
      return UPoly(std::move(cs));
    };
    Int direct = upoly_resultant(specialize(A), specialize(B));
    CHECK(abs(res.evaluate_int(x0)) == abs(direct));
  }
}

TEST_CASE("sturm chains count real roots") {
  UPoly p = up({-1, 1}) * up({-3, 1}) * up({2, 1});  // roots 1, 3, -2
  auto chain = sturm_chain(p);
  CHECK(count_real_roots_total(chain) == 3);
  CHECK(count_real_roots(chain, Rat(0), Rat(2)) == 1);
  CHECK(count_real_roots(chain, Rat(-3), Rat(0)) == 1);
  CHECK(count_real_roots(chain, Rat(-3), Rat(4)) == 3);
  CHECK(count_real_roots(chain, Rat(5), Rat(9)) == 0);

  UPoly noreal = up({1, 0, 1});  // x^2 + 1
  CHECK(count_real_roots_total(sturm_chain(noreal)) == 0);

  // x^2 - 2: one root in (1, 2), one in (-2, -1).
  UPoly r2 = up({-2, 0, 1});
  auto c2 = sturm_chain(r2);
  CHECK(count_real_roots(c2, Rat(1), Rat(2)) == 1);
  CHECK(count_real_roots(c2, Rat(-2), Rat(-1)) == 1);
  CHECK(count_real_roots_total(c2) == 2);

  Rng rng(53);
  for (int i = 0; i < 20; ++i) {
    UPoly f = random_upoly(rng, 6, 9);
    if (f.degree() < 1) continue;
    UPoly s = upoly_square_free(f);
    auto ch = sturm_chain(s);
    Rat b = s.root_bound();
    if (s.sign_at(-b) == 0 || s.sign_at(b) == 0) continue;
    CHECK(count_real_roots(ch, -b, b) == count_real_roots_total(ch));
  }
}

TEST_CASE("compositions and reversal") {
  UPoly p = up({1, 2, 3});
  CHECK(p.compose_neg_x() == up({1, -2, 3}));
  CHECK(p.compose_x_squared() == up({1, 0, 2, 0, 3}));
  CHECK(p.reversed() == up({3, 2, 1}));
  CHECK(up({0, 1}).shifted(2) == up({0, 0, 0, 1}));
  CHECK(p.to_string() == "3*x^2 + 2*x + 1");
  CHECK(up({-1, -1}).to_string() == "-1*x - 1");
}

TEST_CASE("integer factorization of square-free polynomials") {
  auto check_product = [](const UPoly& f, const std::vector<UPoly>& fs) {
    UPoly prod(Int(1));
    for (const auto& g : fs) prod = prod * g;
    CHECK(prod == f.normalized());
  };

  UPoly f1 = up({-2, 0, 1}) * up({-3, 0, 1});  // (x^2-2)(x^2-3)
  auto r1 = factor_square_free(f1);
  REQUIRE(r1.size() == 2);
  check_product(f1, r1);
  CHECK(r1[0] == up({-3, 0, 1}));
  CHECK(r1[1] == up({-2, 0, 1}));

  // Irreducible over Z but reducible modulo every prime.
  auto r2 = factor_square_free(up({1, 0, 0, 0, 1}));
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == up({1, 0, 0, 0, 1}));

  auto r3 = factor_square_free(up({1, 0, 1, 0, 1}));  // x^4+x^2+1
  REQUIRE(r3.size() == 2);
  CHECK(r3[0] == up({1, -1, 1}));
  CHECK(r3[1] == up({1, 1, 1}));

  auto r4 = factor_square_free(up({1, 5, 6}));  // (2x+1)(3x+1)
  REQUIRE(r4.size() == 2);
  check_product(up({1, 5, 6}), r4);

  auto r5 = factor_square_free(up({1, -34, 1}));
  REQUIRE(r5.size() == 1);

  // Swinnerton-Dyer: minimal polynomial of sqrt(2)+sqrt(3).
  auto r6 = factor_square_free(up({1, 0, -10, 0, 1}));
  REQUIRE(r6.size() == 1);

  auto r7 = factor_square_free(up({0, 1}) * up({-1, 1}) * up({1, 1}));
  REQUIRE(r7.size() == 3);
  check_product(up({0, 1}) * up({-1, 1}) * up({1, 1}), r7);

  Rng rng(59);
  for (int i = 0; i < 8; ++i) {
    UPoly a = random_upoly(rng, 3, 5);
    UPoly b = random_upoly(rng, 3, 5);
    if (a.degree() < 1 || b.degree() < 1) continue;
    UPoly f = upoly_square_free(a * b);
    if (f.degree() < 1) continue;
    auto fs = factor_square_free(f);
    check_product(f, fs);
    for (const auto& g : fs) CHECK(g.degree() >= 1);
  }
}
