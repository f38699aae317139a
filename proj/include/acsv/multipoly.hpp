#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acsv/numbers.hpp"

namespace acsv {

using ExpVec = std::vector<std::uint32_t>;

// Strict "greater" in graded reverse lexicographic order, so that map
// iteration starts at the leading term.
struct GrevlexGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

// Sparse multivariate polynomial over the integers.  The variable list is
// part of the value; mixing polynomials over different lists is a logic
// error.  Terms are kept in canonical grevlex order and never store a zero
// coefficient.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, Int, GrevlexGreater>;

  MultiPoly() = default;  // zero polynomial over the empty variable list
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, Int c);
  static MultiPoly variable(std::vector<std::string> vars, std::size_t index);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t var_count() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Requires is_constant(); the zero polynomial yields 0.
  Int constant_value() const;

  long degree_in(std::size_t index) const;  // -1 for the zero polynomial
  long total_degree() const;                // -1 for the zero polynomial

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly scaled(const Int& c) const;
  MultiPoly pow(unsigned long e) const;

  MultiPoly derivative(std::size_t index) const;

  Rat evaluate(const std::vector<Rat>& point) const;

  // Substitutes images[i] for variable i.  All images must share one
  // variable list, which becomes the list of the result.
  MultiPoly compose(const std::vector<MultiPoly>& images) const;

  // Reinterprets the polynomial over a superset of its variables.  Every
  // current variable must appear in new_vars.
  MultiPoly with_vars(std::vector<std::string> new_vars) const;

  Int content() const;  // nonnegative; 0 only for the zero polynomial
  MultiPoly primitive_part() const;
  // Primitive with positive leading coefficient.
  MultiPoly normalized() const;
  int leading_sign() const;

  void add_term(const ExpVec& exps, const Int& c);  // accumulate, drop zeros

  std::string to_string() const;  // canonical text, parseable

 private:
  std::vector<std::string> vars_;
  TermMap terms_;

  void check_same_vars(const MultiPoly& o) const;
};

// Exact quotient a / b; throws std::logic_error if b does not divide a.
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);

// Multivariate gcd by primitive pseudo-remainder sequences with content
// recursion.  Result is normalized (primitive, positive leading sign).
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Product of the distinct irreducible factors, normalized.
MultiPoly square_free_part(const MultiPoly& p);

struct CoprimeResult {
  bool coprime;
  int trials_used;
  std::string note;
};

// Probabilistic coprimality test: restricts both polynomials to random
// integer lines and checks the univariate gcd.  A constant gcd on some line
// certifies the verdict up to the randomness of the line choice.
CoprimeResult coprime_check(const MultiPoly& a, const MultiPoly& b, Rng& rng, int trials = 5);

}  // namespace acsv
