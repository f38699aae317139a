#include "acsv/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "acsv/error.hpp"

namespace acsv {

bool GrevlexGreater::operator()(const ExpVec& a, const ExpVec& b) const {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  // Equal total degree: a > b iff the last nonzero entry of a-b is negative.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, Int c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(ExpVec(p.vars_.size(), 0), std::move(c));
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.vars_.size()) throw std::logic_error("variable index out of range");
  ExpVec e(p.vars_.size(), 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Int(1));
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const ExpVec& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Int MultiPoly::constant_value() const {
  if (terms_.empty()) return Int(0);
  if (!is_constant()) throw std::logic_error("constant_value on nonconstant polynomial");
  return terms_.begin()->second;
}

long MultiPoly::degree_in(std::size_t index) const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[index]));
  return d;
}

long MultiPoly::total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long t = 0;
    for (auto x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

void MultiPoly::check_same_vars(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw std::logic_error("mixed variable lists");
}

void MultiPoly::add_term(const ExpVec& exps, const Int& c) {
  if (c == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_same_vars(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_same_vars(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_same_vars(o);
  MultiPoly r(vars_);
  ExpVec sum(vars_.size(), 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < sum.size(); ++i) {
        std::uint64_t s = std::uint64_t(ea[i]) + eb[i];
        if (s > 0xffffffffULL) throw ResourceError("monomial exponent overflow");
        sum[i] = static_cast<std::uint32_t>(s);
      }
      r.add_term(sum, ca * cb);
    }
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::scaled(const Int& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned long e) const {
  MultiPoly r = constant(vars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

MultiPoly MultiPoly::derivative(std::size_t index) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    ExpVec d = e;
    d[index] -= 1;
    r.add_term(d, c * Int(e[index]));
  }
  return r;
}

Rat MultiPoly::evaluate(const std::vector<Rat>& point) const {
  if (point.size() != vars_.size()) throw std::logic_error("evaluation point arity mismatch");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t *= rat_pow(point[i], e[i]);
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const {
  if (images.size() != vars_.size()) throw std::logic_error("composition arity mismatch");
  std::vector<std::string> tv = images.empty() ? std::vector<std::string>{} : images[0].vars();
  for (const auto& im : images) {
    if (im.vars() != tv) throw std::logic_error("composition images over mixed variable lists");
  }
  // Powers of each image, grown on demand.
  std::vector<std::vector<MultiPoly>> pows(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) pows[i].push_back(MultiPoly::constant(tv, 1));
  auto power = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
    while (pows[i].size() <= e) pows[i].push_back(pows[i].back() * images[i]);
    return pows[i][e];
  };
  MultiPoly acc(tv);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = MultiPoly::constant(tv, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t = t * power(i, e[i]);
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::with_vars(std::vector<std::string> new_vars) const {
  std::vector<std::size_t> slot(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    if (it == new_vars.end()) throw std::logic_error("with_vars drops a used variable");
    slot[i] = static_cast<std::size_t>(it - new_vars.begin());
  }
  MultiPoly r(new_vars);
  for (const auto& [e, c] : terms_) {
    ExpVec ne(new_vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[slot[i]] = e[i];
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

Int MultiPoly::content() const {
  Int g(0);
  for (const auto& [e, c] : terms_) {
    g = int_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

MultiPoly MultiPoly::primitive_part() const {
  if (terms_.empty()) return *this;
  Int g = content();
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, divexact(c, g));
  return r;
}

int MultiPoly::leading_sign() const {
  if (terms_.empty()) return 0;
  return sign_of(terms_.begin()->second);
}

MultiPoly MultiPoly::normalized() const {
  if (terms_.empty()) return *this;
  MultiPoly r = primitive_part();
  if (r.leading_sign() < 0) r = -r;
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Int mag = abs(c);
    if (first) {
      // A leading negative unit coefficient is spelled out so the text
      // reparses under a grammar without unary minus.
      if (sign_of(c) < 0) {
        out << "-" << mag.get_str();
        if (!mono.empty()) out << "*" << mono;
      } else if (mono.empty()) {
        out << mag.get_str();
      } else if (mag == 1) {
        out << mono;
      } else {
        out << mag.get_str() << "*" << mono;
      }
      first = false;
    } else {
      out << (sign_of(c) < 0 ? " - " : " + ");
      if (mono.empty()) {
        out << mag.get_str();
      } else if (mag == 1) {
        out << mono;
      } else {
        out << mag.get_str() << "*" << mono;
      }
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Division, gcd, square-free part.

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::logic_error("exact_divide by zero");
  MultiPoly q(a.vars());
  MultiPoly r = a;
  const auto& ltb = *b.terms().begin();
  while (!r.is_zero()) {
    const auto& lta = *r.terms().begin();
    ExpVec e(r.vars().size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (lta.first[i] < ltb.first[i]) throw std::logic_error("exact_divide: not divisible");
      e[i] = lta.first[i] - ltb.first[i];
    }
    if (!mpz_divisible_p(lta.second.get_mpz_t(), ltb.second.get_mpz_t()))
      throw std::logic_error("exact_divide: not divisible");
    Int c = divexact(lta.second, ltb.second);
    MultiPoly t(a.vars());
    t.add_term(e, c);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

std::size_t first_active_var(const MultiPoly& p) {
  for (std::size_t i = 0; i < p.var_count(); ++i) {
    if (p.degree_in(i) > 0) return i;
  }
  return p.var_count();
}

// Coefficients of p viewed as a polynomial in variable v; entry k is the
// coefficient of v^k with the v-exponent cleared.
std::vector<MultiPoly> coeffs_in(const MultiPoly& p, std::size_t v) {
  long d = p.degree_in(v);
  std::vector<MultiPoly> cs(static_cast<std::size_t>(d < 0 ? 0 : d + 1), MultiPoly(p.vars()));
  for (const auto& [e, c] : p.terms()) {
    ExpVec be = e;
    std::uint32_t k = be[v];
    be[v] = 0;
    cs[k].add_term(be, c);
  }
  return cs;
}

MultiPoly from_coeffs(const std::vector<MultiPoly>& cs, std::size_t v,
                      const std::vector<std::string>& vars) {
  MultiPoly p(vars);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [e, c] : cs[k].terms()) {
      ExpVec be = e;
      be[v] += static_cast<std::uint32_t>(k);
      p.add_term(be, c);
    }
  }
  return p;
}

MultiPoly content_in(const MultiPoly& p, std::size_t v) {
  MultiPoly g(p.vars());
  for (const auto& c : coeffs_in(p, v)) g = poly_gcd(g, c);
  return g;
}

MultiPoly leading_coeff_in(const MultiPoly& p, std::size_t v) {
  auto cs = coeffs_in(p, v);
  return cs.empty() ? MultiPoly(p.vars()) : cs.back();
}

// Pseudo-remainder of a by b in variable v (deg_v b >= 1).
MultiPoly pseudo_rem(MultiPoly a, const MultiPoly& b, std::size_t v) {
  long db = b.degree_in(v);
  MultiPoly lb = leading_coeff_in(b, v);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    long da = a.degree_in(v);
    MultiPoly la = leading_coeff_in(a, v);
    MultiPoly shift = MultiPoly::variable(a.vars(), v).pow(static_cast<unsigned long>(da - db));
    a = a * lb - la * shift * b;
  }
  return a;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  if (a.is_constant() || b.is_constant()) {
    return MultiPoly::constant(a.vars(), int_gcd(a.content(), b.content()));
  }
  std::size_t va = first_active_var(a), vb = first_active_var(b);
  if (va != vb) {
    // The earlier variable is missing from one side; any common divisor is
    // free of it and therefore divides that side's coefficients.
    if (va < vb) return poly_gcd(content_in(a, va), b);
    return poly_gcd(a, content_in(b, vb));
  }
  std::size_t v = va;
  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly c = poly_gcd(ca, cb);
  MultiPoly pa = exact_divide(a, ca), pb = exact_divide(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    MultiPoly r = pseudo_rem(pa, pb, v);
    if (r.is_zero()) return (c * pb).normalized();
    if (r.degree_in(v) == 0) return c.normalized();
    pa = pb;
    pb = exact_divide(r, content_in(r, v));
  }
}

MultiPoly square_free_part(const MultiPoly& p) {
  if (p.is_zero()) throw std::logic_error("square_free_part of zero");
  if (p.is_constant()) return MultiPoly::constant(p.vars(), 1);
  std::size_t v = first_active_var(p);
  MultiPoly c = content_in(p, v);
  MultiPoly pp = exact_divide(p, c);
  MultiPoly g = poly_gcd(pp, pp.derivative(v));
  MultiPoly q = exact_divide(pp, g.leading_sign() < 0 ? -g : g);
  return (square_free_part(c) * q).normalized();
}

CoprimeResult coprime_check(const MultiPoly& a, const MultiPoly& b, Rng& rng, int trials) {
  std::vector<std::string> line_var{"_s"};
  MultiPoly s = MultiPoly::variable(line_var, 0);
  for (int t = 1; t <= trials; ++t) {
    std::vector<MultiPoly> images;
    images.reserve(a.var_count());
    for (std::size_t i = 0; i < a.var_count(); ++i) {
      Int ai(rng.uniform(-9, 9)), bi(rng.uniform(-9, 9));
      images.push_back(s.scaled(ai) + MultiPoly::constant(line_var, bi));
    }
    MultiPoly ra = a.compose(images), rb = b.compose(images);
    if (ra.is_zero() || rb.is_zero()) continue;  // line degenerate for this pair
    MultiPoly g = poly_gcd(ra, rb);
    if (g.total_degree() == 0) {
      return {true, t, "no common factor on a random line (probabilistic, " +
                           std::to_string(t) + " trial(s))"};
    }
  }
  return {false, trials,
          "common factor persisted on " + std::to_string(trials) + " random lines"};
}

}  // namespace acsv
