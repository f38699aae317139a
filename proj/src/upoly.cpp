#include "acsv/upoly.hpp"

#include <sstream>
#include <stdexcept>

namespace acsv {

namespace {

const Int kZero(0);

UPoly upoly_pow(const UPoly& p, unsigned long e) {
  UPoly r(Int(1));
  UPoly b = p;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

UPoly divexact_upoly(const UPoly& a, const UPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw std::logic_error("inexact univariate division");
  return *q;
}

}  // namespace

UPoly::UPoly(Int c) {
  if (c != 0) c_.push_back(std::move(c));
}

UPoly::UPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::x() { return UPoly(std::vector<Int>{Int(0), Int(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& UPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }

const Int& UPoly::lc() const { return c_.empty() ? kZero : c_.back(); }

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (c_.empty() || o.c_.empty()) return UPoly();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::scaled(const Int& k) const {
  if (k == 0) return UPoly();
  UPoly r = *this;
  for (auto& c : r.c_) c *= k;
  return r;
}

UPoly UPoly::shifted(std::size_t k) const {
  if (c_.empty() || k == 0) return *this;
  std::vector<Int> r(c_.size() + k, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Int> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
  return UPoly(std::move(r));
}

Int UPoly::content() const {
  Int g(0);
  for (const auto& c : c_) {
    g = int_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

UPoly UPoly::primitive_part() const {
  if (c_.empty()) return *this;
  Int g = content();
  UPoly r = *this;
  for (auto& c : r.c_) c = divexact(c, g);
  return r;
}

UPoly UPoly::normalized() const {
  UPoly r = primitive_part();
  if (!r.c_.empty() && sign_of(r.lc()) < 0) r = -r;
  return r;
}

Rat UPoly::evaluate(const Rat& t) const {
  Rat acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + Rat(c_[i]);
  return acc;
}

Int UPoly::evaluate_int(const Int& t) const {
  Int acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

int UPoly::sign_at(const Rat& t) const { return sign_of(evaluate(t)); }

int UPoly::sign_at_pos_inf() const { return c_.empty() ? 0 : sign_of(lc()); }

int UPoly::sign_at_neg_inf() const {
  if (c_.empty()) return 0;
  int s = sign_of(lc());
  return (degree() % 2 == 0) ? s : -s;
}

UPoly UPoly::compose_neg_x() const {
  UPoly r = *this;
  for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

UPoly UPoly::compose_x_squared() const {
  if (c_.empty()) return UPoly();
  std::vector<Int> r(2 * c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::reversed() const {
  std::vector<Int> r(c_.rbegin(), c_.rend());
  return UPoly(std::move(r));
}

Rat UPoly::root_bound() const {
  if (c_.empty()) throw std::logic_error("root bound of zero polynomial");
  Int m(0);
  for (std::size_t i = 0; i + 1 < c_.size(); ++i) {
    Int a = abs(c_[i]);
    if (a > m) m = a;
  }
  Int l = abs(lc());
  // Cauchy: every root has modulus < 1 + m/l; round up to a power of two.
  Int target = 1 + m / l + 1;
  Int b(1);
  while (b < target) b <<= 1;
  return Rat(b);
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Int mag = abs(c_[i]);
    std::string mono;
    if (i > 0) {
      mono = var;
      if (i > 1) mono += "^" + std::to_string(i);
    }
    if (first) {
      if (sign_of(c_[i]) < 0) {
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
      out << (sign_of(c_[i]) < 0 ? " - " : " + ");
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

std::optional<UPoly> try_divide(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::logic_error("division by zero polynomial");
  if (a.is_zero()) return UPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Int> rem = a.coeffs();
  std::vector<Int> q(a.degree() - b.degree() + 1, Int(0));
  const Int& lb = b.lc();
  for (std::size_t k = q.size(); k-- > 0;) {
    Int& lead = rem[k + b.degree()];
    if (lead == 0) continue;
    if (!mpz_divisible_p(lead.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    Int c = divexact(lead, lb);
    for (long i = 0; i <= b.degree(); ++i) rem[k + i] -= c * b.coeff(i);
    q[k] = std::move(c);
  }
  for (const auto& c : rem) {
    if (c != 0) return std::nullopt;
  }
  return UPoly(std::move(q));
}

UPoly pseudo_rem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::logic_error("pseudo-division by zero");
  long db = b.degree();
  if (a.degree() < db) return a;
  long e = a.degree() - db + 1;
  const Int& lb = b.lc();
  UPoly r = a;
  while (!r.is_zero() && r.degree() >= db) {
    UPoly t = b.scaled(r.lc()).shifted(static_cast<std::size_t>(r.degree() - db));
    r = r.scaled(lb) - t;
    --e;
  }
  if (e > 0) r = r.scaled(int_pow(lb, static_cast<unsigned long>(e)));
  return r;
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a.normalized(), y = b.normalized();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  Int cont = int_gcd(a.content(), b.content());
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero() && y.degree() > 0) {
    UPoly r = pseudo_rem(x, y).primitive_part();
    x = y;
    y = r;
  }
  UPoly g = y.is_zero() ? x : UPoly(Int(1));
  return g.normalized().scaled(cont);
}

UPoly upoly_square_free(const UPoly& p) {
  if (p.is_zero()) throw std::logic_error("square-free part of zero");
  if (p.degree() == 0) return UPoly(Int(1));
  UPoly pp = p.primitive_part();
  UPoly g = upoly_gcd(pp, pp.derivative());
  return divexact_upoly(pp, g.degree() >= 0 && sign_of(g.lc()) < 0 ? -g : g).normalized();
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  if (p.degree() == 0) return chain;
  chain.push_back(p.derivative());
  while (chain.back().degree() > 0) {
    const UPoly& a = chain[chain.size() - 2];
    const UPoly& b = chain.back();
    long e = a.degree() - b.degree() + 1;
    UPoly r = pseudo_rem(a, b);
    if (r.is_zero()) break;
    // prem scales the true remainder by lc(b)^e; undo a negative sign so
    // the chain keeps the Sturm sign pattern, then negate.
    int s = (sign_of(b.lc()) < 0 && (e % 2 != 0)) ? -1 : 1;
    r = r.primitive_part();
    chain.push_back(s < 0 ? r : -r);
  }
  return chain;
}

namespace {

int count_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

int sign_variations_at(const std::vector<UPoly>& chain, const Rat& t) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(q.sign_at(t));
  return count_variations(signs);
}

int sign_variations_at_pos_inf(const std::vector<UPoly>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(q.sign_at_pos_inf());
  return count_variations(signs);
}

int sign_variations_at_neg_inf(const std::vector<UPoly>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(q.sign_at_neg_inf());
  return count_variations(signs);
}

int count_real_roots(const std::vector<UPoly>& chain, const Rat& a, const Rat& b) {
  if (!(a < b)) throw std::logic_error("count_real_roots: empty interval");
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

int count_real_roots_total(const std::vector<UPoly>& chain) {
  return sign_variations_at_neg_inf(chain) - sign_variations_at_pos_inf(chain);
}

// ---------------------------------------------------------------------------
// Bivariate layer.

BPoly::BPoly(std::vector<UPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

void BPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BPoly BPoly::from_univariate_in_v(const UPoly& p) {
  std::vector<UPoly> cs;
  cs.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) cs.emplace_back(c);
  return BPoly(std::move(cs));
}

BPoly BPoly::from_univariate_in_x(const UPoly& p) {
  if (p.is_zero()) return BPoly();
  return BPoly(std::vector<UPoly>{p});
}

const UPoly& BPoly::coeff(std::size_t i) const {
  static const UPoly zero;
  return i < c_.size() ? c_[i] : zero;
}

const UPoly& BPoly::lc() const {
  static const UPoly zero;
  return c_.empty() ? zero : c_.back();
}

BPoly BPoly::operator+(const BPoly& o) const {
  std::vector<UPoly> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
  return BPoly(std::move(r));
}

BPoly BPoly::operator-(const BPoly& o) const {
  std::vector<UPoly> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] - o.c_[i];
  return BPoly(std::move(r));
}

BPoly BPoly::operator*(const BPoly& o) const {
  if (c_.empty() || o.c_.empty()) return BPoly();
  std::vector<UPoly> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return BPoly(std::move(r));
}

BPoly BPoly::scaled(const UPoly& k) const {
  if (k.is_zero()) return BPoly();
  std::vector<UPoly> r = c_;
  for (auto& c : r) c = c * k;
  return BPoly(std::move(r));
}

namespace {

BPoly bpoly_shift_v(const BPoly& p, std::size_t k) {
  if (p.is_zero() || k == 0) return p;
  std::vector<UPoly> r(p.coeffs().size() + k);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) r[i + k] = p.coeffs()[i];
  return BPoly(std::move(r));
}

BPoly bpoly_divexact(const BPoly& p, const UPoly& d) {
  std::vector<UPoly> r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (c.is_zero()) {
      r.emplace_back();
    } else {
      r.push_back(divexact_upoly(c, d));
    }
  }
  return BPoly(std::move(r));
}

// Pseudo-remainder in v, scaled by lc_v(b)^(deg_v a - deg_v b + 1) exactly.
BPoly bpoly_prem(const BPoly& a, const BPoly& b) {
  long db = b.degree_v();
  long e = a.degree_v() - db + 1;
  const UPoly lb = b.lc();
  BPoly r = a;
  while (!r.is_zero() && r.degree_v() >= db) {
    BPoly t = bpoly_shift_v(b.scaled(r.lc()), static_cast<std::size_t>(r.degree_v() - db));
    r = r.scaled(lb) - t;
    --e;
  }
  if (e > 0 && !r.is_zero()) r = r.scaled(upoly_pow(lb, static_cast<unsigned long>(e)));
  return r;
}

}  // namespace

// Subresultant pseudo-remainder sequence; the returned polynomial is the
// resultant up to an overall sign, which no caller depends on.
UPoly bpoly_resultant_v(const BPoly& a, const BPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  BPoly A = a, B = b;
  if (A.degree_v() < B.degree_v()) std::swap(A, B);
  if (B.degree_v() == 0) {
    if (A.degree_v() == 0) return UPoly(Int(1));
    return upoly_pow(B.coeff(0), static_cast<unsigned long>(A.degree_v()));
  }
  UPoly g(Int(1)), h(Int(1));
  while (true) {
    long delta = A.degree_v() - B.degree_v();
    BPoly R = bpoly_prem(A, B);
    if (R.is_zero()) return UPoly();
    UPoly divisor = g * upoly_pow(h, static_cast<unsigned long>(delta));
    A = B;
    B = bpoly_divexact(R, divisor);
    g = A.lc();
    if (delta > 0) {
      UPoly gd = upoly_pow(g, static_cast<unsigned long>(delta));
      h = delta == 1 ? gd : divexact_upoly(gd, upoly_pow(h, static_cast<unsigned long>(delta - 1)));
    }
    if (B.degree_v() == 0) {
      long dp = A.degree_v();
      UPoly bd = upoly_pow(B.coeff(0), static_cast<unsigned long>(dp));
      return dp <= 1 ? bd : divexact_upoly(bd, upoly_pow(h, static_cast<unsigned long>(dp - 1)));
    }
  }
}

Int upoly_resultant(const UPoly& a, const UPoly& b) {
  UPoly r = bpoly_resultant_v(BPoly::from_univariate_in_v(a), BPoly::from_univariate_in_v(b));
  if (r.is_zero()) return Int(0);
  if (r.degree() != 0) throw std::logic_error("univariate resultant is not constant");
  return r.coeff(0);
}

}  // namespace acsv
