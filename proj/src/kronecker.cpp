#include "acsv/kronecker.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "acsv/error.hpp"
#include "acsv/groebner.hpp"
#include "qmodp.hpp"

namespace acsv {

namespace {

// Reads off the coefficient list of a generator that uses only the variable
// at `pos`; returns nothing if any other variable appears.
std::optional<UPoly> univariate_part(const MultiPoly& g, std::size_t pos) {
  std::vector<Int> cs(static_cast<std::size_t>(std::max(0L, g.degree_in(pos))) + 1, Int(0));
  for (const auto& [m, c] : g.terms()) {
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (v != pos && m[v] != 0) return std::nullopt;
    }
    cs[m[pos]] = c;
  }
  return UPoly(cs);
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

// A basis in shape position looks like {c_i v_i + T_i(u)} for each system
// variable plus one univariate polynomial in u.
struct ShapeData {
  UPoly eliminant;                        // the univariate generator, with multiplicity
  std::vector<std::pair<Int, UPoly>> rel; // per variable: (c_i, T_i)
};

std::optional<ShapeData> read_shape(const LexIdealBasis& basis, std::size_t k) {
  if (basis.generators.size() != k + 1) return std::nullopt;
  ShapeData out;
  out.rel.assign(k, {Int(0), UPoly()});
  std::vector<bool> seen(k, false);
  bool have_eliminant = false;
  for (const auto& g : basis.generators) {
    ExpVec lm = leading_exponent(g);
    std::size_t support = 0, which = k;
    for (std::size_t v = 0; v < k; ++v) {
      if (lm[v] != 0) {
        ++support;
        which = v;
      }
    }
    if (support == 0) {
      // Leading term involves u alone, so the whole generator does: any
      // other variable in a tail term would be reducible by some v_j.
      auto uni = univariate_part(g, k);
      if (!uni || have_eliminant) return std::nullopt;
      out.eliminant = *uni;
      have_eliminant = true;
      continue;
    }
    if (support != 1 || lm[which] != 1 || seen[which]) return std::nullopt;
    // Split c_i v_i from the u-only tail.
    Int c(0);
    MultiPoly tail(g.vars());
    for (const auto& [m, coeff] : g.terms()) {
      if (m[which] != 0) {
        if (m[which] != 1) return std::nullopt;
        bool pure = true;
        for (std::size_t v = 0; v < m.size(); ++v)
          if (v != which && m[v] != 0) pure = false;
        if (!pure) return std::nullopt;
        c = coeff;
      } else {
        tail.add_term(m, coeff);
      }
    }
    auto t = univariate_part(tail, k);
    if (!t || c == 0) return std::nullopt;
    out.rel[which] = {c, *t};
    seen[which] = true;
  }
  if (!have_eliminant || out.eliminant.degree() < 1) return std::nullopt;
  for (std::size_t v = 0; v < k; ++v)
    if (!seen[v]) return std::nullopt;
  return out;
}

std::string fresh_name(const std::vector<std::string>& vars) {
  std::string name = "u";
  while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
  return name;
}

// Adjoins the square-free part of each variable's univariate eliminant.  The
// enlarged ideal has the same solutions but is radical (Seidenberg), which is
// what shape position needs when solutions carry multiplicity that is not
// curvilinear along any linear form.
std::vector<MultiPoly> with_univariate_closures(const std::vector<MultiPoly>& system,
                                                const std::vector<std::string>& vars) {
  std::vector<MultiPoly> out = system;
  const std::size_t k = vars.size();
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::string> order;
    std::vector<std::size_t> back(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      back[i] = order.size();
      order.push_back(vars[i]);
    }
    back[j] = order.size();
    order.push_back(vars[j]);

    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < k; ++i) images.push_back(MultiPoly::variable(order, back[i]));
    std::vector<MultiPoly> gens;
    for (const auto& f : system) gens.push_back(f.compose(images));

    LexIdealBasis basis = buchberger_lex(gens, order);
    std::optional<UPoly> eliminant;
    for (const auto& g : basis.generators) {
      auto u = univariate_part(g, k - 1);
      if (u && u->degree() > 0) {
        eliminant = std::move(u);
        break;
      }
    }
    if (!eliminant) throw AssumptionError("the critical point system is not zero dimensional");

    UPoly sq = upoly_square_free(*eliminant);
    MultiPoly closure = MultiPoly::constant(vars, Int(0));
    for (int e = 0; e <= sq.degree(); ++e) {
      if (sq.coeff(e) == 0) continue;
      ExpVec m(k, 0);
      m[j] = static_cast<std::uint32_t>(e);
      closure.add_term(m, sq.coeff(e));
    }
    out.push_back(std::move(closure));
  }
  return out;
}

}  // namespace

const UPoly& KroneckerRep::q(const std::string& var) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == var) return Q[i];
  }
  throw std::logic_error("no coordinate named " + var);
}

bool KroneckerCheck::all_passed() const {
  if (!square_free) return false;
  for (bool ok : identity_ok)
    if (!ok) return false;
  return true;
}

KroneckerRep kronecker_rep(const std::vector<MultiPoly>& system,
                           const std::vector<std::string>& vars,
                           const std::optional<std::vector<Int>>& linear_form,
                           std::uint64_t seed) {
  if (system.empty() || vars.empty()) throw std::logic_error("empty Kronecker input");
  if (linear_form && linear_form->size() != vars.size())
    throw std::logic_error("linear form length does not match the variable count");

  std::vector<std::string> order = vars;
  order.push_back(fresh_name(vars));
  const std::size_t k = vars.size();

  Rng rng(seed);
  const int attempts = linear_form ? 1 : 10;
  bool dimension_checked = false;
  std::vector<MultiPoly> working = system;

  // A shape reading can fail for two reasons: the linear form does not
  // separate the solutions, or the ideal is not radical and no form can
  // succeed.  The second phase removes the second cause, so its failures are
  // attributable to the first.
  for (int phase = 0; phase < 2; ++phase) {
    std::vector<MultiPoly> base;
    for (const auto& f : working) base.push_back(f.with_vars(order));

    for (int attempt = 0; attempt < attempts; ++attempt) {
      std::vector<Int> kappa;
      if (linear_form) {
        kappa = *linear_form;
      } else {
        for (std::size_t i = 0; i < k; ++i) kappa.emplace_back(rng.uniform(-10, 10));
      }

      MultiPoly u_def = MultiPoly::variable(order, k);
      for (std::size_t i = 0; i < k; ++i)
        u_def -= MultiPoly::variable(order, i).scaled(kappa[i]);

      std::vector<MultiPoly> gens = base;
      gens.push_back(u_def);
      LexIdealBasis basis = buchberger_lex(gens, order);

      if (!dimension_checked) {
        // Adjoining a definition for u never changes the dimension, so one
        // verdict settles every retry.
        if (!is_zero_dimensional(basis))
          throw AssumptionError("the critical point system is not zero dimensional");
        dimension_checked = true;
      }

      // The unit ideal has no solutions; represent it by a constant P.
      if (basis.generators.size() == 1 && basis.generators[0].is_constant()) {
        KroneckerRep rep;
        rep.vars = vars;
        rep.kappa = std::move(kappa);
        rep.P = UPoly(Int(1));
        rep.Q.assign(k, UPoly());
        return rep;
      }

      auto shape = read_shape(basis, k);
      if (!shape) continue;

      UPoly P = upoly_square_free(shape->eliminant);
      RatVec pm = rv_from(P);
      RatVec pd = rv_from(P.derivative());

      // Q_i = (-T_i / c_i) * P' mod P, cleared to integers by one shared
      // denominator.
      std::vector<RatVec> qrat(k);
      Int den(1);
      for (std::size_t i = 0; i < k; ++i) {
        const auto& [c, t] = shape->rel[i];
        RatVec r = rv_scale(rv_mul(rv_from(t), pd), Rat(Int(-1), c));
        qrat[i] = rv_rem(std::move(r), pm);
        for (const auto& x : qrat[i]) den = int_lcm(den, Int(x.get_den()));
      }

      KroneckerRep rep;
      rep.vars = vars;
      rep.kappa = std::move(kappa);
      rep.P = P;
      rep.denom_scale = den;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Int> cs;
        for (const auto& x : qrat[i])
          cs.push_back(Int(x.get_num()) * divexact(den, Int(x.get_den())));
        rep.Q.emplace_back(cs);
      }
      return rep;
    }

    if (phase == 0) working = with_univariate_closures(working, vars);
  }

  if (linear_form)
    throw AssumptionError("the supplied linear form does not separate the solutions");
  throw ResourceError("no separating linear form found within the retry budget");
}

KroneckerCheck verify_kronecker(const KroneckerRep& rep, const std::vector<MultiPoly>& system) {
  KroneckerCheck out;
  out.square_free = upoly_gcd(rep.P, rep.P.derivative()).degree() == 0;

  RatVec pm = rv_from(rep.P);
  RatVec denom = rv_scale(rv_from(rep.P.derivative()), Rat(rep.denom_scale));
  std::vector<RatVec> qs;
  for (const auto& q : rep.Q) qs.push_back(rv_rem(rv_from(q), pm));

  // Substituting z_i = Q_i / (s P') clears to the uniform denominator
  // (s P')^(total degree); the identity holds iff the numerator dies mod P.
  for (const auto& f : system)
    out.identity_ok.push_back(qf_num_zero(qf_eval_uniform(f, qs, denom, pm)));
  return out;
}

long solution_count(const KroneckerRep& rep) { return rep.P.degree(); }

}  // namespace acsv
