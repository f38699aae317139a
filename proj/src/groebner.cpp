#include "acsv/groebner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>

#include "acsv/error.hpp"

namespace acsv {

namespace {

using Mono = ExpVec;
using MonoCmp = bool (*)(const Mono&, const Mono&);

bool lex_greater(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

long mono_total(const Mono& a) {
  long t = 0;
  for (auto e : a) t += e;
  return t;
}

bool grevlex_greater(const Mono& a, const Mono& b) {
  long ta = mono_total(a), tb = mono_total(b);
  if (ta != tb) return ta > tb;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Mono mono_sub(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Mono mono_add(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

// Terms in strictly decreasing order under the comparator in play.
struct GbPoly {
  std::vector<std::pair<Mono, Int>> t;

  bool is_zero() const { return t.empty(); }
  const Mono& lm() const { return t.front().first; }
  const Int& lcoeff() const { return t.front().second; }
};

GbPoly from_multi(const MultiPoly& p, MonoCmp cmp) {
  GbPoly r;
  r.t.assign(p.terms().begin(), p.terms().end());
  std::sort(r.t.begin(), r.t.end(),
            [cmp](const auto& a, const auto& b) { return cmp(a.first, b.first); });
  return r;
}

MultiPoly to_multi(const GbPoly& p, const std::vector<std::string>& order) {
  MultiPoly r((std::vector<std::string>(order)));
  for (const auto& [m, c] : p.t) r.add_term(m, c);
  return r;
}

Int poly_content(const GbPoly& p) {
  Int g(0);
  for (const auto& [m, c] : p.t) {
    g = int_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

void divide_coeffs(GbPoly& p, const Int& g) {
  if (g == 1) return;
  for (auto& [m, c] : p.t) c = divexact(c, g);
}

void make_primitive(GbPoly& p) {
  if (p.is_zero()) return;
  Int g = poly_content(p);
  if (sign_of(p.lcoeff()) < 0) g = -g;
  divide_coeffs(p, g);
}

// ca * x^sa * a + cb * x^sb * b by ordered merge.
GbPoly merge_scaled(const GbPoly& a, const Int& ca, const Mono& sa, const GbPoly& b, const Int& cb,
                    const Mono& sb, MonoCmp cmp) {
  GbPoly r;
  r.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    bool take_a;
    Mono ma, mb;
    if (i < a.t.size()) ma = mono_add(a.t[i].first, sa);
    if (j < b.t.size()) mb = mono_add(b.t[j].first, sb);
    if (i >= a.t.size()) {
      take_a = false;
    } else if (j >= b.t.size()) {
      take_a = true;
    } else if (ma == mb) {
      Int c = ca * a.t[i].second + cb * b.t[j].second;
      if (c != 0) r.t.emplace_back(ma, std::move(c));
      ++i;
      ++j;
      continue;
    } else {
      take_a = cmp(ma, mb);
    }
    if (take_a) {
      r.t.emplace_back(ma, ca * a.t[i].second);
      ++i;
    } else {
      r.t.emplace_back(mb, cb * b.t[j].second);
      ++j;
    }
  }
  return r;
}

GbPoly spoly(const GbPoly& f, const GbPoly& g, MonoCmp cmp) {
  Mono L = mono_lcm(f.lm(), g.lm());
  Int d = int_gcd(f.lcoeff(), g.lcoeff());
  GbPoly s = merge_scaled(f, divexact(g.lcoeff(), d), mono_sub(L, f.lm()), g,
                          -divexact(f.lcoeff(), d), mono_sub(L, g.lm()), cmp);
  make_primitive(s);
  return s;
}

// Full remainder: repeatedly cancels the top reducible term, collecting
// irreducible ones.  Fraction-free; the output is a positive integer
// multiple of the rational normal form.
GbPoly reduce_full(GbPoly p, const std::vector<GbPoly>& basis, MonoCmp cmp) {
  GbPoly out;
  Mono zero(p.is_zero() ? Mono() : Mono(p.lm().size(), 0));
  while (!p.is_zero()) {
    const GbPoly* red = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && mono_divides(g.lm(), p.lm())) {
        red = &g;
        break;
      }
    }
    if (red == nullptr) {
      out.t.push_back(p.t.front());
      p.t.erase(p.t.begin());
      continue;
    }
    Int d = int_gcd(p.lcoeff(), red->lcoeff());
    Int a = divexact(red->lcoeff(), d);
    if (sign_of(a) < 0) {
      a = -a;
      d = -d;
    }
    Int c = divexact(p.lcoeff(), d);
    Mono shift = mono_sub(p.lm(), red->lm());
    p = merge_scaled(p, a, zero, *red, -c, shift, cmp);
    for (auto& [m, coeff] : out.t) coeff *= a;
    Int g2 = int_gcd(poly_content(p), poly_content(out));
    if (g2 > 1) {
      divide_coeffs(p, g2);
      divide_coeffs(out, g2);
    }
  }
  return out;
}

// Same division, but also reports the positive rational factor lambda with
// result = lambda * (true normal form of the input), so callers can read the
// exact rational normal form back off the integer output.
std::pair<GbPoly, Rat> reduce_full_tracked(GbPoly p, const std::vector<GbPoly>& basis,
                                           MonoCmp cmp) {
  GbPoly out;
  Rat lambda(1);
  Mono zero(p.is_zero() ? Mono() : Mono(p.lm().size(), 0));
  while (!p.is_zero()) {
    const GbPoly* red = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && mono_divides(g.lm(), p.lm())) {
        red = &g;
        break;
      }
    }
    if (red == nullptr) {
      out.t.push_back(p.t.front());
      p.t.erase(p.t.begin());
      continue;
    }
    Int d = int_gcd(p.lcoeff(), red->lcoeff());
    Int a = divexact(red->lcoeff(), d);
    if (sign_of(a) < 0) {
      a = -a;
      d = -d;
    }
    Int c = divexact(p.lcoeff(), d);
    Mono shift = mono_sub(p.lm(), red->lm());
    p = merge_scaled(p, a, zero, *red, -c, shift, cmp);
    for (auto& [m, coeff] : out.t) coeff *= a;
    lambda *= Rat(a);
    Int g2 = int_gcd(poly_content(p), poly_content(out));
    if (g2 > 1) {
      divide_coeffs(p, g2);
      divide_coeffs(out, g2);
      lambda /= Rat(g2);
    }
  }
  return {std::move(out), std::move(lambda)};
}

std::vector<GbPoly> prepare_inputs(const std::vector<MultiPoly>& polys,
                                   const std::vector<std::string>& order, MonoCmp cmp) {
  std::vector<GbPoly> out;
  for (const auto& p : polys) {
    GbPoly gp = from_multi(p.with_vars(order), cmp);
    if (gp.is_zero()) continue;
    make_primitive(gp);
    bool dup = false;
    for (const auto& q : out) dup = dup || q.t == gp.t;
    if (!dup) out.push_back(std::move(gp));
  }
  return out;
}

// Buchberger with the coprimality and chain criteria, then minimization and
// tail reduction; the result is the reduced basis, sorted by decreasing
// leading term.
std::vector<GbPoly> buchberger_core(std::vector<GbPoly> G, MonoCmp cmp, long spair_cap) {
  std::map<std::pair<int, int>, Mono> pending;
  auto push_pairs = [&](int n) {
    for (int i = 0; i < n; ++i) pending[{i, n}] = mono_lcm(G[i].lm(), G[n].lm());
  };
  for (int j = 1; j < static_cast<int>(G.size()); ++j) push_pairs(j);

  long processed = 0;
  while (!pending.empty()) {
    if (++processed > spair_cap)
      throw ResourceError("Groebner computation exceeded the S-pair budget");
    // Normal selection: smallest lcm by total degree, ties by comparator.
    auto best = pending.begin();
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      long ta = mono_total(it->second), tb = mono_total(best->second);
      if (ta < tb || (ta == tb && cmp(best->second, it->second))) best = it;
    }
    auto [ij, L] = *best;
    pending.erase(best);
    auto [i, j] = ij;

    if (mono_add(G[i].lm(), G[j].lm()) == L) continue;  // coprime leading terms

    bool chained = false;
    for (int k = 0; k < static_cast<int>(G.size()) && !chained; ++k) {
      if (k == i || k == j) continue;
      if (!mono_divides(G[k].lm(), L)) continue;
      auto pik = std::minmax(i, k), pjk = std::minmax(j, k);
      if (pending.count({pik.first, pik.second}) == 0 &&
          pending.count({pjk.first, pjk.second}) == 0)
        chained = true;
    }
    if (chained) continue;

    GbPoly r = reduce_full(spoly(G[i], G[j], cmp), G, cmp);
    if (r.is_zero()) continue;
    make_primitive(r);
    G.push_back(std::move(r));
    push_pairs(static_cast<int>(G.size()) - 1);
  }

  // Minimize: drop generators whose leading term another one divides.
  std::vector<bool> removed(G.size(), false);
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = 0; j < G.size() && !removed[i]; ++j) {
      if (i == j || removed[j]) continue;
      if (mono_divides(G[j].lm(), G[i].lm()) && (G[j].lm() != G[i].lm() || j < i))
        removed[i] = true;
    }
  }
  std::vector<GbPoly> kept;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (!removed[i]) kept.push_back(std::move(G[i]));
  }

  // Tail-reduce each survivor against the others until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      std::vector<GbPoly> others;
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (j != i) others.push_back(kept[j]);
      }
      GbPoly r = reduce_full(kept[i], others, cmp);
      make_primitive(r);
      if (r.t != kept[i].t) {
        kept[i] = std::move(r);
        changed = true;
      }
    }
  }

  std::sort(kept.begin(), kept.end(),
            [cmp](const GbPoly& a, const GbPoly& b) { return cmp(a.lm(), b.lm()); });
  return kept;
}

bool lts_zero_dimensional(const std::vector<GbPoly>& basis, std::size_t n) {
  for (const auto& g : basis) {
    if (!g.is_zero() && mono_total(g.lm()) == 0) return true;  // empty solution set
  }
  for (std::size_t v = 0; v < n; ++v) {
    bool covered = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      const Mono& m = g.lm();
      bool pure = m[v] > 0;
      for (std::size_t k = 0; k < n && pure; ++k) pure = (k == v) || m[k] == 0;
      covered = covered || pure;
    }
    if (!covered) return false;
  }
  return true;
}

// Converts the reduced graded basis of an ideal with finitely many solutions
// into the reduced lexicographic basis.  Monomials outside the graded
// staircase span the quotient algebra; candidates are walked in increasing
// lexicographic order, and the first linear dependence over each frontier
// monomial is a lexicographic basis element whose tail automatically lies on
// the lexicographic staircase.
std::vector<GbPoly> fglm_lex(const std::vector<GbPoly>& G, std::size_t n) {
  std::vector<Mono> lts;
  for (const auto& g : G) lts.push_back(g.lm());
  auto reducible = [&lts](const Mono& m) {
    for (const auto& l : lts)
      if (mono_divides(l, m)) return true;
    return false;
  };

  // Graded staircase.
  std::map<Mono, std::size_t> bpos;
  {
    std::set<Mono> visited;
    std::vector<Mono> stack{Mono(n, 0)};
    visited.insert(stack.front());
    while (!stack.empty()) {
      Mono m = stack.back();
      stack.pop_back();
      if (reducible(m)) continue;
      bpos.emplace(m, 0);
      for (std::size_t v = 0; v < n; ++v) {
        Mono child = m;
        ++child[v];
        if (visited.insert(child).second) stack.push_back(child);
      }
    }
  }
  std::vector<Mono> B;
  for (auto& [m, idx] : bpos) {
    idx = B.size();
    B.push_back(m);
  }
  const std::size_t D = B.size();
  if (D == 0) throw std::logic_error("no staircase for a proper ideal");

  // Image of x_v * b in the quotient for every staircase monomial b.
  std::vector<std::vector<std::vector<Rat>>> mult(n);
  for (std::size_t v = 0; v < n; ++v) {
    mult[v].assign(D, {});
    for (std::size_t i = 0; i < D; ++i) {
      Mono m = B[i];
      ++m[v];
      if (auto it = bpos.find(m); it != bpos.end()) {
        std::vector<Rat> unit(D, Rat(0));
        unit[it->second] = Rat(1);
        mult[v][i] = std::move(unit);
        continue;
      }
      GbPoly p;
      p.t.emplace_back(std::move(m), Int(1));
      auto [r, lambda] = reduce_full_tracked(std::move(p), G, grevlex_greater);
      std::vector<Rat> vec(D, Rat(0));
      for (const auto& [mm, c] : r.t) {
        Rat val(c);
        val /= lambda;
        vec[bpos.at(mm)] = std::move(val);
      }
      mult[v][i] = std::move(vec);
    }
  }

  // Walk monomials lexicographically upward from 1.
  struct Cand {
    Mono m;
    std::size_t parent = 0;
    std::size_t v = 0;
  };
  auto later = [](const Cand& a, const Cand& b) { return lex_greater(a.m, b.m); };
  std::priority_queue<Cand, std::vector<Cand>, decltype(later)> frontier(later);
  std::set<Mono> seen;

  struct Row {
    std::vector<Rat> vec;    // reduced, leading entry 1 at `pivot`
    std::vector<Rat> combo;  // vec as a combination of the kept images
    std::size_t pivot = 0;
  };
  std::vector<Mono> kept;
  std::vector<std::vector<Rat>> kept_nf;
  std::vector<Row> rows;
  std::vector<Mono> found_lts;
  std::vector<GbPoly> found;

  frontier.push({Mono(n, 0), 0, 0});
  seen.insert(Mono(n, 0));

  while (!frontier.empty()) {
    Cand c = frontier.top();
    frontier.pop();
    bool dead = false;
    for (const auto& l : found_lts) dead = dead || mono_divides(l, c.m);
    if (dead) continue;

    std::vector<Rat> nf(D, Rat(0));
    if (kept.empty()) {
      nf[bpos.at(c.m)] = Rat(1);  // the unit monomial
    } else {
      const auto& pn = kept_nf[c.parent];
      const auto& cols = mult[c.v];
      for (std::size_t j = 0; j < D; ++j) {
        if (pn[j] == 0) continue;
        const auto& col = cols[j];
        for (std::size_t i = 0; i < D; ++i) {
          if (col[i] == 0) continue;
          nf[i] += pn[j] * col[i];
        }
      }
    }

    std::vector<Rat> r = nf;
    std::vector<Rat> combo(kept.size(), Rat(0));
    for (const auto& row : rows) {
      const Rat& f = r[row.pivot];
      if (f == 0) continue;
      Rat fc = f;  // r[pivot] changes inside the loop below
      for (std::size_t i = 0; i < D; ++i)
        if (row.vec[i] != 0) r[i] -= fc * row.vec[i];
      for (std::size_t k = 0; k < row.combo.size(); ++k)
        if (row.combo[k] != 0) combo[k] += fc * row.combo[k];
    }
    bool zero = true;
    for (const auto& x : r) zero = zero && x == 0;

    if (zero) {
      // c.m - sum combo[k] * kept[k] is in the ideal, with c.m leading.
      std::vector<std::pair<Mono, Rat>> terms{{c.m, Rat(1)}};
      for (std::size_t k = 0; k < combo.size(); ++k) {
        if (combo[k] != 0) terms.emplace_back(kept[k], -combo[k]);
      }
      std::sort(terms.begin(), terms.end(),
                [](const auto& a, const auto& b) { return lex_greater(a.first, b.first); });
      Int scale(1);
      for (const auto& [m, q] : terms) scale = int_lcm(scale, Int(q.get_den()));
      GbPoly g;
      for (const auto& [m, q] : terms) {
        Rat s = q;
        s *= Rat(scale);
        g.t.emplace_back(m, Int(s.get_num()));
      }
      make_primitive(g);
      found_lts.push_back(c.m);
      found.push_back(std::move(g));
      continue;
    }

    std::size_t pivot = 0;
    while (r[pivot] == 0) ++pivot;
    Rat lead = r[pivot];
    std::vector<Rat> combo_row(kept.size() + 1, Rat(0));
    for (std::size_t k = 0; k < combo.size(); ++k) combo_row[k] = -combo[k] / lead;
    combo_row[kept.size()] = Rat(1) / lead;
    for (auto& x : r) x /= lead;

    std::size_t parent = kept.size();
    kept.push_back(c.m);
    kept_nf.push_back(std::move(nf));
    rows.push_back({std::move(r), std::move(combo_row), pivot});

    for (std::size_t v = 0; v < n; ++v) {
      Mono child = c.m;
      ++child[v];
      if (seen.insert(child).second) frontier.push({std::move(child), parent, v});
    }
  }

  if (kept.size() != D)
    throw std::logic_error("quotient dimensions disagree between term orders");

  std::sort(found.begin(), found.end(),
            [](const GbPoly& a, const GbPoly& b) { return lex_greater(a.lm(), b.lm()); });
  return found;
}

}  // namespace

bool GradedIdealBasis::is_trivial() const {
  return generators.size() == 1 && !generators[0].is_zero() && generators[0].is_constant();
}

MultiPoly normal_form(const MultiPoly& p, const LexIdealBasis& basis) {
  std::vector<GbPoly> gens;
  gens.reserve(basis.generators.size());
  for (const auto& g : basis.generators)
    gens.push_back(from_multi(g.with_vars(basis.variable_order), lex_greater));
  GbPoly r = reduce_full(from_multi(p.with_vars(basis.variable_order), lex_greater), gens,
                         lex_greater);
  make_primitive(r);
  return to_multi(r, basis.variable_order);
}

LexIdealBasis buchberger_lex(const std::vector<MultiPoly>& polys,
                             const std::vector<std::string>& variable_order, long spair_cap) {
  std::vector<GbPoly> inputs = prepare_inputs(polys, variable_order, grevlex_greater);
  if (inputs.empty()) throw std::logic_error("Groebner basis of an empty system");

  std::vector<GbPoly> graded = buchberger_core(std::move(inputs), grevlex_greater, spair_cap);

  std::vector<GbPoly> kept;
  bool unit = graded.size() == 1 && mono_total(graded[0].lm()) == 0;
  if (unit) {
    kept = std::move(graded);
  } else if (lts_zero_dimensional(graded, variable_order.size())) {
    kept = fglm_lex(graded, variable_order.size());
  } else {
    kept = buchberger_core(prepare_inputs(polys, variable_order, lex_greater), lex_greater,
                           spair_cap);
  }

  LexIdealBasis basis;
  basis.variable_order = variable_order;
  for (const auto& g : kept) basis.generators.push_back(to_multi(g, variable_order));
  return basis;
}

GradedIdealBasis buchberger_graded(const std::vector<MultiPoly>& polys,
                                   const std::vector<std::string>& variable_order,
                                   long spair_cap) {
  std::vector<GbPoly> inputs = prepare_inputs(polys, variable_order, grevlex_greater);
  if (inputs.empty()) throw std::logic_error("Groebner basis of an empty system");
  std::vector<GbPoly> kept = buchberger_core(std::move(inputs), grevlex_greater, spair_cap);

  GradedIdealBasis basis;
  basis.variable_order = variable_order;
  for (const auto& g : kept) basis.generators.push_back(to_multi(g, variable_order));
  return basis;
}

bool is_zero_dimensional(const LexIdealBasis& basis) {
  std::vector<GbPoly> gens;
  for (const auto& g : basis.generators) {
    if (!g.is_zero() && g.is_constant()) return true;  // empty solution set
    gens.push_back(from_multi(g.with_vars(basis.variable_order), lex_greater));
  }
  return lts_zero_dimensional(gens, basis.variable_order.size());
}

}  // namespace acsv
