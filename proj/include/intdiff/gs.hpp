#pragma once

// Integration-by-parts generators, their leading terms, reduction to
// normal form, the functional-monomial basis and compositions.

#include "intdiff/context.hpp"
#include "intdiff/enumerate.hpp"
#include "intdiff/leading.hpp"
#include "intdiff/poly.hpp"
#include "intdiff/rb_engine.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace intdiff {

enum class GeneratorKind { Phi1, Phi2 };

inline const char* to_string(GeneratorKind k) { return k == GeneratorKind::Phi1 ? "Phi1" : "Phi2"; }

struct Generator {
  GeneratorKind kind = GeneratorKind::Phi1;
  RBWord u;
  RBWord v;

  friend bool operator==(const Generator&, const Generator&) = default;

  std::string render(const Alphabet& a) const {
    return std::string(to_string(kind)) + "(" + intdiff::render(u, a) + "," + intdiff::render(v, a) +
           ")";
  }
};

/// P(d(u)◇P(v)) - u◇P(v) + P(u◇v) + λP(d(u)◇v), bilinear in (u, v).
inline Poly phi1(const Poly& u, const Poly& v, const Alphabet& a) {
  Poly du = derive(u, a);
  Poly out = integral(diamond(du, integral(v)));
  out -= diamond(u, integral(v));
  out += integral(diamond(u, v));
  out.add_scaled(integral(diamond(du, v)), LambdaPoly::lambda());
  return out;
}

/// P(P(u)◇d(v)) - P(u)◇v + P(u◇v) + λP(u◇d(v)).
inline Poly phi2(const Poly& u, const Poly& v, const Alphabet& a) {
  Poly dv = derive(v, a);
  Poly out = integral(diamond(integral(u), dv));
  out -= diamond(integral(u), v);
  out += integral(diamond(u, v));
  out.add_scaled(integral(diamond(u, dv)), LambdaPoly::lambda());
  return out;
}

inline Poly phi1(const RBWord& u, const RBWord& v, const Alphabet& a) { return phi1(Poly(u), Poly(v), a); }
inline Poly phi2(const RBWord& u, const RBWord& v, const Alphabet& a) { return phi2(Poly(u), Poly(v), a); }

inline Poly expand(const Generator& g, const Alphabet& a) {
  return g.kind == GeneratorKind::Phi1 ? phi1(g.u, g.v, a) : phi2(g.u, g.v, a);
}

/// The generator scaled so that its leading coefficient is 1. Leading
/// coefficients of nonzero generators are nonzero rationals.
inline Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  const LambdaPoly& lc = p.terms().rbegin()->second;
  if (!lc.is_constant()) throw std::logic_error("leading coefficient is not a constant: " + lc.to_string());
  return p * LambdaPoly(Rational(1) / lc.constant_term());
}

// ---------------------------------------------------------------------------
// Letter-word predicates

inline bool is_Z_n(const std::vector<Letter>& w, const Alphabet& a) {
  return std::all_of(w.begin(), w.end(), [&](const Letter& l) { return a.is_top(l); });
}

/// Empty, or last letter underived.
inline bool is_functional_word(const std::vector<Letter>& w) { return w.empty() || w.back().deriv == 0; }

/// A letter word u with leading(d(u)) = w, searched among w itself and the
/// words obtained by lowering one letter of w by one derivative order.
inline std::optional<std::vector<Letter>> a_nd_witness(const std::vector<Letter>& w, const Alphabet& a) {
  if (w.empty()) return std::nullopt;
  const RBWord target = RBWord::letters(w);
  auto test = [&](const std::vector<Letter>& u) {
    Poly d = derive(RBWord::letters(u), a);
    return !d.is_zero() && leading_monomial(d) == target;
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].deriv == 0) continue;
    auto u = w;
    u[i].deriv -= 1;
    if (test(u)) return u;
  }
  if (test(w)) return w;
  return std::nullopt;
}

inline bool is_A_nd(const std::vector<Letter>& w, const Alphabet& a) { return a_nd_witness(w, a).has_value(); }

// ---------------------------------------------------------------------------
// Leading-term recognition

enum class LeadTag { Case1Phi1, Case1Phi2, Case2Phi1, Case2Phi2, Epsilon };

inline const char* to_string(LeadTag t) {
  switch (t) {
    case LeadTag::Case1Phi1: return "Case1Phi1";
    case LeadTag::Case1Phi2: return "Case1Phi2";
    case LeadTag::Case2Phi1: return "Case2Phi1";
    case LeadTag::Case2Phi2: return "Case2Phi2";
    case LeadTag::Epsilon: return "Epsilon";
  }
  return "?";
}

struct LeadClass {
  LeadTag tag;
  Generator generator;
};

namespace detail {

inline std::vector<Atom> lower_at(std::vector<Atom> atoms, std::size_t i) {
  Letter l = atoms[i].letter();
  l.deriv -= 1;
  atoms[i] = Atom::of(l);
  return atoms;
}

inline bool has_integral(const std::vector<Atom>& atoms, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i)
    if (atoms[i].is_integral()) return true;
  return false;
}

/// Candidate (u, v) pairs from the reverse inclusions, before verification.
inline std::vector<LeadClass> lead_candidates(const RBWord& w, const Alphabet& a) {
  std::vector<LeadClass> out;
  if (!w.is_integral()) return out;
  const auto& z = w.body().atoms();
  const std::size_t m = z.size();
  if (m == 0) return out;
  auto word = [](std::vector<Atom> atoms) { return RBWord::from_atoms(std::move(atoms)); };

  // P[y P[b]] with y = d(u) for u obtained by lowering a letter of y that has
  // only order-n letters to its right.
  if (m >= 2 && z.back().is_integral()) {
    std::vector<Atom> y(z.begin(), z.end() - 1);
    for (std::size_t j = y.size(); j-- > 0;) {
      if (!y[j].is_letter()) continue;
      const Letter& l = y[j].letter();
      if (l.deriv >= 1) {
        LeadTag tag = has_integral(y, j, y.size()) ? LeadTag::Epsilon : LeadTag::Case1Phi1;
        out.push_back({tag, {GeneratorKind::Phi1, word(lower_at(y, j)), z.back().body()}});
      }
      if (!a.is_top(l)) break;
    }
  }
  // P[P[a] y] with y = d(v).
  if (m >= 2 && z.front().is_integral()) {
    std::vector<Atom> y(z.begin() + 1, z.end());
    for (std::size_t j = y.size(); j-- > 0;) {
      if (!y[j].is_letter()) continue;
      const Letter& l = y[j].letter();
      if (l.deriv >= 1) {
        // Order-n runs after an integral are the interleaved shapes; a bare
        // trailing integral after the run still realises a Case 1 pattern.
        bool interleaved = false;
        for (std::size_t k = j + 1; k < y.size(); ++k)
          if (y[k].is_letter() && has_integral(y, j, k)) interleaved = true;
        LeadTag tag = interleaved ? LeadTag::Epsilon : LeadTag::Case1Phi2;
        out.push_back({tag, {GeneratorKind::Phi2, z.front().body(), word(lower_at(y, j))}});
      }
      if (!a.is_top(l)) break;
    }
  }
  // P[u v] with u an alternating product of order-n runs and integrals
  // containing at least one letter.
  {
    bool seen_letter = false;
    for (std::size_t k = 1; k <= m; ++k) {
      const Atom& at = z[k - 1];
      if (at.is_letter()) {
        if (!a.is_top(at.letter())) break;
        seen_letter = true;
      }
      if (!seen_letter) continue;
      out.push_back({LeadTag::Case2Phi1,
                     {GeneratorKind::Phi1, word({z.begin(), z.begin() + k}), word({z.begin() + k, z.end()})}});
    }
  }
  {
    bool seen_letter = false;
    for (std::size_t k = m; k-- > 0;) {
      const Atom& at = z[k];
      if (at.is_letter()) {
        if (!a.is_top(at.letter())) break;
        seen_letter = true;
      }
      if (!seen_letter) continue;
      out.push_back({LeadTag::Case2Phi2,
                     {GeneratorKind::Phi2, word({z.begin(), z.begin() + k}), word({z.begin() + k, z.end()})}});
    }
  }
  return out;
}

struct LeadCache {
  int order_n = -1;
  std::unordered_map<RBWord, std::vector<LeadClass>, RBWordHash> entries;
};

inline LeadCache& lead_cache(int order_n) {
  thread_local std::map<int, LeadCache> caches;
  auto& c = caches[order_n];
  c.order_n = order_n;
  return c;
}

}  // namespace detail

/// Every verified way w itself is the leading monomial of a generator,
/// ordered by tag preference.
inline std::vector<LeadClass> match_leading(const RBWord& w, const Alphabet& a) {
  if (!w.is_integral()) return {};
  auto& cache = detail::lead_cache(a.order_n()).entries;
  if (auto it = cache.find(w); it != cache.end()) return it->second;
  std::vector<LeadClass> out;
  for (auto& cand : detail::lead_candidates(w, a)) {
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const LeadClass& c) { return c.generator == cand.generator; });
    if (dup) continue;
    Poly g = expand(cand.generator, a);
    if (!g.is_zero() && leading_monomial(g) == w) out.push_back(std::move(cand));
  }
  std::stable_sort(out.begin(), out.end(), [](const LeadClass& x, const LeadClass& y) {
    return static_cast<int>(x.tag) < static_cast<int>(y.tag);
  });
  cache.emplace(w, out);
  return out;
}

struct Reduction {
  Placement placement;
  Generator generator;
  LeadTag tag;
};

/// All (placement, generator) pairs whose leading monomial occurs in w, in
/// outermost-leftmost placement order and tag preference within a placement.
inline std::vector<Reduction> all_reductions(const RBWord& w, const Alphabet& a) {
  std::vector<Reduction> out;
  for (auto& p : integral_placements(w))
    for (auto& c : match_leading(p.subword, a)) out.push_back(Reduction{p, c.generator, c.tag});
  return out;
}

namespace detail {

inline bool has_reduction(const RBWord& w, const Alphabet& a) {
  for (const auto& at : w.atoms()) {
    if (!at.is_integral()) continue;
    RBWord pw = RBWord::from_atoms({at});
    if (!match_leading(pw, a).empty()) return true;
    if (has_reduction(at.body(), a)) return true;
  }
  return false;
}

}  // namespace detail

inline std::optional<Reduction> find_reduction(const RBWord& w, const Alphabet& a) {
  if (!detail::has_reduction(w, a)) return std::nullopt;
  for (auto& p : integral_placements(w)) {
    auto m = match_leading(p.subword, a);
    if (!m.empty()) return Reduction{std::move(p), m.front().generator, m.front().tag};
  }
  return std::nullopt;
}

inline bool is_irreducible(const RBWord& w, const Alphabet& a) { return !detail::has_reduction(w, a); }

// ---------------------------------------------------------------------------
// Reduction to normal form

enum class NfStrategy {
  GreatestOutermost,  // greatest reducible monomial, outermost-leftmost placement, preferred tag
  GreatestInnermost,  // greatest reducible monomial, innermost-rightmost placement, last tag
  RandomChoice,       // random reducible monomial, random reduction
};

struct ReductionStep {
  RBWord monomial;
  LambdaPoly coefficient;
  Placement placement;
  Generator generator;
  LeadTag tag;
  Poly replacement;  // what coefficient·monomial was rewritten into
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  Poly result;
};

struct NfOptions {
  NfStrategy strategy = NfStrategy::GreatestOutermost;
  std::uint64_t seed = 0;
  std::size_t step_budget = 200000;
  // Only monomials below the bound may be reduced (strictly, unless inclusive).
  std::optional<RBWord> bound;
  bool inclusive_bound = false;
};

enum class ReductionOutcome { Complete, Blocked, BudgetExhausted };

struct ReductionResult {
  Poly result;
  ReductionOutcome outcome = ReductionOutcome::Complete;
  std::vector<ReductionStep> steps;
};

namespace detail {

inline bool under_bound(const RBWord& m, const NfOptions& opt) {
  if (!opt.bound) return true;
  auto c = cmp_word(m, *opt.bound);
  return opt.inclusive_bound ? c <= 0 : c < 0;
}

}  // namespace detail

/// One reduction step applied to p at monomial m; returns the replacement.
inline Poly apply_reduction(Poly& p, const RBWord& m, const Reduction& r, const Alphabet& a) {
  LambdaPoly c = p.coeff(m);
  Poly g = monic(expand(r.generator, a));
  Poly sub = ctx_apply(r.placement.context, g, a) * c;
  if (sub.is_zero() || !(leading_monomial(sub) == m))
    throw std::logic_error("reduction does not have the expected leading monomial");
  p -= sub;
  if (p.contains(m)) throw std::logic_error("reduction failed to cancel its monomial");
  Poly replacement = Poly::term(c, m) - sub;
  return replacement;
}

inline ReductionResult reduce(Poly p, const Alphabet& a, const NfOptions& opt = {}, bool record = false) {
  ReductionResult res;
  std::mt19937_64 rng(opt.seed);
  std::unordered_map<RBWord, bool, RBWordHash> irreducible;
  auto irr = [&](const RBWord& w) {
    auto it = irreducible.find(w);
    if (it != irreducible.end()) return it->second;
    bool v = is_irreducible(w, a);
    irreducible.emplace(w, v);
    return v;
  };
  for (std::size_t step = 0;; ++step) {
    std::optional<RBWord> target;
    bool blocked = false;
    if (opt.strategy == NfStrategy::RandomChoice) {
      std::vector<RBWord> cands;
      for (const auto& [m, c] : p.terms())
        if (!irr(m)) {
          if (detail::under_bound(m, opt))
            cands.push_back(m);
          else
            blocked = true;
        }
      if (!cands.empty()) target = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
    } else {
      for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (irr(it->first)) continue;
        if (!detail::under_bound(it->first, opt)) {
          blocked = true;
          continue;
        }
        target = it->first;
        break;
      }
    }
    if (!target) {
      res.outcome = blocked ? ReductionOutcome::Blocked : ReductionOutcome::Complete;
      break;
    }
    if (step >= opt.step_budget) {
      res.outcome = ReductionOutcome::BudgetExhausted;
      break;
    }
    Reduction r;
    if (opt.strategy == NfStrategy::GreatestOutermost) {
      r = *find_reduction(*target, a);
    } else {
      auto all = all_reductions(*target, a);
      if (opt.strategy == NfStrategy::GreatestInnermost) {
        // deepest, then rightmost placement; the least preferred generator there
        auto key = [](const Reduction& x) {
          return std::make_tuple(x.placement.context.dep_star(), x.placement.path(), x.placement.begin());
        };
        std::size_t best = 0;
        for (std::size_t i = 1; i < all.size(); ++i)
          if (key(all[i]) >= key(all[best])) best = i;
        r = all[best];
      } else {
        r = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
      }
    }
    LambdaPoly c = p.coeff(*target);
    Poly replacement = apply_reduction(p, *target, r, a);
    if (record) res.steps.push_back(ReductionStep{*target, c, r.placement, r.generator, r.tag, replacement});
  }
  res.result = std::move(p);
  return res;
}

inline Poly normal_form(const Poly& p, const Alphabet& a, const NfOptions& opt = {}) {
  auto r = reduce(p, a, opt);
  if (r.outcome != ReductionOutcome::Complete) throw std::runtime_error("normal form did not complete");
  return r.result;
}

inline ReductionTrace normal_form_trace(const Poly& p, const Alphabet& a, const NfOptions& opt = {}) {
  auto r = reduce(p, a, opt, true);
  if (r.outcome != ReductionOutcome::Complete) throw std::runtime_error("normal form did not complete");
  return ReductionTrace{std::move(r.steps), std::move(r.result)};
}

// ---------------------------------------------------------------------------
// Triviality modulo [S, w]

enum class Triviality { Trivial, NotTrivial, Inconclusive };

inline const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::Trivial: return "trivial";
    case Triviality::NotTrivial: return "not trivial";
    case Triviality::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct TrivialityResult {
  Triviality status;
  Poly residue;
};

/// Reduction restricted to monomials strictly below w (or at most w when
/// inclusive). A monomial of p at or above the bound can never be produced
/// by a sum of such terms, so it certifies non-triviality; a stuck or
/// exhausted reduction is reported as inconclusive.
inline TrivialityResult triviality_mod(const Poly& p, const RBWord& w, const Alphabet& a,
                                       bool inclusive = false, std::size_t budget = 200000) {
  if (p.is_zero()) return {Triviality::Trivial, p};
  const RBWord& top = leading_monomial(p);
  auto c = cmp_word(top, w);
  if (inclusive ? c > 0 : c >= 0) return {Triviality::NotTrivial, p};
  NfOptions opt;
  opt.bound = w;
  opt.inclusive_bound = inclusive;
  opt.step_budget = budget;
  auto r = reduce(p, a, opt);
  if (r.result.is_zero()) return {Triviality::Trivial, r.result};
  return {Triviality::Inconclusive, r.result};
}

inline bool is_trivial_mod(const Poly& p, const RBWord& w, const Alphabet& a) {
  return triviality_mod(p, w, a).status == Triviality::Trivial;
}

/// Trivial modulo [S]: every step's substituted leading monomial is at most
/// the leading monomial of p itself.
inline bool is_trivial_mod(const Poly& p, const Alphabet& a) {
  if (p.is_zero()) return true;
  return triviality_mod(p, leading_monomial(p), a, true).status == Triviality::Trivial;
}

// ---------------------------------------------------------------------------
// Functional monomials and the ε set

namespace detail {

/// Membership of a bracket body in the primed alternating set: a body ending
/// in a letter run before an integral, or starting with an integral and
/// ending in letters, must end that run in an underived letter.
inline bool body_ok(const RBWord& z) {
  const auto& at = z.atoms();
  if (at.size() >= 2 && at.back().is_integral() && at[at.size() - 2].letter().deriv != 0) return false;
  if (at.size() >= 2 && at.front().is_integral() && at.back().is_letter() && at.back().letter().deriv != 0)
    return false;
  return true;
}

inline bool functional_rec(const RBWord& w) {
  for (const auto& at : w.atoms()) {
    if (!at.is_integral()) continue;
    if (!body_ok(at.body()) || !functional_rec(at.body())) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_functional_monomial(const RBWord& w) { return detail::functional_rec(w); }

/// Membership of the integral w = P[z] in the union of the five ε components.
/// Each interleaved component ends in an order-n run, so the union is the set
/// of P[z] whose first or last top-level letter has order n.
inline bool is_epsilon(const RBWord& w, const Alphabet& a) {
  if (!w.is_integral()) return false;
  const auto& z = w.body().atoms();
  const Atom* first = nullptr;
  const Atom* last = nullptr;
  for (const auto& at : z)
    if (at.is_letter()) {
      if (!first) first = &at;
      last = &at;
    }
  if (!first) return false;
  return a.is_top(first->letter()) || a.is_top(last->letter());
}

/// Whether some integral factor of w, at any depth, lies in the ε set.
inline bool has_epsilon_factor(const RBWord& w, const Alphabet& a) {
  for (const auto& at : w.atoms()) {
    if (!at.is_integral()) continue;
    if (is_epsilon(RBWord::from_atoms({at}), a) || has_epsilon_factor(at.body(), a)) return true;
  }
  return false;
}

inline std::vector<RBWord> enumerate_irr(const Alphabet& a, std::size_t max_size) {
  std::vector<RBWord> out;
  for (auto& w : enumerate_rbwords(a, max_size))
    if (is_irreducible(w, a)) out.push_back(std::move(w));
  return out;
}

// ---------------------------------------------------------------------------
// Compositions

enum class CompositionKind { Intersection, Inclusion };

struct Composition {
  CompositionKind kind;
  Generator f;
  Generator g;
  RBWord ambiguity;
  Poly value;
  std::optional<StarContext> context;  // inclusion: f̄ = q|_ḡ
  std::optional<std::pair<RBWord, RBWord>> cofactors;  // intersection: w = f̄u = vḡ
};

inline std::vector<Composition> compositions(const Generator& f, const Generator& g, const Alphabet& a) {
  std::vector<Composition> out;
  Poly F = monic(expand(f, a)), G = monic(expand(g, a));
  if (F.is_zero() || G.is_zero()) return out;
  const RBWord fl = leading_monomial(F), gl = leading_monomial(G);
  const auto& fa = fl.atoms();
  const auto& ga = gl.atoms();
  const std::size_t bf = fa.size(), bg = ga.size();

  // w = f̄u = vḡ with max(bf, bg) < bre(w) < bf + bg, ie. an overlap of k atoms.
  for (std::size_t k = 1; k < std::min(bf, bg); ++k) {
    if (!std::equal(fa.end() - k, fa.end(), ga.begin())) continue;
    RBWord u = gl.slice(k, bg), v = fl.slice(0, bf - k);
    auto w = try_concat(fl, u);
    if (!w) continue;
    Poly value = diamond(F, Poly(u)) - diamond(Poly(v), G);
    out.push_back(Composition{CompositionKind::Intersection, f, g, *w, value, std::nullopt,
                              std::make_pair(u, v)});
  }
  for (const auto& p : placements(fl)) {
    if (!(p.subword == gl)) continue;
    Poly value = F - ctx_apply(p.context, G, a);
    out.push_back(Composition{CompositionKind::Inclusion, f, g, fl, value, p.context, std::nullopt});
  }
  return out;
}

}  // namespace intdiff
