#pragma once

// Rota-Baxter reduction, diamond product, integral and weight-λ derivation.

#include "intdiff/context.hpp"
#include "intdiff/poly.hpp"
#include "intdiff/terms.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace intdiff {

enum class RewriteStrategy { LeftmostInnermost, LeftmostOutermost, Random };

inline const char* to_string(RewriteStrategy s) {
  switch (s) {
    case RewriteStrategy::LeftmostInnermost: return "leftmost-innermost";
    case RewriteStrategy::LeftmostOutermost: return "leftmost-outermost";
    case RewriteStrategy::Random: return "random";
  }
  return "?";
}

namespace detail {

/// Two adjacent brackets at atoms index, index+1 of the level at path.
struct Redex {
  std::vector<std::size_t> path;
  std::size_t index;
  std::size_t order;  // preorder position of the left bracket
};

inline void collect_redexes(const BracketedTerm& t, std::vector<std::size_t>& path,
                            std::size_t& counter, std::vector<Redex>& out) {
  const auto& atoms = t.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::size_t here = counter++;
    if (!atoms[i].is_bracket()) continue;
    if (i + 1 < atoms.size() && atoms[i + 1].is_bracket()) out.push_back(Redex{path, i, here});
    path.push_back(i);
    collect_redexes(*atoms[i].inner, path, counter, out);
    path.pop_back();
  }
}

/// Whether inner sits inside one of the two brackets of outer.
inline bool redex_inside(const Redex& inner, const Redex& outer) {
  if (!is_proper_prefix(outer.path, inner.path)) return false;
  std::size_t idx = inner.path[outer.path.size()];
  return idx == outer.index || idx == outer.index + 1;
}

inline BracketedTerm replace_pair(const BracketedTerm& t, const std::vector<std::size_t>& path,
                                  std::size_t depth, std::size_t index, const BAtom& repl) {
  std::vector<BAtom> atoms = t.atoms();
  if (depth == path.size()) {
    atoms[index] = repl;
    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(index) + 1);
    return BracketedTerm(std::move(atoms));
  }
  auto& a = atoms[path[depth]];
  a.inner = std::make_shared<const BracketedTerm>(replace_pair(*a.inner, path, depth + 1, index, repl));
  return BracketedTerm(std::move(atoms));
}

inline const BracketedTerm& level_of(const BracketedTerm& t, const std::vector<std::size_t>& path) {
  const BracketedTerm* cur = &t;
  for (auto i : path) cur = cur->atoms()[i].inner.get();
  return *cur;
}

inline BAtom bracket_atom(BracketedTerm inner) {
  return BAtom{{}, std::make_shared<const BracketedTerm>(std::move(inner))};
}

}  // namespace detail

/// Normal form modulo the Rota-Baxter axiom, by exhaustive rewriting of
/// P[u]P[v] into P[u P[v]] + P[P[u] v] + λ P[u v].
inline Poly red(const BracketedTerm& t, RewriteStrategy strategy = RewriteStrategy::LeftmostInnermost,
                std::uint64_t seed = 0) {
  if (auto w = as_rbword(t)) return Poly(*w);
  std::mt19937_64 rng(seed);
  Poly out;
  std::map<BracketedTerm, LambdaPoly, StructuralLess> pending;
  pending.emplace(t, LambdaPoly(1));
  const LambdaPoly lam = LambdaPoly::lambda();
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const BracketedTerm& term = node.key();
    const LambdaPoly& c = node.mapped();
    if (c.is_zero()) continue;
    std::vector<detail::Redex> redexes;
    std::vector<std::size_t> path;
    std::size_t counter = 0;
    detail::collect_redexes(term, path, counter, redexes);
    if (redexes.empty()) {
      out.add_term(*as_rbword(term), c);
      continue;
    }
    const detail::Redex* chosen = nullptr;
    if (strategy == RewriteStrategy::Random) {
      std::uniform_int_distribution<std::size_t> pick(0, redexes.size() - 1);
      chosen = &redexes[pick(rng)];
    } else {
      bool innermost = strategy == RewriteStrategy::LeftmostInnermost;
      for (const auto& r : redexes) {
        bool ok = true;
        for (const auto& s : redexes) {
          if (&r == &s) continue;
          if (innermost ? detail::redex_inside(s, r) : detail::redex_inside(r, s)) {
            ok = false;
            break;
          }
        }
        if (ok && (!chosen || r.order < chosen->order)) chosen = &r;
      }
    }
    const auto& level = detail::level_of(term, chosen->path);
    const BracketedTerm& u = *level.atoms()[chosen->index].inner;
    const BracketedTerm& v = *level.atoms()[chosen->index + 1].inner;
    BracketedTerm pv = BracketedTerm({detail::bracket_atom(v)});
    BracketedTerm pu = BracketedTerm({detail::bracket_atom(u)});
    std::pair<BracketedTerm, LambdaPoly> rewrites[3] = {
        {detail::replace_pair(term, chosen->path, 0, chosen->index, detail::bracket_atom(u * pv)), c},
        {detail::replace_pair(term, chosen->path, 0, chosen->index, detail::bracket_atom(pu * v)), c},
        {detail::replace_pair(term, chosen->path, 0, chosen->index, detail::bracket_atom(u * v)), c * lam},
    };
    for (auto& [nt, k] : rewrites) {
      auto [it, inserted] = pending.try_emplace(std::move(nt), k);
      if (!inserted) {
        it->second += k;
        if (it->second.is_zero()) pending.erase(it);
      }
    }
  }
  return out;
}

inline Poly integral(const Poly& p) {
  Poly out;
  for (const auto& [w, c] : p) out.add_term(RBWord::integral(w), c);
  return out;
}

inline Poly diamond(const RBWord& u, const RBWord& v);

inline Poly diamond(const Poly& p, const Poly& q) {
  Poly out;
  for (const auto& [u, a] : p)
    for (const auto& [v, b] : q) out.add_scaled(diamond(u, v), a * b);
  return out;
}

/// u◇v: concatenation, with a bracket collision u₀P[a]·P[b]v₀ resolved as
/// u₀(P[a◇P[b]] + P[P[a]◇b] + λP[a◇b])v₀.
inline Poly diamond(const RBWord& u, const RBWord& v) {
  if (auto w = try_concat(u, v)) return Poly(*w);
  const RBWord& a = u.atoms().back().body();
  const RBWord& b = v.atoms().front().body();
  const RBWord pa = RBWord::integral(a), pb = RBWord::integral(b);
  Poly inside = diamond(a, pb) + diamond(pa, b);
  inside.add_scaled(diamond(a, b), LambdaPoly::lambda());
  std::vector<Atom> head(u.atoms().begin(), u.atoms().end() - 1);
  std::vector<Atom> tail(v.atoms().begin() + 1, v.atoms().end());
  Poly out;
  for (const auto& [m, c] : inside) {
    std::vector<Atom> atoms = head;
    atoms.push_back(Atom::integral(m));
    atoms.insert(atoms.end(), tail.begin(), tail.end());
    out.add_term(RBWord::from_atoms(std::move(atoms)), c);
  }
  return out;
}

/// d on one indecomposable factor: x^(i) ↦ x^(i+1) (0 at i = n), P[u] ↦ u.
inline Poly derive_atom(const Atom& f, const Alphabet& alpha) {
  if (f.is_integral()) return Poly(f.body());
  const Letter& l = f.letter();
  if (static_cast<int>(l.deriv) >= alpha.order_n()) return Poly();
  return Poly(RBWord::of(Letter{l.symbol, l.deriv + 1}));
}

/// d on a word via the two-factor rule d(AB) = d(A)B + A d(B) + λ d(A)d(B),
/// folded over the factors from left to right.
inline Poly derive(const RBWord& w, const Alphabet& alpha) {
  const LambdaPoly lam = LambdaPoly::lambda();
  std::vector<Atom> prefix;
  Poly dprefix;
  for (const auto& f : w.atoms()) {
    RBWord single = RBWord::from_atoms({f});
    Poly df = derive_atom(f, alpha);
    RBWord a = RBWord::from_atoms(prefix);
    Poly next = diamond(dprefix, Poly(single));
    next += diamond(Poly(a), df);
    next.add_scaled(diamond(dprefix, df), lam);
    dprefix = std::move(next);
    prefix.push_back(f);
  }
  return dprefix;
}

inline Poly derive(const Poly& p, const Alphabet& alpha) {
  Poly out;
  for (const auto& [w, c] : p) out.add_scaled(derive(w, alpha), c);
  return out;
}

inline Poly derive_n(Poly p, int ell, const Alphabet& alpha) {
  for (int i = 0; i < ell && !p.is_zero(); ++i) p = derive(p, alpha);
  return p;
}

/// red(q|_p) computed through ◇ and P level by level rather than by
/// rewriting; type I holes get d^ℓ applied to p first.
inline Poly ctx_apply(const StarContext& q, const Poly& p, const Alphabet& alpha) {
  Poly cur = q.hole_deriv() > 0 ? derive_n(p, q.hole_deriv(), alpha) : p;
  const auto& frames = q.frames();
  for (std::size_t i = frames.size(); i-- > 0;) {
    Poly left(RBWord::from_atoms(frames[i].left));
    Poly right(RBWord::from_atoms(frames[i].right));
    cur = diamond(diamond(left, cur), right);
    if (i > 0) cur = integral(cur);
  }
  return cur;
}

}  // namespace intdiff
