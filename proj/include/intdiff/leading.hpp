#pragma once

#include "intdiff/context.hpp"
#include "intdiff/poly.hpp"

#include <stdexcept>
#include <utility>

namespace intdiff {

inline std::pair<LambdaPoly, RBWord> leading(const Poly& p) { return p.leading(); }

inline const RBWord& leading_monomial(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("leading term of the zero polynomial");
  return p.terms().rbegin()->first;
}

inline bool is_monic(const Poly& p) { return !p.is_zero() && p.leading().first.is_one(); }

/// Whether substituting the leading monomial of p into q needs no reduction.
/// Under d^ℓ(⋆) this holds exactly for single letters of order at most n - ℓ.
inline bool is_normal(const StarContext& q, const Poly& p, const Alphabet& alpha) {
  if (p.is_zero()) throw std::domain_error("normality of the zero polynomial");
  const RBWord& s = leading_monomial(p);
  if (q.hole_deriv() == 0) return q.subst_word(s).has_value();
  if (s.breadth() != 1 || !s.atoms()[0].is_letter()) return false;
  const Letter& l = s.atoms()[0].letter();
  if (static_cast<int>(l.deriv) + q.hole_deriv() > alpha.order_n()) return false;
  Letter raised{l.symbol, l.deriv + static_cast<std::uint32_t>(q.hole_deriv())};
  return q.with_hole_deriv(0).subst_word(RBWord::of(raised)).has_value();
}

}  // namespace intdiff
