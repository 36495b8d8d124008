#pragma once

// The order <ₙ on letters and Rota-Baxter words.

#include "intdiff/terms.hpp"

#include <compare>

namespace intdiff {

/// x^(n) < ... < x' < x < y^(n) < ... < y for x before y in the alphabet.
inline std::strong_ordering cmp_letter(const Letter& a, const Letter& b) {
  if (auto c = a.symbol <=> b.symbol; c != 0) return c;
  return b.deriv <=> a.deriv;
}

inline std::strong_ordering cmp_word(const RBWord& u, const RBWord& v);

/// Indecomposable factors compare as one-factor words.
inline std::strong_ordering cmp_atom(const Atom& a, const Atom& b) {
  if (a.is_letter() && b.is_letter()) return cmp_letter(a.letter(), b.letter());
  if (a.is_letter()) return std::strong_ordering::less;
  if (b.is_letter()) return std::strong_ordering::greater;
  if (a.body_ptr() == b.body_ptr()) return std::strong_ordering::equal;
  if (auto c = a.deg() <=> b.deg(); c != 0) return c;
  return cmp_word(a.body(), b.body());
}

inline std::strong_ordering cmp_word(const RBWord& u, const RBWord& v) {
  if (&u == &v) return std::strong_ordering::equal;
  if (auto c = u.deg() <=> v.deg(); c != 0) return c;
  if (u.is_integral() && v.is_integral()) return cmp_word(u.body(), v.body());
  const auto& x = u.atoms();
  const auto& y = v.atoms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (auto c = cmp_atom(x[i], y[i]); c != 0) return c;
  // A proper prefix with equal degree cannot occur; kept for totality.
  return x.size() <=> y.size();
}

struct WordLess {
  bool operator()(const RBWord& u, const RBWord& v) const { return cmp_word(u, v) < 0; }
};

}  // namespace intdiff
