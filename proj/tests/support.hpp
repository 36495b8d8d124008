#pragma once

#include "intdiff/intdiff.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

namespace testing_support {

using namespace intdiff;

inline Poly poly(const std::string& s, const Alphabet& a) { return parse(s, a); }

/// The single monomial an expression denotes; fails loudly otherwise.
inline RBWord word(const std::string& s, const Alphabet& a) {
  Poly p = parse(s, a);
  if (p.size() != 1 || !p.begin()->second.is_one()) throw std::invalid_argument("not a monomial: " + s);
  return p.begin()->first;
}

inline std::string show(const Poly& p, const Alphabet& a) { return render(p, a); }

/// Random word of size at most max_size, built bottom-up.
inline RBWord random_word(const Alphabet& a, std::mt19937_64& rng, std::size_t max_size) {
  auto letters = a.letters();
  std::vector<Atom> atoms;
  std::size_t budget = std::uniform_int_distribution<std::size_t>(0, max_size)(rng);
  while (budget > 0) {
    bool can_integral = atoms.empty() || !atoms.back().is_integral();
    if (can_integral && rng() % 3 == 0) {
      std::size_t inner = std::uniform_int_distribution<std::size_t>(0, budget - 1)(rng);
      atoms.push_back(Atom::integral(random_word(a, rng, inner)));
      budget -= 1 + std::min(inner, atoms.back().body().size());
    } else {
      atoms.push_back(Atom::of(letters[rng() % letters.size()]));
      budget -= 1;
    }
  }
  return RBWord::from_atoms(atoms);
}

inline LambdaPoly random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return LambdaPoly({Rational(d(rng)), Rational(d(rng))});
}

inline Poly random_poly(const Alphabet& a, std::mt19937_64& rng, std::size_t terms, std::size_t max_size) {
  Poly p;
  for (std::size_t i = 0; i < terms; ++i) p.add_term(random_word(a, rng, max_size), random_coeff(rng));
  return p;
}

}  // namespace testing_support

namespace intdiff {

// gtest failure messages; symbols are named x, y, z, w by index
inline void PrintTo(const Poly& p, std::ostream* os) {
  static const Alphabet names({"x", "y", "z", "w", "s5", "s6"}, 9);
  *os << render(p, names);
}

inline void PrintTo(const RBWord& w, std::ostream* os) {
  static const Alphabet names({"x", "y", "z", "w", "s5", "s6"}, 9);
  *os << render(w, names);
}

}  // namespace intdiff
