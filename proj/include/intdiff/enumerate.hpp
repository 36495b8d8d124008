#pragma once

// Exhaustive generators for words, bracketed terms and one-hole contexts.

#include "intdiff/context.hpp"
#include "intdiff/order.hpp"
#include "intdiff/terms.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

namespace intdiff {

namespace detail {

/// Atom sequences with no adjacent integrals, by exact size. With a hole
/// budget the sequences may contain one marker letter standing for ⋆.
class SeqGen {
 public:
  SeqGen(const Alphabet& a) : letters_(a.letters()) {
    hole_ = Letter{static_cast<std::uint32_t>(a.size()), 0};
  }

  const Letter& hole_letter() const { return hole_; }

  const std::vector<std::vector<Atom>>& get(std::size_t size, int holes, bool allow_integral_first) {
    auto key = std::make_tuple(size, holes, allow_integral_first);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::vector<Atom>> out;
    if (size == 0) {
      if (holes == 0) out.push_back({});
      return memo_[key] = std::move(out);
    }
    for (const auto& l : letters_)
      for (const auto& rest : get(size - 1, holes, true)) out.push_back(prepend(Atom::of(l), rest));
    if (holes == 1)
      for (const auto& rest : get(size - 1, 0, true)) out.push_back(prepend(Atom::of(hole_), rest));
    if (allow_integral_first) {
      for (std::size_t k = 0; k <= size - 1; ++k) {
        for (int h = 0; h <= holes; ++h) {
          const auto inner = get(k, h, true);
          const auto& rests = get(size - 1 - k, holes - h, false);
          for (const auto& body : inner) {
            Atom p = Atom::integral(RBWord::from_atoms(body));
            for (const auto& rest : rests) out.push_back(prepend(p, rest));
          }
        }
      }
    }
    return memo_[key] = std::move(out);
  }

 private:
  static std::vector<Atom> prepend(const Atom& a, const std::vector<Atom>& rest) {
    std::vector<Atom> v;
    v.reserve(rest.size() + 1);
    v.push_back(a);
    v.insert(v.end(), rest.begin(), rest.end());
    return v;
  }

  std::vector<Letter> letters_;
  Letter hole_;
  std::map<std::tuple<std::size_t, int, bool>, std::vector<std::vector<Atom>>> memo_;
};

inline bool find_hole(const std::vector<Atom>& atoms, const Letter& hole,
                      std::vector<ContextFrame>& frames) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].is_letter() && atoms[i].letter() == hole) {
      frames.push_back(ContextFrame{{atoms.begin(), atoms.begin() + i}, {atoms.begin() + i + 1, atoms.end()}});
      return true;
    }
    if (atoms[i].is_integral()) {
      frames.push_back(ContextFrame{{atoms.begin(), atoms.begin() + i}, {atoms.begin() + i + 1, atoms.end()}});
      if (find_hole(atoms[i].body().atoms(), hole, frames)) return true;
      frames.pop_back();
    }
  }
  return false;
}

}  // namespace detail

/// All words of size exactly s, unsorted.
inline std::vector<RBWord> rbwords_of_size(const Alphabet& a, std::size_t s) {
  detail::SeqGen gen(a);
  std::vector<RBWord> out;
  for (const auto& atoms : gen.get(s, 0, true)) out.push_back(RBWord::from_atoms(atoms));
  return out;
}

/// All words with deg_total ≤ max_size, ascending in <ₙ.
inline std::vector<RBWord> enumerate_rbwords(const Alphabet& a, std::size_t max_size) {
  detail::SeqGen gen(a);
  std::vector<RBWord> out;
  for (std::size_t s = 0; s <= max_size; ++s)
    for (const auto& atoms : gen.get(s, 0, true)) out.push_back(RBWord::from_atoms(atoms));
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

/// One-hole type II contexts of size ≤ max_size (the hole counts as 1).
inline std::vector<StarContext> enumerate_contexts(const Alphabet& a, std::size_t max_size) {
  detail::SeqGen gen(a);
  std::vector<StarContext> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    for (const auto& atoms : gen.get(s, 1, true)) {
      std::vector<ContextFrame> frames;
      detail::find_hole(atoms, gen.hole_letter(), frames);
      out.emplace_back(std::move(frames));
    }
  }
  return out;
}

/// Bracketed terms (adjacent brackets allowed) of size ≤ max_size with at
/// most max_brackets brackets.
inline std::vector<BracketedTerm> enumerate_bracketed(const Alphabet& a, std::size_t max_size,
                                                      std::size_t max_brackets) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<BracketedTerm>> memo;
  const auto letters = a.letters();
  std::function<const std::vector<BracketedTerm>&(std::size_t, std::size_t)> exact =
      [&](std::size_t s, std::size_t b) -> const std::vector<BracketedTerm>& {
    auto key = std::make_pair(s, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<BracketedTerm> out;
    if (s == 0) {
      if (b == 0) out.emplace_back();
      return memo[key] = std::move(out);
    }
    for (const auto& l : letters)
      for (const auto& rest : exact(s - 1, b)) out.push_back(BracketedTerm::of(l) * rest);
    if (b > 0) {
      for (std::size_t k = 0; k <= s - 1; ++k)
        for (std::size_t c = 0; c + 1 <= b; ++c) {
          const auto inner = exact(k, c);
          const auto rests = exact(s - 1 - k, b - 1 - c);
          for (const auto& in : inner)
            for (const auto& rest : rests) out.push_back(BracketedTerm::bracket(in) * rest);
        }
    }
    return memo[key] = std::move(out);
  };
  std::vector<BracketedTerm> out;
  for (std::size_t s = 0; s <= max_size; ++s)
    for (std::size_t b = 0; b <= max_brackets; ++b) {
      const auto& v = exact(s, b);
      out.insert(out.end(), v.begin(), v.end());
    }
  return out;
}

}  // namespace intdiff
