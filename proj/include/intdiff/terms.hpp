#pragma once

// Term model: the alphabet Δₙ X, letters, Rota-Baxter words and bracketed terms.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace intdiff {

struct Letter {
  std::uint32_t symbol = 0;
  std::uint32_t deriv = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

inline std::size_t hash_letter(const Letter& l) {
  return (static_cast<std::size_t>(l.symbol) << 8) ^ l.deriv ^ 0x9e3779b97f4a7c15ULL;
}

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

class Alphabet {
 public:
  Alphabet(std::vector<std::string> symbols, int order_n)
      : symbols_(std::move(symbols)), order_n_(order_n) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must have at least one symbol");
    if (order_n_ < 1) throw std::invalid_argument("order n must be at least 1");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) throw std::invalid_argument("empty symbol name");
      for (std::size_t j = 0; j < i; ++j)
        if (symbols_[i] == symbols_[j])
          throw std::invalid_argument("duplicate symbol '" + symbols_[i] + "'");
    }
  }

  const std::vector<std::string>& symbols() const { return symbols_; }
  int order_n() const { return order_n_; }
  std::size_t size() const { return symbols_.size(); }

  std::optional<std::uint32_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  Letter letter(std::uint32_t symbol, std::uint32_t deriv = 0) const {
    if (symbol >= symbols_.size()) throw std::out_of_range("symbol index out of range");
    if (deriv > static_cast<std::uint32_t>(order_n_))
      throw std::out_of_range("derivative order " + std::to_string(deriv) + " exceeds n = " +
                              std::to_string(order_n_));
    return Letter{symbol, deriv};
  }

  Letter letter(std::string_view name, std::uint32_t deriv = 0) const {
    auto idx = index_of(name);
    if (!idx) throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
    return letter(*idx, deriv);
  }

  /// All letters of Δₙ X in ascending letter order (x^(n) < ... < x < y^(n) < ...).
  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (std::uint32_t s = 0; s < symbols_.size(); ++s)
      for (int d = order_n_; d >= 0; --d) out.push_back(Letter{s, static_cast<std::uint32_t>(d)});
    return out;
  }

  bool contains(const Letter& l) const {
    return l.symbol < symbols_.size() && l.deriv <= static_cast<std::uint32_t>(order_n_);
  }

  bool is_top(const Letter& l) const { return l.deriv == static_cast<std::uint32_t>(order_n_); }

  std::string render(const Letter& l) const {
    std::string s = symbols_.at(l.symbol);
    if (l.deriv == 0) return s;
    if (l.deriv <= 2) return s + std::string(l.deriv, '\'');
    return s + "^(" + std::to_string(l.deriv) + ")";
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
  int order_n_;
};

/// (number of letters plus brackets, number of brackets).
struct DegPair {
  std::size_t total = 0;
  std::size_t p_count = 0;

  friend auto operator<=>(const DegPair&, const DegPair&) = default;
  DegPair& operator+=(const DegPair& o) {
    total += o.total;
    p_count += o.p_count;
    return *this;
  }
};

class RBWord;

/// One indecomposable factor of a Rota-Baxter word: a letter or P[body].
class Atom {
 public:
  static Atom of(Letter l) {
    Atom a;
    a.letter_ = l;
    return a;
  }
  static inline Atom integral(RBWord body);

  bool is_letter() const { return !body_; }
  bool is_integral() const { return static_cast<bool>(body_); }
  const Letter& letter() const { return letter_; }
  const RBWord& body() const { return *body_; }
  const std::shared_ptr<const RBWord>& body_ptr() const { return body_; }

  inline DegPair deg() const;
  inline std::size_t hash() const;
  friend inline bool operator==(const Atom& a, const Atom& b);

 private:
  Letter letter_{};
  std::shared_ptr<const RBWord> body_;
};

/// Rota-Baxter word stored in standard form: a flat list of indecomposable
/// factors. Letter runs are maximal automatically; two integrals may never be
/// adjacent. The empty list is the unit 1.
class RBWord {
 public:
  RBWord() : RBWord(std::vector<Atom>{}, 0) {}

  static RBWord unit() { return RBWord(); }

  static RBWord from_atoms(std::vector<Atom> atoms) {
    for (std::size_t i = 1; i < atoms.size(); ++i)
      if (atoms[i - 1].is_integral() && atoms[i].is_integral())
        throw std::invalid_argument("adjacent integrals do not form a Rota-Baxter word");
    return RBWord(std::move(atoms), 0);
  }

  static RBWord of(Letter l) { return RBWord({Atom::of(l)}, 0); }

  static RBWord letters(const std::vector<Letter>& ls) {
    std::vector<Atom> atoms;
    atoms.reserve(ls.size());
    for (const auto& l : ls) atoms.push_back(Atom::of(l));
    return RBWord(std::move(atoms), 0);
  }

  static RBWord integral(RBWord body) { return RBWord({Atom::integral(std::move(body))}, 0); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t breadth() const { return atoms_.size(); }
  bool is_unit() const { return atoms_.empty(); }
  bool is_integral() const { return atoms_.size() == 1 && atoms_[0].is_integral(); }
  const RBWord& body() const { return atoms_.at(0).body(); }
  bool is_letter_word() const {
    return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.is_letter(); });
  }
  bool starts_with_integral() const { return !atoms_.empty() && atoms_.front().is_integral(); }
  bool ends_with_integral() const { return !atoms_.empty() && atoms_.back().is_integral(); }

  const DegPair& deg() const { return deg_; }
  std::size_t size() const { return deg_.total; }
  int depth() const { return depth_; }
  std::size_t hash() const { return hash_; }

  std::vector<Letter> letter_list() const {
    std::vector<Letter> out;
    for (const auto& a : atoms_)
      if (a.is_letter()) out.push_back(a.letter());
    return out;
  }

  /// Contiguous atoms [begin, end) as a word.
  RBWord slice(std::size_t begin, std::size_t end) const {
    return RBWord(std::vector<Atom>(atoms_.begin() + begin, atoms_.begin() + end), 0);
  }

  friend bool operator==(const RBWord& a, const RBWord& b) {
    if (&a == &b) return true;
    if (a.hash_ != b.hash_ || a.deg_ != b.deg_ || a.atoms_.size() != b.atoms_.size()) return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i)
      if (!(a.atoms_[i] == b.atoms_[i])) return false;
    return true;
  }

 private:
  RBWord(std::vector<Atom> atoms, int) : atoms_(std::move(atoms)) {
    hash_ = 0x51ed27;
    for (const auto& a : atoms_) {
      deg_ += a.deg();
      hash_mix(hash_, a.hash());
      if (a.is_integral()) depth_ = std::max(depth_, a.body().depth_ + 1);
    }
    hash_mix(hash_, atoms_.size());
  }

  std::vector<Atom> atoms_;
  DegPair deg_{};
  int depth_ = 0;
  std::size_t hash_ = 0;
};

inline Atom Atom::integral(RBWord body) {
  Atom a;
  a.body_ = std::make_shared<const RBWord>(std::move(body));
  return a;
}

inline DegPair Atom::deg() const {
  if (is_letter()) return DegPair{1, 0};
  DegPair d = body_->deg();
  d.total += 1;
  d.p_count += 1;
  return d;
}

inline std::size_t Atom::hash() const {
  if (is_letter()) return hash_letter(letter_);
  std::size_t h = 0x7f4a7c15;
  hash_mix(h, body_->hash());
  return h;
}

inline bool operator==(const Atom& a, const Atom& b) {
  if (a.is_letter() != b.is_letter()) return false;
  if (a.is_letter()) return a.letter_ == b.letter_;
  return a.body_ == b.body_ || *a.body_ == *b.body_;
}

struct RBWordHash {
  std::size_t operator()(const RBWord& w) const { return w.hash(); }
};

inline std::size_t breadth(const RBWord& w) { return w.breadth(); }
inline int depth(const RBWord& w) { return w.depth(); }

/// Plain concatenation; empty when the junction would put two integrals side by side.
inline std::optional<RBWord> try_concat(const RBWord& a, const RBWord& b) {
  if (a.ends_with_integral() && b.starts_with_integral()) return std::nullopt;
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return RBWord::from_atoms(std::move(atoms));
}

inline std::string render(const RBWord& w, const Alphabet& a);

inline void render_atoms(const std::vector<Atom>& atoms, const Alphabet& a, std::string& out) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += ' ';
    if (atoms[i].is_letter()) {
      out += a.render(atoms[i].letter());
    } else {
      out += "P[";
      if (atoms[i].body().is_unit())
        out += '1';
      else
        render_atoms(atoms[i].body().atoms(), a, out);
      out += ']';
    }
  }
}

inline std::string render(const RBWord& w, const Alphabet& a) {
  if (w.is_unit()) return "1";
  std::string out;
  render_atoms(w.atoms(), a, out);
  return out;
}

// ---------------------------------------------------------------------------
// Bracketed terms: the free operated monoid with one operator P. Adjacent
// brackets are allowed here.

class BracketedTerm;

struct BAtom {
  Letter letter{};
  std::shared_ptr<const BracketedTerm> inner;

  bool is_letter() const { return !inner; }
  bool is_bracket() const { return static_cast<bool>(inner); }
};

class BracketedTerm {
 public:
  BracketedTerm() = default;
  explicit BracketedTerm(std::vector<BAtom> atoms) : atoms_(std::move(atoms)) {}

  static BracketedTerm of(Letter l) { return BracketedTerm({BAtom{l, nullptr}}); }
  static BracketedTerm bracket(BracketedTerm inner) {
    return BracketedTerm({BAtom{{}, std::make_shared<const BracketedTerm>(std::move(inner))}});
  }

  const std::vector<BAtom>& atoms() const { return atoms_; }
  bool is_unit() const { return atoms_.empty(); }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& a : atoms_) n += a.is_letter() ? 1 : 1 + a.inner->size();
    return n;
  }

  std::size_t bracket_count() const {
    std::size_t n = 0;
    for (const auto& a : atoms_)
      if (a.is_bracket()) n += 1 + a.inner->bracket_count();
    return n;
  }

  /// True when no two brackets are adjacent at any nesting level.
  bool is_rb_word() const {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i].is_letter()) continue;
      if (i > 0 && atoms_[i - 1].is_bracket()) return false;
      if (!atoms_[i].inner->is_rb_word()) return false;
    }
    return true;
  }

  friend BracketedTerm operator*(const BracketedTerm& a, const BracketedTerm& b) {
    std::vector<BAtom> atoms = a.atoms_;
    atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
    return BracketedTerm(std::move(atoms));
  }

 private:
  std::vector<BAtom> atoms_;
};

inline std::strong_ordering structural_cmp(const BracketedTerm& a, const BracketedTerm& b);

inline std::strong_ordering structural_cmp(const BAtom& a, const BAtom& b) {
  if (a.is_letter() != b.is_letter()) return a.is_letter() ? std::strong_ordering::less
                                                             : std::strong_ordering::greater;
  if (a.is_letter()) {
    if (auto c = a.letter.symbol <=> b.letter.symbol; c != 0) return c;
    return a.letter.deriv <=> b.letter.deriv;
  }
  if (a.inner == b.inner) return std::strong_ordering::equal;
  return structural_cmp(*a.inner, *b.inner);
}

inline std::strong_ordering structural_cmp(const BracketedTerm& a, const BracketedTerm& b) {
  const auto& x = a.atoms();
  const auto& y = b.atoms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (auto c = structural_cmp(x[i], y[i]); c != 0) return c;
  return x.size() <=> y.size();
}

inline bool operator==(const BracketedTerm& a, const BracketedTerm& b) {
  return structural_cmp(a, b) == 0;
}

struct StructuralLess {
  bool operator()(const BracketedTerm& a, const BracketedTerm& b) const {
    return structural_cmp(a, b) < 0;
  }
};

inline BracketedTerm embed(const RBWord& w) {
  std::vector<BAtom> atoms;
  atoms.reserve(w.atoms().size());
  for (const auto& a : w.atoms()) {
    if (a.is_letter())
      atoms.push_back(BAtom{a.letter(), nullptr});
    else
      atoms.push_back(BAtom{{}, std::make_shared<const BracketedTerm>(embed(a.body()))});
  }
  return BracketedTerm(std::move(atoms));
}

/// The RBWord a bracketed term already is, if it has no adjacent brackets.
inline std::optional<RBWord> as_rbword(const BracketedTerm& t) {
  std::vector<Atom> atoms;
  atoms.reserve(t.atoms().size());
  for (std::size_t i = 0; i < t.atoms().size(); ++i) {
    const auto& a = t.atoms()[i];
    if (a.is_letter()) {
      atoms.push_back(Atom::of(a.letter));
      continue;
    }
    if (i > 0 && t.atoms()[i - 1].is_bracket()) return std::nullopt;
    auto inner = as_rbword(*a.inner);
    if (!inner) return std::nullopt;
    atoms.push_back(Atom::integral(std::move(*inner)));
  }
  return RBWord::from_atoms(std::move(atoms));
}

inline void render_batoms(const BracketedTerm& t, const Alphabet& a, std::string& out) {
  for (std::size_t i = 0; i < t.atoms().size(); ++i) {
    const auto& at = t.atoms()[i];
    if (at.is_letter()) {
      if (i > 0) out += ' ';
      out += a.render(at.letter);
    } else {
      if (i > 0 && t.atoms()[i - 1].is_letter()) out += ' ';
      out += "P[";
      if (at.inner->is_unit())
        out += '1';
      else
        render_batoms(*at.inner, a, out);
      out += ']';
    }
  }
}

/// Adjacent brackets are printed without a space: "P[x]P[y]".
inline std::string render(const BracketedTerm& t, const Alphabet& a) {
  if (t.is_unit()) return "1";
  std::string out;
  render_batoms(t, a, out);
  return out;
}

}  // namespace intdiff

template <>
struct std::hash<intdiff::RBWord> {
  std::size_t operator()(const intdiff::RBWord& w) const noexcept { return w.hash(); }
};
