#pragma once

// One-hole contexts, placements of subwords, and the classification of
// placement pairs with explicit witnesses.

#include "intdiff/terms.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace intdiff {

struct ContextFrame {
  std::vector<Atom> left;
  std::vector<Atom> right;
};

/// A word with exactly one hole, stored as a zipper: frames_[0] is the top
/// level, and each later frame sits inside the bracket between the previous
/// frame's left and right atoms. The hole lives in the last frame. A positive
/// hole_deriv ℓ means the hole is d^ℓ(⋆).
class StarContext {
 public:
  StarContext() : frames_(1) {}

  explicit StarContext(std::vector<ContextFrame> frames, int hole_deriv = 0)
      : frames_(std::move(frames)), hole_deriv_(hole_deriv) {
    if (frames_.empty()) throw std::invalid_argument("context needs at least one frame");
    if (hole_deriv_ < 0) throw std::invalid_argument("negative hole derivative");
    for (std::size_t i = 0; i < frames_.size(); ++i) {
      check_run(frames_[i].left);
      check_run(frames_[i].right);
      if (i + 1 < frames_.size()) {
        if (!frames_[i].left.empty() && frames_[i].left.back().is_integral())
          throw std::invalid_argument("integral adjacent to the bracket around the hole");
        if (!frames_[i].right.empty() && frames_[i].right.front().is_integral())
          throw std::invalid_argument("integral adjacent to the bracket around the hole");
      }
    }
  }

  static StarContext hole() { return StarContext(); }

  const std::vector<ContextFrame>& frames() const { return frames_; }
  int hole_deriv() const { return hole_deriv_; }
  bool is_type_one() const { return hole_deriv_ > 0; }
  bool is_root() const {
    return frames_.size() == 1 && frames_[0].left.empty() && frames_[0].right.empty();
  }

  StarContext with_hole_deriv(int ell) const {
    StarContext c = *this;
    if (ell < 0) throw std::invalid_argument("negative hole derivative");
    c.hole_deriv_ = ell;
    return c;
  }

  int dep_star() const { return static_cast<int>(frames_.size()) - 1; }

  /// Size with the hole counted as one letter.
  std::size_t size() const {
    std::size_t n = 1 + frames_.size() - 1;
    for (const auto& f : frames_) {
      for (const auto& a : f.left) n += a.deg().total;
      for (const auto& a : f.right) n += a.deg().total;
    }
    return n;
  }

  /// Indices of the brackets enclosing the hole, outermost first.
  std::vector<std::size_t> path() const {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i + 1 < frames_.size(); ++i) p.push_back(frames_[i].left.size());
    return p;
  }

  /// Index of the hole among the atoms of the innermost level.
  std::size_t hole_index() const { return frames_.back().left.size(); }

  /// Splices the term into the hole. The result may fail to be a
  /// Rota-Baxter word; the hole derivative is not applied here.
  BracketedTerm subst(const BracketedTerm& u) const {
    std::vector<BAtom> inner = to_batoms(frames_.back().left);
    inner.insert(inner.end(), u.atoms().begin(), u.atoms().end());
    auto tail = to_batoms(frames_.back().right);
    inner.insert(inner.end(), tail.begin(), tail.end());
    BracketedTerm cur(std::move(inner));
    for (std::size_t i = frames_.size() - 1; i-- > 0;) {
      std::vector<BAtom> level = to_batoms(frames_[i].left);
      level.push_back(BAtom{{}, std::make_shared<const BracketedTerm>(std::move(cur))});
      auto r = to_batoms(frames_[i].right);
      level.insert(level.end(), r.begin(), r.end());
      cur = BracketedTerm(std::move(level));
    }
    return cur;
  }

  BracketedTerm subst(const RBWord& u) const {
    if (hole_deriv_ != 0)
      throw std::invalid_argument("subst on a type I context; apply the derivative first");
    return subst(embed(u));
  }

  /// The word obtained by plugging u in, when no reduction is needed.
  std::optional<RBWord> subst_word(const RBWord& u) const { return as_rbword(subst(u)); }

  /// this|_inner: the context whose hole is inner's hole.
  StarContext compose(const StarContext& inner) const {
    if (hole_deriv_ != 0) throw std::invalid_argument("cannot compose into a type I hole");
    std::vector<ContextFrame> frames(frames_.begin(), frames_.end() - 1);
    ContextFrame merged;
    merged.left = frames_.back().left;
    merged.left.insert(merged.left.end(), inner.frames_[0].left.begin(), inner.frames_[0].left.end());
    merged.right = inner.frames_[0].right;
    merged.right.insert(merged.right.end(), frames_.back().right.begin(), frames_.back().right.end());
    frames.push_back(std::move(merged));
    frames.insert(frames.end(), inner.frames_.begin() + 1, inner.frames_.end());
    return StarContext(std::move(frames), inner.hole_deriv_);
  }

  std::string render(const Alphabet& a) const {
    std::string h = "⋆";
    if (hole_deriv_ == 1) h = "d(⋆)";
    if (hole_deriv_ > 1) h = "d^" + std::to_string(hole_deriv_) + "(⋆)";
    std::string cur = join(frames_.back().left, a, h, frames_.back().right);
    for (std::size_t i = frames_.size() - 1; i-- > 0;)
      cur = join(frames_[i].left, a, "P[" + cur + "]", frames_[i].right);
    return cur;
  }

  friend bool operator==(const StarContext& x, const StarContext& y) {
    if (x.hole_deriv_ != y.hole_deriv_ || x.frames_.size() != y.frames_.size()) return false;
    for (std::size_t i = 0; i < x.frames_.size(); ++i)
      if (x.frames_[i].left != y.frames_[i].left || x.frames_[i].right != y.frames_[i].right)
        return false;
    return true;
  }

 private:
  static void check_run(const std::vector<Atom>& atoms) {
    for (std::size_t i = 1; i < atoms.size(); ++i)
      if (atoms[i - 1].is_integral() && atoms[i].is_integral())
        throw std::invalid_argument("adjacent integrals in context");
  }

  static std::vector<BAtom> to_batoms(const std::vector<Atom>& atoms) {
    return embed(RBWord::from_atoms(atoms)).atoms();
  }

  static std::string join(const std::vector<Atom>& l, const Alphabet& a, const std::string& mid,
                          const std::vector<Atom>& r) {
    std::string out;
    if (!l.empty()) out = intdiff::render(RBWord::from_atoms(l), a) + " ";
    out += mid;
    if (!r.empty()) out += " " + intdiff::render(RBWord::from_atoms(r), a);
    return out;
  }

  std::vector<ContextFrame> frames_;
  int hole_deriv_ = 0;
};

inline int dep_star(const StarContext& q) { return q.dep_star(); }

inline BracketedTerm subst(const StarContext& q, const RBWord& u) { return q.subst(u); }

/// Builds the context whose hole replaces atoms [begin, end) of the level
/// reached by following the bracket indices in path.
inline StarContext context_at(const RBWord& w, const std::vector<std::size_t>& path,
                              std::size_t begin, std::size_t end) {
  std::vector<ContextFrame> frames;
  const RBWord* cur = &w;
  for (std::size_t idx : path) {
    const auto& atoms = cur->atoms();
    if (idx >= atoms.size() || !atoms[idx].is_integral())
      throw std::invalid_argument("path does not lead through an integral");
    frames.push_back(ContextFrame{{atoms.begin(), atoms.begin() + idx},
                                  {atoms.begin() + idx + 1, atoms.end()}});
    cur = &atoms[idx].body();
  }
  const auto& atoms = cur->atoms();
  if (begin > end || end > atoms.size()) throw std::invalid_argument("interval out of range");
  frames.push_back(ContextFrame{{atoms.begin(), atoms.begin() + begin},
                                {atoms.begin() + end, atoms.end()}});
  return StarContext(std::move(frames));
}

/// The level of w reached by following the path.
inline const RBWord& level_at(const RBWord& w, const std::vector<std::size_t>& path) {
  const RBWord* cur = &w;
  for (std::size_t idx : path) cur = &cur->atoms().at(idx).body();
  return *cur;
}

struct Placement {
  RBWord subword;
  StarContext context;

  std::vector<std::size_t> path() const { return context.path(); }
  std::size_t begin() const { return context.hole_index(); }
  std::size_t end() const { return begin() + subword.breadth(); }
};

/// Every nonunit contiguous factor run at every nesting level, outermost
/// levels first and left to right within a level.
inline std::vector<Placement> placements(const RBWord& w) {
  std::vector<Placement> out;
  struct Item {
    std::vector<std::size_t> path;
    const RBWord* level;
  };
  std::vector<Item> frontier{{{}, &w}};
  while (!frontier.empty()) {
    std::vector<Item> next;
    for (const auto& item : frontier) {
      const auto& atoms = item.level->atoms();
      for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j <= atoms.size(); ++j)
          out.push_back(Placement{item.level->slice(i, j), context_at(w, item.path, i, j)});
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!atoms[i].is_integral()) continue;
        auto p = item.path;
        p.push_back(i);
        next.push_back(Item{std::move(p), &atoms[i].body()});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Placements whose subword is a single integral factor, in the same order.
inline std::vector<Placement> integral_placements(const RBWord& w) {
  std::vector<Placement> out;
  for (auto& p : placements(w))
    if (p.subword.is_integral()) out.push_back(std::move(p));
  return out;
}

enum class PairRelation { Separated, Nested, Intersecting };

inline const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::Separated: return "Separated";
    case PairRelation::Nested: return "Nested";
    case PairRelation::Intersecting: return "Intersecting";
  }
  return "?";
}

inline bool reconstructs(const Placement& p, const RBWord& w) {
  return p.context.hole_deriv() == 0 && p.context.subst(p.subword) == embed(w);
}

inline bool is_proper_prefix(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline PairRelation classify_pair(const Placement& p1, const Placement& p2, const RBWord& w) {
  if (!reconstructs(p1, w) || !reconstructs(p2, w))
    throw std::invalid_argument("placement does not reconstruct the ambient word");
  auto a = p1.path(), b = p2.path();
  std::size_t b1 = p1.begin(), e1 = p1.end(), b2 = p2.begin(), e2 = p2.end();
  if (a == b) {
    if (e1 <= b2 || e2 <= b1) return PairRelation::Separated;
    if ((b1 <= b2 && e2 <= e1) || (b2 <= b1 && e1 <= e2)) return PairRelation::Nested;
    return PairRelation::Intersecting;
  }
  if (is_proper_prefix(a, b)) {
    std::size_t idx = b[a.size()];
    return (b1 <= idx && idx < e1) ? PairRelation::Nested : PairRelation::Separated;
  }
  if (is_proper_prefix(b, a)) {
    std::size_t idx = a[b.size()];
    return (b2 <= idx && idx < e2) ? PairRelation::Nested : PairRelation::Separated;
  }
  return PairRelation::Separated;
}

// ---------------------------------------------------------------------------
// Terms with numbered holes, used to state and check pair witnesses.

struct HoleTerm;

struct HAtom {
  enum class Kind { Letter, Hole, Bracket } kind = Kind::Letter;
  Letter letter{};
  int hole = 0;
  std::shared_ptr<const HoleTerm> inner;
};

struct HoleTerm {
  std::vector<HAtom> atoms;
};

inline bool operator==(const HoleTerm& x, const HoleTerm& y);

inline bool operator==(const HAtom& x, const HAtom& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case HAtom::Kind::Letter: return x.letter == y.letter;
    case HAtom::Kind::Hole: return x.hole == y.hole;
    case HAtom::Kind::Bracket: return *x.inner == *y.inner;
  }
  return false;
}

inline bool operator==(const HoleTerm& x, const HoleTerm& y) { return x.atoms == y.atoms; }

inline HoleTerm hole_term(const std::vector<Atom>& atoms) {
  HoleTerm t;
  for (const auto& a : atoms) {
    if (a.is_letter()) {
      t.atoms.push_back(HAtom{HAtom::Kind::Letter, a.letter(), 0, nullptr});
    } else {
      t.atoms.push_back(HAtom{HAtom::Kind::Bracket, {}, 0,
                              std::make_shared<const HoleTerm>(hole_term(a.body().atoms()))});
    }
  }
  return t;
}

inline HoleTerm hole_term(const RBWord& w) { return hole_term(w.atoms()); }

inline HoleTerm hole_only(int id) { return HoleTerm{{HAtom{HAtom::Kind::Hole, {}, id, nullptr}}}; }

inline HoleTerm hole_term(const StarContext& q, int id) {
  HoleTerm cur = hole_term(q.frames().back().left);
  cur.atoms.push_back(HAtom{HAtom::Kind::Hole, {}, id, nullptr});
  auto r = hole_term(q.frames().back().right);
  cur.atoms.insert(cur.atoms.end(), r.atoms.begin(), r.atoms.end());
  for (std::size_t i = q.frames().size() - 1; i-- > 0;) {
    HoleTerm level = hole_term(q.frames()[i].left);
    level.atoms.push_back(
        HAtom{HAtom::Kind::Bracket, {}, 0, std::make_shared<const HoleTerm>(std::move(cur))});
    auto rr = hole_term(q.frames()[i].right);
    level.atoms.insert(level.atoms.end(), rr.atoms.begin(), rr.atoms.end());
    cur = std::move(level);
  }
  return cur;
}

inline HoleTerm concat(HoleTerm a, const HoleTerm& b) {
  a.atoms.insert(a.atoms.end(), b.atoms.begin(), b.atoms.end());
  return a;
}

/// Replaces every occurrence of hole id by the atoms of repl.
inline HoleTerm plug(const HoleTerm& t, int id, const HoleTerm& repl) {
  HoleTerm out;
  for (const auto& a : t.atoms) {
    if (a.kind == HAtom::Kind::Hole && a.hole == id) {
      out.atoms.insert(out.atoms.end(), repl.atoms.begin(), repl.atoms.end());
    } else if (a.kind == HAtom::Kind::Bracket) {
      out.atoms.push_back(HAtom{HAtom::Kind::Bracket, {}, 0,
                                std::make_shared<const HoleTerm>(plug(*a.inner, id, repl))});
    } else {
      out.atoms.push_back(a);
    }
  }
  return out;
}

/// Replaces atoms [begin, end) at the level reached by path with hole id.
inline HoleTerm carve(const HoleTerm& t, const std::vector<std::size_t>& path, std::size_t depth,
                      std::size_t begin, std::size_t end, int id) {
  HoleTerm out;
  if (depth == path.size()) {
    out.atoms.assign(t.atoms.begin(), t.atoms.begin() + begin);
    out.atoms.push_back(HAtom{HAtom::Kind::Hole, {}, id, nullptr});
    out.atoms.insert(out.atoms.end(), t.atoms.begin() + end, t.atoms.end());
    return out;
  }
  out = t;
  auto& a = out.atoms.at(path[depth]);
  a.inner = std::make_shared<const HoleTerm>(carve(*a.inner, path, depth + 1, begin, end, id));
  return out;
}

inline HoleTerm carve(const HoleTerm& t, const std::vector<std::size_t>& path, std::size_t begin,
                      std::size_t end, int id) {
  return carve(t, path, 0, begin, end, id);
}

struct SeparatedWitness {
  HoleTerm q;  // holes 1 and 2
  RBWord a, b;
};

struct NestedWitness {
  HoleTerm q;  // hole 1
  bool first_inside_second = false;
};

struct IntersectingWitness {
  HoleTerm q;  // hole 1
  RBWord a, b, c;
  bool first_on_left = true;
};

/// A two-hole context p with q1 = p|_{⋆, u2} and q2 = p|_{u1, ⋆}.
inline std::optional<SeparatedWitness> separated_witness(const Placement& p1, const Placement& p2,
                                                         const RBWord& w) {
  auto a = p1.path(), b = p2.path();
  std::size_t b1 = p1.begin(), e1 = p1.end(), b2 = p2.begin(), e2 = p2.end();
  if (a == b && !(e1 <= b2 || e2 <= b1)) return std::nullopt;
  if (is_proper_prefix(a, b) && b1 <= b[a.size()] && b[a.size()] < e1) return std::nullopt;
  if (is_proper_prefix(b, a) && b2 <= a[b.size()] && a[b.size()] < e2) return std::nullopt;

  HoleTerm q = hole_term(w);
  bool second_first = a == b ? b2 >= e1 : b.size() >= a.size();
  if (second_first) {
    q = carve(q, b, b2, e2, 2);
    q = carve(q, a, b1, e1, 1);
  } else {
    q = carve(q, a, b1, e1, 1);
    q = carve(q, b, b2, e2, 2);
  }
  SeparatedWitness wit{q, p1.subword, p2.subword};
  if (!(plug(q, 2, hole_term(p2.subword)) == hole_term(p1.context, 1))) return std::nullopt;
  if (!(plug(q, 1, hole_term(p1.subword)) == hole_term(p2.context, 2))) return std::nullopt;
  if (!(plug(plug(q, 1, hole_term(p1.subword)), 2, hole_term(p2.subword)) == hole_term(w)))
    return std::nullopt;
  return wit;
}

namespace detail {

/// When inner's occurrence lies inside outer's subword, the context locating
/// it relative to that subword.
inline std::optional<HoleTerm> relative_context(const Placement& outer, const Placement& inner) {
  auto a = outer.path(), b = inner.path();
  std::size_t bo = outer.begin(), eo = outer.end();
  std::vector<std::size_t> rel;
  std::size_t bi = inner.begin(), ei = inner.end();
  if (a == b) {
    if (!(bo <= bi && ei <= eo)) return std::nullopt;
    bi -= bo;
    ei -= bo;
  } else if (is_proper_prefix(a, b)) {
    std::size_t idx = b[a.size()];
    if (!(bo <= idx && idx < eo)) return std::nullopt;
    rel.assign(b.begin() + a.size(), b.end());
    rel[0] -= bo;
  } else {
    return std::nullopt;
  }
  return carve(hole_term(outer.subword), rel, bi, ei, 1);
}

}  // namespace detail

/// A context q with q2 = q1|_q or q1 = q2|_q.
inline std::optional<NestedWitness> nested_witness(const Placement& p1, const Placement& p2,
                                                   const RBWord& w) {
  (void)w;
  if (auto q = detail::relative_context(p1, p2)) {
    if (plug(hole_term(p1.context, 1), 1, *q) == hole_term(p2.context, 1))
      return NestedWitness{*q, false};
  }
  if (auto q = detail::relative_context(p2, p1)) {
    if (plug(hole_term(p2.context, 1), 1, *q) == hole_term(p1.context, 1))
      return NestedWitness{*q, true};
  }
  return std::nullopt;
}

/// A context q and nonunit a, b, c with u1 = ab, u2 = bc, q1 = q|_{⋆c},
/// q2 = q|_{a⋆} (or the mirror with the roles exchanged).
inline std::optional<IntersectingWitness> intersecting_witness(const Placement& p1,
                                                               const Placement& p2,
                                                               const RBWord& w) {
  auto a = p1.path(), b = p2.path();
  if (a != b) return std::nullopt;
  std::size_t b1 = p1.begin(), e1 = p1.end(), b2 = p2.begin(), e2 = p2.end();
  const RBWord& level = level_at(w, a);
  auto attempt = [&](const Placement& left, const Placement& right, std::size_t bl, std::size_t el,
                     std::size_t br, std::size_t er,
                     bool first_left) -> std::optional<IntersectingWitness> {
    if (!(bl < br && br < el && el < er)) return std::nullopt;
    RBWord x = level.slice(bl, br), y = level.slice(br, el), z = level.slice(el, er);
    HoleTerm q = carve(hole_term(w), a, bl, er, 1);
    HoleTerm star = hole_only(1);
    if (!(hole_term(left.context, 1) == plug(q, 1, concat(star, hole_term(z))))) return std::nullopt;
    if (!(hole_term(right.context, 1) == plug(q, 1, concat(hole_term(x), star)))) return std::nullopt;
    if (!(plug(q, 1, hole_term(level.slice(bl, er))) == hole_term(w))) return std::nullopt;
    return IntersectingWitness{q, x, y, z, first_left};
  };
  if (auto r = attempt(p1, p2, b1, e1, b2, e2, true)) return r;
  return attempt(p2, p1, b2, e2, b1, e1, false);
}

}  // namespace intdiff
