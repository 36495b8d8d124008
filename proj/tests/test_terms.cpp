#include "support.hpp"

using namespace intdiff;
using testing_support::word;

namespace {
const Alphabet xyz({"x", "y", "z"}, 2);
}

TEST(Alphabet, RejectsBadConfigurations) {
  EXPECT_THROW(Alphabet({}, 1), std::invalid_argument);
  EXPECT_THROW(Alphabet({"x"}, 0), std::invalid_argument);
  EXPECT_THROW(Alphabet({"x", "x"}, 1), std::invalid_argument);
  EXPECT_THROW(Alphabet({""}, 1), std::invalid_argument);
}

TEST(Alphabet, LetterBounds) {
  EXPECT_NO_THROW(xyz.letter("x", 2));
  EXPECT_THROW(xyz.letter("x", 3), std::out_of_range);
  EXPECT_THROW(xyz.letter(7), std::out_of_range);
  EXPECT_EQ(xyz.letters().size(), 9u);
}

TEST(Alphabet, LetterRendering) {
  Alphabet big({"x"}, 5);
  EXPECT_EQ(big.render(big.letter("x", 0)), "x");
  EXPECT_EQ(big.render(big.letter("x", 2)), "x''");
  EXPECT_EQ(big.render(big.letter("x", 3)), "x^(3)");
}

TEST(RBWord, Breadth) {
  EXPECT_EQ(breadth(RBWord::unit()), 0u);
  EXPECT_EQ(breadth(word("x P[y]", xyz)), 2u);
  EXPECT_EQ(breadth(word("x y P[z] x", xyz)), 4u);
}

TEST(RBWord, Depth) {
  EXPECT_EQ(depth(word("x y", xyz)), 0);
  EXPECT_EQ(depth(word("P[x]", xyz)), 1);
  EXPECT_EQ(depth(word("P[x P[y]]", xyz)), 2);
  EXPECT_EQ(depth(RBWord::unit()), 0);
}

TEST(RBWord, DegreePair) {
  auto w = word("x P[y' P[1]]", xyz);
  EXPECT_EQ(w.deg().total, 4u);
  EXPECT_EQ(w.deg().p_count, 2u);
  EXPECT_EQ(RBWord::unit().deg().total, 0u);
}

TEST(RBWord, AdjacentIntegralsRejected) {
  auto px = Atom::integral(RBWord::of(xyz.letter("x")));
  EXPECT_THROW(RBWord::from_atoms({px, px}), std::invalid_argument);
  EXPECT_NO_THROW(RBWord::from_atoms({px, Atom::of(xyz.letter("y")), px}));
}

TEST(RBWord, ConcatenationOnlyWithoutAdjacentIntegrals) {
  auto a = word("x P[y]", xyz), b = word("P[z]", xyz), c = word("z", xyz);
  EXPECT_FALSE(try_concat(a, b).has_value());
  ASSERT_TRUE(try_concat(a, c).has_value());
  EXPECT_EQ(*try_concat(a, c), word("x P[y] z", xyz));
  EXPECT_EQ(*try_concat(RBWord::unit(), b), b);
}

TEST(RBWord, EqualityAndHash) {
  auto a = word("x P[y]", xyz);
  auto b = RBWord::from_atoms({Atom::of(xyz.letter("x")), Atom::integral(RBWord::of(xyz.letter("y")))});
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::hash<RBWord>{}(a), std::hash<RBWord>{}(b));
  EXPECT_FALSE(a == word("x P[y']", xyz));
  EXPECT_EQ(RBWord::unit(), RBWord::from_atoms({}));
}

TEST(RBWord, Rendering) {
  EXPECT_EQ(render(RBWord::unit(), xyz), "1");
  EXPECT_EQ(render(word("P[1]", xyz), xyz), "P[1]");
  EXPECT_EQ(render(word("x' P[y P[1]] z''", xyz), xyz), "x' P[y P[1]] z''");
}

TEST(BracketedTerm, AdjacentBracketsAreNotWords) {
  auto px = BracketedTerm::bracket(BracketedTerm::of(xyz.letter("x")));
  auto py = BracketedTerm::bracket(BracketedTerm::of(xyz.letter("y")));
  auto t = px * py;
  EXPECT_FALSE(t.is_rb_word());
  EXPECT_FALSE(as_rbword(t).has_value());
  EXPECT_EQ(render(t, xyz), "P[x]P[y]");
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(t.bracket_count(), 2u);
  auto ok = px * BracketedTerm::of(xyz.letter("z")) * py;
  ASSERT_TRUE(as_rbword(ok).has_value());
  EXPECT_EQ(*as_rbword(ok), word("P[x] z P[y]", xyz));
}

TEST(BracketedTerm, EmbedRoundTrip) {
  for (auto s : {"1", "x", "P[1]", "x P[y P[z]] x'"}) {
    auto w = word(s, xyz);
    EXPECT_EQ(*as_rbword(embed(w)), w) << s;
  }
}

TEST(BracketedTerm, NestedAdjacencyDetected) {
  auto px = BracketedTerm::bracket(BracketedTerm::of(xyz.letter("x")));
  auto t = BracketedTerm::of(xyz.letter("z")) * BracketedTerm::bracket(px * px);
  EXPECT_FALSE(as_rbword(t).has_value());
}
