#include "support.hpp"

using namespace intdiff;
using testing_support::poly;
using testing_support::word;

namespace {

const Alphabet xy({"x", "y"}, 2);

Generator gen1(const std::string& u, const std::string& v, const Alphabet& a) {
  return Generator{GeneratorKind::Phi1, word(u, a), word(v, a)};
}
Generator gen2(const std::string& u, const std::string& v, const Alphabet& a) {
  return Generator{GeneratorKind::Phi2, word(u, a), word(v, a)};
}

bool all_irreducible_functional(const Poly& p, const Alphabet& a) {
  for (const auto& [w, c] : p)
    if (!is_irreducible(w, a) || !is_functional_monomial(w)) return false;
  return true;
}

}  // namespace

TEST(NormalForm, GeneratorsVanish) {
  EXPECT_TRUE(normal_form(phi1(word("x", xy), word("y", xy), xy), xy).is_zero());
  EXPECT_TRUE(normal_form(phi2(word("x", xy), word("y", xy), xy), xy).is_zero());
  EXPECT_TRUE(normal_form(Poly(), xy).is_zero());
}

TEST(NormalForm, OneStep) {
  Poly nf = normal_form(poly("P[x' P[y]]", xy), xy);
  EXPECT_EQ(nf, poly("x P[y] - P[x y] - λ P[x' y]", xy));
  for (const auto& [w, c] : nf) EXPECT_TRUE(is_irreducible(w, xy)) << render(w, xy);
  EXPECT_EQ(render(nf, xy), "x P[y] - P[x y] - λ P[x' y]");
}

TEST(NormalForm, IrreducibleIsFixed) {
  EXPECT_EQ(normal_form(poly("x P[y]", xy), xy), poly("x P[y]", xy));
  EXPECT_EQ(normal_form(poly("3/2 + λ P[1]", xy), xy), poly("3/2 + λ P[1]", xy));
}

TEST(NormalForm, TraceRecordsEachStep) {
  auto tr = normal_form_trace(poly("P[x' P[y]]", xy), xy);
  ASSERT_EQ(tr.steps.size(), 1u);
  EXPECT_EQ(tr.steps[0].generator.render(xy), "Phi1(x,y)");
  EXPECT_EQ(tr.steps[0].tag, LeadTag::Case1Phi1);
  EXPECT_TRUE(tr.steps[0].placement.context.is_root());
  EXPECT_EQ(tr.result, normal_form(poly("P[x' P[y]]", xy), xy));
}

TEST(NormalForm, NestedRedexInsideContext) {
  Alphabet xyz({"x", "y", "z"}, 2);
  Poly p = poly("z P[x' P[y]]", xyz);
  EXPECT_EQ(normal_form(p, xyz), poly("z x P[y] - z P[x y] - λ z P[x' y]", xyz));
}

TEST(NormalForm, EveryStrategyEndsIrreducible) {
  std::mt19937_64 rng(3);
  Alphabet x1({"x"}, 1);
  for (int i = 0; i < 40; ++i) {
    Poly p = testing_support::random_poly(x1, rng, 3, 4);
    NfOptions inner;
    inner.strategy = NfStrategy::GreatestInnermost;
    NfOptions rnd;
    rnd.strategy = NfStrategy::RandomChoice;
    rnd.seed = i;
    for (const auto& opt : {NfOptions{}, inner, rnd})
      for (const auto& [w, c] : normal_form(p, x1, opt)) EXPECT_TRUE(is_irreducible(w, x1)) << render(p, x1);
  }
}

TEST(NormalForm, StrategiesCanDisagree) {
  // two first-kind generators share this leading word once x'' is a constant
  Alphabet x2({"x"}, 2);
  Poly p = poly("P[x'' x'' P[1]]", x2);
  NfOptions inner;
  inner.strategy = NfStrategy::GreatestInnermost;
  Poly a = normal_form(p, x2), b = normal_form(p, x2, inner);
  EXPECT_EQ(a, poly("x'' x' P[1] - x'' P[x'] - λ x'' x'' P[1]", x2));
  EXPECT_EQ(b, poly("x'' x'' P[P[1]] + 1/2 λ x'' x'' P[1] - 1/2 λ P[1] x'' x''", x2));
  EXPECT_NE(a, b);
}

TEST(NormalForm, BudgetExhaustion) {
  NfOptions opt;
  opt.step_budget = 0;
  auto r = reduce(poly("P[x' P[y]]", xy), xy, opt);
  EXPECT_EQ(r.outcome, ReductionOutcome::BudgetExhausted);
  EXPECT_THROW(normal_form(poly("P[x' P[y]]", xy), xy, opt), std::runtime_error);
}

TEST(NormalForm, BoundBlocksReduction) {
  NfOptions opt;
  opt.bound = word("x", xy);
  auto r = reduce(poly("P[x' P[y]]", xy), xy, opt);
  EXPECT_EQ(r.outcome, ReductionOutcome::Blocked);
  EXPECT_EQ(r.result, poly("P[x' P[y]]", xy));
}

TEST(Triviality, Zero) {
  EXPECT_TRUE(is_trivial_mod(Poly(), word("x", xy), xy));
  EXPECT_TRUE(is_trivial_mod(Poly(), xy));
}

TEST(Triviality, MonomialAtOrAboveBoundIsNotTrivial) {
  auto w = word("P[x' P[y]]", xy);
  auto r = triviality_mod(phi1(word("x", xy), word("y", xy), xy), w, xy);
  EXPECT_EQ(r.status, Triviality::NotTrivial);
  EXPECT_TRUE(is_trivial_mod(phi1(word("x", xy), word("y", xy), xy), xy));
}

TEST(Triviality, MultiplicationIdentity) {
  Alphabet xyz({"x", "y", "z"}, 2);
  auto u = word("x", xyz), v = word("y", xyz), w = word("z", xyz);
  Poly lhs = diamond(phi1(u, v, xyz), Poly(RBWord::integral(w)));
  Poly pv = Poly(RBWord::integral(v)), pw = Poly(RBWord::integral(w));
  Poly rhs = integral(diamond(phi1(u, v, xyz), Poly(w)));
  rhs += phi1(Poly(u), diamond(pv, Poly(w)), xyz);
  rhs += phi1(Poly(u), diamond(Poly(v), pw), xyz);
  rhs.add_scaled(phi1(Poly(u), diamond(Poly(v), Poly(w)), xyz), LambdaPoly::lambda());
  EXPECT_EQ(lhs, rhs);
  EXPECT_TRUE(is_trivial_mod(lhs, xyz));
}

TEST(Compositions, NoIntersections) {
  Alphabet x1({"x"}, 1);
  auto ws = enumerate_rbwords(x1, 2);
  std::vector<Generator> gens;
  for (auto& u : ws)
    for (auto& v : ws)
      for (auto k : {GeneratorKind::Phi1, GeneratorKind::Phi2})
        if (!expand(Generator{k, u, v}, x1).is_zero()) gens.push_back(Generator{k, u, v});
  std::size_t found = 0;
  for (auto& f : gens)
    for (auto& g : gens)
      for (auto& c : compositions(f, g, x1)) found += c.kind == CompositionKind::Intersection;
  EXPECT_EQ(found, 0u);
}

TEST(Compositions, SelfInclusionIsZero) {
  auto f = gen1("x", "y", xy);
  auto cs = compositions(f, f, xy);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].kind, CompositionKind::Inclusion);
  EXPECT_TRUE(cs[0].context->is_root());
  EXPECT_TRUE(cs[0].value.is_zero());
}

TEST(Compositions, FirstKindAroundSecondKind) {
  auto g = gen2("x", "y", xy);
  Poly G = expand(g, xy);
  auto f = Generator{GeneratorKind::Phi1, word("x", xy), leading_monomial(G)};
  auto cs = compositions(f, g, xy);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].kind, CompositionKind::Inclusion);
  EXPECT_EQ(cs[0].context->render(xy), "P[x' P[⋆]]");
  const RBWord& w = cs[0].ambiguity;

  // explicit certificate: each summand is q|_s for a generator s with q|_s̄ below w
  const LambdaPoly lam = LambdaPoly::lambda();
  Poly u = poly("x", xy), du = poly("x'", xy);
  std::vector<Poly> parts = {-diamond(u, integral(G)),
                             integral(diamond(u, G)),
                             integral(diamond(du, G)) * lam,
                             phi1(u, poly("P[x] y", xy), xy),
                             -phi1(u, poly("P[x y]", xy), xy),
                             -phi1(u, poly("P[x y']", xy), xy) * lam};
  Poly sum;
  for (const auto& p : parts) {
    EXPECT_TRUE(cmp_word(leading_monomial(p), w) < 0) << render(p, xy);
    sum += p;
  }
  EXPECT_EQ(sum, cs[0].value);

  // reduction cannot confirm it: the λ P(x' g) summand leaves a residue
  EXPECT_EQ(normal_form(cs[0].value, xy), normal_form(parts[2], xy));
  EXPECT_FALSE(normal_form(parts[2], xy).is_zero());
}

TEST(Compositions, EmptyForVanishingGenerators) {
  EXPECT_TRUE(compositions(gen1("1", "x", xy), gen1("x", "y", xy), xy).empty());
}

// Counterexamples: compositions that do not reduce to zero.

TEST(Counterexample, TruncationMakesTwoFirstKindLeadsCoincide) {
  Alphabet x2({"x"}, 2);
  auto f = gen1("x'' x'", "1", x2), g = gen1("x' x''", "1", x2);
  EXPECT_EQ(leading_monomial(expand(f, x2)), leading_monomial(expand(g, x2)));
  auto cs = compositions(f, g, x2);
  ASSERT_FALSE(cs.empty());
  Poly nf = normal_form(cs[0].value, x2);
  EXPECT_EQ(nf, poly("-x'' x' P[1] + x'' P[x'] + x' x'' P[1] - P[x'] x''", x2));
  EXPECT_TRUE(all_irreducible_functional(nf, x2));
  EXPECT_NE(triviality_mod(cs[0].value, cs[0].ambiguity, x2).status, Triviality::Trivial);
}

TEST(Counterexample, SameAtOrderOne) {
  Alphabet x1({"x"}, 1);
  auto f = gen1("x' x", "1", x1), g = gen1("x x'", "1", x1);
  EXPECT_EQ(leading_monomial(expand(f, x1)), leading_monomial(expand(g, x1)));
  Poly diff = expand(f, x1) - expand(g, x1);
  EXPECT_FALSE(normal_form(diff, x1).is_zero());
}

TEST(Counterexample, MultiplicationCompositionHasTwoNormalForms) {
  Alphabet a({"x"}, 1);
  Poly m = diamond(phi1(word("x'", a), word("x'", a), a), poly("P[P[x]]", a));
  NfOptions inner;
  inner.strategy = NfStrategy::GreatestInnermost;
  Poly outer_nf = normal_form(m, a), inner_nf = normal_form(m, a, inner);
  EXPECT_EQ(render(inner_nf, a), "-x' P[1] x' P[P[x]] + P[1] x' x' P[P[x]]");
  EXPECT_NE(outer_nf, inner_nf);
  for (const Poly* p : {&outer_nf, &inner_nf})
    for (const auto& [w, c] : *p) EXPECT_TRUE(is_irreducible(w, a)) << render(w, a);
  EXPECT_EQ(triviality_mod(m, leading_monomial(m), a).status, Triviality::NotTrivial);
}

TEST(Counterexample, UntruncatedInclusionLeavesIrreducibleResidue) {
  // inputs of derivative order at most one, so the bound n = 5 never truncates
  Alphabet x5({"x"}, 5);
  const RBWord xx = word("x x", x5);
  Poly g = phi2(xx, word("x'", x5), x5);

  // r0 = P(x' g) - φ1(x, P(xx) x'') - φ1(x, xxx') - x g, at λ = 0
  Poly combo = integral(diamond(poly("x'", x5), g));
  combo -= phi1(word("x", x5), word("P[x x] x''", x5), x5);
  combo -= phi1(word("x", x5), word("x x x'", x5), x5);
  combo -= diamond(poly("x", x5), g);
  Poly r0 = poly("x P[x x] x' - P[x P[x x] x''] - P[x' P[x x] x'] - P[x x x x']", x5);
  EXPECT_EQ(combo.specialize(0), r0);
  EXPECT_FALSE(r0.is_zero());
  EXPECT_TRUE(all_irreducible_functional(r0, x5));
  EXPECT_EQ(normal_form(r0, x5), r0);

  // the composition that exposes it
  auto f = gen1("x", "P[x x] x''", x5);
  auto cs = compositions(f, Generator{GeneratorKind::Phi2, xx, word("x'", x5)}, x5);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].context->render(x5), "P[x' ⋆]");
  Poly nf = normal_form(cs[0].value, x5);
  EXPECT_EQ(nf.specialize(0), -r0);
  EXPECT_TRUE(all_irreducible_functional(nf, x5));
}

TEST(Counterexample, ContextAroundSecondKindGeneratorDoesNotReduce) {
  Poly g = phi2(word("x", xy), word("y", xy), xy);
  Poly e = integral(diamond(poly("x'", xy), g));
  Poly nf = normal_form(e, xy);
  EXPECT_EQ(nf, poly("x P[x] y - P[x x y] - P[x' P[x] y] - P[x P[x] y'] - λ P[x' x y] - λ P[x x y']"
                     " - λ P[x' P[x] y'] - λ λ P[x' x y']",
                     xy));
  EXPECT_TRUE(all_irreducible_functional(nf, xy));
  // the leading word of e is also led by a first-kind generator
  auto cs = match_leading(leading_monomial(e), xy);
  ASSERT_FALSE(cs.empty());
  EXPECT_EQ(cs.front().generator.render(xy), "Phi1(x,P[x] y')");
}

TEST(Counterexample, SecondKindLeadOutsideItsOwnPatternSet) {
  Alphabet x2({"x"}, 2);
  Poly g = phi2(RBWord::unit(), word("x P[1]", x2), x2);
  auto lead = leading_monomial(g);
  EXPECT_EQ(lead, word("P[P[1] x' P[1]]", x2));
  EXPECT_FALSE(in_phi2_lead_set(lead, x2));
  EXPECT_TRUE(in_phi1_lead_set(lead, x2));
}

TEST(Functional, Examples) {
  EXPECT_TRUE(is_functional_monomial(word("P[x P[y]]", xy)));
  EXPECT_FALSE(is_functional_monomial(word("P[x' P[y]]", xy)));
  EXPECT_TRUE(is_functional_monomial(word("x' P[y]", xy)));
  EXPECT_TRUE(is_functional_monomial(RBWord::unit()));
  EXPECT_FALSE(is_functional_monomial(word("P[P[x] y']", xy)));
}

TEST(Epsilon, Examples) {
  Alphabet x1({"x"}, 1);
  EXPECT_TRUE(is_epsilon(word("P[x' P[x] x' P[x]]", x1), x1));
  EXPECT_FALSE(is_epsilon(word("P[x' P[y]]", xy), xy));
  EXPECT_FALSE(is_epsilon(word("x", xy), xy));
  EXPECT_FALSE(is_epsilon(word("P[1]", xy), xy));
  EXPECT_TRUE(has_epsilon_factor(word("x P[y P[x'' y]]", xy), xy));
}

TEST(EnumerateIrr, SmallCensus) {
  Alphabet x1({"x"}, 1);
  auto irr = enumerate_irr(x1, 2);
  std::set<std::string> got;
  for (auto& w : irr) got.insert(render(w, x1));
  for (auto s : {"1", "x", "x'", "x x", "x x'", "x' x", "x' x'", "P[1]", "P[x]", "x P[1]", "P[1] x"})
    EXPECT_TRUE(got.count(s)) << s;
  for (auto& w : irr) EXPECT_TRUE(is_irreducible(w, x1));
  EXPECT_EQ(enumerate_irr(x1, 0).size(), 1u);
  // x' is a constant at n = 1, so P[x'] = x' P[1] modulo the first-kind generator
  EXPECT_FALSE(got.count("P[x']"));
  EXPECT_EQ(leading_monomial(phi1(word("x'", x1), RBWord::unit(), x1)), word("P[x']", x1));
  EXPECT_TRUE(is_epsilon(word("P[x']", x1), x1));
}
