#include "support.hpp"

using namespace intdiff;

namespace {

CheckConfig config(std::vector<std::string> symbols, int n, std::size_t max_size) {
  CheckConfig c;
  c.alphabet = Alphabet(std::move(symbols), n);
  c.max_size = max_size;
  c.samples = 40;
  return c;
}

bool mentions(const VerificationReport& r, const std::string& needle) {
  for (const auto& f : r.failures)
    if (f.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Axioms, SmallEnumerationPasses) {
  auto r = check_axioms(config({"x"}, 1, 2));
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.cases.at("associativity"), 0u);
}

TEST(Axioms, InstanceCountIsSquareOfCensus) {
  auto cfg = config({"x"}, 1, 1);
  auto r = check_axioms(cfg);
  auto census = enumerate_rbwords(cfg.alphabet, 1).size();
  EXPECT_EQ(census, 4u);
  EXPECT_EQ(r.instances, census * census);
  EXPECT_TRUE(r.passed());
}

TEST(Axioms, DerivationWithoutWeightTermIsCaught) {
  EngineHooks h;
  h.derive = [](const Poly& p, const Alphabet& a) { return derive(p, a).specialize(0); };
  auto r = check_axioms(config({"x"}, 1, 2), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "λ-Leibniz fails at (u, v) = (x, x)")) << r.to_text();
}

TEST(Axioms, ProductWithoutWeightTermIsCaught) {
  EngineHooks h;
  h.diamond = [](const Poly& p, const Poly& q) { return diamond(p, q).specialize(0); };
  auto r = check_axioms(config({"x"}, 1, 2), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "Rota-Baxter identity fails"));
}

TEST(Confluence, Passes) {
  auto r = check_confluence(config({"x"}, 1, 4));
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.cases.at("rewritten"), 0u);
}

TEST(Confluence, StrategyDependentRedIsCaught) {
  EngineHooks h;
  h.red = [](const BracketedTerm& t, RewriteStrategy s, std::uint64_t seed) {
    Poly p = red(t, s, seed);
    return s == RewriteStrategy::LeftmostOutermost ? p.specialize(1) : p;
  };
  auto r = check_confluence(config({"x"}, 1, 3), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "strategies disagree on P[1]P[1]")) << r.to_text();
}

TEST(Order, Passes) {
  auto r = check_order(config({"x"}, 1, 3));
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.cases.at("triples"), 0u);
  EXPECT_GT(r.cases.at("derivation-letters-zero-lower"), 0u);
  // at n = 1 every type I comparison has a vanishing lower side
  EXPECT_EQ(r.cases.count("weak-monomial-type1"), 0u);
  EXPECT_GT(r.cases.at("weak-monomial-type1-zero-lower"), 0u);
}

TEST(Order, PassesAtOrderTwo) {
  auto r = check_order(config({"x", "y"}, 2, 2));
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.cases.at("weak-monomial-type1"), 0u);
  EXPECT_GT(r.cases.at("derivation-letters"), 0u);
}

TEST(Order, ReversedComparisonIsCaught) {
  EngineHooks h;
  h.compare = [](const RBWord& u, const RBWord& v) { return cmp_word(v, u); };
  auto r = check_order(config({"x"}, 1, 2), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "enumeration out of order"));
}

TEST(Order, DegreeOnlyComparisonIsCaught) {
  EngineHooks h;
  h.compare = [](const RBWord& u, const RBWord& v) { return u.deg().total <=> v.deg().total; };
  auto r = check_order(config({"x"}, 1, 2), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "totality/antisymmetry"));
}

TEST(Leading, PassesAtOrderOne) {
  auto r = check_leading(config({"x"}, 1, 2));
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.cases.at("Case1Phi1"), 0u);
  EXPECT_GT(r.cases.at("Case1Phi2"), 0u);
}

TEST(Leading, SecondKindSetIncompleteAtOrderTwo) {
  auto r = check_leading(config({"x"}, 2, 2));
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "leading monomial P[P[1] x' P[1]] of Phi2(1,x P[1]) is outside its characterization"))
      << r.to_text();
  EXPECT_FALSE(mentions(r, "match_leading does not recover"));
}

TEST(Leading, EmptyMatcherIsCaught) {
  EngineHooks h;
  h.match_leading = [](const RBWord&, const Alphabet&) { return std::vector<LeadClass>{}; };
  auto r = check_leading(config({"x"}, 1, 1), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "match_leading does not recover"));
}

TEST(Basis, Passes) {
  auto c = config({"x"}, 1, 3);
  c.n_max = 2;
  auto r = check_basis(c);
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.cases.at("stabilisation"), 0u);
}

TEST(Basis, EverythingIrreducibleIsCaught) {
  EngineHooks h;
  h.is_irreducible = [](const RBWord&, const Alphabet&) { return true; };
  auto c = config({"x"}, 1, 3);
  c.n_max = 1;
  auto r = check_basis(c, h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "irreducibility of P[x'] disagrees with the functional/ε characterization"));
  EXPECT_TRUE(mentions(r, "irreducible word is not functional"));
}

TEST(Ideal, IdentityNormalFormIsCaught) {
  EngineHooks h;
  h.normal_form = [](const Poly& p, const Alphabet&, const NfOptions&) { return p; };
  auto r = check_ideal(config({"x"}, 1, 2), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(mentions(r, "does not reduce to 0"));
}

TEST(Ideal, FailuresAreCertifiedResidues) {
  auto r = check_ideal(config({"x"}, 1, 2));
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.cases.count("irreducible-residue-in-ideal"));
  EXPECT_GT(r.cases.at("irreducible-residue-in-ideal"), 0u);
}

TEST(Compositions, FailAndExposeIrreducibleResidues) {
  auto c = config({"x"}, 1, 2);
  auto r = check_compositions(c);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.cases.at("intersection-pairs"), 0u);
  EXPECT_FALSE(mentions(r, "intersection composition between"));
  EXPECT_FALSE(mentions(r, "multiplication identity fails"));
  EXPECT_GT(r.cases.at("irreducible-residue-in-ideal"), 0u);
}

TEST(Report, EmptyReportDoesNotPass) {
  VerificationReport r;
  EXPECT_FALSE(r.passed());
  r.instances = 1;
  EXPECT_TRUE(r.passed());
  r.fail("boom");
  EXPECT_FALSE(r.passed());
}

TEST(Report, FailureListIsCapped) {
  VerificationReport r;
  r.instances = 100;
  for (int i = 0; i < 100; ++i) r.fail("f" + std::to_string(i));
  EXPECT_EQ(r.failure_count, 100u);
  EXPECT_EQ(r.failures.size(), 25u);
}

TEST(Report, JsonAndText) {
  auto r = check_axioms(config({"x", "y"}, 1, 1));
  auto j = r.to_json();
  EXPECT_EQ(j["check"], "axioms");
  EXPECT_EQ(j["bounds"]["alphabet"].size(), 2u);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["instances"], r.instances);
  EXPECT_NE(r.to_text().find("axioms: pass"), std::string::npos);
}

TEST(Report, MergePrefixesCaseNames) {
  VerificationReport a, b;
  a.check = "outer";
  b.check = "inner";
  b.instances = 3;
  b.cases["k"] = 2;
  b.fail("bad");
  a.merge(b);
  EXPECT_EQ(a.instances, 3u);
  EXPECT_EQ(a.cases.at("inner.k"), 2u);
  EXPECT_EQ(a.failures.at(0), "inner: bad");
}
