// A short tour: build terms, multiply, differentiate, reduce.

#include "intdiff/intdiff.hpp"

#include <iostream>

using namespace intdiff;

int main() {
  Alphabet a({"x", "y"}, 2);
  auto show = [&](const char* label, const Poly& p) { std::cout << label << render(p, a) << "\n"; };

  Poly px = parse("P[x]", a), py = parse("P[y]", a);
  show("P[x] P[y]          = ", diamond(px, py));
  show("d(x P[y])          = ", derive(parse("x P[y]", a), a));
  show("d(P[x] y')         = ", derive(parse("P[x] y'", a), a));

  Generator g{GeneratorKind::Phi1, parse("x", a).begin()->first, parse("y", a).begin()->first};
  show("Phi1(x,y)          = ", expand(g, a));

  auto tr = normal_form_trace(parse("P[x' P[y]]", a), a);
  show("nf P[x' P[y]]      = ", tr.result);
  std::cout << render_trace(tr, a);

  show("at λ = 0           = ", tr.result.specialize(Rational(0)));

  std::cout << "irreducible words of size <= 2 at n = 1 over {x}:\n  ";
  Alphabet small({"x"}, 1);
  auto irr = enumerate_irr(small, 2);
  for (std::size_t i = 0; i < irr.size(); ++i) std::cout << (i ? ", " : "") << render(irr[i], small);
  std::cout << "\n";
}
