#pragma once

#include "intdiff/coeff.hpp"
#include "intdiff/order.hpp"
#include "intdiff/terms.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace intdiff {

/// Finitely supported linear combination of Rota-Baxter words with
/// coefficients in ℚ[λ]. Iteration is ascending in <ₙ.
class Poly {
 public:
  using Map = std::map<RBWord, LambdaPoly, WordLess>;
  using const_iterator = Map::const_iterator;

  Poly() = default;
  Poly(const RBWord& w) { terms_.emplace(w, LambdaPoly(1)); }
  Poly(const LambdaPoly& c) {
    if (!c.is_zero()) terms_.emplace(RBWord::unit(), c);
  }

  static Poly term(const LambdaPoly& c, const RBWord& w) {
    Poly p;
    p.add_term(w, c);
    return p;
  }

  void add_term(const RBWord& w, const LambdaPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  LambdaPoly coeff(const RBWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? LambdaPoly() : it->second;
  }

  bool contains(const RBWord& w) const { return terms_.count(w) != 0; }

  /// Greatest monomial under <ₙ with its coefficient.
  std::pair<LambdaPoly, RBWord> leading() const {
    if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
    const auto& [w, c] = *terms_.rbegin();
    return {c, w};
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  Poly& operator*=(const LambdaPoly& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, k] : terms_) k *= c;
    return *this;
  }

  void add_scaled(const Poly& o, const LambdaPoly& c) {
    if (c.is_zero()) return;
    for (const auto& [w, k] : o.terms_) add_term(w, k * c);
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [w, k] : a.terms_) k = -k;
    return a;
  }
  friend Poly operator*(Poly a, const LambdaPoly& c) { return a *= c; }
  friend Poly operator*(const LambdaPoly& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Evaluates every coefficient at λ = w.
  Poly specialize(const Rational& w) const {
    Poly out;
    for (const auto& [m, c] : terms_) out.add_term(m, LambdaPoly(c.eval(w)));
    return out;
  }

 private:
  Map terms_;
};

}  // namespace intdiff
