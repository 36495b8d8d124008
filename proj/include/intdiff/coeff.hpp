#pragma once

// Exact coefficients: rationals and univariate polynomials in the weight λ.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace intdiff {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational& r) {
  return r.str();
}

/// Dense polynomial in λ with rational coefficients; coeffs_[i] multiplies λ^i.
/// The coefficient vector never carries trailing zeros, so zero is the empty vector.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  LambdaPoly(int c) : LambdaPoly(Rational(c)) {}
  LambdaPoly(const Rational& c) {
    if (c != 0) coeffs_.push_back(c);
  }
  explicit LambdaPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }
  LambdaPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static LambdaPoly lambda() { return LambdaPoly({Rational(0), Rational(1)}); }

  static LambdaPoly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return LambdaPoly(std::move(v));
  }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Smallest exponent with a nonzero coefficient; -1 for zero.
  int low_degree() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  Rational coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
  }

  Rational constant_term() const { return coeff(0); }

  Rational eval(const Rational& w) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
    return acc;
  }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  LambdaPoly& operator-=(const LambdaPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  LambdaPoly& operator*=(const LambdaPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }

  friend LambdaPoly operator-(LambdaPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return LambdaPoly(std::move(out));
  }

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Ascending powers: "3/2", "λ", "1+2λ", "-λ^2", "1-3/2λ".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      std::string body;
      if (i == 0) {
        body = rational_to_string(abs(c));
      } else {
        if (abs(c) != 1) body = rational_to_string(abs(c));
        body += "λ";
        if (i > 1) body += "^" + std::to_string(i);
      }
      if (out.empty()) {
        out = (c < 0 ? "-" : "") + body;
      } else {
        out += (c < 0 ? "-" : "+") + body;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline LambdaPoly lp_add(const LambdaPoly& a, const LambdaPoly& b) { return a + b; }
inline LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b) { return a * b; }
inline Rational lp_eval(const LambdaPoly& a, const Rational& w) { return a.eval(w); }

}  // namespace intdiff
