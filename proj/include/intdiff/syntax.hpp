#pragma once

// Text syntax for polynomials: parsing, canonical rendering, JSON.

#include "intdiff/gs.hpp"
#include "intdiff/poly.hpp"
#include "intdiff/rb_engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace intdiff {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class Parser {
 public:
  Parser(std::string_view src, const Alphabet& a) : s_(src), a_(a) {}

  Poly parse_all() {
    skip();
    if (at_end()) throw ParseError("empty input", pos_);
    Poly p = expr();
    skip();
    if (!at_end()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool starts_with(std::string_view t) const { return s_.substr(pos_, t.size()) == t; }

  bool accept(std::string_view t) {
    skip();
    if (starts_with(t)) {
      pos_ += t.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view t) {
    if (!accept(t)) throw ParseError("expected '" + std::string(t) + "'", pos_);
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string peek_ident() const {
    std::size_t i = pos_;
    if (i >= s_.size() || !ident_start(s_[i])) return {};
    while (i < s_.size() && ident_char(s_[i])) ++i;
    return std::string(s_.substr(pos_, i - pos_));
  }

  bool factor_ahead() {
    skip();
    if (at_end()) return false;
    char c = s_[pos_];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || ident_start(c) || starts_with("λ");
  }

  Poly expr() {
    skip();
    bool neg = false;
    if (accept("-"))
      neg = true;
    else
      accept("+");
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept("+"))
        acc += term();
      else if (accept("-"))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept("*")) {
        acc = diamond(acc, factor());
      } else if (factor_ahead()) {
        acc = diamond(acc, factor());
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = primary();
    skip();
    if (starts_with("^") && !starts_with("^(")) {
      ++pos_;
      skip();
      std::size_t k = integer();
      Poly out(LambdaPoly(1));
      for (std::size_t i = 0; i < k; ++i) out = diamond(out, base);
      return out;
    }
    return base;
  }

  std::size_t integer() {
    skip();
    std::size_t start = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) throw ParseError("expected an integer", pos_);
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6) throw ParseError("integer too large", start);
    return std::stoul(digits);
  }

  Poly primary() {
    skip();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    std::size_t start = pos_;
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(")");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer num(std::string(s_.substr(b, pos_ - b)));
      Integer den = 1;
      if (!at_end() && s_[pos_] == '/') {
        ++pos_;
        std::size_t d = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (d == pos_) throw ParseError("expected a denominator", pos_);
        den = Integer(std::string(s_.substr(d, pos_ - d)));
        if (den == 0) throw ParseError("zero denominator", d);
      }
      return Poly(LambdaPoly(Rational(num, den)));
    }
    if (starts_with("λ")) {
      pos_ += std::string_view("λ").size();
      return Poly(LambdaPoly::lambda());
    }
    std::string id = peek_ident();
    if (id.empty()) throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    if (id == "lambda") {
      pos_ += id.size();
      return Poly(LambdaPoly::lambda());
    }
    if (id == "P" && !a_.index_of(id)) {
      pos_ += 1;
      expect("[");
      skip();
      if (accept("]")) return integral(Poly(RBWord::unit()));
      Poly inner = expr();
      expect("]");
      return integral(inner);
    }
    if (id == "D" && !a_.index_of(id)) {
      pos_ += 1;
      expect("(");
      Poly inner = expr();
      expect(")");
      return derive(inner, a_);
    }
    auto sym = a_.index_of(id);
    if (!sym) throw ParseError("unknown symbol '" + id + "'", start);
    pos_ += id.size();
    std::size_t order = 0;
    if (starts_with("^(")) {
      pos_ += 2;
      order = integer();
      expect(")");
    } else {
      while (!at_end() && s_[pos_] == '\'') {
        ++order;
        ++pos_;
      }
    }
    if (order > static_cast<std::size_t>(a_.order_n()))
      throw ParseError("derivative order " + std::to_string(order) + " exceeds the bound n = " +
                           std::to_string(a_.order_n()),
                       start);
    return Poly(RBWord::of(Letter{*sym, static_cast<std::uint32_t>(order)}));
  }

  std::string_view s_;
  const Alphabet& a_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse(std::string_view input, const Alphabet& a) { return detail::Parser(input, a).parse_all(); }

inline std::string render_coeff(const LambdaPoly& c) { return c.to_string(); }

/// Terms ordered by lowest λ-power of the coefficient, then ascending in <ₙ.
inline std::vector<std::pair<RBWord, LambdaPoly>> display_order(const Poly& p) {
  std::vector<std::pair<RBWord, LambdaPoly>> terms(p.begin(), p.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    return x.second.low_degree() < y.second.low_degree();
  });
  return terms;
}

inline std::string render(const Poly& p, const Alphabet& a) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : display_order(p)) {
    bool negative = c.coeff(static_cast<std::size_t>(c.low_degree())) < 0;
    LambdaPoly mag = negative ? -c : c;
    std::string coeff;
    const bool compound = std::count_if(mag.coeffs().begin(), mag.coeffs().end(),
                                        [](const Rational& r) { return r != 0; }) > 1;
    if (w.is_unit()) {
      coeff = compound ? "(" + mag.to_string() + ")" : mag.to_string();
    } else if (!mag.is_one()) {
      coeff = (compound ? "(" + mag.to_string() + ")" : mag.to_string()) + " ";
    }
    std::string body = w.is_unit() ? "" : intdiff::render(w, a);
    if (first)
      out += negative ? "-" + coeff + body : coeff + body;
    else
      out += (negative ? " - " : " + ") + coeff + body;
    first = false;
  }
  return out;
}

inline nlohmann::json to_json(const Poly& p, const Alphabet& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : display_order(p))
    arr.push_back({{"coeff", c.to_string()}, {"monomial", intdiff::render(w, a)}});
  return arr;
}

inline std::string render_trace(const ReductionTrace& t, const Alphabet& a) {
  std::string out = "trace: " + std::to_string(t.steps.size()) + (t.steps.size() == 1 ? " step\n" : " steps\n");
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out += "  " + std::to_string(i + 1) + ". " + intdiff::render(Poly::term(s.coefficient, s.monomial), a) +
           " at " + s.placement.context.render(a) + " by " + s.generator.render(a) + " -> " +
           intdiff::render(s.replacement, a) + "\n";
  }
  return out;
}

inline nlohmann::json trace_to_json(const ReductionTrace& t, const Alphabet& a) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    steps.push_back({
        {"index", i + 1},
        {"monomial", intdiff::render(s.monomial, a)},
        {"coeff", s.coefficient.to_string()},
        {"placement", {{"context", s.placement.context.render(a)}, {"path", s.placement.path()},
                       {"begin", s.placement.begin()}, {"end", s.placement.end()}}},
        {"generator", {{"kind", to_string(s.generator.kind)}, {"u", intdiff::render(s.generator.u, a)},
                       {"v", intdiff::render(s.generator.v, a)}}},
        {"tag", to_string(s.tag)},
        {"after", to_json(s.replacement, a)},
    });
  }
  return {{"steps", steps}, {"result", to_json(t.result, a)}};
}

}  // namespace intdiff
