#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "lienil/poly.hpp"

namespace lienil {

// Text grammar for polynomials:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ['^' nat]
//   primary:= number | generator | '(' expr ')' | '[' expr (',' expr)+ ']'
// Generators are x, y, z or x1..x9; numbers are integers or integer ratios
// like 1/3; '[a,b,c]' is the right-normed commutator.
template <class F>
class PolyParser {
 public:
  PolyParser(const F& field, int rank, std::string text)
      : field_(field), rank_(rank), text_(std::move(text)) {}

  Poly<F> parse() {
    Poly<F> p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  Poly<F> parse_expr() {
    skip_ws();
    bool neg = accept('-');
    Poly<F> acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      if (accept('+'))
        acc = acc + parse_term();
      else if (accept('-'))
        acc = acc - parse_term();
      else
        return acc;
    }
  }

  Poly<F> parse_term() {
    Poly<F> acc = parse_factor();
    for (;;) {
      skip_ws();
      if (accept('*'))
        acc = acc * parse_factor();
      else
        return acc;
    }
  }

  Poly<F> parse_factor() {
    Poly<F> p = parse_primary();
    skip_ws();
    if (accept('^')) {
      long e = parse_nat();
      p = p.pow(static_cast<int>(e));
    }
    return p;
  }

  Poly<F> parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (c == '(') {
      ++pos_;
      Poly<F> p = parse_expr();
      expect(')');
      return p;
    }
    if (c == '[') {
      ++pos_;
      std::vector<Poly<F>> args;
      args.push_back(parse_expr());
      skip_ws();
      while (accept(',')) args.push_back(parse_expr());
      expect(']');
      if (args.size() < 2) fail("commutator needs at least two arguments");
      return right_normed(std::span<const Poly<F>>(args));
    }
    return parse_generator();
  }

  Poly<F> parse_number() {
    long num = parse_nat();
    skip_ws();
    if (accept('/')) {
      long den = parse_nat();
      return Poly<F>::constant(field_, rank_, field_.from_ratio(num, den));
    }
    return Poly<F>::constant(field_, rank_, field_.from_long(num));
  }

  Poly<F> parse_generator() {
    char c = text_[pos_];
    int idx = -1;
    if (c == 'x') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        int n = text_[pos_] - '0';
        if (n < 1 || n > 9) fail("generator index out of range");
        ++pos_;
        idx = n - 1;
      } else {
        idx = 0;
      }
    } else if (c == 'y') {
      ++pos_;
      idx = 1;
    } else if (c == 'z') {
      ++pos_;
      idx = 2;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    if (idx >= rank_) fail("generator outside declared rank");
    return Poly<F>::generator(field_, rank_, idx);
  }

  long parse_nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a number");
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000000L) fail("number too large");
      ++pos_;
    }
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_ws();
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::domain_error("parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  F field_;
  int rank_;
  std::string text_;
  size_t pos_ = 0;
};

template <class F>
Poly<F> parse_poly(const F& field, int rank, const std::string& text) {
  return PolyParser<F>(field, rank, text).parse();
}

// Canonical rendering: terms from the greatest word down, coefficients in
// field notation, so that equal polynomials print identically.
template <class F>
std::string poly_str(const Poly<F>& p) {
  if (p.is_zero()) return "0";
  const F& f = p.field();
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    std::string cs = f.str(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (out.empty()) {
      if (neg) {
        out += "-";
        cs = cs.substr(1);
      }
    } else {
      out += neg ? " - " : " + ";
      if (neg) cs = cs.substr(1);
    }
    bool coeff_is_one = cs == "1";
    if (w.empty()) {
      out += cs;
    } else if (coeff_is_one) {
      out += word_str(w);
    } else {
      out += cs + "*" + word_str(w);
    }
  }
  return out;
}

template <class F>
std::string Poly<F>::str() const {
  return poly_str(*this);
}

}  // namespace lienil
