#pragma once

// Human syntax for polynomials: integers, variables, + - * ^ and parentheses,
// e.g. "T^3+2*T+1", "T+x", "(T+1)^2*x". Each variable name maps to a fixed
// element of the target ring.

#include <cctype>
#include <map>
#include <string>
#include <utility>

#include "dmod/apoly.hpp"
#include "dmod/error.hpp"

namespace dmod {

namespace detail {

class PolyParser {
 public:
  PolyParser(const PolyRing& A, std::map<std::string, APoly> vars, std::string text)
      : A_(A), vars_(std::move(vars)), s_(std::move(text)) {}

  APoly parse() {
    APoly v = expr();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(Errc::ParseError, what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  APoly expr() {
    APoly acc;
    if (eat('-')) acc = A_.neg(term());
    else {
      eat('+');
      acc = term();
    }
    for (;;) {
      if (eat('+')) acc = A_.add(acc, term());
      else if (eat('-')) acc = A_.sub(acc, term());
      else return acc;
    }
  }

  APoly term() {
    APoly acc = power();
    for (;;) {
      if (eat('*')) {
        acc = A_.mul(acc, power());
        continue;
      }
      // implicit multiplication: "2T", "T(T+1)"
      skip_ws();
      if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        acc = A_.mul(acc, power());
        continue;
      }
      return acc;
    }
  }

  APoly power() {
    APoly base = atom();
    if (eat('^')) {
      skip_ws();
      const long long e = integer();
      base = A_.pow(base, static_cast<std::uint64_t>(e));
    }
    return base;
  }

  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = checked_add(checked_mul(v, 10), s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) error("expected an integer");
    return v;
  }

  APoly atom() {
    skip_ws();
    if (eat('(')) {
      APoly v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (eat('-')) return A_.neg(atom());
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return A_.from_int(integer());
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      const std::string name(1, s_[pos_]);
      auto it = vars_.find(name);
      if (it == vars_.end()) error("unknown variable '" + name + "'");
      ++pos_;
      return it->second;
    }
    error(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
  }

  const PolyRing& A_;
  std::map<std::string, APoly> vars_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// An element of A = F_q[T]; "x" names the generator of F_q over F_p when q is not prime.
inline APoly parse_apoly(const PolyRing& A, const std::string& text) {
  std::map<std::string, APoly> vars{{"T", A.T()}};
  if (A.field().r() > 1) vars.emplace("x", A.constant(A.field().from_coords({0, 1})));
  return detail::PolyParser(A, std::move(vars), text).parse();
}

// A polynomial in x over F_p, returned as coefficients in [0, p), ascending.
inline std::vector<std::uint32_t> parse_fp_poly(long long p, const std::string& text) {
  const PolyRing Fp(make_field_ctx(p, 1));
  const APoly a = detail::PolyParser(Fp, {{"x", Fp.T()}}, text).parse();
  std::vector<std::uint32_t> out;
  for (Fq c : a.coeffs) out.push_back(c.v);
  return out;
}

}  // namespace dmod
