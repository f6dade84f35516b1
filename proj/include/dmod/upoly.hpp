#pragma once

// Dense univariate polynomials over a coefficient ring policy.
//
// A ring policy R exposes `Elem`, zero/one/is_zero, add/sub/neg/mul,
// from_int, unit_inverse (optional inverse of a unit) and exact_quotient.
// Polynomials are std::vector<Elem> in ascending order with no trailing zeros.

#include <concepts>
#include <optional>
#include <utility>
#include <vector>

#include "dmod/error.hpp"

namespace dmod {

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::Elem& a, long long n) {
  { r.zero() } -> std::convertible_to<typename R::Elem>;
  { r.one() } -> std::convertible_to<typename R::Elem>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.add(a, a) } -> std::convertible_to<typename R::Elem>;
  { r.sub(a, a) } -> std::convertible_to<typename R::Elem>;
  { r.neg(a) } -> std::convertible_to<typename R::Elem>;
  { r.mul(a, a) } -> std::convertible_to<typename R::Elem>;
  { r.from_int(n) } -> std::convertible_to<typename R::Elem>;
  { r.unit_inverse(a) } -> std::convertible_to<std::optional<typename R::Elem>>;
  { r.exact_quotient(a, a) } -> std::convertible_to<std::optional<typename R::Elem>>;
};

// acc += a*b, using the ring's in-place kernel when it has one.
template <CoefficientRing R>
void mul_add_to(const R& r, typename R::Elem& acc, const typename R::Elem& a,
                const typename R::Elem& b) {
  if constexpr (requires { r.mul_add_to(acc, a, b); }) {
    r.mul_add_to(acc, a, b);
  } else {
    acc = r.add(acc, r.mul(a, b));
  }
}

namespace upoly {

template <CoefficientRing R>
using Poly = std::vector<typename R::Elem>;

template <CoefficientRing R>
void trim(const R& r, Poly<R>& a) {
  while (!a.empty() && r.is_zero(a.back())) a.pop_back();
}

// Degree of a; -1 for the zero polynomial.
template <class P>
int degree(const P& a) {
  return static_cast<int>(a.size()) - 1;
}

template <CoefficientRing R>
Poly<R> add(const R& r, const Poly<R>& a, const Poly<R>& b) {
  Poly<R> out(std::max(a.size(), b.size()), r.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = r.add(out[i], b[i]);
  trim(r, out);
  return out;
}

template <CoefficientRing R>
Poly<R> neg(const R& r, const Poly<R>& a) {
  Poly<R> out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(r.neg(c));
  return out;
}

template <CoefficientRing R>
Poly<R> sub(const R& r, const Poly<R>& a, const Poly<R>& b) {
  Poly<R> out(std::max(a.size(), b.size()), r.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = r.sub(out[i], b[i]);
  trim(r, out);
  return out;
}

template <CoefficientRing R>
Poly<R> scale(const R& r, const Poly<R>& a, const typename R::Elem& s) {
  Poly<R> out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(r.mul(c, s));
  trim(r, out);
  return out;
}

template <CoefficientRing R>
Poly<R> mul(const R& r, const Poly<R>& a, const Poly<R>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<R> out(a.size() + b.size() - 1, r.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (r.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mul_add_to(r, out[i + j], a[i], b[j]);
  }
  trim(r, out);
  return out;
}

template <CoefficientRing R>
Poly<R> pow(const R& r, Poly<R> a, std::uint64_t e) {
  Poly<R> out{r.one()};
  trim(r, out);
  while (e) {
    if (e & 1) out = mul(r, out, a);
    e >>= 1;
    if (e) a = mul(r, a, a);
  }
  return out;
}

// Division with remainder; the leading coefficient of b must be a unit.
template <CoefficientRing R>
std::pair<Poly<R>, Poly<R>> divrem(const R& r, Poly<R> a, const Poly<R>& b) {
  if (b.empty()) fail(Errc::DivisionByZero, "polynomial division by zero");
  const auto inv_lead = r.unit_inverse(b.back());
  if (!inv_lead) fail(Errc::InexactDivision, "leading coefficient of the divisor is not a unit");
  trim(r, a);
  if (a.size() < b.size()) return {Poly<R>{}, std::move(a)};
  Poly<R> quot(a.size() - b.size() + 1, r.zero());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const auto& top = a[k + b.size() - 1];
    if (r.is_zero(top)) continue;
    const auto f = r.mul(top, *inv_lead);
    quot[k] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] = r.sub(a[k + i], r.mul(f, b[i]));
  }
  trim(r, a);
  trim(r, quot);
  return {std::move(quot), std::move(a)};
}

template <CoefficientRing R>
Poly<R> exact_div(const R& r, const Poly<R>& a, const Poly<R>& b) {
  auto [quot, rem] = divrem(r, a, b);
  if (!rem.empty()) fail(Errc::InexactDivision, "polynomial division leaves a remainder");
  return quot;
}

template <CoefficientRing R>
Poly<R> monic(const R& r, const Poly<R>& a) {
  if (a.empty()) return a;
  const auto inv = r.unit_inverse(a.back());
  if (!inv) fail(Errc::InexactDivision, "leading coefficient is not a unit");
  return scale(r, a, *inv);
}

// Monic gcd over a field; gcd(0, 0) = 0.
template <CoefficientRing R>
Poly<R> gcd(const R& r, Poly<R> a, Poly<R> b) {
  trim(r, a);
  trim(r, b);
  while (!b.empty()) {
    auto rem = divrem(r, std::move(a), b).second;
    a = std::move(b);
    b = std::move(rem);
  }
  return monic(r, a);
}

template <CoefficientRing R>
Poly<R> derivative(const R& r, const Poly<R>& a) {
  Poly<R> out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(r.mul(r.from_int(static_cast<long long>(i)), a[i]));
  trim(r, out);
  return out;
}

}  // namespace upoly
}  // namespace dmod
