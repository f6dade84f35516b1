#pragma once

// Truncated power series in u over a coefficient ring (A, K or F_p).
//
// A series carries its reliable precision N: it is known modulo u^N. Binary
// operations take the minimum precision of their operands. Terms are stored
// sparsely, ascending, with nonzero coefficients only.

#include <algorithm>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmod/apoly.hpp"
#include "dmod/error.hpp"
#include "dmod/upoly.hpp"

namespace dmod {

template <CoefficientRing Ring>
class USeries {
 public:
  using Elem = typename Ring::Elem;
  using RingPtr = std::shared_ptr<const Ring>;

  struct Term {
    int exp;
    Elem coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  USeries(RingPtr ring, int prec) : ring_(std::move(ring)), prec_(prec) {
    if (prec < 0) fail(Errc::InvalidArgument, "negative series precision");
  }

  // Builds from arbitrary (exp, coeff) pairs: sorts, merges duplicates,
  // drops zeros and anything at or beyond the precision.
  static USeries from_terms(RingPtr ring, int prec, std::vector<Term> terms) {
    USeries out(std::move(ring), prec);
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    const Ring& r = *out.ring_;
    for (auto& t : terms) {
      if (t.exp < 0) fail(Errc::InvalidArgument, "negative exponent in a u-series");
      if (t.exp >= prec) continue;
      if (!out.terms_.empty() && out.terms_.back().exp == t.exp) {
        out.terms_.back().coeff = r.add(out.terms_.back().coeff, t.coeff);
        if (r.is_zero(out.terms_.back().coeff)) out.terms_.pop_back();
      } else if (!r.is_zero(t.coeff)) {
        out.terms_.push_back(std::move(t));
      }
    }
    return out;
  }

  static USeries monomial(RingPtr ring, Elem c, int exp, int prec) {
    return from_terms(std::move(ring), prec, {Term{exp, std::move(c)}});
  }
  static USeries constant(RingPtr ring, Elem c, int prec) { return monomial(std::move(ring), std::move(c), 0, prec); }
  static USeries one(RingPtr ring, int prec) {
    auto c = ring->one();
    return constant(std::move(ring), std::move(c), prec);
  }

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  int prec() const { return prec_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient of u^n; n must lie below the precision.
  Elem coeff(int n) const {
    if (n >= prec_) fail(Errc::PrecisionTooLow, "coefficient u^" + std::to_string(n) + " beyond precision");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), n, [](const Term& t, int e) { return t.exp < e; });
    if (it != terms_.end() && it->exp == n) return it->coeff;
    return ring_->zero();
  }

  // u-adic valuation of the known part.
  Valuation valuation() const {
    if (terms_.empty()) return Valuation::infinity();
    return Valuation(terms_.front().exp);
  }

  USeries truncate(int prec) const {
    USeries out(ring_, std::min(prec, prec_));
    for (const auto& t : terms_) {
      if (t.exp >= out.prec_) break;
      out.terms_.push_back(t);
    }
    return out;
  }

  USeries operator-() const {
    USeries out(ring_, prec_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.exp, ring_->neg(t.coeff)});
    return out;
  }

  friend USeries operator+(const USeries& f, const USeries& g) { return combine(f, g, false); }
  friend USeries operator-(const USeries& f, const USeries& g) { return combine(f, g, true); }

  friend USeries operator*(const USeries& f, const USeries& g) {
    f.check_ring(g);
    const int prec = std::min(f.prec_, g.prec_);
    const Ring& r = *f.ring_;
    USeries out(f.ring_, prec);
    if (f.terms_.empty() || g.terms_.empty()) return out;
    std::vector<Elem> acc(static_cast<std::size_t>(prec), r.zero());
    std::vector<char> touched(static_cast<std::size_t>(prec), 0);
    for (const auto& a : f.terms_) {
      if (a.exp >= prec) break;
      for (const auto& b : g.terms_) {
        const int e = a.exp + b.exp;
        if (e >= prec) break;
        mul_add_to(r, acc[static_cast<std::size_t>(e)], a.coeff, b.coeff);
        touched[static_cast<std::size_t>(e)] = 1;
      }
    }
    for (int e = 0; e < prec; ++e) {
      auto& c = acc[static_cast<std::size_t>(e)];
      if (touched[static_cast<std::size_t>(e)] && !r.is_zero(c)) out.terms_.push_back({e, std::move(c)});
    }
    return out;
  }

  // Scalar multiple c*f.
  USeries scale(const Elem& c) const {
    USeries out(ring_, prec_);
    for (const auto& t : terms_) {
      Elem v = ring_->mul(c, t.coeff);
      if (!ring_->is_zero(v)) out.terms_.push_back({t.exp, std::move(v)});
    }
    return out;
  }

  // Multiplication by u^k; precision shifts with it.
  USeries shift(int k) const {
    USeries out(ring_, to_int(checked_add(prec_, k)));
    for (const auto& t : terms_) out.terms_.push_back({t.exp + k, t.coeff});
    return out;
  }

  // Equality of the coefficient lists up to the common precision.
  friend bool operator==(const USeries& f, const USeries& g) {
    f.check_ring(g);
    const int prec = std::min(f.prec_, g.prec_);
    auto end_of = [prec](const std::vector<Term>& ts) {
      return std::lower_bound(ts.begin(), ts.end(), prec, [](const Term& t, int e) { return t.exp < e; });
    };
    return std::equal(f.terms_.begin(), end_of(f.terms_), g.terms_.begin(), end_of(g.terms_));
  }

  // First exponent below the common precision where f and g differ.
  friend std::optional<int> first_difference(const USeries& f, const USeries& g) {
    const USeries d = f - g;
    if (d.terms_.empty()) return std::nullopt;
    return d.terms_.front().exp;
  }

  void check_ring(const USeries& other) const {
    if (ring_ != other.ring_ && !(*ring_ == *other.ring_))
      fail(Errc::RingMismatch, "series over different coefficient rings");
  }

 private:
  static USeries combine(const USeries& f, const USeries& g, bool subtract) {
    f.check_ring(g);
    const Ring& r = *f.ring_;
    USeries out(f.ring_, std::min(f.prec_, g.prec_));
    auto i = f.terms_.begin(), j = g.terms_.begin();
    const int prec = out.prec_;
    while (true) {
      const bool fi = i != f.terms_.end() && i->exp < prec;
      const bool gj = j != g.terms_.end() && j->exp < prec;
      if (!fi && !gj) break;
      if (fi && (!gj || i->exp < j->exp)) {
        out.terms_.push_back(*i++);
      } else if (gj && (!fi || j->exp < i->exp)) {
        out.terms_.push_back({j->exp, subtract ? r.neg(j->coeff) : j->coeff});
        ++j;
      } else {
        Elem c = subtract ? r.sub(i->coeff, j->coeff) : r.add(i->coeff, j->coeff);
        if (!r.is_zero(c)) out.terms_.push_back({i->exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  RingPtr ring_;
  int prec_;
  std::vector<Term> terms_;
};

template <CoefficientRing Ring>
USeries<Ring> pow(const USeries<Ring>& f, std::uint64_t e) {
  auto out = USeries<Ring>::one(f.ring_ptr(), f.prec());
  auto base = f;
  while (e) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

namespace detail {

// h = f / g for series with g(0) != 0, by long division; every quotient
// coefficient must be exact in the ring.
template <CoefficientRing Ring>
USeries<Ring> divide_unit_lead(const USeries<Ring>& f, const USeries<Ring>& g, int prec, Errc err) {
  using S = USeries<Ring>;
  const Ring& r = f.ring();
  const auto& lead = g.terms().front().coeff;
  const auto inv_lead = r.unit_inverse(lead);
  std::vector<typename S::Elem> h(static_cast<std::size_t>(std::max(prec, 0)), r.zero());
  std::vector<typename S::Term> out_terms;
  auto fi = f.terms().begin();
  for (int n = 0; n < prec; ++n) {
    auto acc = r.zero();
    while (fi != f.terms().end() && fi->exp < n) ++fi;
    if (fi != f.terms().end() && fi->exp == n) acc = fi->coeff;
    for (auto gt = g.terms().begin() + 1; gt != g.terms().end() && gt->exp <= n; ++gt) {
      const auto& hv = h[static_cast<std::size_t>(n - gt->exp)];
      if (!r.is_zero(hv)) acc = r.sub(acc, r.mul(gt->coeff, hv));
    }
    if (r.is_zero(acc)) continue;
    if (inv_lead) {
      h[static_cast<std::size_t>(n)] = r.mul(acc, *inv_lead);
    } else {
      auto quot = r.exact_quotient(acc, lead);
      if (!quot) fail(err, "coefficient at u^" + std::to_string(n) + " is not divisible in the ring");
      h[static_cast<std::size_t>(n)] = std::move(*quot);
    }
    out_terms.push_back({n, h[static_cast<std::size_t>(n)]});
  }
  return S::from_terms(f.ring_ptr(), std::max(prec, 0), std::move(out_terms));
}

}  // namespace detail

// 1/f; the constant term must be a unit of the coefficient ring.
template <CoefficientRing Ring>
USeries<Ring> series_inv(const USeries<Ring>& f) {
  if (f.terms().empty() || f.terms().front().exp != 0 || !f.ring().unit_inverse(f.terms().front().coeff))
    fail(Errc::NonUnitConstantTerm, "series constant term is not a unit");
  return detail::divide_unit_lead(USeries<Ring>::one(f.ring_ptr(), f.prec()), f, f.prec(),
                                  Errc::NonUnitConstantTerm);
}

// f / g where the quotient is a power series with coefficients in the ring.
// Result precision is min(prec f, prec g) - val(g).
template <CoefficientRing Ring>
USeries<Ring> series_exact_div(const USeries<Ring>& f, const USeries<Ring>& g) {
  f.check_ring(g);
  if (g.is_zero()) fail(Errc::DivisionByZero, "series division by zero");
  const int v = g.terms().front().exp;
  for (const auto& t : f.terms())
    if (t.exp < v) fail(Errc::InexactSeriesDivision, "dividend has lower u-valuation than divisor");
  const int prec = std::min(f.prec(), g.prec()) - v;
  return detail::divide_unit_lead(f.shift(-v), g.shift(-v), prec, Errc::InexactSeriesDivision);
}

// f / c for a scalar c, exact coefficientwise.
template <CoefficientRing Ring>
USeries<Ring> series_exact_div(const USeries<Ring>& f, const typename Ring::Elem& c) {
  const Ring& r = f.ring();
  if (r.is_zero(c)) fail(Errc::DivisionByZero, "series division by zero scalar");
  std::vector<typename USeries<Ring>::Term> out;
  for (const auto& t : f.terms()) {
    auto quot = r.exact_quotient(t.coeff, c);
    if (!quot) fail(Errc::InexactSeriesDivision, "coefficient at u^" + std::to_string(t.exp) + " not divisible");
    out.push_back({t.exp, std::move(*quot)});
  }
  return USeries<Ring>::from_terms(f.ring_ptr(), f.prec(), std::move(out));
}

// outer(inner(u)). Reliable precision is min(prec(outer) * val(inner), prec(inner)).
template <CoefficientRing Ring>
USeries<Ring> series_compose(const USeries<Ring>& outer, const USeries<Ring>& inner) {
  outer.check_ring(inner);
  using S = USeries<Ring>;
  const Valuation v = inner.valuation();
  if (!v.is_infinite() && v.value() < 1) fail(Errc::InnerValuationZero, "inner series must have valuation >= 1");
  std::int64_t prec = inner.prec();
  if (!v.is_infinite()) prec = std::min(prec, checked_mul(outer.prec(), v.value()));
  const int P = to_int(prec);
  S acc(outer.ring_ptr(), P);
  S power = S::one(outer.ring_ptr(), P);
  const S base = inner.truncate(P);
  int last = 0;
  for (const auto& t : outer.terms()) {
    if (t.exp > 0 && v.is_infinite()) break;
    if (!v.is_infinite() && checked_mul(t.exp, v.value()) >= P) break;
    power = power * pow(base, static_cast<std::uint64_t>(t.exp - last));
    last = t.exp;
    acc = acc + power.scale(t.coeff);
  }
  return acc;
}

// Theta = -u^2 d/du; the precision is kept equal to the input's.
template <CoefficientRing Ring>
USeries<Ring> theta(const USeries<Ring>& f) {
  const Ring& r = f.ring();
  std::vector<typename USeries<Ring>::Term> out;
  for (const auto& t : f.terms()) {
    if (t.exp + 1 >= f.prec()) break;
    out.push_back({t.exp + 1, r.mul(r.from_int(-static_cast<long long>(t.exp)), t.coeff)});
  }
  return USeries<Ring>::from_terms(f.ring_ptr(), f.prec(), std::move(out));
}

// Applies a coefficient map into another ring, keeping exponents and precision.
template <CoefficientRing To, CoefficientRing From, class F>
USeries<To> map_coeffs(const USeries<From>& f, std::shared_ptr<const To> target, F&& fn) {
  std::vector<typename USeries<To>::Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) out.push_back({t.exp, fn(t.coeff)});
  return USeries<To>::from_terms(std::move(target), f.prec(), std::move(out));
}

// Embeds a series over A into any ring that receives A (A, K or F_p).
template <CoefficientRing To>
USeries<To> embed(const USeries<PolyRing>& f, std::shared_ptr<const To> target) {
  if constexpr (std::is_same_v<To, PolyRing>) {
    f.check_ring(USeries<PolyRing>(target, 0));
    return f;
  } else {
    const To& t = *target;
    return map_coeffs(f, target, [&t](const APoly& a) { return t.from_apoly(a); });
  }
}

inline Valuation coeff_vp(const PolyRing& A, const APoly& a, const PrimeSpec& prime) { return vp(A, a, prime); }
inline Valuation coeff_vp(const FracField& K, const KFrac& a, const PrimeSpec& prime) { return vp(K, a, prime); }

// inf over the stored coefficients; relative to the truncation (a true
// valuation of the full expansion can only be smaller or equal).
template <CoefficientRing Ring>
Valuation series_vp(const USeries<Ring>& f, const PrimeSpec& prime) {
  Valuation out = Valuation::infinity();
  for (const auto& t : f.terms()) out = std::min(out, coeff_vp(f.ring(), t.coeff, prime));
  return out;
}

// Coefficientwise reduction mod pi.
template <CoefficientRing Ring>
USeries<ResidueField> series_reduce(const USeries<Ring>& f, const ResidueFieldPtr& F) {
  const ResidueField& res = *F;
  return map_coeffs(f, F, [&res](const typename Ring::Elem& a) { return residue_map(res, a); });
}

using ASeries = USeries<PolyRing>;
using KSeries = USeries<FracField>;
using RSeries = USeries<ResidueField>;

}  // namespace dmod
