#pragma once

// A = F_q[T], its fraction field K = F_q(T), primes of A and residue fields.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmod/error.hpp"
#include "dmod/field.hpp"
#include "dmod/upoly.hpp"

namespace dmod {

// A polynomial in T, coefficients ascending, no trailing zeros.
struct APoly {
  std::vector<Fq> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const APoly&, const APoly&) = default;
};

class PolyRing;
using PolyRingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  using Elem = APoly;
  static constexpr const char* kTag = "A";

  explicit PolyRing(FieldPtr field) : field_(std::move(field)) {}

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t q() const { return field_->q(); }

  APoly zero() const { return {}; }
  APoly one() const { return constant(field_->one()); }
  bool is_zero(const APoly& a) const { return a.coeffs.empty(); }

  APoly constant(Fq c) const {
    if (c.v == 0) return {};
    return APoly{{c}};
  }
  APoly from_int(long long n) const { return constant(field_->from_int(n)); }
  // c * T^e
  APoly monomial(Fq c, int e) const {
    if (c.v == 0) return {};
    APoly out;
    out.coeffs.assign(static_cast<std::size_t>(e) + 1, field_->zero());
    out.coeffs.back() = c;
    return out;
  }
  APoly T() const { return monomial(field_->one(), 1); }

  APoly make(std::vector<Fq> coeffs) const {
    APoly out{std::move(coeffs)};
    upoly::trim(*field_, out.coeffs);
    return out;
  }

  APoly add(const APoly& a, const APoly& b) const { return APoly{upoly::add(*field_, a.coeffs, b.coeffs)}; }
  APoly sub(const APoly& a, const APoly& b) const { return APoly{upoly::sub(*field_, a.coeffs, b.coeffs)}; }
  APoly neg(const APoly& a) const { return APoly{upoly::neg(*field_, a.coeffs)}; }
  APoly mul(const APoly& a, const APoly& b) const { return APoly{upoly::mul(*field_, a.coeffs, b.coeffs)}; }
  APoly scale(const APoly& a, Fq s) const { return APoly{upoly::scale(*field_, a.coeffs, s)}; }

  void mul_add_to(APoly& acc, const APoly& a, const APoly& b) const {
    if (a.coeffs.empty() || b.coeffs.empty()) return;
    const std::size_t n = a.coeffs.size() + b.coeffs.size() - 1;
    if (acc.coeffs.size() < n) acc.coeffs.resize(n, field_->zero());
    const FieldCtx& f = *field_;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      const Fq ai = a.coeffs[i];
      if (ai.v == 0) continue;
      Fq* out = acc.coeffs.data() + i;
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) out[j] = f.add(out[j], f.mul(ai, b.coeffs[j]));
    }
    upoly::trim(f, acc.coeffs);
  }

  APoly pow(const APoly& a, std::uint64_t e) const { return APoly{upoly::pow(*field_, a.coeffs, e)}; }

  // a^(q^k): coefficients are fixed by Frobenius, so exponents scale by q^k.
  APoly frobenius(const APoly& a, int k = 1) const {
    if (a.is_zero()) return a;
    const std::int64_t s = checked_pow(q(), k);
    APoly out;
    out.coeffs.assign(static_cast<std::size_t>(checked_add(checked_mul(a.degree(), s), 1)), field_->zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i * static_cast<std::size_t>(s)] = a.coeffs[i];
    return out;
  }

  std::pair<APoly, APoly> divrem(const APoly& a, const APoly& b) const {
    auto [quot, rem] = upoly::divrem(*field_, a.coeffs, b.coeffs);
    return {APoly{std::move(quot)}, APoly{std::move(rem)}};
  }
  APoly rem(const APoly& a, const APoly& b) const { return divrem(a, b).second; }
  APoly exact_div(const APoly& a, const APoly& b) const {
    return APoly{upoly::exact_div(*field_, a.coeffs, b.coeffs)};
  }
  APoly gcd(const APoly& a, const APoly& b) const { return APoly{upoly::gcd(*field_, a.coeffs, b.coeffs)}; }
  APoly monic(const APoly& a) const { return APoly{upoly::monic(*field_, a.coeffs)}; }
  bool is_monic(const APoly& a) const { return !a.is_zero() && a.coeffs.back() == field_->one(); }

  Fq eval(const APoly& a, Fq x) const {
    Fq acc = field_->zero();
    for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), a.coeffs[i]);
    return acc;
  }

  std::optional<APoly> unit_inverse(const APoly& a) const {
    if (a.degree() != 0) return std::nullopt;
    return constant(field_->inv(a.coeffs[0]));
  }
  std::optional<APoly> exact_quotient(const APoly& a, const APoly& b) const {
    if (b.is_zero()) return std::nullopt;
    auto [quot, rem] = divrem(a, b);
    if (!rem.is_zero()) return std::nullopt;
    return quot;
  }

  APoly from_apoly(const APoly& a) const { return a; }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ || *a.field_ == *b.field_;
  }

 private:
  FieldPtr field_;
};

inline PolyRingPtr make_poly_ring(FieldPtr field) { return std::make_shared<const PolyRing>(std::move(field)); }

// Enumerates the monic polynomials of degree `deg` in a fixed order.
template <class F>
void for_each_monic(const PolyRing& A, int deg, F&& fn) {
  const auto q = A.q();
  const std::int64_t count = checked_pow(q, deg);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::vector<Fq> c(static_cast<std::size_t>(deg) + 1);
    std::int64_t v = idx;
    for (int i = 0; i < deg; ++i) {
      c[static_cast<std::size_t>(i)] = Fq{static_cast<std::uint32_t>(v % q)};
      v /= q;
    }
    c.back() = A.field().one();
    fn(APoly{std::move(c)});
  }
}

// ---------------------------------------------------------------------------
// K = Frac(A)

// Always reduced, with a monic denominator.
struct KFrac {
  APoly num;
  APoly den;
  friend bool operator==(const KFrac&, const KFrac&) = default;
};

class FracField;
using FracFieldPtr = std::shared_ptr<const FracField>;

class FracField {
 public:
  using Elem = KFrac;
  static constexpr const char* kTag = "K";

  explicit FracField(PolyRingPtr A) : A_(std::move(A)) {}

  const PolyRing& base() const { return *A_; }
  const PolyRingPtr& base_ptr() const { return A_; }
  const FieldCtx& field() const { return A_->field(); }
  std::uint32_t q() const { return A_->q(); }

  KFrac zero() const { return {A_->zero(), A_->one()}; }
  KFrac one() const { return {A_->one(), A_->one()}; }
  bool is_zero(const KFrac& a) const { return a.num.is_zero(); }
  KFrac from_int(long long n) const { return {A_->from_int(n), A_->one()}; }
  KFrac from_apoly(const APoly& a) const { return {a, A_->one()}; }

  KFrac make(const APoly& num, const APoly& den) const {
    if (den.is_zero()) fail(Errc::DivisionByZero, "fraction with zero denominator");
    if (num.is_zero()) return zero();
    const APoly g = A_->gcd(num, den);
    APoly n = A_->exact_div(num, g), d = A_->exact_div(den, g);
    const Fq lead_inv = field().inv(d.coeffs.back());
    return {A_->scale(n, lead_inv), A_->scale(d, lead_inv)};
  }

  KFrac add(const KFrac& a, const KFrac& b) const {
    if (a.den == b.den) return make(A_->add(a.num, b.num), a.den);
    return make(A_->add(A_->mul(a.num, b.den), A_->mul(b.num, a.den)), A_->mul(a.den, b.den));
  }
  KFrac neg(const KFrac& a) const { return {A_->neg(a.num), a.den}; }
  KFrac sub(const KFrac& a, const KFrac& b) const { return add(a, neg(b)); }
  KFrac mul(const KFrac& a, const KFrac& b) const {
    if (a.num.is_zero() || b.num.is_zero()) return zero();
    return make(A_->mul(a.num, b.num), A_->mul(a.den, b.den));
  }
  KFrac inv(const KFrac& a) const {
    if (a.num.is_zero()) fail(Errc::DivisionByZero, "inverse of zero in K");
    return make(a.den, a.num);
  }
  std::optional<KFrac> unit_inverse(const KFrac& a) const {
    if (a.num.is_zero()) return std::nullopt;
    return inv(a);
  }
  std::optional<KFrac> exact_quotient(const KFrac& a, const KFrac& b) const {
    if (b.num.is_zero()) return std::nullopt;
    return mul(a, inv(b));
  }

  friend bool operator==(const FracField& a, const FracField& b) { return *a.A_ == *b.A_; }

 private:
  PolyRingPtr A_;
};

inline FracFieldPtr make_frac_field(PolyRingPtr A) { return std::make_shared<const FracField>(std::move(A)); }

// ---------------------------------------------------------------------------
// Primes and residue fields

struct PrimeSpec {
  APoly pi;
  int d = 0;
  friend bool operator==(const PrimeSpec&, const PrimeSpec&) = default;
};

inline bool has_root(const PolyRing& A, const APoly& a) {
  for (std::uint32_t v = 0; v < A.q(); ++v)
    if (A.eval(a, Fq{v}).v == 0) return true;
  return false;
}

// Irreducibility by root search (degree <= 3) or trial division by every
// monic polynomial of degree <= deg/2.
inline bool is_irreducible(const PolyRing& A, const APoly& a) {
  const int n = a.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  if (n <= 3) return !has_root(A, a);
  bool found = false;
  for (int deg = 1; 2 * deg <= n && !found; ++deg) {
    for_each_monic(A, deg, [&](const APoly& f) {
      if (!found && A.rem(a, f).is_zero()) found = true;
    });
  }
  return !found;
}

inline PrimeSpec validate_prime(const APoly& pi, const PolyRing& A) {
  if (pi.is_zero()) fail(Errc::InvalidArgument, "prime must be nonzero");
  if (!A.is_monic(pi)) fail(Errc::NotMonic, "prime generator must be monic");
  if (pi == A.T()) fail(Errc::PrimeIsT, "the prime (T) is excluded");
  if (pi.degree() == 0) fail(Errc::Reducible, "a unit does not generate a prime");
  if (!is_irreducible(A, pi)) fail(Errc::Reducible, "polynomial is reducible");
  return PrimeSpec{pi, pi.degree()};
}

class ResidueField;
using ResidueFieldPtr = std::shared_ptr<const ResidueField>;

// F_p = A/(pi), elements are APoly of degree < d.
class ResidueField {
 public:
  using Elem = APoly;
  static constexpr const char* kTag = "Fpd";

  ResidueField(PolyRingPtr A, PrimeSpec prime) : A_(std::move(A)), prime_(std::move(prime)) {}

  const PolyRing& base() const { return *A_; }
  const PolyRingPtr& base_ptr() const { return A_; }
  const PrimeSpec& prime() const { return prime_; }
  const FieldCtx& field() const { return A_->field(); }
  std::uint32_t q() const { return A_->q(); }
  std::int64_t size() const { return checked_pow(q(), prime_.d); }

  APoly zero() const { return {}; }
  APoly one() const { return A_->one(); }
  bool is_zero(const APoly& a) const { return a.is_zero(); }
  APoly from_int(long long n) const { return A_->from_int(n); }
  APoly from_apoly(const APoly& a) const { return A_->rem(a, prime_.pi); }

  APoly add(const APoly& a, const APoly& b) const { return A_->add(a, b); }
  APoly sub(const APoly& a, const APoly& b) const { return A_->sub(a, b); }
  APoly neg(const APoly& a) const { return A_->neg(a); }
  APoly mul(const APoly& a, const APoly& b) const { return A_->rem(A_->mul(a, b), prime_.pi); }

  APoly inv(const APoly& a) const {
    if (a.is_zero()) fail(Errc::DivisionByZero, "inverse of zero in the residue field");
    // Extended Euclid: track s with s*a = r (mod pi).
    APoly r0 = prime_.pi, r1 = a, s0 = zero(), s1 = one();
    while (!r1.is_zero()) {
      auto [quot, rem] = A_->divrem(r0, r1);
      APoly s2 = A_->sub(s0, A_->mul(quot, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant since pi is irreducible.
    return from_apoly(A_->scale(s0, field().inv(r0.coeffs[0])));
  }
  std::optional<APoly> unit_inverse(const APoly& a) const {
    if (a.is_zero()) return std::nullopt;
    return inv(a);
  }
  std::optional<APoly> exact_quotient(const APoly& a, const APoly& b) const {
    if (b.is_zero()) return std::nullopt;
    return mul(a, inv(b));
  }

  friend bool operator==(const ResidueField& a, const ResidueField& b) {
    return *a.A_ == *b.A_ && a.prime_ == b.prime_;
  }

 private:
  PolyRingPtr A_;
  PrimeSpec prime_;
};

inline ResidueFieldPtr make_residue_field(PolyRingPtr A, PrimeSpec prime) {
  return std::make_shared<const ResidueField>(std::move(A), std::move(prime));
}

// ---------------------------------------------------------------------------
// pi-adic valuations and reduction

inline Valuation vp(const PolyRing& A, const APoly& a, const PrimeSpec& prime) {
  if (a.is_zero()) return Valuation::infinity();
  int v = 0;
  APoly cur = a;
  for (;;) {
    auto [quot, rem] = A.divrem(cur, prime.pi);
    if (!rem.is_zero()) break;
    cur = std::move(quot);
    ++v;
  }
  return Valuation(v);
}

inline Valuation vp(const FracField& K, const KFrac& a, const PrimeSpec& prime) {
  if (a.num.is_zero()) return Valuation::infinity();
  return vp(K.base(), a.num, prime) - vp(K.base(), a.den, prime);
}

inline APoly residue_map(const ResidueField& F, const APoly& a) { return F.from_apoly(a); }

inline APoly residue_map(const ResidueField& F, const KFrac& a) {
  const APoly den = F.from_apoly(a.den);
  if (den.is_zero()) fail(Errc::NotPIntegral, "element has negative pi-adic valuation");
  return F.mul(F.from_apoly(a.num), F.inv(den));
}

}  // namespace dmod
