#pragma once

// The finite field F_q, q = p^r, p an odd prime.
//
// Elements are stored as an index v = sum_i coords[i] * p^i in [0, q), where
// coords are the F_p coordinates against the basis 1, x, ..., x^{r-1} of
// F_p[x]/(m(x)). Multiplication goes through discrete log tables; addition is
// digit-wise (tabulated for small extension fields).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dmod/error.hpp"

namespace dmod {

struct Fq {
  std::uint32_t v = 0;
  friend constexpr bool operator==(Fq, Fq) = default;
  friend constexpr auto operator<=>(Fq, Fq) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over F_p, ascending coefficients; used only while
// validating a modulus and building tables.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo a nonzero b.
inline FpPoly fp_rem(FpPoly a, const FpPoly& b, std::uint32_t p) {
  fp_trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv_lead = fp_inv(b.back(), p);
  while (a.size() > db) {
    const std::uint64_t f = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f) * b[i]) % p);
    fp_trim(a);
  }
  return a;
}

}  // namespace detail

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

class FieldCtx {
 public:
  using Elem = Fq;

  std::uint32_t p() const { return p_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t q() const { return q_; }
  // Monic modulus m(x), r+1 coefficients ascending; {0, 1} for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fq zero() const { return Fq{0}; }
  Fq one() const { return Fq{1}; }
  bool is_zero(Fq a) const { return a.v == 0; }

  Fq from_int(long long n) const {
    long long m = n % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return Fq{static_cast<std::uint32_t>(m)};
  }

  Fq add(Fq a, Fq b) const {
    if (r_ == 1) {
      std::uint32_t s = a.v + b.v;
      return Fq{s >= p_ ? s - p_ : s};
    }
    if (!add_table_.empty()) return Fq{add_table_[a.v * q_ + b.v]};
    return add_digits(a, b);
  }

  Fq neg(Fq a) const {
    if (r_ == 1) return Fq{a.v == 0 ? 0 : p_ - a.v};
    std::uint32_t out = 0, scale = 1, v = a.v;
    for (std::uint32_t i = 0; i < r_; ++i) {
      const std::uint32_t d = v % p_;
      v /= p_;
      out += (d == 0 ? 0 : p_ - d) * scale;
      scale *= p_;
    }
    return Fq{out};
  }

  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }

  Fq mul(Fq a, Fq b) const {
    if (a.v == 0 || b.v == 0) return Fq{0};
    if (r_ == 1) return Fq{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % p_)};
    return Fq{exp_[log_[a.v] + log_[b.v]]};
  }

  void mul_add_to(Fq& acc, Fq a, Fq b) const { acc = add(acc, mul(a, b)); }

  Fq inv(Fq a) const {
    if (a.v == 0) fail(Errc::DivisionByZero, "inverse of zero in F_q");
    if (r_ == 1) return Fq{detail::fp_inv(a.v, p_)};
    return Fq{exp_[(q_ - 1 - log_[a.v]) % (q_ - 1)]};
  }

  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

  std::optional<Fq> unit_inverse(Fq a) const {
    if (a.v == 0) return std::nullopt;
    return inv(a);
  }

  std::optional<Fq> exact_quotient(Fq a, Fq b) const {
    if (b.v == 0) return std::nullopt;
    return div(a, b);
  }

  Fq pow(Fq a, std::uint64_t e) const {
    Fq out = one();
    while (e) {
      if (e & 1) out = mul(out, a);
      a = mul(a, a);
      e >>= 1;
    }
    return out;
  }

  // The class of x in F_p[x]/(m(x)); requires r > 1.
  Fq generator() const {
    if (r_ == 1) fail(Errc::InvalidArgument, "the prime field has no adjoined generator x");
    return Fq{p_};
  }

  std::vector<std::uint32_t> coords(Fq a) const {
    std::vector<std::uint32_t> out(r_);
    std::uint32_t v = a.v;
    for (auto& c : out) {
      c = v % p_;
      v /= p_;
    }
    return out;
  }

  Fq from_coords(const std::vector<std::uint32_t>& c) const {
    if (c.size() != r_) fail(Errc::InvalidArgument, "F_q element needs exactly r coordinates");
    std::uint32_t v = 0, scale = 1;
    for (auto d : c) {
      if (d >= p_) fail(Errc::InvalidArgument, "F_q coordinate out of range [0,p)");
      v += d * scale;
      scale *= p_;
    }
    return Fq{v};
  }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.modulus_ == b.modulus_;
  }

  friend FieldPtr make_field_ctx(long long p, long long r,
                                 std::optional<std::vector<std::uint32_t>> modulus);

 private:
  FieldCtx() = default;

  Fq add_digits(Fq a, Fq b) const {
    std::uint32_t out = 0, scale = 1, x = a.v, y = b.v;
    for (std::uint32_t i = 0; i < r_; ++i) {
      out += ((x % p_ + y % p_) % p_) * scale;
      x /= p_;
      y /= p_;
      scale *= p_;
    }
    return Fq{out};
  }

  // Multiplication straight from coordinates; used to build the log tables.
  Fq mul_slow(Fq a, Fq b) const {
    detail::FpPoly x = coords(a), y = coords(b), prod(2 * r_, 0);
    for (std::uint32_t i = 0; i < r_; ++i)
      for (std::uint32_t j = 0; j < r_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_);
    auto rem = detail::fp_rem(prod, modulus_, p_);
    rem.resize(r_, 0);
    return from_coords(rem);
  }

  void build_tables() {
    if (r_ == 1) return;
    const auto factors = detail::prime_factors(q_ - 1);
    auto pow_slow = [&](Fq a, std::uint64_t e) {
      Fq out = one();
      while (e) {
        if (e & 1) out = mul_slow(out, a);
        a = mul_slow(a, a);
        e >>= 1;
      }
      return out;
    };
    std::uint32_t gen = 0;
    for (std::uint32_t g = 2; g < q_ && gen == 0; ++g) {
      bool primitive = true;
      for (auto f : factors)
        if (pow_slow(Fq{g}, (q_ - 1) / f) == one()) {
          primitive = false;
          break;
        }
      if (primitive) gen = g;
    }
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    Fq cur = one();
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = exp_[i + q_ - 1] = cur.v;
      log_[cur.v] = i;
      cur = mul_slow(cur, Fq{gen});
    }
    if (q_ <= 1024) {
      add_table_.resize(std::size_t{q_} * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b)
          add_table_[a * q_ + b] = static_cast<std::uint16_t>(add_digits(Fq{a}, Fq{b}).v);
    }
  }

  std::uint32_t p_ = 0, r_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_, log_;
  std::vector<std::uint16_t> add_table_;
};

inline constexpr std::uint32_t kMaxFieldSize = 65536;

// Validates (p, r, m) and builds the field context. The modulus is required
// iff r > 1 and must be monic irreducible of degree r over F_p.
inline FieldPtr make_field_ctx(long long p, long long r,
                               std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  if (p == 2) fail(Errc::EvenCharacteristic, "characteristic 2 is not supported (p must be odd)");
  if (p < 2 || !detail::is_prime(static_cast<std::uint64_t>(p)))
    fail(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (r < 1) fail(Errc::InvalidArgument, "extension degree r must be positive");
  const std::int64_t q = checked_pow(p, r);
  if (q > kMaxFieldSize) fail(Errc::InvalidArgument, "field size q exceeds " + std::to_string(kMaxFieldSize));

  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = static_cast<std::uint32_t>(p);
  ctx->r_ = static_cast<std::uint32_t>(r);
  ctx->q_ = static_cast<std::uint32_t>(q);

  if (r == 1) {
    if (modulus && !(modulus->size() == 2 && modulus->back() == 1))
      fail(Errc::BadModulus, "a prime field takes no modulus (or a monic linear one)");
    ctx->modulus_ = {0, 1};
    return ctx;
  }

  if (!modulus) fail(Errc::BadModulus, "a modulus is required when r > 1");
  auto m = *modulus;
  for (auto& c : m) {
    if (c >= p) fail(Errc::BadModulus, "modulus coefficient out of range [0,p)");
  }
  if (m.size() != static_cast<std::size_t>(r + 1)) fail(Errc::BadModulus, "modulus must have degree r");
  if (m.back() != 1) fail(Errc::BadModulus, "modulus must be monic");

  // Trial division by every monic polynomial of degree 1..r/2.
  const auto pu = static_cast<std::uint32_t>(p);
  for (long long deg = 1; 2 * deg <= r; ++deg) {
    const std::int64_t count = checked_pow(p, deg);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      detail::FpPoly f(static_cast<std::size_t>(deg + 1), 0);
      std::int64_t v = idx;
      for (long long i = 0; i < deg; ++i) {
        f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      f.back() = 1;
      if (detail::fp_rem(m, f, pu).empty()) fail(Errc::BadModulus, "modulus is reducible over F_p");
    }
  }
  ctx->modulus_ = std::move(m);
  ctx->build_tables();
  return ctx;
}

}  // namespace dmod
