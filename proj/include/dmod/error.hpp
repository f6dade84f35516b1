#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dmod {

enum class Errc {
  EvenCharacteristic,
  NotPrime,
  BadModulus,
  DivisionByZero,
  InexactDivision,
  NotMonic,
  Reducible,
  PrimeIsT,
  NotPIntegral,
  RingMismatch,
  NonUnitConstantTerm,
  InexactSeriesDivision,
  InnerValuationZero,
  ZeroMultiplier,
  PrecisionTooLow,
  TypeMismatch,
  NotModular,
  EmptySpace,
  ZeroDivisor,
  ZeroPolynomial,
  Overflow,
  ParseError,
  InvalidArgument,
};

inline std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NotPrime: return "NotPrime";
    case Errc::BadModulus: return "BadModulus";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InexactDivision: return "InexactDivision";
    case Errc::NotMonic: return "NotMonic";
    case Errc::Reducible: return "Reducible";
    case Errc::PrimeIsT: return "PrimeIsT";
    case Errc::NotPIntegral: return "NotPIntegral";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case Errc::InexactSeriesDivision: return "InexactSeriesDivision";
    case Errc::InnerValuationZero: return "InnerValuationZero";
    case Errc::ZeroMultiplier: return "ZeroMultiplier";
    case Errc::PrecisionTooLow: return "PrecisionTooLow";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::NotModular: return "NotModular";
    case Errc::EmptySpace: return "EmptySpace";
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::Overflow: return "Overflow";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Checked machine-integer helpers for degrees, weights and exponents.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) fail(Errc::Overflow, "integer multiplication overflow");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) fail(Errc::Overflow, "integer addition overflow");
  return out;
}

inline std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

inline int to_int(std::int64_t v) {
  if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min())
    fail(Errc::Overflow, "value does not fit in int");
  return static_cast<int>(v);
}

// A valuation in Z ∪ {+∞}.
class Valuation {
 public:
  constexpr explicit Valuation(int v) : value_(v), infinite_(false) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr int value() const {
    if (infinite_) throw std::logic_error("value() of infinite valuation");
    return value_;
  }

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
      return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr Valuation operator-(const Valuation& a, const Valuation& b) {
    if (b.infinite_) throw std::logic_error("subtracting an infinite valuation");
    if (a.infinite_) return infinity();
    return Valuation(a.value_ - b.value_);
  }

  std::string to_string() const { return infinite_ ? "+inf" : std::to_string(value_); }

 private:
  constexpr Valuation() : value_(0), infinite_(true) {}
  int value_;
  bool infinite_;
};

}  // namespace dmod
