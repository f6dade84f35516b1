#pragma once

// Shared fixtures for the unit tests: small fields and seeded random data.

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "dmod/dmod.hpp"

namespace dmod::testing {

inline FieldPtr f3() { return make_field_ctx(3, 1); }
inline FieldPtr f5() { return make_field_ctx(5, 1); }
inline FieldPtr f9() { return make_field_ctx(3, 2, std::vector<std::uint32_t>{1, 0, 1}); }

// Polynomial from small integer coefficients (ascending), prime fields only.
inline APoly ints(const PolyRing& A, std::initializer_list<long long> cs) {
  std::vector<Fq> v;
  for (long long c : cs) v.push_back(A.field().from_int(c));
  return A.make(std::move(v));
}

inline APoly parse(const PolyRing& A, const std::string& s) { return parse_apoly(A, s); }

inline Fq random_fq(std::mt19937_64& rng, const FieldCtx& F) {
  return Fq{static_cast<std::uint32_t>(rng() % F.q())};
}

inline APoly random_apoly(std::mt19937_64& rng, const PolyRing& A, int max_deg) {
  const int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 2)) - 1;
  std::vector<Fq> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_fq(rng, A.field()));
  return A.make(std::move(c));
}

inline APoly random_nonzero_apoly(std::mt19937_64& rng, const PolyRing& A, int max_deg) {
  for (;;) {
    APoly a = random_apoly(rng, A, max_deg);
    if (!a.is_zero()) return a;
  }
}

inline APoly random_monic(std::mt19937_64& rng, const PolyRing& A, int deg) {
  std::vector<Fq> c;
  for (int i = 0; i < deg; ++i) c.push_back(random_fq(rng, A.field()));
  c.push_back(A.field().one());
  return A.make(std::move(c));
}

inline IsobaricPoly<PolyRing> random_iso(std::mt19937_64& rng, const PolyRingPtr& A, int w, int max_deg) {
  std::vector<APoly> c;
  for (int j = 0; j <= w; ++j) c.push_back(random_apoly(rng, *A, max_deg));
  return IsobaricPoly<PolyRing>(A, std::move(c));
}

// Random form of weight at most max_w (q-1) + 2l over A.
inline GradedForm<PolyRing> random_form(std::mt19937_64& rng, const PolyRingPtr& A, int max_w, int max_deg) {
  const int q = static_cast<int>(A->q());
  const int l = static_cast<int>(rng() % static_cast<std::uint64_t>(q - 1));
  const int w = static_cast<int>(rng() % static_cast<std::uint64_t>(max_w + 1));
  return GradedForm<PolyRing>(w * (q - 1) + 2 * l, l, random_iso(rng, A, w, max_deg));
}

}  // namespace dmod::testing

namespace dmod {
// gtest printers
inline void PrintTo(const APoly& a, std::ostream* os) {
  *os << "[";
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) *os << (i ? "," : "") << a.coeffs[i].v;
  *os << "]";
}
inline void PrintTo(const Fq& a, std::ostream* os) { *os << "Fq{" << a.v << "}"; }
}  // namespace dmod
