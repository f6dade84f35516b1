#pragma once

// The graded algebra of modular forms for Gamma_0(T).
//
// A form of weight k and type l (0 <= l <= q-2) is stored as the isobaric
// polynomial phi with f = phi(Delta_W, Delta_T) * E_T^l. An isobaric
// polynomial of weight w(q-1) is the coefficient vector c_0..c_w of
//   sum_j c_j U^{w-j} V^j,
// i.e. of its univariate representative p(x) = sum_j c_j x^j with x = V/U.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmod/error.hpp"
#include "dmod/generators.hpp"
#include "dmod/series.hpp"
#include "dmod/upoly.hpp"

namespace dmod {

inline int normalize_type(long long l, std::uint32_t q) {
  const long long m = static_cast<long long>(q) - 1;
  return static_cast<int>(((l % m) + m) % m);
}

template <CoefficientRing Ring>
class IsobaricPoly {
 public:
  using Elem = typename Ring::Elem;
  using RingPtr = std::shared_ptr<const Ring>;

  // coeffs.size() == w + 1
  IsobaricPoly(RingPtr ring, std::vector<Elem> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) fail(Errc::InvalidArgument, "isobaric polynomial needs at least one coefficient");
  }

  static IsobaricPoly zero(RingPtr ring, int w) {
    auto z = ring->zero();
    return IsobaricPoly(std::move(ring), std::vector<Elem>(static_cast<std::size_t>(w) + 1, z));
  }
  static IsobaricPoly one(RingPtr ring) {
    auto o = ring->one();
    return IsobaricPoly(std::move(ring), {o});
  }
  // c U^{w-j} V^j
  static IsobaricPoly monomial(RingPtr ring, Elem c, int w, int j) {
    auto out = zero(std::move(ring), w);
    out.coeffs_.at(static_cast<std::size_t>(j)) = std::move(c);
    return out;
  }

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  const Elem& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  int w() const { return static_cast<int>(coeffs_.size()) - 1; }
  int weight() const { return to_int(checked_mul(w(), static_cast<std::int64_t>(ring_->q()) - 1)); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Elem& c) { return ring_->is_zero(c); });
  }

  // p(x) with trailing zeros removed.
  std::vector<Elem> univariate() const {
    auto p = coeffs_;
    upoly::trim(*ring_, p);
    return p;
  }

  // Exponent of U dividing the polynomial (w - deg p); w+1 for zero.
  int u_content() const { return w() - upoly::degree(univariate()); }
  // Exponent of V dividing the polynomial (lowest nonzero index); w+1 for zero.
  int v_content() const {
    for (int j = 0; j <= w(); ++j)
      if (!ring_->is_zero(coeffs_[static_cast<std::size_t>(j)])) return j;
    return w() + 1;
  }

  friend IsobaricPoly operator+(const IsobaricPoly& a, const IsobaricPoly& b) {
    a.check_compatible(b);
    std::vector<Elem> out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.ring_->add(a.coeffs_[i], b.coeffs_[i]);
    return IsobaricPoly(a.ring_, std::move(out));
  }
  friend IsobaricPoly operator-(const IsobaricPoly& a, const IsobaricPoly& b) {
    a.check_compatible(b);
    std::vector<Elem> out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.ring_->sub(a.coeffs_[i], b.coeffs_[i]);
    return IsobaricPoly(a.ring_, std::move(out));
  }
  friend IsobaricPoly operator*(const IsobaricPoly& a, const IsobaricPoly& b) {
    a.check_ring(b);
    const Ring& r = *a.ring_;
    std::vector<Elem> out(a.coeffs_.size() + b.coeffs_.size() - 1, r.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (r.is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) mul_add_to(r, out[i + j], a.coeffs_[i], b.coeffs_[j]);
    }
    return IsobaricPoly(a.ring_, std::move(out));
  }

  IsobaricPoly scale(const Elem& s) const {
    std::vector<Elem> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(ring_->mul(s, c));
    return IsobaricPoly(ring_, std::move(out));
  }

  // Multiplication by UV.
  IsobaricPoly times_uv() const {
    std::vector<Elem> out;
    out.reserve(coeffs_.size() + 2);
    out.push_back(ring_->zero());
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    out.push_back(ring_->zero());
    return IsobaricPoly(ring_, std::move(out));
  }

  friend bool operator==(const IsobaricPoly& a, const IsobaricPoly& b) {
    a.check_ring(b);
    return a.coeffs_ == b.coeffs_;
  }

  void check_ring(const IsobaricPoly& other) const {
    if (ring_ != other.ring_ && !(*ring_ == *other.ring_))
      fail(Errc::RingMismatch, "isobaric polynomials over different rings");
  }

 private:
  void check_compatible(const IsobaricPoly& other) const {
    check_ring(other);
    if (w() != other.w()) fail(Errc::TypeMismatch, "adding isobaric polynomials of different weights");
  }

  RingPtr ring_;
  std::vector<Elem> coeffs_;
};

template <CoefficientRing Ring>
IsobaricPoly<Ring> pow(const IsobaricPoly<Ring>& a, std::uint64_t e) {
  auto out = IsobaricPoly<Ring>::one(a.ring_ptr());
  auto base = a;
  while (e) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

// Coefficientwise ring change (embedding or reduction).
template <CoefficientRing To, CoefficientRing From, class F>
IsobaricPoly<To> map_coeffs(const IsobaricPoly<From>& a, std::shared_ptr<const To> target, F&& fn) {
  std::vector<typename To::Elem> out;
  out.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) out.push_back(fn(c));
  return IsobaricPoly<To>(std::move(target), std::move(out));
}

// r_{k,l} = (k - 2l)/(q - 1), or nullopt if the space is {0}.
inline std::optional<int> r_kl(std::uint32_t q, long long k, long long l) {
  const long long m = static_cast<long long>(q) - 1;
  if (k < 0) return std::nullopt;
  const long long ln = normalize_type(l, q);
  if ((k - 2 * ln) % m != 0 || k < 2 * ln) return std::nullopt;
  return static_cast<int>((k - 2 * ln) / m);
}

inline int dimension(std::uint32_t q, long long k, long long l) {
  const auto r = r_kl(q, k, l);
  return r ? *r + 1 : 0;
}

// Two forms of weight k, type l agreeing at u^i for all i <= bound are equal.
inline int equality_bound(std::uint32_t q, long long k, long long l) {
  const auto r = r_kl(q, k, l);
  if (!r) fail(Errc::TypeMismatch, "weight and type are incompatible");
  return to_int(checked_add(checked_mul(*r, static_cast<std::int64_t>(q) - 1), normalize_type(l, q)));
}

template <CoefficientRing Ring>
class GradedForm {
 public:
  using Iso = IsobaricPoly<Ring>;

  GradedForm(int k, int l, Iso iso) : k_(k), l_(0), iso_(std::move(iso)) {
    const auto q = iso_.ring().q();
    const auto r = r_kl(q, k, l);
    if (!r) fail(Errc::TypeMismatch, "weight " + std::to_string(k) + " and type " + std::to_string(l) + " are incompatible");
    if (*r != iso_.w())
      fail(Errc::TypeMismatch, "isobaric part has weight " + std::to_string(iso_.weight()) + ", expected " +
                                   std::to_string(k - 2 * normalize_type(l, q)));
    l_ = normalize_type(l, q);
  }

  static GradedForm one(typename Iso::RingPtr ring) { return GradedForm(0, 0, Iso::one(std::move(ring))); }

  int k() const { return k_; }
  int l() const { return l_; }
  const Iso& iso() const { return iso_; }
  const Ring& ring() const { return iso_.ring(); }
  const typename Iso::RingPtr& ring_ptr() const { return iso_.ring_ptr(); }
  std::uint32_t q() const { return iso_.ring().q(); }
  bool is_zero() const { return iso_.is_zero(); }

  // Zero forms of equal weight compare equal whatever their type.
  friend bool operator==(const GradedForm& a, const GradedForm& b) {
    if (a.k_ != b.k_) return false;
    if (a.is_zero() && b.is_zero()) return true;
    return a.l_ == b.l_ && a.iso_ == b.iso_;
  }

  // Vanishing orders at the cusps; nullopt for the zero form.
  std::optional<int> order_at_infinity() const {
    if (is_zero()) return std::nullopt;
    return iso_.v_content() * static_cast<int>(q() - 1) + l_;
  }
  std::optional<int> order_at_zero() const {
    if (is_zero()) return std::nullopt;
    return iso_.u_content() * static_cast<int>(q() - 1) + l_;
  }
  bool is_cusp_form() const {
    return is_zero() || (*order_at_infinity() >= 1 && *order_at_zero() >= 1);
  }
  bool is_doubly_cuspidal() const {
    return is_zero() || (*order_at_infinity() >= 2 && *order_at_zero() >= 2);
  }

 private:
  int k_;
  int l_;
  Iso iso_;
};

namespace detail {

// Absorbs Z^{q-1} = UV when the raw type overflows.
template <CoefficientRing Ring>
GradedForm<Ring> normalized(int k, int raw_l, IsobaricPoly<Ring> iso) {
  const int m = static_cast<int>(iso.ring().q()) - 1;
  while (raw_l >= m) {
    iso = iso.times_uv();
    raw_l -= m;
  }
  return GradedForm<Ring>(k, raw_l, std::move(iso));
}

}  // namespace detail

template <CoefficientRing Ring>
GradedForm<Ring> graded_mul(const GradedForm<Ring>& f, const GradedForm<Ring>& g) {
  return detail::normalized(to_int(checked_add(f.k(), g.k())), f.l() + g.l(), f.iso() * g.iso());
}

template <CoefficientRing Ring>
GradedForm<Ring> pow(const GradedForm<Ring>& f, std::uint64_t e) {
  auto out = GradedForm<Ring>::one(f.ring_ptr());
  for (std::uint64_t i = 0; i < e; ++i) out = graded_mul(out, f);
  return out;
}

// The derivation dU = -UZ, dV = 0, dZ = Z^2 applied to phi(U,V) Z^l; it
// realizes the modular derivative Theta + kE on weight-k forms.
template <CoefficientRing Ring>
GradedForm<Ring> partial(const GradedForm<Ring>& f) {
  const Ring& r = f.ring();
  const int w = f.iso().w();
  std::vector<typename Ring::Elem> out;
  out.reserve(static_cast<std::size_t>(w) + 1);
  for (int j = 0; j <= w; ++j) out.push_back(r.mul(r.from_int(f.l() - (w - j)), f.iso().coeff(j)));
  return detail::normalized(f.k() + 2, f.l() + 1, IsobaricPoly<Ring>(f.ring_ptr(), std::move(out)));
}

// f / E_T^l
template <CoefficientRing Ring>
GradedForm<Ring> cT(const GradedForm<Ring>& f) {
  return GradedForm<Ring>(f.k() - 2 * f.l(), 0, f.iso());
}

template <CoefficientRing Ring>
USeries<Ring> to_series(const GradedForm<Ring>& f, const Generators& gen, int N) {
  const auto basis = gen.basis(f.iso().w(), f.l(), N);
  USeries<Ring> acc(f.ring_ptr(), N);
  for (int j = 0; j <= f.iso().w(); ++j) {
    const auto& c = f.iso().coeff(j);
    if (f.ring().is_zero(c)) continue;
    acc = acc + embed(basis[static_cast<std::size_t>(j)], f.ring_ptr()).scale(c);
  }
  return acc;
}

// Unique (k, l, phi) whose expansion is s, by triangular solve against the
// basis Delta_W^{w-j} Delta_T^j E_T^l = u^{j(q-1)+l} + ...; the residual is
// then checked to vanish up to the precision of s.
template <CoefficientRing Ring>
GradedForm<Ring> from_series(int k, int l, const USeries<Ring>& s, const Generators& gen) {
  const auto q = s.ring().q();
  const auto r = r_kl(q, k, l);
  if (!r) fail(Errc::TypeMismatch, "weight " + std::to_string(k) + " and type " + std::to_string(l) + " are incompatible");
  const int w = *r;
  const int lt = normalize_type(l, q);
  const int bound = equality_bound(q, k, lt);
  if (s.prec() < bound + 1)
    fail(Errc::PrecisionTooLow, "need precision " + std::to_string(bound + 1) + ", have " + std::to_string(s.prec()));
  const auto basis = gen.basis(w, lt, s.prec());
  const Ring& ring = s.ring();
  std::vector<typename Ring::Elem> coeffs;
  USeries<Ring> residual = s;
  for (int j = 0; j <= w; ++j) {
    auto c = residual.coeff(j * static_cast<int>(q - 1) + lt);
    if (!ring.is_zero(c)) residual = residual - embed(basis[static_cast<std::size_t>(j)], s.ring_ptr()).scale(c);
    coeffs.push_back(std::move(c));
  }
  if (!residual.is_zero())
    fail(Errc::NotModular, "residual is nonzero at u^" + std::to_string(residual.terms().front().exp));
  return GradedForm<Ring>(k, lt, IsobaricPoly<Ring>(s.ring_ptr(), std::move(coeffs)));
}

// Forms f_0..f_r of weight k, type l over A with b_{f_j}(i) = delta_ij.
inline std::vector<GradedForm<PolyRing>> victor_miller(const Generators& gen, int k, int l) {
  const auto q = gen.q();
  const int dim = dimension(q, k, l);
  if (dim == 0) fail(Errc::EmptySpace, "M_{k,l} is zero");
  const int w = dim - 1;
  const int lt = normalize_type(l, q);
  const PolyRing& A = gen.ring();
  const auto basis = gen.basis(w, lt, equality_bound(q, k, lt) + 1);
  auto slot = [&](int i) { return i * static_cast<int>(q - 1) + lt; };

  // rows[j] = coefficient vector of f_j in the basis; b[j] = its b-values.
  std::vector<std::vector<APoly>> rows(static_cast<std::size_t>(dim), std::vector<APoly>(static_cast<std::size_t>(dim)));
  std::vector<std::vector<APoly>> b(static_cast<std::size_t>(dim), std::vector<APoly>(static_cast<std::size_t>(dim)));
  for (int j = 0; j < dim; ++j) {
    rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = A.one();
    for (int i = 0; i < dim; ++i)
      b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = basis[static_cast<std::size_t>(j)].coeff(slot(i));
  }
  // The b-matrix is upper unitriangular; clear above the diagonal bottom-up.
  for (int j = dim - 2; j >= 0; --j) {
    auto& row = rows[static_cast<std::size_t>(j)];
    auto& bj = b[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < dim; ++i) {
      const APoly c = bj[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      const auto& other = rows[static_cast<std::size_t>(i)];
      const auto& bi = b[static_cast<std::size_t>(i)];
      for (int t = 0; t < dim; ++t) {
        row[static_cast<std::size_t>(t)] = A.sub(row[static_cast<std::size_t>(t)], A.mul(c, other[static_cast<std::size_t>(t)]));
        bj[static_cast<std::size_t>(t)] = A.sub(bj[static_cast<std::size_t>(t)], A.mul(c, bi[static_cast<std::size_t>(t)]));
      }
    }
  }
  std::vector<GradedForm<PolyRing>> out;
  for (auto& row : rows) out.emplace_back(k, lt, IsobaricPoly<PolyRing>(gen.ring_ptr(), std::move(row)));
  return out;
}

// phi_d with g_d = phi_d(Delta_W, Delta_T):
//   phi_0 = 1, phi_1 = U - T^q V,
//   phi_d = phi_{d-1} phi_1^{q^{d-1}} + (T^{q^{d-1}} - T) phi_{d-2} (U^q V)^{q^{d-2}}.
inline IsobaricPoly<PolyRing> phi_d(const PolyRingPtr& A, int d) {
  using Iso = IsobaricPoly<PolyRing>;
  if (d < 0) fail(Errc::InvalidArgument, "phi_d needs d >= 0");
  const auto q = A->q();
  const Iso phi1(A, {A->one(), A->neg(A->frobenius(A->T()))});
  Iso prev2 = Iso::one(A), prev = phi1;
  if (d == 0) return prev2;
  for (int i = 2; i <= d; ++i) {
    const std::int64_t m = checked_pow(q, i - 2);
    const Iso uqv = Iso::monomial(A, A->one(), to_int(checked_mul(q + 1, m)), to_int(m));
    const APoly bracket = A->sub(A->frobenius(A->T(), i - 1), A->T());
    Iso next = prev * pow(phi1, static_cast<std::uint64_t>(checked_pow(q, i - 1))) + (prev2 * uqv).scale(bracket);
    prev2 = std::move(prev);
    prev = std::move(next);
  }
  return prev;
}

}  // namespace dmod
