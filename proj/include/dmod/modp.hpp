#pragma once

// Reduction of forms modulo a prime p = (pi) != (T) of degree d, the weight
// filtration and the congruence test.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmod/graded.hpp"

namespace dmod {

using ResidueIso = IsobaricPoly<ResidueField>;

template <CoefficientRing Ring>
ResidueIso iso_reduce(const IsobaricPoly<Ring>& phi, const ResidueFieldPtr& F) {
  const ResidueField& res = *F;
  return map_coeffs(phi, F, [&res](const typename Ring::Elem& c) { return residue_map(res, c); });
}

// Quotient b/a when a divides b as a bivariate polynomial.
inline std::optional<ResidueIso> iso_divides(const ResidueIso& a, const ResidueIso& b) {
  a.check_ring(b);
  if (a.is_zero()) fail(Errc::ZeroDivisor, "division by the zero polynomial");
  const ResidueField& F = a.ring();
  const int wq = b.w() - a.w();
  if (wq < 0) return std::nullopt;
  if (b.is_zero()) return ResidueIso::zero(b.ring_ptr(), wq);
  const auto pa = a.univariate(), pb = b.univariate();
  auto [quot, rem] = upoly::divrem(F, pb, pa);
  if (!rem.empty() || upoly::degree(quot) > wq) return std::nullopt;
  quot.resize(static_cast<std::size_t>(wq) + 1, F.zero());
  return ResidueIso(b.ring_ptr(), std::move(quot));
}

inline bool squarefree(const ResidueIso& a) {
  if (a.is_zero()) fail(Errc::ZeroPolynomial, "square-freeness of 0");
  if (a.u_content() > 1) return false;
  const ResidueField& F = a.ring();
  const auto p = a.univariate();
  if (upoly::degree(p) < 1) return true;
  const auto g = upoly::gcd(F, p, upoly::derivative(F, p));
  return upoly::degree(g) == 0;
}

// True iff a and b have no common nonconstant factor.
inline bool iso_coprime(const ResidueIso& a, const ResidueIso& b) {
  a.check_ring(b);
  if (a.is_zero() || b.is_zero()) return false;
  if (a.u_content() > 0 && b.u_content() > 0) return false;
  const auto g = upoly::gcd(a.ring(), a.univariate(), b.univariate());
  return upoly::degree(g) == 0;
}

inline ResidueIso phi_bar(const PolyRingPtr& A, const ResidueFieldPtr& F) {
  return iso_reduce(phi_d(A, F->prime().d), F);
}

struct FiltrationResult {
  std::optional<int> w;  // nullopt means -infinity
  int steps = 0;
  ResidueIso witness;
};

// w(f mod p): strip factors of phi_d-bar, each lowering the weight by q^d - 1.
template <CoefficientRing Ring>
FiltrationResult filtration(const GradedForm<Ring>& f, const PolyRingPtr& A, const ResidueFieldPtr& F) {
  ResidueIso cur = iso_reduce(f.iso(), F);
  if (cur.is_zero()) return {std::nullopt, 0, std::move(cur)};
  const ResidueIso phi = phi_bar(A, F);
  const int drop = to_int(checked_pow(A->q(), F->prime().d) - 1);
  int steps = 0;
  while (auto quot = iso_divides(phi, cur)) {
    cur = std::move(*quot);
    ++steps;
  }
  return {f.k() - steps * drop, steps, std::move(cur)};
}

struct CongruenceResult {
  bool congruent = false;
  int steps = 0;  // m with phi_f = phi_g * phi_d^m (f the heavier form)
  std::string reason;
};

template <CoefficientRing Ring>
CongruenceResult congruence_check(const GradedForm<Ring>& f, const GradedForm<Ring>& g, const PolyRingPtr& A,
                                  const ResidueFieldPtr& F) {
  const ResidueIso rf = iso_reduce(f.iso(), F), rg = iso_reduce(g.iso(), F);
  if (rf.is_zero() && rg.is_zero()) return {true, 0, "both forms reduce to 0"};
  if (rf.is_zero() || rg.is_zero()) return {false, 0, "exactly one form reduces to 0"};
  if (f.l() != g.l()) return {false, 0, "types differ"};
  const std::int64_t period = checked_pow(A->q(), F->prime().d) - 1;
  const bool f_heavy = f.k() >= g.k();
  const int dk = f_heavy ? f.k() - g.k() : g.k() - f.k();
  if (dk % period != 0) return {false, 0, "weights are not congruent mod q^d - 1"};
  const int m = static_cast<int>(dk / period);
  const ResidueIso& heavy = f_heavy ? rf : rg;
  const ResidueIso& light = f_heavy ? rg : rf;
  const ResidueIso expected = light * pow(phi_bar(A, F), static_cast<std::uint64_t>(m));
  if (expected == heavy) return {true, m, "reductions agree after " + std::to_string(m) + " factor(s) of phi_d"};
  return {false, m, "reductions differ"};
}

template <CoefficientRing Ring>
bool congruent(const GradedForm<Ring>& f, const GradedForm<Ring>& g, const PolyRingPtr& A, const ResidueFieldPtr& F) {
  return congruence_check(f, g, A, F).congruent;
}

inline GradedForm<PolyRing> gd_form(const PolyRingPtr& A, int d) {
  const int k = to_int(checked_pow(A->q(), d) - 1);
  return GradedForm<PolyRing>(k, 0, phi_d(A, d));
}

// Isobaric part of c_T(partial(g_d)).
inline IsobaricPoly<PolyRing> psi_d(const PolyRingPtr& A, int d) {
  if (d < 1) fail(Errc::InvalidArgument, "psi_d needs d >= 1");
  return cT(partial(gd_form(A, d))).iso();
}

inline bool coprime_with_phi(const PolyRingPtr& A, const ResidueFieldPtr& F) {
  const int d = F->prime().d;
  return iso_coprime(iso_reduce(psi_d(A, d), F), iso_reduce(phi_d(A, d), F));
}

// First exponent below N where E + partial(g_d) is nonzero mod p, if any.
// The derivation realizes Theta + kE, and k = q^d - 1 is -1 mod p while
// g_d = 1 mod p, so partial(g_d) reduces to -E.
inline std::optional<int> E_congruence_defect(const Generators& gen, const ResidueFieldPtr& F, int N) {
  const auto A = gen.ring_ptr();
  const auto lhs = series_reduce(gen.E(N), F);
  const auto rhs = series_reduce(to_series(partial(gd_form(A, F->prime().d)), gen, N), F);
  const auto diff = lhs + rhs;
  if (diff.is_zero()) return std::nullopt;
  return diff.terms().front().exp;
}

inline bool verify_E_congruence(const Generators& gen, const ResidueFieldPtr& F, int N) {
  return !E_congruence_defect(gen, F, N).has_value();
}

}  // namespace dmod
