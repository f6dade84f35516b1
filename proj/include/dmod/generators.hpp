#pragma once

// u-expansions of the named forms, bootstrapped from the Carlitz module.
//
// With u = u(z) and u_a := u(az), the Carlitz action gives
//   1/u_a = C_a(1/u),  C_T = T X + X^q.
// Summing the lattice over one coordinate turns the defining sums into
//   E(bz) = sum_{a monic} a * u_{ab},
//   g_1   = 1 - (T^q - T) * sum_{a monic} u_a^(q-1),
// and every other generator is an exact algebraic combination of these.
// All series here have coefficients in A.

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dmod/apoly.hpp"
#include "dmod/series.hpp"

namespace dmod {

// C_a(X) = sum_i coeffs[i] X^{q^i}.
struct CarlitzPoly {
  APoly a;
  std::vector<APoly> coeffs;
};

inline CarlitzPoly carlitz_poly(const PolyRing& A, const APoly& a) {
  if (a.is_zero()) fail(Errc::ZeroMultiplier, "Carlitz polynomial of 0");
  // C_{T^{i+1}} = T * C_{T^i} + C_{T^i}^q, and C_a is F_q-linear in a.
  std::vector<APoly> power{A.one()};
  std::vector<APoly> out(static_cast<std::size_t>(a.degree()) + 1, A.zero());
  for (int i = 0; i <= a.degree(); ++i) {
    const Fq ai = a.coeffs[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < power.size(); ++j) out[j] = A.add(out[j], A.scale(power[j], ai));
    if (i == a.degree()) break;
    std::vector<APoly> next(power.size() + 1, A.zero());
    for (std::size_t j = 0; j < power.size(); ++j) {
      next[j] = A.add(next[j], A.mul(A.T(), power[j]));
      next[j + 1] = A.add(next[j + 1], A.frobenius(power[j]));
    }
    power = std::move(next);
  }
  return CarlitzPoly{a, std::move(out)};
}

// f^(q^k) over A: Frobenius acts on coefficients and exponents together.
inline ASeries series_frobenius(const ASeries& f, int k, int prec) {
  const PolyRing& A = f.ring();
  const std::int64_t s = checked_pow(A.q(), k);
  const std::int64_t known = checked_mul(f.prec(), s);
  const int out_prec = static_cast<int>(std::min<std::int64_t>(known, prec));
  std::vector<ASeries::Term> terms;
  for (const auto& t : f.terms()) {
    const std::int64_t e = checked_mul(t.exp, s);
    if (e >= out_prec) break;
    terms.push_back({static_cast<int>(e), A.frobenius(t.coeff, k)});
  }
  return ASeries::from_terms(f.ring_ptr(), out_prec, std::move(terms));
}

// u(az) for monic a, to precision N: u^{q^D} / (1 + sum_{i<D} c_i u^{q^D - q^i}).
inline ASeries u_scaled(const PolyRingPtr& A, const APoly& a, int N) {
  if (!A->is_monic(a)) fail(Errc::NotMonic, "u(az) needs a monic a");
  const int D = a.degree();
  const std::int64_t lead = checked_pow(A->q(), D);
  if (lead >= N) return ASeries(A, N);
  const int inner_prec = N - static_cast<int>(lead);
  const CarlitzPoly C = carlitz_poly(*A, a);
  std::vector<ASeries::Term> terms{{0, A->one()}};
  for (int i = 0; i < D; ++i) {
    const std::int64_t e = lead - checked_pow(A->q(), i);
    terms.push_back({static_cast<int>(std::min<std::int64_t>(e, N)), C.coeffs[static_cast<std::size_t>(i)]});
  }
  const ASeries denom = ASeries::from_terms(A, inner_prec, std::move(terms));
  return series_inv(denom).shift(static_cast<int>(lead));
}

// Largest D with q^D < bound (bound >= 1); -1 if none.
inline int max_degree_below(std::uint32_t q, std::int64_t bound) {
  int D = -1;
  for (std::int64_t v = 1; v < bound; v = checked_mul(v, q)) ++D;
  return D;
}

// E(bz) = sum_{a monic} a * u(abz), truncated at u^N.
inline ASeries false_eisenstein(const PolyRingPtr& A, const APoly& b, int N) {
  if (!A->is_monic(b)) fail(Errc::NotMonic, "E(bz) needs a monic b");
  ASeries acc(A, N);
  const int max_deg = max_degree_below(A->q(), N) - b.degree();
  for (int D = 0; D <= max_deg; ++D) {
    for_each_monic(*A, D, [&](const APoly& a) { acc = acc + u_scaled(A, A->mul(a, b), N).scale(a); });
  }
  return acc;
}

enum class Gen { E, ET, g1, g1T, deltaT, deltaW, h, delta, uT };

inline std::string gen_name(Gen g) {
  switch (g) {
    case Gen::E: return "E";
    case Gen::ET: return "ET";
    case Gen::g1: return "g1";
    case Gen::g1T: return "g1T";
    case Gen::deltaT: return "deltaT";
    case Gen::deltaW: return "deltaW";
    case Gen::h: return "h";
    case Gen::delta: return "delta";
    case Gen::uT: return "uT";
  }
  return "?";
}

inline std::optional<Gen> parse_gen_name(const std::string& s) {
  for (Gen g : {Gen::E, Gen::ET, Gen::g1, Gen::g1T, Gen::deltaT, Gen::deltaW, Gen::h, Gen::delta, Gen::uT})
    if (gen_name(g) == s) return g;
  return std::nullopt;
}

// Memoized generator expansions for one coefficient field. Entries are
// write-once; concurrent readers are fine.
class Generators {
 public:
  explicit Generators(PolyRingPtr A) : A_(std::move(A)) {}

  const PolyRingPtr& ring_ptr() const { return A_; }
  const PolyRing& ring() const { return *A_; }
  std::uint32_t q() const { return A_->q(); }

  ASeries get(Gen g, int N) const {
    return memo(gen_name(g), N, [&] { return compute(g, N); });
  }

  ASeries E(int N) const { return get(Gen::E, N); }
  ASeries ET(int N) const { return get(Gen::ET, N); }
  ASeries g1(int N) const { return get(Gen::g1, N); }
  ASeries g1T(int N) const { return get(Gen::g1T, N); }
  ASeries deltaT(int N) const { return get(Gen::deltaT, N); }
  ASeries deltaW(int N) const { return get(Gen::deltaW, N); }
  ASeries h(int N) const { return get(Gen::h, N); }
  ASeries delta(int N) const { return get(Gen::delta, N); }

  // g_d = g_{d-1} g_1^{q^{d-1}} - [d-1] g_{d-2} Delta^{q^{d-2}},  [i] = T^{q^i} - T.
  ASeries gd(int d, int N) const {
    if (d < 0) fail(Errc::InvalidArgument, "g_d needs d >= 0");
    return memo("gd:" + std::to_string(d), N, [&] {
      if (d == 0) return ASeries::one(A_, N);
      if (d == 1) return g1(N);
      const ASeries prev = gd(d - 1, N), prev2 = gd(d - 2, N);
      const APoly bracket = A_->sub(A_->frobenius(A_->T(), d - 1), A_->T());
      return prev * series_frobenius(g1(N), d - 1, N) -
             (prev2 * series_frobenius(delta(N), d - 2, N)).scale(bracket);
    });
  }

  // Delta_W^{w-j} Delta_T^j E_T^l for j = 0..w, to precision N.
  std::vector<ASeries> basis(int w, int l, int N) const {
    const std::string key = "basis:" + std::to_string(w) + ":" + std::to_string(l);
    {
      std::lock_guard lock(mu_);
      auto it = basis_cache_.find({key, N});
      if (it != basis_cache_.end()) return it->second;
    }
    const ASeries dw = deltaW(N), dt = deltaT(N);
    const ASeries et_l = pow(ET(N), static_cast<std::uint64_t>(l));
    std::vector<ASeries> dw_pow{ASeries::one(A_, N)}, dt_pow{ASeries::one(A_, N)};
    for (int i = 1; i <= w; ++i) {
      dw_pow.push_back(dw_pow.back() * dw);
      dt_pow.push_back(dt_pow.back() * dt);
    }
    std::vector<ASeries> out;
    out.reserve(static_cast<std::size_t>(w) + 1);
    for (int j = 0; j <= w; ++j) {
      ASeries b = dw_pow[static_cast<std::size_t>(w - j)] * dt_pow[static_cast<std::size_t>(j)];
      if (l > 0) b = b * et_l;
      out.push_back(std::move(b));
    }
    std::lock_guard lock(mu_);
    basis_cache_.emplace(std::make_pair(key, N), out);
    return out;
  }

 private:
  template <class F>
  ASeries memo(const std::string& name, int N, F&& make) const {
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find({name, N});
      if (it != cache_.end()) return it->second;
    }
    ASeries value = make();
    std::lock_guard lock(mu_);
    return cache_.emplace(std::make_pair(name, N), std::move(value)).first->second;
  }

  APoly tq_minus_t() const { return A_->sub(A_->frobenius(A_->T()), A_->T()); }

  // sum_{a monic} u_{ab}^{q-1}
  ASeries power_sum(const APoly& b, int N) const {
    const auto q = A_->q();
    ASeries acc(A_, N);
    // u_{ab}^{q-1} has valuation q^{deg ab}(q-1).
    const int max_deg = max_degree_below(q, (N + static_cast<std::int64_t>(q) - 2) / (q - 1)) - b.degree();
    for (int D = 0; D <= max_deg; ++D)
      for_each_monic(*A_, D, [&](const APoly& a) {
        acc = acc + pow(u_scaled(A_, A_->mul(a, b), N), q - 1);
      });
    return acc;
  }

  ASeries compute(Gen g, int N) const {
    if (N < 1) fail(Errc::InvalidArgument, "precision must be >= 1");
    const APoly T = A_->T();
    switch (g) {
      case Gen::E:
        return false_eisenstein(A_, A_->one(), N);
      case Gen::uT:
        return u_scaled(A_, T, N);
      case Gen::ET:
        return E(N) - false_eisenstein(A_, T, N).scale(T);
      case Gen::g1:
        return ASeries::one(A_, N) - power_sum(A_->one(), N).scale(tq_minus_t());
      case Gen::g1T:
        return ASeries::one(A_, N) - power_sum(T, N).scale(tq_minus_t());
      case Gen::deltaT:
        return series_exact_div(g1T(N) - g1(N), tq_minus_t());
      case Gen::deltaW:
        return series_exact_div(g1T(N).scale(A_->frobenius(T)) - g1(N).scale(T), tq_minus_t());
      case Gen::h:
        return -(deltaW(N) * ET(N));
      case Gen::delta:
        return -(series_frobenius(deltaW(N), 1, N) * deltaT(N));
    }
    fail(Errc::InvalidArgument, "unknown generator");
  }

  PolyRingPtr A_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::string, int>, ASeries> cache_;
  mutable std::map<std::pair<std::string, int>, std::vector<ASeries>> basis_cache_;
};

}  // namespace dmod
