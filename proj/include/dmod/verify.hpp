#pragma once

// Self-checks over one coefficient field, reported check by check.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dmod/json.hpp"
#include "dmod/modp.hpp"

namespace dmod {

struct Check {
  std::string id;
  std::string anchor;  // the statement being certified
  bool pass = false;
  std::string details;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"id", c.id}, {"anchor", c.anchor}, {"pass", c.pass}, {"details", c.details}});
  return Json{{"suite", r.suite}, {"checks", std::move(checks)}, {"pass", r.pass()}};
}

// Theta f + k E f.
inline ASeries modular_derivative(const Generators& gen, const ASeries& f, int k) {
  return theta(f) + (gen.E(f.prec()) * f).scale(gen.ring().from_int(k));
}

namespace detail {

template <CoefficientRing Ring>
Check series_check(std::string id, std::string anchor, const USeries<Ring>& lhs, const USeries<Ring>& rhs) {
  const int prec = std::min(lhs.prec(), rhs.prec());
  const auto diff = first_difference(lhs.truncate(prec), rhs.truncate(prec));
  std::string details = diff ? "first difference at u^" + std::to_string(*diff)
                             : "equal up to O(u^" + std::to_string(prec) + ")";
  return {std::move(id), std::move(anchor), !diff.has_value(), std::move(details)};
}

inline Check guarded(std::string id, std::string anchor, const std::function<Check()>& run) {
  try {
    return run();
  } catch (const Error& e) {
    return {std::move(id), std::move(anchor), false, e.what()};
  }
}

// Terms printed as (exponent, coefficient); the series must equal exactly
// these terms at every exponent up to the last printed one, or up to the
// precision if that comes first.
inline Check leading_terms(const std::string& id, const std::string& anchor, const ASeries& s,
                           const std::vector<std::pair<int, APoly>>& printed) {
  const PolyRing& A = s.ring();
  const int last = std::min(printed.back().first, s.prec() - 1);
  std::vector<ASeries::Term> terms;
  for (const auto& [e, c] : printed)
    if (e <= last) terms.push_back({e, c});
  const ASeries expected = ASeries::from_terms(s.ring_ptr(), last + 1, std::move(terms));
  const auto diff = first_difference(s.truncate(last + 1), expected);
  std::string details;
  if (diff) details = "coefficient of u^" + std::to_string(*diff) + " is " + apoly_to_text(A, s.coeff(*diff));
  else details = "exact through u^" + std::to_string(last);
  return {id, anchor, !diff.has_value(), details};
}

inline Check type_support(const std::string& id, const ASeries& s, int l) {
  const int m = static_cast<int>(s.ring().q()) - 1;
  for (const auto& t : s.terms())
    if ((t.exp - l) % m != 0)
      return {id, "supported on exponents = " + std::to_string(l) + " mod q-1", false,
              "nonzero coefficient at u^" + std::to_string(t.exp)};
  return {id, "supported on exponents = " + std::to_string(l) + " mod q-1", true,
          "checked up to O(u^" + std::to_string(s.prec()) + ")"};
}

}  // namespace detail

// Leading terms of the generators.
inline std::vector<Check> printed_expansion_checks(const Generators& gen, int N) {
  const PolyRing& A = gen.ring();
  const int q = static_cast<int>(gen.q());
  const APoly T = A.T(), Tq = A.frobenius(T), one = A.one(), minus_one = A.from_int(-1);
  const APoly bracket = A.sub(Tq, T);
  std::vector<Check> out;
  auto add = [&](const std::string& id, const std::string& anchor, Gen g, std::vector<std::pair<int, APoly>> printed) {
    out.push_back(detail::guarded(id, anchor, [&] { return detail::leading_terms(id, anchor, gen.get(g, N), printed); }));
  };
  add("expansion.deltaT", "Delta_T = u^{q-1} - u^{q(q-1)} + ...", Gen::deltaT, {{q - 1, one}, {q * (q - 1), minus_one}});
  add("expansion.deltaW", "Delta_W = 1 + T u^{q-1} - T^q u^{q(q-1)} + ...", Gen::deltaW,
      {{0, one}, {q - 1, T}, {q * (q - 1), A.neg(Tq)}});
  add("expansion.g1", "g_1 = 1 - (T^q-T) u^{q-1} - (T^q-T) u^{(q^2-q+1)(q-1)} + ...", Gen::g1,
      {{0, one}, {q - 1, A.neg(bracket)}, {(q * q - q + 1) * (q - 1), A.neg(bracket)}});
  add("expansion.ET", "E_T = u - T u^q + ...", Gen::ET, {{1, one}, {q, A.neg(T)}});
  add("expansion.h", "h = -u - u^{(q-1)^2+1} + ...", Gen::h, {{1, minus_one}, {(q - 1) * (q - 1) + 1, minus_one}});
  add("expansion.delta", "Delta = -u^{q-1} + ...", Gen::delta, {{q - 1, minus_one}});
  add("expansion.uT", "u(Tz) = u^q + ...", Gen::uT, {{q, one}});
  for (auto [g, l] : std::vector<std::pair<Gen, int>>{
           {Gen::deltaT, 0}, {Gen::deltaW, 0}, {Gen::g1, 0}, {Gen::ET, 1}, {Gen::h, 1}, {Gen::E, 1}, {Gen::delta, 0}}) {
    const std::string id = "support." + gen_name(g);
    out.push_back(detail::guarded(id, "type support", [&] { return detail::type_support(id, gen.get(g, N), l); }));
  }
  return out;
}

// Relations among the generators at precision N.
inline std::vector<Check> identity_checks(const Generators& gen, int N) {
  const PolyRing& A = gen.ring();
  const auto q = gen.q();
  const int k0 = static_cast<int>(q) - 1;
  std::vector<Check> out;
  auto add = [&](const std::string& id, const std::string& anchor, const std::function<std::pair<ASeries, ASeries>()>& sides) {
    out.push_back(detail::guarded(id, anchor, [&] {
      auto [lhs, rhs] = sides();
      return detail::series_check(id, anchor, lhs, rhs);
    }));
  };
  add("P1", "g_1 = Delta_W - T^q Delta_T",
      [&] { return std::pair{gen.g1(N), gen.deltaW(N) - gen.deltaT(N).scale(A.frobenius(A.T()))}; });
  add("P5", "E_T^{q-1} = Delta_W Delta_T", [&] { return std::pair{pow(gen.ET(N), k0), gen.deltaW(N) * gen.deltaT(N)}; });
  add("P6.deltaW", "d(Delta_W) = -Delta_W E_T",
      [&] { return std::pair{modular_derivative(gen, gen.deltaW(N), k0), -(gen.deltaW(N) * gen.ET(N))}; });
  add("P6.deltaT", "d(Delta_T) = 0",
      [&] { return std::pair{modular_derivative(gen, gen.deltaT(N), k0), ASeries(gen.ring_ptr(), N)}; });
  add("P6.ET", "d(E_T) = E_T^2", [&] { return std::pair{modular_derivative(gen, gen.ET(N), 2), gen.ET(N) * gen.ET(N)}; });
  add("P7.h", "h = d(g_1)", [&] { return std::pair{gen.h(N), modular_derivative(gen, gen.g1(N), k0)}; });
  add("P7.h_product", "d(g_1) = -Delta_W E_T",
      [&] { return std::pair{modular_derivative(gen, gen.g1(N), k0), -(gen.deltaW(N) * gen.ET(N))}; });
  add("P7.delta", "Delta = -Delta_W^q Delta_T",
      [&] { return std::pair{gen.delta(N), -(pow(gen.deltaW(N), q) * gen.deltaT(N))}; });
  add("P7.h_power", "h^{q-1} = -Delta", [&] { return std::pair{pow(gen.h(N), k0), -gen.delta(N)}; });
  return out;
}

// g_d decomposes as phi_d(Delta_W, Delta_T).
inline Check phi_consistency_check(const Generators& gen, int d) {
  const std::string id = "phi_d." + std::to_string(d);
  const std::string anchor = "g_" + std::to_string(d) + " = phi_" + std::to_string(d) + "(Delta_W, Delta_T)";
  return detail::guarded(id, anchor, [&] {
    const int k = to_int(checked_pow(gen.q(), d) - 1);
    const int N = equality_bound(gen.q(), k, 0) + 1;
    const auto f = from_series(k, 0, gen.gd(d, N), gen);
    const bool ok = f.iso() == phi_d(gen.ring_ptr(), d);
    return Check{id, anchor, ok, ok ? "decomposition matches the recursion" : "decomposition differs from the recursion"};
  });
}

// The mod-p facts for one prime p = (pi) of degree d.
inline std::vector<Check> modp_checks(const Generators& gen, const ResidueFieldPtr& F, int N) {
  const auto A = gen.ring_ptr();
  const int d = F->prime().d;
  const std::string tag = "[pi=" + apoly_to_text(*A, F->prime().pi) + "]";
  std::vector<Check> out;
  auto add = [&](const std::string& id, const std::string& anchor, const std::function<std::pair<bool, std::string>()>& run) {
    out.push_back(detail::guarded(id + tag, anchor, [&] {
      auto [ok, details] = run();
      return Check{id + tag, anchor, ok, details};
    }));
  };
  add("gd_is_one", "g_d = 1 mod p", [&] {
    const auto diff = first_difference(series_reduce(gen.gd(d, N), F), RSeries::one(F, N));
    return std::pair{!diff.has_value(), diff ? "differs at u^" + std::to_string(*diff) : "checked up to O(u^" + std::to_string(N) + ")"};
  });
  const ResidueIso phibar = phi_bar(A, F);
  add("phi_squarefree", "phi_d mod p is square-free", [&] {
    const bool ok = squarefree(phibar);
    return std::pair{ok, iso_to_text(phibar)};
  });
  add("phi_not_divisible_by_U_or_V", "U and V do not divide phi_d mod p", [&] {
    const bool ok = !F->is_zero(phibar.coeff(0)) && !F->is_zero(phibar.coeff(phibar.w()));
    return std::pair{ok, ok ? "c_0 and c_w are nonzero" : "an extreme coefficient vanishes"};
  });
  add("psi_phi_coprime", "psi_d and phi_d share no factor mod p", [&] {
    const bool ok = coprime_with_phi(A, F);
    return std::pair{ok, "psi_d mod p = " + iso_to_text(iso_reduce(psi_d(A, d), F))};
  });
  add("E_congruence", "E = -d(g_d) mod p", [&] {
    const auto defect = E_congruence_defect(gen, F, N);
    return std::pair{!defect.has_value(),
                     defect ? "E + d(g_d) nonzero at u^" + std::to_string(*defect) : "checked up to O(u^" + std::to_string(N) + ")"};
  });
  return out;
}

inline Report run_identities_suite(const Generators& gen, int N) {
  Report r{"identities", {}};
  for (auto& c : printed_expansion_checks(gen, N)) r.checks.push_back(std::move(c));
  for (auto& c : identity_checks(gen, N)) r.checks.push_back(std::move(c));
  return r;
}

inline Report run_modp_suite(const Generators& gen, const ResidueFieldPtr& F, int N) {
  return Report{"modp", modp_checks(gen, F, N)};
}

}  // namespace dmod
