#pragma once

// JSON wire formats and plain-text rendering.
//
//   F_q element   [c_0, ..., c_{r-1}]        (coordinates over F_p)
//   A element     [fq_0, fq_1, ...]          (ascending powers of T)
//   K element     {"num": A, "den": A}
//   series        {"ring": "A"|"K"|"Fpd", "prec": N, "terms": [[n, coeff], ...]}
//   isobaric      {"weight": k0, "coeffs": [c_0, ..., c_w]}
//   form          {"k": k, "l": l, "iso": isobaric}

#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dmod/modp.hpp"
#include <json.hpp>

namespace dmod {

using Json = nlohmann::json;

namespace detail {
[[noreturn]] inline void bad_json(const std::string& what) { fail(Errc::ParseError, what); }

inline long long json_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad_json(std::string(what) + " must be an integer");
  return j.get<long long>();
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Scalars

inline Json fq_to_json(const FieldCtx& F, Fq a) { return Json(F.coords(a)); }

inline Fq fq_from_json(const FieldCtx& F, const Json& j) {
  if (j.is_number_integer() && F.r() == 1) return F.from_int(j.get<long long>());
  if (!j.is_array() || j.size() != F.r()) detail::bad_json("F_q element must be an array of " + std::to_string(F.r()) + " integers");
  std::vector<std::uint32_t> c;
  for (const auto& x : j) {
    const long long v = detail::json_int(x, "F_q coordinate");
    if (v < 0 || v >= static_cast<long long>(F.p())) detail::bad_json("F_q coordinate out of range [0,p)");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return F.from_coords(c);
}

inline Json apoly_to_json(const PolyRing& A, const APoly& a) {
  Json out = Json::array();
  for (Fq c : a.coeffs) out.push_back(fq_to_json(A.field(), c));
  return out;
}

inline APoly apoly_from_json(const PolyRing& A, const Json& j) {
  if (!j.is_array()) detail::bad_json("polynomial must be an array of F_q elements");
  std::vector<Fq> c;
  for (const auto& x : j) c.push_back(fq_from_json(A.field(), x));
  return A.make(std::move(c));
}

inline Json kfrac_to_json(const FracField& K, const KFrac& a) {
  return Json{{"num", apoly_to_json(K.base(), a.num)}, {"den", apoly_to_json(K.base(), a.den)}};
}

inline KFrac kfrac_from_json(const FracField& K, const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) detail::bad_json("fraction needs \"num\" and \"den\"");
  return K.make(apoly_from_json(K.base(), j["num"]), apoly_from_json(K.base(), j["den"]));
}

inline Json elem_to_json(const PolyRing& A, const APoly& a) { return apoly_to_json(A, a); }
inline Json elem_to_json(const ResidueField& F, const APoly& a) { return apoly_to_json(F.base(), a); }
inline Json elem_to_json(const FracField& K, const KFrac& a) { return kfrac_to_json(K, a); }

inline APoly elem_from_json(const PolyRing& A, const Json& j) { return apoly_from_json(A, j); }
inline APoly elem_from_json(const ResidueField& F, const Json& j) { return F.from_apoly(apoly_from_json(F.base(), j)); }
inline KFrac elem_from_json(const FracField& K, const Json& j) {
  if (j.is_array()) return K.from_apoly(apoly_from_json(K.base(), j));
  return kfrac_from_json(K, j);
}

// ---------------------------------------------------------------------------
// Series

template <CoefficientRing Ring>
Json series_to_json(const USeries<Ring>& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back(Json::array({t.exp, elem_to_json(f.ring(), t.coeff)}));
  return Json{{"ring", Ring::kTag}, {"prec", f.prec()}, {"terms", std::move(terms)}};
}

template <CoefficientRing Ring>
USeries<Ring> series_from_json(const std::shared_ptr<const Ring>& ring, const Json& j) {
  if (!j.is_object() || !j.contains("prec") || !j.contains("terms")) detail::bad_json("series needs \"prec\" and \"terms\"");
  const long long prec = detail::json_int(j["prec"], "prec");
  if (prec < 1 || prec > std::numeric_limits<int>::max()) detail::bad_json("prec must be a positive integer");
  if (!j["terms"].is_array()) detail::bad_json("terms must be an array");
  std::vector<typename USeries<Ring>::Term> terms;
  long long last = -1;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2) detail::bad_json("each term must be [exponent, coefficient]");
    const long long n = detail::json_int(t[0], "exponent");
    if (n < 0 || n >= prec) detail::bad_json("term exponent " + std::to_string(n) + " outside [0, prec)");
    if (n <= last) detail::bad_json("term exponents must be strictly ascending");
    last = n;
    terms.push_back({static_cast<int>(n), elem_from_json(*ring, t[1])});
  }
  return USeries<Ring>::from_terms(ring, static_cast<int>(prec), std::move(terms));
}

inline std::string series_ring_tag(const Json& j) {
  if (!j.is_object()) detail::bad_json("series must be a JSON object");
  if (!j.contains("ring")) return PolyRing::kTag;
  if (!j["ring"].is_string()) detail::bad_json("ring must be a string");
  return j["ring"].get<std::string>();
}

// ---------------------------------------------------------------------------
// Isobaric polynomials and forms

template <CoefficientRing Ring>
Json iso_to_json(const IsobaricPoly<Ring>& a) {
  Json coeffs = Json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(elem_to_json(a.ring(), c));
  return Json{{"weight", a.weight()}, {"coeffs", std::move(coeffs)}};
}

template <CoefficientRing Ring>
IsobaricPoly<Ring> iso_from_json(const std::shared_ptr<const Ring>& ring, const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
    detail::bad_json("isobaric polynomial needs a nonempty \"coeffs\" array");
  std::vector<typename Ring::Elem> coeffs;
  for (const auto& c : j["coeffs"]) coeffs.push_back(elem_from_json(*ring, c));
  IsobaricPoly<Ring> out(ring, std::move(coeffs));
  if (j.contains("weight") && detail::json_int(j["weight"], "weight") != out.weight())
    detail::bad_json("isobaric weight " + j["weight"].dump() + " does not match " + std::to_string(out.coeffs().size()) +
                     " coefficients");
  return out;
}

template <CoefficientRing Ring>
Json form_to_json(const GradedForm<Ring>& f) {
  return Json{{"k", f.k()}, {"l", f.l()}, {"iso", iso_to_json(f.iso())}};
}

template <CoefficientRing Ring>
GradedForm<Ring> form_from_json(const std::shared_ptr<const Ring>& ring, const Json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("iso")) detail::bad_json("form needs \"k\" and \"iso\"");
  const long long k = detail::json_int(j["k"], "k");
  const long long l = j.contains("l") ? detail::json_int(j["l"], "l") : 0;
  if (k < 0 || k > std::numeric_limits<int>::max()) detail::bad_json("k out of range");
  return GradedForm<Ring>(static_cast<int>(k), static_cast<int>(l), iso_from_json(ring, j["iso"]));
}

// True if any coefficient of the form is written as a fraction.
inline bool form_needs_fractions(const Json& j) {
  if (!j.is_object() || !j.contains("iso") || !j["iso"].is_object() || !j["iso"].contains("coeffs")) return false;
  for (const auto& c : j["iso"]["coeffs"])
    if (c.is_object()) return true;
  return false;
}

inline Json filtration_to_json(const FiltrationResult& r) {
  Json w = r.w ? Json(*r.w) : Json("-inf");
  return Json{{"w", std::move(w)}, {"steps", r.steps}, {"witness", iso_to_json(r.witness)}};
}

// ---------------------------------------------------------------------------
// Text rendering

inline std::string fq_to_text(const FieldCtx& F, Fq a) {
  if (F.r() == 1) return std::to_string(a.v);
  const auto c = F.coords(a);
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) out += std::to_string(c[i]);
    else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string apoly_to_text(const PolyRing& A, const APoly& a) {
  if (a.is_zero()) return "0";
  const FieldCtx& F = A.field();
  std::string out;
  for (std::size_t i = a.coeffs.size(); i-- > 0;) {
    const Fq c = a.coeffs[i];
    if (c.v == 0) continue;
    if (!out.empty()) out += "+";
    std::string cs = fq_to_text(F, c);
    if (F.r() > 1 && cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != F.one()) out += cs + "*";
    out += i == 1 ? "T" : "T^" + std::to_string(i);
  }
  return out;
}

inline std::string elem_to_text(const PolyRing& A, const APoly& a) { return apoly_to_text(A, a); }
inline std::string elem_to_text(const ResidueField& F, const APoly& a) { return apoly_to_text(F.base(), a); }
inline std::string elem_to_text(const FracField& K, const KFrac& a) {
  if (K.base().is_monic(a.den) && a.den.degree() == 0) return apoly_to_text(K.base(), a.num);
  return "(" + apoly_to_text(K.base(), a.num) + ")/(" + apoly_to_text(K.base(), a.den) + ")";
}

template <CoefficientRing Ring>
std::string series_to_text(const USeries<Ring>& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << elem_to_text(f.ring(), t.coeff) << ")";
    if (t.exp == 1) os << "*u";
    else if (t.exp > 1) os << "*u^" << t.exp;
  }
  if (first) os << "0";
  os << " + O(u^" << f.prec() << ")";
  return os.str();
}

template <CoefficientRing Ring>
std::string iso_to_text(const IsobaricPoly<Ring>& a) {
  std::ostringstream os;
  bool first = true;
  const int w = a.w();
  for (int j = 0; j <= w; ++j) {
    const auto& c = a.coeff(j);
    if (a.ring().is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << elem_to_text(a.ring(), c) << ")";
    if (w - j == 1) os << "*U";
    else if (w - j > 1) os << "*U^" << (w - j);
    if (j == 1) os << "*V";
    else if (j > 1) os << "*V^" << j;
  }
  if (first) os << "0";
  return os.str();
}

template <CoefficientRing Ring>
std::string form_to_text(const GradedForm<Ring>& f) {
  std::ostringstream os;
  os << "weight " << f.k() << ", type " << f.l() << ": " << iso_to_text(f.iso());
  if (f.l() == 1) os << " * Z";
  else if (f.l() > 1) os << " * Z^" << f.l();
  return os.str();
}

}  // namespace dmod
