// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dmod/dmod.hpp"

using namespace dmod;

namespace {

using Form = GradedForm<PolyRing>;
using Iso = IsobaricPoly<PolyRing>;

// Collects the first failure of a criterion.
struct Probe {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

struct Setting {
  const char* label;
  FieldPtr field;
};

FieldPtr field(int q) { return make_field_ctx(q, 1); }
FieldPtr f9() { return make_field_ctx(3, 2, std::vector<std::uint32_t>{1, 0, 1}); }

APoly random_apoly(std::mt19937_64& rng, const PolyRing& A, int max_deg) {
  const int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 2)) - 1;
  std::vector<Fq> c;
  for (int i = 0; i <= deg; ++i) c.push_back(Fq{static_cast<std::uint32_t>(rng() % A.q())});
  return A.make(std::move(c));
}

Iso random_iso(std::mt19937_64& rng, const PolyRingPtr& A, int w, int max_deg) {
  std::vector<APoly> c;
  for (int j = 0; j <= w; ++j) c.push_back(random_apoly(rng, *A, max_deg));
  return Iso(A, std::move(c));
}

Form random_form(std::mt19937_64& rng, const PolyRingPtr& A, int max_w, int max_deg) {
  const int q = static_cast<int>(A->q());
  const int l = static_cast<int>(rng() % static_cast<std::uint64_t>(q - 1));
  const int w = static_cast<int>(rng() % static_cast<std::uint64_t>(max_w + 1));
  return Form(w * (q - 1) + 2 * l, l, random_iso(rng, A, w, max_deg));
}

// Series with exactly the listed terms through the last listed exponent.
bool leading_terms_match(const ASeries& s, const std::vector<std::pair<int, APoly>>& printed) {
  const int last = std::min(printed.back().first, s.prec() - 1);
  for (int n = 0; n <= last; ++n) {
    APoly want;
    for (const auto& [e, c] : printed)
      if (e == n) want = c;
    if (s.coeff(n) != want) return false;
  }
  return true;
}

std::string crit1() {
  Probe p;
  for (auto [F, N] : std::vector<std::pair<FieldPtr, int>>{{field(3), 60}, {field(5), 120}, {f9(), 100}}) {
    auto A = make_poly_ring(F);
    Generators gen(A);
    const int q = static_cast<int>(A->q());
    const APoly T = A->T(), Tq = A->pow(T, static_cast<std::uint64_t>(q)), one = A->one(), m1 = A->neg(one);
    const APoly b = A->sub(Tq, T);
    const std::string tag = " (q=" + std::to_string(q) + ")";
    p.expect(leading_terms_match(gen.deltaT(N), {{q - 1, one}, {q * (q - 1), m1}}), "Delta_T" + tag);
    p.expect(leading_terms_match(gen.deltaW(N), {{0, one}, {q - 1, T}, {q * (q - 1), A->neg(Tq)}}), "Delta_W" + tag);
    p.expect(leading_terms_match(gen.g1(N), {{0, one}, {q - 1, A->neg(b)}, {(q * q - q + 1) * (q - 1), A->neg(b)}}), "g_1" + tag);
    p.expect(leading_terms_match(gen.ET(N), {{1, one}, {q, A->neg(T)}}), "E_T" + tag);
    p.expect(leading_terms_match(gen.h(N), {{1, m1}, {(q - 1) * (q - 1) + 1, m1}}), "h" + tag);
    p.expect(leading_terms_match(gen.delta(N), {{q - 1, m1}}), "Delta" + tag);
    p.expect(leading_terms_match(gen.get(Gen::uT, N), {{q, one}}), "u(Tz)" + tag);
  }
  return p.failure;
}

ASeries dk(const Generators& gen, const ASeries& f, int k) {
  return theta(f) + (gen.E(f.prec()) * f).scale(gen.ring().from_int(k));
}

std::string crit2() {
  Probe p;
  for (auto [q, N] : std::vector<std::pair<int, int>>{{3, 200}, {5, 150}}) {
    auto A = make_poly_ring(field(q));
    Generators gen(A);
    const int k = q - 1;
    const ASeries dW = gen.deltaW(N), dT = gen.deltaT(N), ET = gen.ET(N);
    const std::string tag = " (q=" + std::to_string(q) + ")";
    p.expect(gen.g1(N) == dW - dT.scale(A->pow(A->T(), static_cast<std::uint64_t>(q))), "P1" + tag);
    p.expect(pow(ET, static_cast<std::uint64_t>(q - 1)) == dW * dT, "P5" + tag);
    p.expect(dk(gen, dW, k) == -(dW * ET), "P6 Delta_W" + tag);
    p.expect(dk(gen, dT, k).is_zero(), "P6 Delta_T" + tag);
    p.expect(dk(gen, ET, 2) == ET * ET, "P6 E_T" + tag);
    p.expect(gen.h(N) == dk(gen, gen.g1(N), k), "P7 h" + tag);
    p.expect(gen.h(N) == -(dW * ET), "P7 product" + tag);
    p.expect(gen.delta(N) == -(pow(dW, static_cast<std::uint64_t>(q)) * dT), "P7 Delta" + tag);
    p.expect(pow(gen.h(N), static_cast<std::uint64_t>(q - 1)) == -gen.delta(N), "P7 h^(q-1)" + tag);
  }
  return p.failure;
}

std::string crit3() {
  Probe p;
  auto A = make_poly_ring(field(3));
  Generators gen(A);
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200 && p.failure.empty(); ++i) {
    const Form f = random_form(rng, A, 20, 10), g = random_form(rng, A, 20, 10);
    const Form fg = graded_mul(f, g);
    const int N = equality_bound(3, fg.k(), fg.l()) + 3;
    const ASeries sf = to_series(f, gen, N), sg = to_series(g, gen, N);
    const std::string tag = " (form " + std::to_string(i) + ")";
    p.expect(from_series(f.k(), f.l(), sf, gen) == f, "round trip" + tag);
    p.expect(to_series(fg, gen, N) == sf * sg, "product" + tag);
    p.expect(to_series(partial(f), gen, N) == dk(gen, sf, f.k()), "derivative" + tag);
  }
  return p.failure;
}

std::string crit4() {
  Probe p;
  for (auto [q, dmax] : std::vector<std::pair<int, int>>{{3, 3}, {5, 2}}) {
    auto A = make_poly_ring(field(q));
    Generators gen(A);
    for (int d = 1; d <= dmax; ++d) {
      const int k = static_cast<int>(checked_pow(q, d) - 1);
      const int N = equality_bound(q, k, 0) + 40;
      const Form f = from_series(k, 0, gen.gd(d, N), gen);
      p.expect(f.iso() == phi_d(A, d), "d=" + std::to_string(d) + " q=" + std::to_string(q));
    }
  }
  return p.failure;
}

struct PrimeCase {
  FieldPtr field;
  const char* pi;
};

std::vector<PrimeCase> acceptance_primes() {
  return {{field(3), "T+1"}, {field(3), "T+2"}, {field(3), "T^2+1"}, {field(5), "T+1"}, {field(5), "T+2"}, {f9(), "T+x"}};
}

std::string crit5() {
  Probe p;
  const int N = 200;
  for (const auto& pc : acceptance_primes()) {
    auto A = make_poly_ring(pc.field);
    Generators gen(A);
    auto F = make_residue_field(A, validate_prime(parse_apoly(*A, pc.pi), *A));
    const int d = F->prime().d;
    const std::string tag = std::string(" (q=") + std::to_string(A->q()) + ", pi=" + pc.pi + ")";
    p.expect(series_reduce(gen.gd(d, N), F) == RSeries::one(F, N), "g_d = 1" + tag);
    const ResidueIso phi = iso_reduce(phi_d(A, d), F);
    p.expect(squarefree(phi), "square-free" + tag);
    p.expect(!F->is_zero(phi.coeff(0)) && !F->is_zero(phi.coeff(phi.w())), "U, V do not divide" + tag);
    p.expect(iso_coprime(iso_reduce(psi_d(A, d), F), phi), "psi coprime" + tag);
    p.expect(verify_E_congruence(gen, F, N), "E congruence" + tag);
  }
  return p.failure;
}

std::string crit6() {
  Probe p;
  std::mt19937_64 rng(606);
  for (const auto& pc : acceptance_primes()) {
    auto A = make_poly_ring(pc.field);
    auto K = make_frac_field(A);
    auto F = make_residue_field(A, validate_prime(parse_apoly(*A, pc.pi), *A));
    const int q = static_cast<int>(A->q()), d = F->prime().d;
    const long long period = checked_pow(q, d) - 1;
    const std::string tag = std::string(" (q=") + std::to_string(q) + ", pi=" + pc.pi + ")";
    const Form dT(q - 1, 0, Iso(A, {A->zero(), A->one()})), dW(q - 1, 0, Iso(A, {A->one(), A->zero()}));
    const Form gd = gd_form(A, d);
    for (std::uint64_t m = 0; m <= 2; ++m)
      p.expect(filtration(graded_mul(dT, pow(gd, m)), A, F).w == q - 1, "Delta_T g_d^" + std::to_string(m) + tag);
    p.expect(filtration(graded_mul(dW, gd), A, F).w == q - 1, "Delta_W g_d" + tag);
    p.expect(filtration(Form(2, 1, Iso::one(A)), A, F).w == 2, "E_T" + tag);
    p.expect(!filtration(Form(dT.k(), 0, dT.iso().scale(F->prime().pi)), A, F).w.has_value(), "pi Delta_T" + tag);
    for (int i = 0; i < 100; ++i) {
      Form f = random_form(rng, A, 4, 3);
      for (std::uint64_t m = rng() % 3; m > 0; --m) f = graded_mul(f, gd);
      // p-integral denominators: products of T and primes other than pi
      APoly den = A->one();
      for (int t = 0; t < 2; ++t) {
        const APoly c = random_apoly(rng, *A, 2);
        if (!c.is_zero() && !F->is_zero(F->from_apoly(c))) den = A->mul(den, c);
      }
      const GradedForm<FracField> fk(f.k(), f.l(),
                                     map_coeffs(f.iso(), K, [&](const APoly& a) { return K->make(a, den); }));
      const auto r = filtration(fk, A, F), rc = filtration(cT(fk), A, F);
      if (r.w.has_value() != rc.w.has_value()) {
        p.expect(false, "finiteness under c_T" + tag);
        continue;
      }
      if (!r.w) continue;
      p.expect(((fk.k() - *r.w) % period + period) % period == 0, "w = k mod q^d-1" + tag);
      p.expect(*r.w == *rc.w + 2 * fk.l(), "w(f) = w(c_T f) + 2l" + tag);
    }
  }
  return p.failure;
}

std::string crit7() {
  Probe p;
  std::mt19937_64 rng(707);
  const int N = 200;
  for (const auto& pc : acceptance_primes()) {
    auto A = make_poly_ring(pc.field);
    Generators gen(A);
    auto F = make_residue_field(A, validate_prime(parse_apoly(*A, pc.pi), *A));
    const int q = static_cast<int>(A->q()), d = F->prime().d;
    const long long period = checked_pow(q, d) - 1;
    const std::string tag = std::string(" (q=") + std::to_string(q) + ", pi=" + pc.pi + ")";
    const Form dT(q - 1, 0, Iso(A, {A->zero(), A->one()})), dW(q - 1, 0, Iso(A, {A->one(), A->zero()}));
    const Form gd = gd_form(A, d);
    auto reduced = [&](const Form& f) { return series_reduce(to_series(f, gen, N), F); };
    p.expect(congruent(gd, Form::one(A), A, F), "g_d ~ 1" + tag);
    const Form f = random_form(rng, A, 3, 3);
    const Form fg = graded_mul(f, gd);
    p.expect(congruent(f, fg, A, F) && reduced(f) == reduced(fg), "f ~ f g_d" + tag);
    p.expect(!congruent(dT, dW, A, F), "Delta_T !~ Delta_W" + tag);
    if (q == 9) continue;  // random pairs over the prime fields
    int constructed_missed = 0;
    for (int i = 0; i < 100; ++i) {
      const Form a = random_form(rng, A, 3, 2);
      const bool construct = i % 2 == 0;
      Form b = construct ? graded_mul(a, pow(gd, rng() % 3)) : random_form(rng, A, 3, 2);
      if (construct) b = Form(b.k(), b.l(), b.iso() + random_iso(rng, A, b.iso().w(), 2).scale(F->prime().pi));
      const bool c = congruent(a, b, A, F);
      if (construct && !c) ++constructed_missed;
      if (!c) continue;
      const bool both_zero = iso_reduce(a.iso(), F).is_zero() && iso_reduce(b.iso(), F).is_zero();
      p.expect(both_zero || (b.k() - a.k()) % period == 0, "weights mod q^d-1" + tag);
      p.expect(reduced(a) == reduced(b), "series oracle (pair " + std::to_string(i) + ")" + tag);
    }
    p.expect(constructed_missed == 0, "constructed congruent pair reported false" + tag);
  }
  return p.failure;
}

std::string crit8() {
  Probe p;
  for (int q : {3, 5}) {
    auto A = make_poly_ring(field(q));
    Generators gen(A);
    int count = 0;
    for (int w = 0; count < 20; ++w)
      for (int l = 0; l <= q - 2 && count < 20; ++l, ++count) {
        const int k = w * (q - 1) + 2 * l;
        const int expected_dim = w + 1;
        const auto vm = victor_miller(gen, k, l);
        const std::string tag = " (q=" + std::to_string(q) + ", k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")";
        p.expect(static_cast<int>(vm.size()) == expected_dim && dimension(q, k, l) == expected_dim, "dimension" + tag);
        const int N = equality_bound(q, k, l) + 1;
        for (int j = 0; j < static_cast<int>(vm.size()); ++j) {
          const ASeries s = to_series(vm[static_cast<std::size_t>(j)], gen, N);
          for (int i = 0; i < expected_dim; ++i)
            p.expect(s.coeff(i * (q - 1) + l) == (i == j ? A->one() : A->zero()), "delta_ij" + tag);
        }
      }
  }
  return p.failure;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"1 printed expansions", crit1},   {"2 generator identities", crit2}, {"3 structure round trip", crit3},
      {"4 phi_d consistency", crit4},    {"5 mod-p suite", crit5},          {"6 filtration", crit6},
      {"7 congruence", crit7},           {"8 Victor-Miller bases", crit8}};
  bool all = true;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
      failure = run();
    } catch (const Error& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && failure.empty();
    std::printf("%s criterion %s (%.2f s)%s%s\n", failure.empty() ? "PASS" : "FAIL", name.c_str(), secs,
                failure.empty() ? "" : ": ", failure.c_str());
  }
  return all ? 0 : 1;
}
