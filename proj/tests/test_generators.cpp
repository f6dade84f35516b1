#include <gtest/gtest.h>

#include <thread>

#include "support.hpp"

namespace dmod {
namespace {

using testing::f3;
using testing::f5;
using testing::f9;
using testing::parse;

ASeries terms(const PolyRingPtr& A, int prec, std::vector<std::pair<int, std::string>> ts) {
  std::vector<ASeries::Term> out;
  for (auto& [e, c] : ts) out.push_back({e, parse(*A, c)});
  return ASeries::from_terms(A, prec, std::move(out));
}

TEST(Carlitz, SmallMultipliers) {
  auto A = make_poly_ring(f3());
  EXPECT_EQ(carlitz_poly(*A, A->one()).coeffs, std::vector<APoly>{A->one()});
  EXPECT_EQ(carlitz_poly(*A, A->T()).coeffs, (std::vector<APoly>{A->T(), A->one()}));
  EXPECT_EQ(carlitz_poly(*A, parse(*A, "T^2")).coeffs,
            (std::vector<APoly>{parse(*A, "T^2"), parse(*A, "T+T^3"), A->one()}));
  try {
    carlitz_poly(*A, A->zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroMultiplier);
  }
}

// Coefficients of C_a o C_b: sum_{i+j=k} a_i b_j^{q^i}.
std::vector<APoly> compose_additive(const PolyRing& A, const std::vector<APoly>& a, const std::vector<APoly>& b) {
  std::vector<APoly> out(a.size() + b.size() - 1, A.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = A.add(out[i + j], A.mul(a[i], A.frobenius(b[j], static_cast<int>(i))));
  return out;
}

TEST(Carlitz, LinearAndMultiplicative) {
  std::mt19937_64 rng(1);
  for (auto F : {f3(), f5(), f9()}) {
    auto A = make_poly_ring(F);
    for (int i = 0; i < 40; ++i) {
      const APoly a = testing::random_nonzero_apoly(rng, *A, 3), b = testing::random_nonzero_apoly(rng, *A, 3);
      const auto ca = carlitz_poly(*A, a).coeffs, cb = carlitz_poly(*A, b).coeffs;
      ASSERT_EQ(ca.front(), a);
      ASSERT_EQ(carlitz_poly(*A, A->mul(a, b)).coeffs, compose_additive(*A, ca, cb));
      const APoly s = A->add(a, b);
      if (s.is_zero()) continue;
      auto cs = carlitz_poly(*A, s).coeffs;
      std::vector<APoly> sum(std::max(ca.size(), cb.size()), A->zero());
      for (std::size_t k = 0; k < ca.size(); ++k) sum[k] = A->add(sum[k], ca[k]);
      for (std::size_t k = 0; k < cb.size(); ++k) sum[k] = A->add(sum[k], cb[k]);
      while (sum.size() > cs.size()) {
        ASSERT_TRUE(sum.back().is_zero());
        sum.pop_back();
      }
      ASSERT_EQ(cs, sum);
    }
  }
}

TEST(UScaled, Examples) {
  auto A = make_poly_ring(f3());
  EXPECT_EQ(u_scaled(A, A->one(), 10), terms(A, 10, {{1, "1"}}));
  EXPECT_EQ(u_scaled(A, A->T(), 10), terms(A, 10, {{3, "1"}, {5, "-T"}, {7, "T^2"}, {9, "-T^3"}}));
  const ASeries t1 = u_scaled(A, parse(*A, "T+1"), 10);
  EXPECT_EQ(t1.truncate(6), terms(A, 6, {{3, "1"}, {5, "-(T+1)"}}));
  EXPECT_THROW(u_scaled(A, parse(*A, "2*T"), 10), Error);
}

TEST(UScaled, CarlitzRelation) {
  // u_a * C_a(1/u) = 1, i.e. u_a * sum_i c_i u^{q^D - q^i} = u^{q^D}.
  std::mt19937_64 rng(2);
  for (auto F : {f3(), f5()}) {
    auto A = make_poly_ring(F);
    for (int i = 0; i < 10; ++i) {
      const APoly a = testing::random_monic(rng, *A, 1 + static_cast<int>(rng() % 2));
      const int N = 60, D = a.degree();
      const int lead = static_cast<int>(checked_pow(F->q(), D));
      const auto c = carlitz_poly(*A, a).coeffs;
      std::vector<ASeries::Term> ts;
      for (int k = D; k >= 0; --k) ts.push_back({lead - static_cast<int>(checked_pow(F->q(), k)), c[static_cast<std::size_t>(k)]});
      const ASeries lhs = u_scaled(A, a, N) * ASeries::from_terms(A, N, ts);
      EXPECT_EQ(lhs, ASeries::monomial(A, A->one(), lead, N));
    }
  }
}

TEST(UScaled, ComposesMultiplicatively) {
  // u(abz) is u(az) evaluated at u(bz).
  auto A = make_poly_ring(f3());
  const int N = 80;
  for (const char* a : {"T", "T+1", "T^2+1"})
    for (const char* b : {"T", "T+2"}) {
      const APoly pa = parse(*A, a), pb = parse(*A, b);
      const ASeries composed = series_compose(u_scaled(A, pa, N), u_scaled(A, pb, N));
      EXPECT_EQ(composed, u_scaled(A, A->mul(pa, pb), N)) << a << " * " << b;
    }
}

TEST(Generators, PrintedExpansions) {
  for (auto [F, N] : std::vector<std::pair<FieldPtr, int>>{{f3(), 60}, {f5(), 120}, {f9(), 100}}) {
    Generators gen(make_poly_ring(F));
    for (const auto& c : printed_expansion_checks(gen, N)) EXPECT_TRUE(c.pass) << "q=" << F->q() << " " << c.id << ": " << c.details;
  }
}

TEST(Generators, EisensteinLeadingTerms) {
  auto A = make_poly_ring(f3());
  Generators gen(A);
  EXPECT_EQ(gen.E(3), terms(A, 3, {{1, "1"}}));
  EXPECT_EQ(gen.ET(4), terms(A, 4, {{1, "1"}, {3, "-T"}}));
  // E - pi E(pi z) = E mod pi
  auto R = make_residue_field(A, validate_prime(parse(*A, "T+1"), *A));
  const ASeries diff = gen.E(50) - false_eisenstein(A, parse(*A, "T+1"), 50).scale(parse(*A, "T+1"));
  EXPECT_EQ(series_reduce(diff, R), series_reduce(gen.E(50), R));
  EXPECT_THROW(false_eisenstein(A, parse(*A, "2*T"), 10), Error);
}

TEST(Generators, ScaledFormsAgreeWithComposition) {
  for (auto F : {f3(), f5()}) {
    auto A = make_poly_ring(F);
    Generators gen(A);
    const int N = 100;
    const ASeries uT = gen.get(Gen::uT, N);
    EXPECT_EQ(series_compose(gen.g1(N), uT), gen.g1T(N));
    EXPECT_EQ(series_compose(gen.E(N), uT), false_eisenstein(A, A->T(), N));
  }
}

TEST(Generators, Identities) {
  for (auto [F, N] : std::vector<std::pair<FieldPtr, int>>{{f3(), 120}, {f5(), 100}}) {
    Generators gen(make_poly_ring(F));
    for (const auto& c : identity_checks(gen, N)) EXPECT_TRUE(c.pass) << "q=" << F->q() << " " << c.id << ": " << c.details;
  }
}

TEST(Generators, GdBaseCasesAndConstantTerm) {
  auto A = make_poly_ring(f3());
  Generators gen(A);
  EXPECT_EQ(gen.gd(0, 10), ASeries::one(A, 10));
  EXPECT_EQ(gen.gd(1, 10), gen.g1(10));
  for (int d = 2; d <= 3; ++d) EXPECT_EQ(gen.gd(d, 100).coeff(0), A->one());
}

TEST(Generators, GdRecursionSign) {
  // Both signs give modular forms of weight q^2-1, but only the "-" variant
  // decomposes as phi_2(Delta_W, Delta_T) and reduces to 1.
  auto A = make_poly_ring(f3());
  Generators gen(A);
  const int N = 120;
  const APoly bracket = A->sub(A->frobenius(A->T()), A->T());
  const ASeries base = gen.g1(N) * series_frobenius(gen.g1(N), 1, N);
  const ASeries tail = gen.delta(N).scale(bracket);
  EXPECT_EQ(base - tail, gen.gd(2, N));
  const ASeries plus = base + tail;
  auto R = make_residue_field(A, validate_prime(parse(*A, "T^2+1"), *A));
  EXPECT_NE(series_reduce(plus, R), RSeries::one(R, N));
  EXPECT_EQ(series_reduce(gen.gd(2, N), R), RSeries::one(R, N));
  const auto decomposed = from_series(8, 0, plus, gen);
  EXPECT_FALSE(decomposed.iso() == phi_d(A, 2));
}

TEST(Generators, MemoIsConsistentAcrossPrecisions) {
  auto A = make_poly_ring(f5());
  Generators gen(A);
  for (Gen g : {Gen::E, Gen::g1, Gen::deltaT, Gen::delta}) {
    EXPECT_EQ(gen.get(g, 150).truncate(60), gen.get(g, 60));
    EXPECT_EQ(gen.get(g, 60).prec(), 60);
  }
}

TEST(Generators, ConcurrentReaders) {
  auto A = make_poly_ring(f3());
  Generators shared(A), reference(A);
  std::vector<std::thread> pool;
  std::vector<ASeries> results(8, ASeries(A, 1));
  for (int i = 0; i < 8; ++i)
    pool.emplace_back([&, i] { results[static_cast<std::size_t>(i)] = shared.gd(1 + i % 3, 150); });
  for (auto& t : pool) t.join();
  for (int i = 0; i < 8; ++i) EXPECT_EQ(results[static_cast<std::size_t>(i)], reference.gd(1 + i % 3, 150));
}

TEST(Generators, CoefficientsStayInA) {
  // The exact divisions in the bootstrap would throw otherwise.
  for (auto F : {f3(), f5(), f9()}) {
    Generators gen(make_poly_ring(F));
    EXPECT_NO_THROW(gen.deltaT(90));
    EXPECT_NO_THROW(gen.deltaW(90));
  }
}

}  // namespace
}  // namespace dmod
