#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pncalc/tnorm.hpp"

namespace pncalc {
namespace {

const TNorm kMin(TNormId::kMin);
const TNorm kProd(TNormId::kProd);
const TNorm kLuk(TNormId::kLukasiewicz);
const TNorm kT2(TNormId::kT2);

TEST(TNorm, ClosedForms) {
  EXPECT_EQ(kProd(0.5, 0.5), 0.25);
  EXPECT_EQ(kMin(0.3, 0.7), 0.3);
  EXPECT_EQ(kLuk(0.5, 0.5), 0.0);
  EXPECT_NEAR(kLuk(0.8, 0.7), 0.5, 1e-15);
  EXPECT_NEAR(kT2(0.5, 0.5), 1.0 / (1.0 + std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(tnorm_eval(kT2, 0.5, 0.5), 0.414213562, 1e-9);
}

TEST(TNorm, T2Boundaries) {
  for (double a : {0.0, 0.1, 0.5, 0.999, 1.0}) {
    EXPECT_EQ(kT2(a, 0.0), 0.0) << a;
    EXPECT_EQ(kT2(0.0, a), 0.0) << a;
    EXPECT_NEAR(kT2(a, 1.0), a, 1e-15) << a;
    EXPECT_NEAR(kT2(1.0, a), a, 1e-15) << a;
  }
}

TEST(TNorm, T2MatchesIndependentFormula) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    const double ia = 1.0 / a - 1.0;
    const double ib = 1.0 / b - 1.0;
    EXPECT_NEAR(kT2(a, b), 1.0 / (1.0 + std::sqrt(ia * ia + ib * ib)), 1e-14);
  }
}

TEST(TNorm, RejectsArgumentsOutsideUnitSquare) {
  EXPECT_THROW(kMin(-0.1, 0.5), std::domain_error);
  EXPECT_THROW(kProd(0.5, 1.1), std::domain_error);
  EXPECT_THROW(kT2(std::nan(""), 0.5), std::domain_error);
  EXPECT_THROW(dual(kProd)(2.0, 0.0), std::domain_error);
}

TEST(TConorm, Duals) {
  EXPECT_NEAR(dual(kLuk)(0.3, 0.4), 0.7, 1e-15);
  EXPECT_EQ(dual(kLuk)(0.7, 0.6), 1.0);
  EXPECT_EQ(dual(kMin)(0.3, 0.7), 0.7);
  for (double x : {0.0, 0.2, 0.9, 1.0}) EXPECT_NEAR(dual(kProd)(x, 0.0), x, 1e-15);
  EXPECT_NEAR(conorm_eval(kProd, 0.5, 0.5), 0.75, 1e-15);
  EXPECT_EQ(dual(dual(kT2)), kT2);
}

TEST(TConorm, IsOneMinusTOfComplements) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const TNorm t : {kMin, kProd, kLuk, kT2}) {
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng);
      const double y = u(rng);
      EXPECT_NEAR(dual(t)(x, y), 1.0 - t(1.0 - x, 1.0 - y), 1e-15);
    }
  }
}

TEST(Parse, NamesAndAliases) {
  EXPECT_EQ(parse_tnorm("min"), kMin);
  EXPECT_EQ(parse_tnorm("M"), kMin);
  EXPECT_EQ(parse_tnorm("prod"), kProd);
  EXPECT_EQ(parse_tnorm("pi"), kProd);
  EXPECT_EQ(parse_tnorm("lukasiewicz"), kLuk);
  EXPECT_EQ(parse_tnorm("W"), kLuk);
  EXPECT_EQ(parse_tnorm("t2"), kT2);
  EXPECT_THROW(parse_tnorm("hamacher"), std::invalid_argument);
  EXPECT_EQ(kLuk.name(), "lukasiewicz");
}

TEST(LawSuite, ProdHoldsAndIsArchimedean) {
  const LawReport r = law_suite(kProd, 1000, 7);
  EXPECT_TRUE(r.tnorm_laws_hold());
  EXPECT_TRUE(r.archimedean);
  EXPECT_EQ(r.samples, 1000u);
}

TEST(LawSuite, MinHoldsButIsNotArchimedean) {
  const LawReport r = law_suite(kMin, 1000, 7);
  EXPECT_TRUE(r.tnorm_laws_hold());
  EXPECT_FALSE(r.archimedean);
  ASSERT_TRUE(r.first_violation);
  EXPECT_EQ(r.first_violation->law, "archimedean");
}

TEST(LawSuite, T2CommutesAndHasIdentity) {
  const LawReport r = law_suite(kT2, 1000, 7);
  EXPECT_TRUE(r.commutative);
  EXPECT_TRUE(r.identity);
  EXPECT_TRUE(r.monotone);
  // t2 is the Dombi t-norm with parameter 2, so this should hold.
  EXPECT_TRUE(r.associative);
}

TEST(LawSuite, LukasiewiczHolds) { EXPECT_TRUE(law_suite(kLuk, 1000, 7).tnorm_laws_hold()); }

TEST(LawSuite, BrokenOperationsAreCaught) {
  // Not commutative.
  const LawReport skew = law_suite([](double x, double y) { return x * y * y; }, 200, 7);
  EXPECT_FALSE(skew.commutative);
  EXPECT_FALSE(skew.identity);
  // Commutative and monotone but without identity 1.
  const LawReport half = law_suite([](double x, double y) { return 0.5 * x * y; }, 200, 7);
  EXPECT_TRUE(half.commutative);
  EXPECT_FALSE(half.identity);
  // Not associative.
  const LawReport mean = law_suite([](double x, double y) { return std::sqrt(x * y) * std::min(x, y); }, 200, 7);
  EXPECT_FALSE(mean.tnorm_laws_hold());
  ASSERT_TRUE(mean.first_violation);
}

TEST(LawSuite, DeterministicForASeed) {
  const auto op = [](double x, double y) { return x * y * y; };
  const LawReport a = law_suite(op, 200, 42);
  const LawReport b = law_suite(op, 200, 42);
  ASSERT_TRUE(a.first_violation && b.first_violation);
  EXPECT_EQ(a.first_violation->x, b.first_violation->x);
  EXPECT_EQ(a.first_violation->y, b.first_violation->y);
}

}  // namespace
}  // namespace pncalc
