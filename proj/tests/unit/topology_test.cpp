#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pncalc/topology.hpp"

namespace pncalc {
namespace {

TEST(Neighborhood, DeterministicNorm) {
  const PNSpace s = parse_space("E19");
  EXPECT_TRUE(neighborhood_contains(s, {0.0}, {0.3}, 0.5));
  EXPECT_FALSE(neighborhood_contains(s, {0.0}, {0.6}, 0.5));
  // The step is left-continuous, so distance exactly lambda is outside.
  EXPECT_FALSE(neighborhood_contains(s, {1.0}, {1.5}, 0.5));
  EXPECT_TRUE(neighborhood_contains(s, {2.0}, {2.0}, 0.01));
}

TEST(Neighborhood, MixtureOnlyContainsCentre) {
  const PNSpace s = parse_space("E21");
  EXPECT_TRUE(neighborhood_contains(s, {1.0}, {1.0}, 0.1));
  EXPECT_FALSE(neighborhood_contains(s, {1.0}, {1.0 + 1e-9}, 0.5));
  // 1/(|p|+2) is just below 1/2 for tiny |p|, and 1 - lambda drops under it.
  EXPECT_TRUE(neighborhood_contains(s, {1.0}, {1.0 + 1e-9}, 0.6));
}

TEST(Neighborhood, RejectsLambdaOutsideOpenUnitInterval) {
  const PNSpace s = parse_space("E19");
  EXPECT_THROW(neighborhood_contains(s, {0.0}, {0.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(neighborhood_contains(s, {0.0}, {0.0}, 1.0), std::invalid_argument);
}

TEST(Neighborhood, ShrinksWithLambda) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> l(0.01, 0.99);
  for (const char* spec : {"E9:a=1", "E12", "E19", "E21", "E25", "E27:a=1"}) {
    const PNSpace s = parse_space(spec);
    for (int i = 0; i < 200; ++i) {
      const Vec p{u(rng)};
      const Vec q{u(rng)};
      double a = l(rng);
      double b = l(rng);
      if (a > b) std::swap(a, b);
      if (neighborhood_contains(s, p, q, a)) {
        EXPECT_TRUE(neighborhood_contains(s, p, q, b)) << spec << " p=" << p[0] << " q=" << q[0];
      }
    }
  }
}

TEST(Convergence, HarmonicInDeterministicNorm) {
  const PNSpace s = parse_space("E19");
  const ConvergenceReport r = convergence_probe(s, SequenceSpec::harmonic(), {0.0}, {0.5, 0.25});
  EXPECT_TRUE(r.converges);
  ASSERT_EQ(r.levels.size(), 2u);
  // 1/m < lambda.
  EXPECT_EQ(r.levels[0].n, 3u);
  EXPECT_EQ(r.levels[1].n, 5u);
  EXPECT_EQ(r.horizon, kDefaultHorizon);
}

TEST(Convergence, HarmonicInSaturatingStep) {
  // nu_{1/m} = step(1/(m+1)), inside once m + 1 > 1/lambda.
  const ConvergenceReport r = convergence_probe(parse_space("E9:a=1"), SequenceSpec::harmonic(), {0.0}, {0.3, 0.15});
  EXPECT_TRUE(r.converges);
  EXPECT_EQ(r.levels[0].n, 3u);
  EXPECT_EQ(r.levels[1].n, 6u);
}

TEST(Convergence, WrongTargetFails) {
  const ConvergenceReport r = convergence_probe(parse_space("E19"), SequenceSpec::harmonic(), {1.0}, default_lambdas());
  EXPECT_FALSE(r.converges);
  EXPECT_FALSE(r.levels.front().n);
  EXPECT_LT(r.levels.front().worst_margin, 0.0);
}

TEST(Convergence, MixtureNeedsEventuallyConstant) {
  const PNSpace s = parse_space("E21");
  EXPECT_FALSE(convergence_probe(s, SequenceSpec::harmonic(), {0.0}, default_lambdas()).converges);
  EXPECT_TRUE(convergence_probe(s, SequenceSpec::constant({2.0}), {2.0}, default_lambdas()).converges);
  const SequenceSpec eventually = SequenceSpec::explicit_terms({{5.0}, {3.0}, {1.0}, {1.0}, {1.0}});
  const ConvergenceReport r = convergence_probe(s, eventually, {1.0}, {0.25}, 5);
  EXPECT_TRUE(r.converges);
  EXPECT_EQ(r.levels.front().n, 3u);
}

TEST(Cauchy, HarmonicIsCauchyInDeterministicNorm) {
  const CauchyReport r = cauchy_probe(parse_space("E19"), SequenceSpec::harmonic(), {0.25});
  EXPECT_TRUE(r.cauchy);
  // |1/m - 1/n| < 1/m, and for m = 4 the pair (4, 64) gives 15/64 < 1/4.
  ASSERT_TRUE(r.levels.front().n);
  EXPECT_LE(*r.levels.front().n, 5u);
}

TEST(Cauchy, GeometricIsNot) {
  const CauchyReport r = cauchy_probe(parse_space("E19"), SequenceSpec::geometric(), default_lambdas());
  EXPECT_FALSE(r.cauchy);
}

TEST(Completeness, Verdicts) {
  const CompletenessReport e12 = completeness_probe(parse_space("E12"), SequenceSpec::decay(), default_lambdas());
  EXPECT_EQ(e12.verdict, Completeness::kCauchyAndConverges);
  ASSERT_TRUE(e12.limit);
  EXPECT_EQ(*e12.limit, Vec{0.0});

  const CompletenessReport e21 = completeness_probe(parse_space("E21"), SequenceSpec::harmonic(), default_lambdas());
  EXPECT_EQ(e21.verdict, Completeness::kNotCauchy);
  EXPECT_EQ(to_string(e21.verdict), "not_cauchy");

  EXPECT_EQ(to_string(Completeness::kCauchyNoLimitDetected), "cauchy_no_limit_detected");
}

TEST(Sequences, TermsAndParsing) {
  const SequenceSpec h = parse_sequence("harmonic:dir=1,2;offset=0,1");
  EXPECT_EQ(h.term(2, 2), (Vec{0.5, 2.0}));
  EXPECT_EQ(h.classical_limit(2), (Vec{0.0, 1.0}));
  EXPECT_EQ(parse_sequence("decay").term(3, 1), Vec{0.125});
  EXPECT_EQ(parse_sequence("geometric_decay").kind, SequenceSpec::Kind::kDecay);
  EXPECT_EQ(parse_sequence("geometric").term(3, 1), Vec{8.0});
  EXPECT_FALSE(parse_sequence("geometric").classical_limit(1));
  EXPECT_EQ(parse_sequence("constant:2").term(10, 1), Vec{2.0});

  const SequenceSpec e = parse_sequence("explicit:1;0.5;0.25");
  EXPECT_EQ(e.max_horizon(), 3u);
  EXPECT_EQ(e.term(3, 1), Vec{0.25});
  EXPECT_THROW(e.term(4, 1), std::out_of_range);
  EXPECT_THROW(parse_sequence("fibonacci"), std::invalid_argument);
}

TEST(Equivalence, DeterministicAndSaturatingAgree) {
  const PNSpace a = parse_space("E19");
  const PNSpace b = parse_space("E9:a=1");
  const EquivalenceReport r = equivalence_probe(a, b, default_battery(1));
  EXPECT_TRUE(r.equivalent);
  EXPECT_FALSE(r.witness);
  EXPECT_EQ(r.items.size(), default_battery(1).size());
}

TEST(Equivalence, MixtureDisagreesOnHarmonic) {
  const EquivalenceReport r = equivalence_probe(parse_space("E19"), parse_space("E21"), default_battery(1));
  EXPECT_FALSE(r.equivalent);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->rfind("harmonic", 0), 0u) << *r.witness;
}

TEST(Equivalence, IsSymmetric) {
  const char* specs[] = {"E9:a=1", "E12", "E19", "E21", "E25", "E27:a=1"};
  for (const char* x : specs) {
    for (const char* y : specs) {
      const PNSpace a = parse_space(x);
      const PNSpace b = parse_space(y);
      EXPECT_EQ(equivalence_probe(a, b, default_battery(1)).equivalent,
                equivalence_probe(b, a, default_battery(1)).equivalent)
          << x << " " << y;
    }
  }
}

TEST(Rank, Basics) {
  EXPECT_EQ(rank({{1.0, 0.0}, {0.0, 1.0}}), 2u);
  EXPECT_EQ(rank({{1.0, 2.0}, {2.0, 4.0}}), 1u);
  EXPECT_EQ(rank({{1.0, 1.0, 0.0}, {0.0, 1.0, 1.0}, {1.0, 2.0, 1.0}}), 2u);
  EXPECT_EQ(rank({{0.0, 0.0}}), 0u);
}

TEST(L1Sphere, SamplesHaveUnitL1Norm) {
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const auto samples = l1_sphere_samples(n);
    ASSERT_FALSE(samples.empty());
    for (const Vec& v : samples) {
      ASSERT_EQ(v.size(), n);
      EXPECT_NEAR(base_norm(BaseNorm::kL1, v), 1.0, 1e-12);
    }
  }
}

TEST(FindC, EuclideanPlane) {
  // c = min of ||beta||_2 over ||beta||_1 = 1, reached at (1/2, 1/2).
  const PNSpace s = parse_space("E19:l2,dim=2");
  const PNSpace field = parse_space("E19");
  const FindCReport r = find_c(s, {{1.0, 0.0}, {0.0, 1.0}}, field, l1_sphere_samples(2));
  ASSERT_TRUE(r.c);
  EXPECT_NEAR(*r.c, 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_GT(r.samples, 0u);
}

TEST(FindC, MaxNormPlane) {
  const FindCReport r = find_c(parse_space("E19:linf,dim=2"), {{1.0, 0.0}, {0.0, 1.0}}, parse_space("E19"),
                               l1_sphere_samples(2));
  ASSERT_TRUE(r.c);
  EXPECT_NEAR(*r.c, 0.5, 1e-6);
}

TEST(FindC, LineIsItsOwnField) {
  const FindCReport r = find_c(parse_space("E19"), {{1.0}}, parse_space("E19"), l1_sphere_samples(1));
  ASSERT_TRUE(r.c);
  EXPECT_NEAR(*r.c, 1.0, 1e-6);
}

TEST(FindC, ScaledBasis) {
  // ||beta_1 (2,0) + beta_2 (0,2)||_2 = 2 ||beta||_2.
  const FindCReport r = find_c(parse_space("E19:l2,dim=2"), {{2.0, 0.0}, {0.0, 2.0}}, parse_space("E19"),
                               l1_sphere_samples(2));
  ASSERT_TRUE(r.c);
  EXPECT_NEAR(*r.c, std::sqrt(2.0), 1e-6);
}

TEST(FindC, RejectsBadInput) {
  const PNSpace s = parse_space("E19:l2,dim=2");
  EXPECT_THROW(find_c(s, {{1.0, 2.0}, {2.0, 4.0}}, parse_space("E19"), l1_sphere_samples(2)),
               std::invalid_argument);
  EXPECT_THROW(find_c(s, {{1.0, 0.0}, {0.0, 1.0}}, parse_space("E19:dim=2"), l1_sphere_samples(2)),
               std::invalid_argument);
}

}  // namespace
}  // namespace pncalc
