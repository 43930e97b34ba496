#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pncalc/pnspace.hpp"

namespace pncalc {
namespace {

bool same(const DistFn& a, const DistFn& b, double tol = 1e-15) { return pointwise_equal(a, b, tol); }

TEST(Norm, SaturatingStep) {
  const PNSpace s = parse_space("E9:a=1");
  EXPECT_TRUE(same(s.norm({1.0}), DistFn::step(0.5)));
  EXPECT_TRUE(same(s.norm({-3.0}), DistFn::step(0.75)));
  EXPECT_TRUE(s.norm({0.0}).is_unit());
  EXPECT_TRUE(same(parse_space("E9:a=3").norm({1.0}), DistFn::step(0.25)));
}

TEST(Norm, ExpPlateau) {
  const PNSpace s = parse_space("E12");
  EXPECT_TRUE(same(s.norm({4.0}), DistFn::plateau(std::exp(-2.0))));
  EXPECT_TRUE(s.norm({0.0}).is_unit());
}

TEST(Norm, DeterministicUsesBaseNorm) {
  EXPECT_TRUE(same(parse_space("E19:l2,dim=2").norm({3.0, 4.0}), DistFn::step(5.0)));
  EXPECT_TRUE(same(parse_space("E19:l1,dim=2").norm({3.0, -4.0}), DistFn::step(7.0)));
  EXPECT_TRUE(same(parse_space("E19:linf,dim=2").norm({3.0, -4.0}), DistFn::step(4.0)));
}

TEST(Norm, SaturatingVector) {
  const PNSpace s = parse_space("E19b:a=1,l2,dim=2");
  EXPECT_TRUE(same(s.norm({3.0, 4.0}), DistFn::step(5.0 / 6.0)));
}

TEST(Norm, MixturePlateau) {
  const PNSpace s = parse_space("E21");
  EXPECT_TRUE(same(s.norm({2.0}), DistFn::plateau(0.25)));
  EXPECT_TRUE(same(s.norm({-2.0}), DistFn::plateau(0.25)));
  EXPECT_TRUE(s.norm({0.0}).is_unit());
}

TEST(Norm, SqrtRatio) {
  const DistFn n = parse_space("E25").norm({4.0});
  EXPECT_TRUE(same(n, DistFn::ratio(2.0)));
  EXPECT_NEAR(n(2.0), 0.5, 1e-15);
}

TEST(Norm, ShiftedStep) {
  EXPECT_TRUE(same(parse_space("E27:a=1").norm({1.0}), DistFn::step(2.0)));
  EXPECT_TRUE(same(parse_space("E27:a=2").norm({-2.0}), DistFn::step(2.0)));
  EXPECT_TRUE(parse_space("E27").norm({0.0}).is_unit());
}

TEST(Norm, MagnitudeLimit) {
  EXPECT_TRUE(same(parse_space("E9").norm_at_magnitude(kInf), DistFn::step(1.0)));
  EXPECT_TRUE(same(parse_space("E12").norm_at_magnitude(kInf), DistFn::plateau(0.0)));
  EXPECT_TRUE(same(parse_space("E19").norm_at_magnitude(kInf), DistFn::vanishing()));
}

TEST(Norm, DimensionMismatchThrows) {
  EXPECT_THROW(parse_space("E19:dim=2").norm({1.0}), std::invalid_argument);
}

TEST(Parse, RejectsBadSpecs) {
  EXPECT_THROW(parse_space("E99"), std::invalid_argument);
  EXPECT_THROW(parse_space("E9:a=0"), std::invalid_argument);
  EXPECT_THROW(parse_space("E9:a=-1"), std::invalid_argument);
  EXPECT_THROW(parse_space("E12:dim=2"), std::invalid_argument);
  EXPECT_THROW(parse_space("E12:a=2"), std::invalid_argument);
  EXPECT_THROW(parse_space("E19:dim=0"), std::invalid_argument);
  EXPECT_THROW(parse_space("E19:l3"), std::invalid_argument);
}

TEST(Parse, DescribeRoundTrips) {
  for (const char* spec : {"E9:a=1", "E12", "E19:l1,dim=3", "E19b:a=2,linf,dim=2", "E21", "E25", "E27:a=1"}) {
    const PNSpace s = parse_space(spec);
    const std::string d = s.describe();
    const PNSpace again = parse_space(d.substr(0, d.find(' ')), s.tau(), s.tau_star());
    EXPECT_EQ(again.describe(), d) << spec;
  }
  EXPECT_EQ(parse_space("E19:dim=2").describe(), "E19:l2,dim=2 tau=sup:min taustar=max");
}

class DefaultSpaces : public ::testing::TestWithParam<const char*> {};

TEST_P(DefaultSpaces, SatisfyAxioms) {
  const PNSpace s = parse_space(GetParam());
  const AxiomReport r = axiom_suite(s, SampleSpec::defaults(s.dim()), 1e-12);
  EXPECT_TRUE(r.all_hold()) << s.describe();
  EXPECT_TRUE(r.tau_below_tau_star.holds) << s.describe();
  EXPECT_GT(r.n3.checked, 0u);
  EXPECT_EQ(r.n3.failed, 0u);
}

TEST_P(DefaultSpaces, NormsShrinkWithMagnitude) {
  const PNSpace s = parse_space(GetParam());
  EXPECT_TRUE(lemma2_check(s, SampleSpec::defaults(s.dim()), 1e-12).holds) << s.describe();
}

INSTANTIATE_TEST_SUITE_P(Catalog, DefaultSpaces,
                         ::testing::Values("E9:a=1", "E12", "E19", "E19:l1,dim=2", "E19b:a=1,dim=2", "E21", "E25",
                                           "E27:a=1"));

TEST(Axioms, MaximalTriangleBreaksTriangleInequality) {
  const PNSpace s = parse_space("E19", TriangleFn::max(), TriangleFn::max());
  const AxiomReport r = axiom_suite(s, SampleSpec::defaults(1), 1e-12);
  EXPECT_TRUE(r.n1.holds);
  EXPECT_TRUE(r.n2.holds);
  EXPECT_FALSE(r.n3.holds);

  // p = q = e1: nu_2 = step(2) is not above min(step(1), step(1)).
  SampleSpec one = SampleSpec::defaults(1);
  one.vectors = {{1.0}};
  const AxiomReport single = axiom_suite(s, one, 1e-12);
  ASSERT_EQ(single.n3.violations.size(), 1u);
  const Witness& w = single.n3.violations.front();
  EXPECT_EQ(w.detail, "p=1 q=1");
  EXPECT_GT(w.x, 1.0);
  EXPECT_LE(w.x, 2.0);
}

TEST(Axioms, StoredViolationsAreCapped) {
  const PNSpace s = parse_space("E19", TriangleFn::max(), TriangleFn::max());
  const AxiomReport r = axiom_suite(s, SampleSpec::defaults(1), 1e-12);
  EXPECT_LE(r.n3.violations.size(), kMaxStoredViolations);
  EXPECT_GE(r.n3.failed, r.n3.violations.size());
}

TEST(Serstnev, DeterministicNormIsSerstnev) {
  const PNSpace s = parse_space("E19:dim=2");
  const SerstnevReport r = serstnev_check(s, SampleSpec::defaults(2), 1e-12);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.checked, 0u);
}

TEST(Serstnev, SaturatingFamiliesAreNot) {
  for (const char* spec : {"E9:a=1", "E12", "E25", "E27:a=1", "E19b:a=1"}) {
    const SerstnevReport r = serstnev_check(parse_space(spec), SampleSpec::defaults(1), 1e-12);
    EXPECT_FALSE(r.holds) << spec;
    ASSERT_FALSE(r.violations.empty()) << spec;
    const SerstnevViolation& v = r.violations.front();
    EXPECT_NE(std::abs(v.alpha), 1.0) << spec;
  }
}

TEST(Serstnev, ViolationWitnessDisagrees) {
  // nu_{2p} = step(2/3) against nu_p(x/2) = step(1) for p = 1, a = 1.
  const PNSpace s = parse_space("E9:a=1");
  SampleSpec spec;
  spec.vectors = {{1.0}};
  spec.scalars = {2.0};
  const SerstnevReport r = serstnev_check(s, spec, 1e-12);
  ASSERT_EQ(r.violations.size(), 1u);
  const SerstnevViolation& v = r.violations.front();
  EXPECT_TRUE(same(v.scaled_norm, DistFn::step(2.0 / 3.0)));
  EXPECT_TRUE(same(v.scaled_arg, DistFn::step(1.0)));
  EXPECT_NE(v.scaled_norm(v.x), v.scaled_arg(v.x));
}

TEST(Lg, Catalog) {
  const auto probes = default_lg_probes();
  const auto escape = default_escape();
  EXPECT_TRUE(lg_probe(parse_space("E25"), probes, escape).has_lg);
  EXPECT_TRUE(lg_probe(parse_space("E19"), probes, escape).has_lg);
  EXPECT_TRUE(lg_probe(parse_space("E12"), probes, escape).has_lg);
  EXPECT_TRUE(lg_probe(parse_space("E21"), probes, escape).has_lg);

  // nu_p -> step(1), which keeps the value 1 beyond x = 1.
  const LgReport e9 = lg_probe(parse_space("E9:a=1"), probes, escape);
  EXPECT_FALSE(e9.has_lg);
  ASSERT_FALSE(e9.failures.empty());
  EXPECT_GT(e9.failures.front().x, 1.0);
  EXPECT_EQ(e9.failures.front().limit, 1.0);
}

TEST(SmallScalarDelta, DeterministicNorm) {
  // step(alpha)(h) = 1 exactly when alpha < h.
  const auto d = lemma3_delta_probe(parse_space("E19"), {1.0}, 0.5);
  ASSERT_TRUE(d);
  EXPECT_NEAR(*d, 0.5, 1e-9);
}

TEST(SmallScalarDelta, ExpPlateau) {
  const double oracle = std::pow(std::log(2.0), 2.0);
  const auto d = lemma3_delta_probe(parse_space("E12"), {1.0}, 0.5);
  ASSERT_TRUE(d);
  EXPECT_NEAR(*d, oracle, 1e-9);
  EXPECT_NEAR(*d, 0.480453014, 1e-9);
}

TEST(SmallScalarDelta, MixtureNeverClimbsPastOneHalf) {
  EXPECT_FALSE(lemma3_delta_probe(parse_space("E21"), {1.0}, 0.25).has_value());
}

TEST(SmallScalarDelta, ScalesInverselyWithVector) {
  const auto d1 = lemma3_delta_probe(parse_space("E19"), {1.0}, 0.5);
  const auto d4 = lemma3_delta_probe(parse_space("E19"), {4.0}, 0.5);
  ASSERT_TRUE(d1 && d4);
  EXPECT_NEAR(*d4, *d1 / 4.0, 1e-9);
}

TEST(Properties, NormIsEvenAndMonotoneInMagnitude) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> mag(0.0, 50.0);
  for (const char* spec : {"E9:a=1", "E12", "E19", "E21", "E25", "E27:a=1"}) {
    const PNSpace s = parse_space(spec);
    for (int i = 0; i < 50; ++i) {
      double a = mag(rng);
      double b = mag(rng);
      if (a > b) std::swap(a, b);
      EXPECT_TRUE(same(s.norm({a}), s.norm({-a}))) << spec << " " << a;
      EXPECT_TRUE(compare_leq(s.norm({b}), s.norm({a}), 1e-12).holds) << spec << " " << a << " " << b;
    }
  }
}

TEST(Vectors, Arithmetic) {
  const Vec a{1.0, 2.0};
  const Vec b{0.5, -1.0};
  EXPECT_EQ(a + b, (Vec{1.5, 1.0}));
  EXPECT_EQ(a - b, (Vec{0.5, 3.0}));
  EXPECT_EQ(-a, (Vec{-1.0, -2.0}));
  EXPECT_EQ(2.0 * b, (Vec{1.0, -2.0}));
  EXPECT_TRUE(is_zero(zero_vec(3)));
  EXPECT_EQ(unit_vec(3, 1), (Vec{0.0, 1.0, 0.0}));
  EXPECT_EQ(parse_vec("1,0,2"), (Vec{1.0, 0.0, 2.0}));
  EXPECT_EQ(format_vec({1.5}), "1.5");
  EXPECT_THROW(parse_vec("1,,2"), std::invalid_argument);
}

}  // namespace
}  // namespace pncalc
