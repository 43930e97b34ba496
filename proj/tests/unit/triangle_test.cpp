#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pncalc/triangle.hpp"

namespace pncalc {
namespace {

const TNorm kMin(TNormId::kMin);
const TNorm kProd(TNormId::kProd);
const TNorm kLuk(TNormId::kLukasiewicz);
const TNorm kT2(TNormId::kT2);

// Brute force over splits s + t = x.  Operands have breakpoints on the 1/8
// lattice, so probing x off the lattice by 1/32 and s on a 1/256 grid hits
// every open cell of the split.
double brute_sup(TNorm t, const DistFn& f, const DistFn& g, double x) {
  double best = t(f(0.0), g(x));
  best = std::max(best, t(f(x), g(0.0)));
  for (double s = 1.0 / 512; s < x; s += 1.0 / 256) best = std::max(best, t(f(s), g(x - s)));
  return best;
}

double brute_inf(TNorm t, const DistFn& f, const DistFn& g, double x) {
  const TConorm s = dual(t);
  double best = std::min(s(f(0.0), g(x)), s(f(x), g(0.0)));
  for (double u = 1.0 / 512; u < x; u += 1.0 / 256) best = std::min(best, s(f(u), g(x - u)));
  return best;
}

std::vector<double> off_lattice_points() {
  std::vector<double> xs;
  for (int k = 0; k < 140; ++k) xs.push_back(k / 16.0 + 1.0 / 32);
  return xs;
}

TEST(SupConv, MatchesBruteForceOnRandomSteps) {
  std::mt19937_64 rng(11);
  for (const TNorm t : {kMin, kProd, kLuk, kT2}) {
    for (int i = 0; i < 25; ++i) {
      const DistFn f = random_dyadic_step(rng);
      const DistFn g = random_dyadic_step(rng);
      const DistFn h = sup_conv(t, f, g);
      ASSERT_TRUE(h.is_exact()) << describe(h);
      for (double x : off_lattice_points()) {
        ASSERT_NEAR(h(x), brute_sup(t, f, g, x), 1e-12)
            << t.name() << " " << describe(f) << " * " << describe(g) << " at " << x;
      }
    }
  }
}

TEST(InfConv, MatchesBruteForceOnRandomSteps) {
  std::mt19937_64 rng(13);
  for (const TNorm t : {kMin, kProd, kLuk, kT2}) {
    for (int i = 0; i < 25; ++i) {
      const DistFn f = random_dyadic_step(rng);
      const DistFn g = random_dyadic_step(rng);
      const DistFn h = inf_conv(dual(t), f, g);
      for (double x : off_lattice_points()) {
        ASSERT_NEAR(h(x), brute_inf(t, f, g, x), 1e-12)
            << t.name() << " " << describe(f) << " * " << describe(g) << " at " << x;
      }
    }
  }
}

TEST(SupConv, UnitStepsAddBreakpoints) {
  const DistFn h = sup_conv(kMin, DistFn::step(1.0), DistFn::step(2.0));
  EXPECT_TRUE(pointwise_equal(h, DistFn::step(3.0), 0.0));
  EXPECT_EQ(h(3.0), 0.0);
  EXPECT_EQ(h(3.0 + 1e-12), 1.0);
}

TEST(SupConv, PlateausUnderMin) {
  const DistFn h = sup_conv(kMin, DistFn::plateau(0.3), DistFn::plateau(0.6));
  EXPECT_TRUE(pointwise_equal(h, DistFn::plateau(0.3), 0.0)) << describe(h);
}

TEST(SupConv, PlateausUnderProd) {
  const DistFn h = sup_conv(kProd, DistFn::plateau(0.5), DistFn::plateau(0.5));
  EXPECT_TRUE(pointwise_equal(h, DistFn::plateau(0.25), 1e-15)) << describe(h);
}

TEST(SupConv, VanishingIsAbsorbing) {
  const DistFn h = sup_conv(kProd, DistFn::step(1.0), DistFn::vanishing());
  for (double x : {0.5, 1.0, 10.0, 1e9}) EXPECT_EQ(h(x), 0.0);
}

TEST(InfConv, LukasiewiczDualOnUnitSteps) {
  const DistFn h = inf_conv(dual(kLuk), DistFn::step(1.0), DistFn::step(2.0));
  EXPECT_TRUE(pointwise_equal(h, DistFn::step(3.0), 0.0)) << describe(h);
}

TEST(InfConv, PlateausWithUnitEndpoints) {
  // At s = 0 the split reads S(0, gamma) = gamma, so the infimum can never
  // drop below gamma nor exceed it.
  for (double gamma : {0.1, 0.5, 0.9}) {
    const DistFn h = inf_conv(dual(kProd), DistFn::plateau(gamma), DistFn::plateau(gamma));
    EXPECT_TRUE(pointwise_equal(h, DistFn::plateau(gamma), 1e-15)) << gamma << " " << describe(h);
  }
}

TEST(SupConv, RatiosUnderMinAddScales) {
  // sup min(s/(s+a), t/(t+b)) is reached where s/a = t/b, giving x/(x+a+b).
  const DistFn h = sup_conv(kMin, DistFn::ratio(1.0), DistFn::ratio(2.0));
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) EXPECT_NEAR(h(x), x / (x + 3.0), 2e-3) << x;
}

TEST(InfConv, RatiosUnderT2DualCombineInQuadrature) {
  const double a = 1.0;
  const double b = 2.0;
  const DistFn h = inf_conv(dual(kT2), DistFn::ratio(a), DistFn::ratio(b));
  const double c = std::hypot(a, b);
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) EXPECT_NEAR(h(x), x / (x + c), 2e-3) << x;
}

TEST(MaxTf, IsPointwiseMinimum) {
  const DistFn f = DistFn::step({1.0, 2.0}, {0.0, 0.4, 1.0});
  const DistFn g = DistFn::step({1.5}, {0.0, 0.7});
  const DistFn h = max_tf(f, g);
  for (double x : {0.5, 1.0, 1.2, 1.5, 1.7, 2.5, 100.0}) EXPECT_EQ(h(x), std::min(f(x), g(x))) << x;
  EXPECT_TRUE(pointwise_equal(max_tf(DistFn::step(1.0), DistFn::step(2.0)), DistFn::step(2.0), 0.0));
}

TEST(TriangleFn, ParseAndSpec) {
  EXPECT_EQ(parse_triangle("sup:prod").spec(), "sup:prod");
  EXPECT_EQ(parse_triangle("inf:lukasiewicz").spec(), "inf:lukasiewicz");
  EXPECT_EQ(parse_triangle("max").spec(), "max");
  EXPECT_EQ(parse_triangle("inf:W").kind(), TriangleFn::Kind::kInfConv);
  EXPECT_THROW(parse_triangle("sup"), std::invalid_argument);
  EXPECT_THROW(parse_triangle("conv:min"), std::invalid_argument);
}

TEST(TriangleFn, DispatchesToOperation) {
  const DistFn f = DistFn::step(1.0);
  const DistFn g = DistFn::step(2.0);
  EXPECT_EQ(TriangleFn::sup(kMin)(f, g), sup_conv(kMin, f, g));
  EXPECT_EQ(TriangleFn::inf(kProd)(f, g), inf_conv(dual(kProd), f, g));
  EXPECT_EQ(TriangleFn::max()(f, g), max_tf(f, g));
}

class TfLaws : public ::testing::TestWithParam<const char*> {};

TEST_P(TfLaws, HoldOnRandomSteps) {
  const TfLawReport r = tf_law_suite(parse_triangle(GetParam()), 50, 7);
  EXPECT_TRUE(r.all_hold()) << (r.first_violation ? r.first_violation->law + " " + r.first_violation->operands
                                                   : std::string());
  EXPECT_EQ(r.samples, 50u);
}

TEST_P(TfLaws, WrongUnitIsRejected) {
  const TfLawReport r = tf_law_suite(parse_triangle(GetParam()), 50, 7, DistFn::step(1.0));
  EXPECT_FALSE(r.unit);
  ASSERT_TRUE(r.first_violation);
  EXPECT_EQ(r.first_violation->law, "unit");
}

INSTANTIATE_TEST_SUITE_P(Triangles, TfLaws,
                         ::testing::Values("sup:min", "sup:prod", "sup:lukasiewicz", "sup:t2", "inf:prod",
                                           "inf:min", "max"));

TEST(Properties, SupConvDominatedByMaxTf) {
  // T <= min, so every sup-convolution lies below the pointwise minimum.
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const DistFn f = random_dyadic_step(rng);
    const DistFn g = random_dyadic_step(rng);
    const DistFn m = max_tf(f, g);
    for (const TNorm t : {kMin, kProd, kLuk, kT2}) {
      const Comparison c = compare_leq(sup_conv(t, f, g), m, 1e-12);
      ASSERT_TRUE(c.holds) << t.name() << " witness " << c.witness;
    }
  }
}

TEST(Properties, WeakerTNormGivesSmallerConvolution) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const DistFn f = random_dyadic_step(rng);
    const DistFn g = random_dyadic_step(rng);
    ASSERT_TRUE(compare_leq(sup_conv(kLuk, f, g), sup_conv(kProd, f, g), 1e-12).holds);
    ASSERT_TRUE(compare_leq(sup_conv(kProd, f, g), sup_conv(kMin, f, g), 1e-12).holds);
  }
}

}  // namespace
}  // namespace pncalc
