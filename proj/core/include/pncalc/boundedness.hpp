#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pncalc/pnspace.hpp"
#include "pncalc/topology.hpp"

namespace pncalc {

struct SetSpec {
  enum class Kind { kFinite, kAllReals, kInterval, kSequenceImage };

  Kind kind = Kind::kFinite;
  std::vector<Vec> members;  // kFinite
  // kInterval: the rationals strictly between lo and hi.  The endpoints are
  // excluded, so a double standing in for an irrational endpoint is outside.
  double lo = 0.0;
  double hi = 0.0;
  std::size_t samples = 200;  // kInterval enumeration size
  SequenceSpec sequence;      // kSequenceImage
  std::size_t horizon = kDefaultHorizon;

  static SetSpec finite(std::vector<Vec> members);
  static SetSpec all_reals();
  static SetSpec interval(double lo, double hi, std::size_t samples = 200);
  static SetSpec sequence_image(SequenceSpec seq, std::size_t horizon = kDefaultHorizon);

  // The members the checks run on.  all_reals enumerates 0 and +-2^k e_i,
  // k = -10..60; intervals use `samples` evenly spaced interior points.
  std::vector<Vec> enumerate(std::size_t dim) const;
  bool contains(const Vec& p) const;
};

// `finite:<vec>;<vec>;...`, `all_reals`, `interval:<lo>,<hi>`,
// `seq:<sequence spec>` (see parse_sequence).  `samples` applies to intervals.
SetSpec parse_set(std::string_view text, std::size_t samples = 200, std::size_t horizon = kDefaultHorizon);
std::string describe(const SetSpec& set);

// R_A = l^- inf { nu_p : p in A }.  Finite sets take the pointwise minimum
// (already left-continuous).  all_reals and intervals use the closed form
// norm_at_magnitude(sup |p|), valid because every built-in family is
// nonincreasing in the magnitude.  Throws for an empty set.
DistFn prob_radius(const PNSpace& space, const SetSpec& set);

enum class BoundClass { kCertainlyBounded, kPerhapsBounded, kPerhapsUnbounded, kCertainlyUnbounded };
std::string_view to_string(BoundClass c);

inline constexpr double kClassifyTolerance = 1e-9;

struct RadiusReport {
  DistFn radius = DistFn::unit();
  BoundClass cls = BoundClass::kCertainlyBounded;
  // certainly_bounded: inf of the finite x with R_A(x) >= 1 - tol.
  // perhaps_unbounded: inf of the finite x with R_A(x) > tol.
  std::optional<double> x0;
  double plateau = 1.0;
  bool d_bounded = true;
};

// Ties at the tolerance boundaries go to the "perhaps" classes.
RadiusReport classify_radius(const DistFn& radius, double tol = kClassifyTolerance);
RadiusReport classify_set(const PNSpace& space, const SetSpec& set, double tol = kClassifyTolerance);

struct DBoundedWitness {
  std::optional<DistFn> g;
  bool verified = false;          // nu_p >= G on every enumerated member
  std::size_t members_checked = 0;
};

DBoundedWitness dbounded_witness(const PNSpace& space, const SetSpec& set);

struct HConstruction {
  std::optional<DistFn> h;
  std::size_t n = 0;  // tail start from the convergence probe
  std::string failure;
};

// Builds H = min{nu_{p_1}, ..., nu_{p_{N-1}}, tau(G, nu_p)} with G the
// pointwise minimum of the tail norms nu_{p_m - p}, m = N..horizon, and
// checks H in D+ and nu_{p_m} >= H for every m <= horizon.  Fails when a
// sampled norm leaves D+ or the sequence does not converge at lambda.
HConstruction construct_h(const PNSpace& space, const SequenceSpec& seq, const Vec& target, double lambda,
                          std::size_t horizon = kDefaultHorizon);

struct CompactnessReport {
  bool refuted = false;
  std::string reason;
};

// Refutation-only probe of D-compactness along one sequence in A.
//  1. The tail window (horizon/2, horizon] is pairwise outside each other's
//     lambda-neighborhoods: no subsequence can be Cauchy.
//  2. The sequence converges to its classical limit, which is not in A.
//  3. Every candidate limit (window terms, plus the classical limit when it
//     lies in A) has at most one window term in its lambda-neighborhood.
// Throws if a sampled term lies outside A.
CompactnessReport compactness_probe(const PNSpace& space, const SetSpec& set, const SequenceSpec& seq, double lambda,
                                    std::size_t horizon = kDefaultHorizon);

}  // namespace pncalc
