#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pncalc/distfn.hpp"
#include "pncalc/tnorm.hpp"

namespace pncalc {

// tau_T(F,G)(x) = sup_{s+t=x} T(F(s), G(t)).
//
// Step (and plateau) operands take the exact path: the result is a step
// whose breakpoints are the pairwise sums b_i + d_j, with the level just
// above each sum the running max of T over dominated pairs.  Any other
// operand goes through a sampled maximization on `policy` abscissae.
DistFn sup_conv(TNorm t, const DistFn& f, const DistFn& g, const GridPolicy& policy = {});

// tau_{T*}(F,G)(x) = inf_{s+t=x} S(F(s), G(t)), s ranging over [0, x].
DistFn inf_conv(TConorm s, const DistFn& f, const DistFn& g, const GridPolicy& policy = {});

// The maximal triangle function: pointwise minimum.
DistFn max_tf(const DistFn& f, const DistFn& g, const GridPolicy& policy = {});

class TriangleFn {
 public:
  enum class Kind { kSupConv, kInfConv, kMax };

  static TriangleFn sup(TNorm t, GridPolicy policy = {}) { return {Kind::kSupConv, t, policy}; }
  static TriangleFn inf(TNorm t, GridPolicy policy = {}) { return {Kind::kInfConv, t, policy}; }
  static TriangleFn max(GridPolicy policy = {}) { return {Kind::kMax, TNorm(TNormId::kMin), policy}; }

  Kind kind() const { return kind_; }
  // For kInfConv this is the t-norm whose dual is used.
  TNorm tnorm() const { return tnorm_; }
  const GridPolicy& policy() const { return policy_; }
  TriangleFn with_policy(GridPolicy policy) const { return {kind_, tnorm_, policy}; }

  DistFn operator()(const DistFn& f, const DistFn& g) const;

  // `sup:<tnorm>`, `inf:<tnorm>` or `max`.
  std::string spec() const;

 private:
  TriangleFn(Kind kind, TNorm t, GridPolicy policy) : kind_(kind), tnorm_(t), policy_(policy) {}

  Kind kind_;
  TNorm tnorm_;
  GridPolicy policy_;
};

TriangleFn parse_triangle(std::string_view spec, GridPolicy policy = {});

struct TfViolation {
  std::string law;
  std::string operands;
  double witness = 0.0;
};

struct TfLawReport {
  bool associative = true;
  bool commutative = true;
  bool monotone = true;
  bool unit = true;
  std::optional<TfViolation> first_violation;
  std::size_t samples = 0;

  bool all_hold() const { return associative && commutative && monotone && unit; }
};

// Checks the four triangle-function axioms on random step operands with
// dyadic breakpoints (so breakpoint sums are exact), tolerance 1e-12.
// `unit` is the element tested as identity; passing anything other than
// epsilon_0 is a negative control.
TfLawReport tf_law_suite(const TriangleFn& tau, std::size_t n_samples, std::uint64_t seed,
                         const DistFn& unit = DistFn::unit());

// Random step function with breakpoints on the 1/8 lattice in (0, 4] and
// random levels; shared by the law suites and tests.
template <class Rng>
DistFn random_dyadic_step(Rng& rng, std::size_t max_breakpoints = 4);

}  // namespace pncalc

#include "pncalc/detail/random_step.hpp"
