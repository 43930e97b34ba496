#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pncalc/pnspace.hpp"

namespace pncalc {

// p_m = offset + g(m) * direction for m = 1, 2, ..., with
// g(m) = 1/m (harmonic), 2^m (geometric), 2^-m (decay) or 0 (constant).
// Explicit sequences list their terms instead.
struct SequenceSpec {
  enum class Kind { kExplicit, kHarmonic, kGeometric, kDecay, kConstant };

  Kind kind = Kind::kHarmonic;
  Vec direction;  // empty: e_1
  Vec offset;     // empty: zero
  std::vector<Vec> terms;

  // 1-based.  Throws std::out_of_range past the end of an explicit list.
  Vec term(std::size_t m, std::size_t dim) const;
  // Component-wise limit when it exists in closed form; explicit lists
  // propose their last term.
  std::optional<Vec> classical_limit(std::size_t dim) const;
  std::size_t max_horizon() const;

  static SequenceSpec harmonic(Vec direction = {}, Vec offset = {});
  static SequenceSpec geometric(Vec direction = {}, Vec offset = {});
  static SequenceSpec decay(Vec direction = {}, Vec offset = {});
  static SequenceSpec constant(Vec value);
  static SequenceSpec explicit_terms(std::vector<Vec> terms);
};

// `harmonic`, `geometric`, `decay` (alias `geometric_decay`), each optionally
// followed by `:dir=<vec>;offset=<vec>`; `constant:<vec>`;
// `explicit:<vec>;<vec>;...`.  Vectors are comma separated.
SequenceSpec parse_sequence(std::string_view text);
std::string describe(const SequenceSpec& seq);

inline constexpr std::size_t kDefaultHorizon = 64;
std::vector<double> default_lambdas();  // {0.5, 0.25, 0.1, 0.05}

// q in N_p(lambda), i.e. nu_{p-q}(lambda) > 1 - lambda.  Throws for lambda
// outside (0,1).
bool neighborhood_contains(const PNSpace& space, const Vec& p, const Vec& q, double lambda);

struct LevelResult {
  double lambda = 0.0;
  // Least N with the criterion holding for every index in [N, horizon].
  std::optional<std::size_t> n;
  // min over the checked indices of nu(lambda) - (1 - lambda); positive
  // means inside.
  double worst_margin = 0.0;
  std::size_t worst_index = 0;
};

struct ConvergenceReport {
  std::vector<LevelResult> levels;
  std::size_t horizon = 0;
  bool converges = true;
};

ConvergenceReport convergence_probe(const PNSpace& space, const SequenceSpec& seq, const Vec& target,
                                    const std::vector<double>& lambdas, std::size_t horizon = kDefaultHorizon);

struct CauchyReport {
  std::vector<LevelResult> levels;  // worst_index is the smaller index of the worst pair
  std::size_t horizon = 0;
  bool cauchy = true;
};

// Pairs m < n <= horizon must satisfy nu_{p_m - p_n}(lambda) > 1 - lambda
// once m >= N.
CauchyReport cauchy_probe(const PNSpace& space, const SequenceSpec& seq, const std::vector<double>& lambdas,
                          std::size_t horizon = kDefaultHorizon);

enum class Completeness { kCauchyAndConverges, kCauchyNoLimitDetected, kNotCauchy };
std::string_view to_string(Completeness c);

struct CompletenessReport {
  Completeness verdict = Completeness::kNotCauchy;
  std::optional<Vec> limit;
  CauchyReport cauchy;
  std::optional<ConvergenceReport> convergence;
};

// Cauchy check, then convergence toward the component-wise classical limit.
CompletenessReport completeness_probe(const PNSpace& space, const SequenceSpec& seq,
                                      const std::vector<double>& lambdas, std::size_t horizon = kDefaultHorizon);

struct BatteryItem {
  std::string label;
  SequenceSpec seq;
  Vec target;
};

// harmonic -> 0, decay -> 0, constant e_1 -> e_1, geometric -> 0.
std::vector<BatteryItem> default_battery(std::size_t dim);

struct EquivalenceItem {
  std::string label;
  bool converges_a = false;
  bool converges_b = false;
};

struct EquivalenceReport {
  bool equivalent = true;
  std::optional<std::string> witness;  // label of the first mismatching item
  std::vector<EquivalenceItem> items;
};

// Convergence verdicts must agree item by item.  Passing is evidence only.
EquivalenceReport equivalence_probe(const PNSpace& a, const PNSpace& b, const std::vector<BatteryItem>& battery,
                                    const std::vector<double>& lambdas = default_lambdas(),
                                    std::size_t horizon = kDefaultHorizon);

// Rank of the vectors by Gaussian elimination with partial pivoting; pivots
// below 1e-12 in magnitude count as zero.
std::size_t rank(const std::vector<Vec>& vectors);

// Coefficient vectors with unit l1 norm: +-e_j, the pairwise midpoints, a
// dense walk around the sphere for n = 2 and seeded random points otherwise.
std::vector<Vec> l1_sphere_samples(std::size_t n, std::uint64_t seed = 7);

struct FindCReport {
  std::optional<double> c;
  std::size_t samples = 0;
};

// Largest c on a log search over [1e-6, 1e6] (refined by bisection) with
// nu_{sum beta_j p_j} <= nu'_c for every coefficient sample.  An empty
// result is a search failure, not a counterexample.  Throws for a dependent
// basis or a field space of dimension other than 1.
FindCReport find_c(const PNSpace& space, const std::vector<Vec>& basis, const PNSpace& field,
                   const std::vector<Vec>& coeff_samples);

}  // namespace pncalc
