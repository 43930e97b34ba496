#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pncalc/distfn.hpp"
#include "pncalc/triangle.hpp"

namespace pncalc {

using Vec = std::vector<double>;

enum class BaseNorm { kL1, kL2, kLinf };

std::string_view to_string(BaseNorm n);
double base_norm(BaseNorm n, const Vec& v);

// Built-in probabilistic norm families.  Each is a function of the
// magnitude of the vector only; the catalog id used on the command line is
// given in brackets.

// [E9] nu_p = step(|p| / (a + |p|)) on the real line.
struct SaturatingStepNorm {
  double a = 1.0;
};
// [E12] nu_p = plateau(exp(-|p|^(1/2))), nu_0 = epsilon_0.
struct ExpPlateauNorm {};
// [E19] nu_p = step(||p||).
struct DeterministicNorm {
  BaseNorm base = BaseNorm::kL2;
};
// [E19b] nu_p = step(||p|| / (a + ||p||)).
struct SaturatingVectorNorm {
  double a = 1.0;
  BaseNorm base = BaseNorm::kL2;
};
// [E21] nu_p = plateau(1 / (|p| + 2)) for p != 0, i.e. the mixture
// (1/(|p|+2)) epsilon_0 + ((|p|+1)/(|p|+2)) epsilon_inf.
struct MixturePlateauNorm {};
// [E25] nu_p = ratio(|p|^(1/2)); the carrier is nominally the rationals.
struct SqrtRatioNorm {
  bool rational_carrier = true;
};
// [E27] nu_p = step((a + |p|) / a) for p != 0.
struct ShiftedStepNorm {
  double a = 1.0;
};

using NormFamily = std::variant<SaturatingStepNorm, ExpPlateauNorm, DeterministicNorm, SaturatingVectorNorm,
                                MixturePlateauNorm, SqrtRatioNorm, ShiftedStepNorm>;

// Catalog id ("E9", "E19b", ...).
std::string family_id(const NormFamily& family);

// A finite-dimensional real vector space with a probabilistic norm and a
// (tau, tau*) pair.  Immutable.
class PNSpace {
 public:
  PNSpace(NormFamily family, std::size_t dim, TriangleFn tau, TriangleFn tau_star);

  // The (tau, tau*) pair the family is usually paired with.
  static PNSpace with_default_triangles(NormFamily family, std::size_t dim = 1);

  const NormFamily& family() const { return family_; }
  std::size_t dim() const { return dim_; }
  const TriangleFn& tau() const { return tau_; }
  const TriangleFn& tau_star() const { return tau_star_; }

  // Throws std::invalid_argument on dimension mismatch.
  DistFn norm(const Vec& p) const;
  // The norm of any vector of the given magnitude (|p| or ||p||), including
  // the limit m = +inf.  Every family is monotone in the magnitude, so this
  // also serves as the closed form of infima over magnitude-bounded sets.
  DistFn norm_at_magnitude(double m) const;
  double magnitude(const Vec& p) const;

  // E.g. "E19b:a=1,l2,dim=2 tau=sup:min taustar=max".
  std::string describe() const;

 private:
  NormFamily family_;
  std::size_t dim_;
  TriangleFn tau_;
  TriangleFn tau_star_;
};

// `E9:a=1`, `E12`, `E19:l2,dim=2`, `E19b:a=1,linf`, `E21`, `E25`, `E27:a=2`.
// Triangle functions default to the family's usual pair.
PNSpace parse_space(std::string_view spec, std::optional<TriangleFn> tau = std::nullopt,
                    std::optional<TriangleFn> tau_star = std::nullopt);

Vec zero_vec(std::size_t dim);
Vec unit_vec(std::size_t dim, std::size_t axis);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(double s, const Vec& v);
bool is_zero(const Vec& v);

std::string format_vec(const Vec& v);
// "1.5" or "1,0,2".
Vec parse_vec(std::string_view text);

struct SampleSpec {
  std::vector<Vec> vectors;
  std::vector<double> lambdas;
  std::vector<double> scalars;
  std::uint64_t seed = 7;

  // p, q over {0, +-0.5, +-1, +-2, +-4, +-8} along each axis (and the
  // diagonal when dim > 1); lambda over {0, 0.25, 0.5, 0.75, 1};
  // alpha, beta over {0.25, 0.5, 1, 2, 4}.
  static SampleSpec defaults(std::size_t dim);
  // Signed powers +-2^k, |k| <= k_max, plus the zero vector.
  static SampleSpec signed_powers(std::size_t dim, int k_max);
};

struct Witness {
  std::string detail;
  double x = 0.0;
  DistFn lhs = DistFn::unit();
  DistFn rhs = DistFn::unit();
};

struct AxiomCheck {
  bool holds = true;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<Witness> violations;
};

struct AxiomReport {
  AxiomCheck n1;
  AxiomCheck n2;
  AxiomCheck n3;
  AxiomCheck n4;
  // tau <= tau* on the sampled norm pairs.
  AxiomCheck tau_below_tau_star;

  bool all_hold() const { return n1.holds && n2.holds && n3.holds && n4.holds; }
};

// Violations past this count are tallied but not stored.
inline constexpr std::size_t kMaxStoredViolations = 16;

AxiomReport axiom_suite(const PNSpace& space, const SampleSpec& samples, double tol);

struct SerstnevViolation {
  double alpha = 0.0;
  Vec p;
  double x = 0.0;
  DistFn scaled_norm = DistFn::unit();  // nu_{alpha p}
  DistFn scaled_arg = DistFn::unit();   // x -> nu_p(x / |alpha|)
};

struct SerstnevReport {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<SerstnevViolation> violations;
};

// nu_{alpha p}(x) = nu_p(x / |alpha|) for every sampled alpha != 0 and p.
SerstnevReport serstnev_check(const PNSpace& space, const SampleSpec& samples, double tol);

// nu_{beta p} <= nu_{alpha p} for every sampled |alpha| <= |beta| and p.
AxiomCheck lemma2_check(const PNSpace& space, const SampleSpec& samples, double tol);

struct LgFailure {
  double x = 0.0;
  double limit = 0.0;  // value at the end of the escape sequence
};

struct LgReport {
  bool has_lg = true;
  std::vector<LgFailure> failures;
};

inline constexpr double kLgThreshold = 1e-6;

std::vector<double> default_lg_probes();  // {0.25, 0.5, 1, 2, 4, 8}
std::vector<double> default_escape();     // 2^k, k = 1..64

// nu_p(x) -> 0 as |p| -> inf, probed along p = m e_1 for m in `escape`.
LgReport lg_probe(const PNSpace& space, const std::vector<double>& x_probes, const std::vector<double>& escape);

// Largest delta with nu_{alpha p}(h) > 1 - h for all sampled 0 < alpha < delta,
// nullopt when even tiny alpha fail.  Bisection on alpha in [1e-12, 1e12].
std::optional<double> lemma3_delta_probe(const PNSpace& space, const Vec& p, double h);

}  // namespace pncalc
