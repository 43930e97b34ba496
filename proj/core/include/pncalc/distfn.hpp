#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pncalc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Sampling policy used whenever a distribution function has no exact
// closed-form representation for an operation (convolutions of ratios,
// pointwise minima of mixed families, ...).  Abscissae are geometric on
// [x_max * 2^-20, x_max].
struct GridPolicy {
  std::size_t points = 1024;
  double x_max = 64.0;

  double x_min() const;
  std::vector<double> abscissae() const;
};

// Piecewise-constant, left-continuous: F(x) = levels[j] for
// x in (breakpoints[j-1], breakpoints[j]], with levels[0] == 0 below the
// first breakpoint.  No breakpoints means F vanishes at every finite x.
struct Step {
  std::vector<double> breakpoints;
  std::vector<double> levels;

  bool operator==(const Step&) const = default;
};

// F(x) = gamma on (0, +inf).
struct Plateau {
  double gamma = 0.0;

  bool operator==(const Plateau&) const = default;
};

// F(x) = x / (x + beta).
struct Ratio {
  double beta = 1.0;

  bool operator==(const Ratio&) const = default;
};

// Sampled function, linearly interpolated between samples, holding
// values.front() on (0, xs.front()] and jumping to `plateau` beyond the
// last sample.
struct Grid {
  std::vector<double> xs;
  std::vector<double> values;
  double plateau = 0.0;

  bool operator==(const Grid&) const = default;
};

enum class Family { kStep, kPlateau, kRatio, kGrid };

std::string_view to_string(Family family);

// An element of the space of distance distribution functions: left-continuous,
// nondecreasing on [0, +inf], F(x) = 0 for x <= 0 and F(+inf) = 1.
// Immutable once constructed; every factory validates its parameters and
// throws std::invalid_argument on bad input.
class DistFn {
 public:
  using Repr = std::variant<Step, Plateau, Ratio, Grid>;

  // The unit step at c (c may be +inf, giving the function that is 0 at
  // every finite point).
  static DistFn step(double c);
  static DistFn step(std::vector<double> breakpoints, std::vector<double> levels);
  static DistFn plateau(double gamma);
  static DistFn ratio(double beta);
  // Plateau defaults to the last sample value.
  static DistFn grid(std::vector<double> xs, std::vector<double> values);
  static DistFn grid(std::vector<double> xs, std::vector<double> values, double plateau);

  // epsilon_0, the maximal element.
  static DistFn unit() { return step(0.0); }
  // epsilon_inf.
  static DistFn vanishing() { return step(kInf); }

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double left_limit(double x) const;
  // l^-F(+inf).
  double plateau() const;

  Family family() const;
  // Step and Plateau admit exact breakpoint algebra.
  bool is_exact() const;
  // Canonical step form for Step and Plateau, nullopt otherwise.
  std::optional<Step> as_step() const;
  bool is_unit() const;

  const Repr& repr() const { return repr_; }

  // Structural equality; see pointwise_equal for the semantic one.
  bool operator==(const DistFn&) const = default;

 private:
  explicit DistFn(Repr repr) : repr_(std::move(repr)) {}

  Repr repr_;
};

struct Comparison {
  bool holds = true;
  // Violation witness: F(witness) > G(witness) + tol.  +inf when the
  // violation is only visible in the limit (grid horizons).
  double witness = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;

  explicit operator bool() const { return holds; }
};

// Tolerance used when the caller has no better idea: 0 between exact or
// closed-form families, 1e-6 as soon as a Grid is involved.
double default_tolerance(const DistFn& f, const DistFn& g);

// F <= G pointwise within tol.
Comparison compare_leq(const DistFn& f, const DistFn& g, double tol,
                       const GridPolicy& policy = {});
bool pointwise_equal(const DistFn& f, const DistFn& g, double tol,
                     const GridPolicy& policy = {});

// Levy-Sibley distance, bisection to 1e-9.
double levy_dist(const DistFn& f, const DistFn& g, const GridPolicy& policy = {});

// x -> F(x / a), a > 0.
DistFn scale_arg(const DistFn& f, double a);

enum class Membership { kInDPlus, kDeltaPlusOnly };

std::string_view to_string(Membership m);

inline constexpr double kDPlusTolerance = 1e-9;

Membership dplus_membership(const DistFn& f);
inline bool in_dplus(const DistFn& f) { return dplus_membership(f) == Membership::kInDPlus; }

// Pointwise min / max.  Exact whenever both operands share a closed form
// (steps, plateaus, ratios); otherwise sampled on policy abscissae.
DistFn pointwise_min(const DistFn& f, const DistFn& g, const GridPolicy& policy = {});
DistFn pointwise_max(const DistFn& f, const DistFn& g, const GridPolicy& policy = {});

// Points at which the behaviour of f changes or is worth probing: step
// breakpoints and their right neighbours, grid samples, default abscissae
// for continuous families.
std::vector<double> probe_points(const DistFn& f, const GridPolicy& policy = {});

// Parse `step:<c>`, `plateau:<gamma>`, `ratio:<beta>` or `grid:@<path>`.
DistFn parse_distfn(std::string_view text);
// Two whitespace separated columns per line, `#` starts a comment.
DistFn load_grid_file(const std::filesystem::path& path);

// Short human readable form, e.g. `step(b=[1,2] v=[0,0.5,1])`.
std::string describe(const DistFn& f);

// %.9g.
std::string format_number(double v);

}  // namespace pncalc
