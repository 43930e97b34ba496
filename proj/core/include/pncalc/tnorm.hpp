#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace pncalc {

enum class TNormId {
  kMin,          // M(x,y) = min(x,y)
  kProd,         // Pi(x,y) = xy
  kLukasiewicz,  // W(x,y) = max(x+y-1, 0)
  kT2,           // 1 / (1 + sqrt((1/x-1)^2 + (1/y-1)^2))
};

class TNorm {
 public:
  constexpr explicit TNorm(TNormId id) : id_(id) {}

  TNormId id() const { return id_; }
  std::string_view name() const;

  // Range-checked; throws std::domain_error outside [0,1]^2.
  double operator()(double x, double y) const;
  // Unchecked, for inner loops.
  double apply(double x, double y) const noexcept;

  bool operator==(const TNorm&) const = default;

 private:
  TNormId id_;
};

// The dual t-conorm S(x,y) = 1 - T(1-x, 1-y).
class TConorm {
 public:
  constexpr explicit TConorm(TNorm base) : base_(base) {}

  TNorm base() const { return base_; }
  std::string name() const;

  double operator()(double x, double y) const;
  double apply(double x, double y) const noexcept;

  bool operator==(const TConorm&) const = default;

 private:
  TNorm base_;
};

inline TConorm dual(TNorm t) { return TConorm(t); }
inline TNorm dual(TConorm s) { return s.base(); }

double tnorm_eval(TNorm t, double x, double y);
double conorm_eval(TNorm t, double x, double y);

// Accepts min|prod|lukasiewicz|t2 (plus the aliases M, pi, W).
TNorm parse_tnorm(std::string_view name);

using BinaryOp = std::function<double(double, double)>;

struct LawViolation {
  std::string law;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Empirical check of the t-norm axioms on random samples.  `archimedean`
// probes the dual conorm: S(x,x) > x for every sampled x in (0,1).
struct LawReport {
  bool commutative = true;
  bool associative = true;
  bool identity = true;
  bool monotone = true;
  bool archimedean = true;
  std::optional<LawViolation> first_violation;
  std::size_t samples = 0;

  bool tnorm_laws_hold() const { return commutative && associative && identity && monotone; }
};

inline constexpr double kLawTolerance = 1e-12;

LawReport law_suite(TNorm t, std::size_t n_samples, std::uint64_t seed);
LawReport law_suite(const BinaryOp& op, std::size_t n_samples, std::uint64_t seed);

}  // namespace pncalc
