#include "pncalc/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace pncalc {

namespace {

void check_unit(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("t-norm arguments must lie in [0,1]");
  }
}

double t2(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  if (a == 1.0) return b;
  if (b == 1.0) return a;
  const double u = 1.0 / a - 1.0;
  const double v = 1.0 / b - 1.0;
  return 1.0 / (1.0 + std::hypot(u, v));
}

}  // namespace

std::string_view TNorm::name() const {
  switch (id_) {
    case TNormId::kMin: return "min";
    case TNormId::kProd: return "prod";
    case TNormId::kLukasiewicz: return "lukasiewicz";
    case TNormId::kT2: return "t2";
  }
  return "?";
}

double TNorm::apply(double x, double y) const noexcept {
  switch (id_) {
    case TNormId::kMin: return std::min(x, y);
    case TNormId::kProd: return x * y;
    case TNormId::kLukasiewicz: return std::max(x + y - 1.0, 0.0);
    case TNormId::kT2: return t2(x, y);
  }
  return 0.0;
}

double TNorm::operator()(double x, double y) const {
  check_unit(x, y);
  return apply(x, y);
}

std::string TConorm::name() const { return std::string(base_.name()) + "*"; }

double TConorm::apply(double x, double y) const noexcept { return 1.0 - base_.apply(1.0 - x, 1.0 - y); }

double TConorm::operator()(double x, double y) const {
  check_unit(x, y);
  return apply(x, y);
}

double tnorm_eval(TNorm t, double x, double y) { return t(x, y); }
double conorm_eval(TNorm t, double x, double y) { return dual(t)(x, y); }

TNorm parse_tnorm(std::string_view name) {
  if (name == "min" || name == "M") return TNorm(TNormId::kMin);
  if (name == "prod" || name == "pi") return TNorm(TNormId::kProd);
  if (name == "lukasiewicz" || name == "W") return TNorm(TNormId::kLukasiewicz);
  if (name == "t2") return TNorm(TNormId::kT2);
  throw std::invalid_argument("unknown t-norm '" + std::string(name) + "' (expected min|prod|lukasiewicz|t2)");
}

LawReport law_suite(TNorm t, std::size_t n_samples, std::uint64_t seed) {
  return law_suite([t](double x, double y) { return t.apply(x, y); }, n_samples, seed);
}

LawReport law_suite(const BinaryOp& op, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("law_suite: need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  LawReport report;
  report.samples = n_samples;
  auto fail = [&](bool& flag, const char* law, double x, double y, double z, double lhs, double rhs) {
    flag = false;
    if (!report.first_violation) report.first_violation = LawViolation{law, x, y, z, lhs, rhs};
  };
  auto conorm = [&](double x, double y) { return 1.0 - op(1.0 - x, 1.0 - y); };

  for (std::size_t i = 0; i < n_samples; ++i) {
    const double x = unit(rng);
    const double y = unit(rng);
    const double z = unit(rng);

    if (const double a = op(x, y), b = op(y, x); std::abs(a - b) > kLawTolerance) {
      fail(report.commutative, "commutative", x, y, z, a, b);
    }
    if (const double a = op(op(x, y), z), b = op(x, op(y, z)); std::abs(a - b) > kLawTolerance) {
      fail(report.associative, "associative", x, y, z, a, b);
    }
    if (const double a = op(x, 1.0); std::abs(a - x) > kLawTolerance) {
      fail(report.identity, "identity", x, 1.0, 0.0, a, x);
    } else if (const double b = op(1.0, x); std::abs(b - x) > kLawTolerance) {
      fail(report.identity, "identity", 1.0, x, 0.0, b, x);
    }
    const double lo = std::min(x, z);
    const double hi = std::max(x, z);
    if (const double a = op(lo, y), b = op(hi, y); a > b + kLawTolerance) {
      fail(report.monotone, "monotone", lo, y, hi, a, b);
    }
    if (x > 0.0 && x < 1.0) {
      if (const double s = conorm(x, x); !(s > x)) fail(report.archimedean, "archimedean", x, x, 0.0, s, x);
    }
  }
  return report;
}

}  // namespace pncalc
