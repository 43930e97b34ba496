#include "pncalc/pnspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "detail.hpp"

namespace pncalc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_scalar_family(const NormFamily& f) {
  return !std::holds_alternative<DeterministicNorm>(f) && !std::holds_alternative<SaturatingVectorNorm>(f);
}

double saturate(double m, double a) { return std::isinf(m) ? 1.0 : m / (a + m); }

}  // namespace

std::string_view to_string(BaseNorm n) {
  switch (n) {
    case BaseNorm::kL1: return "l1";
    case BaseNorm::kL2: return "l2";
    case BaseNorm::kLinf: return "linf";
  }
  return "?";
}

double base_norm(BaseNorm n, const Vec& v) {
  double acc = 0.0;
  switch (n) {
    case BaseNorm::kL1:
      for (double x : v) acc += std::abs(x);
      return acc;
    case BaseNorm::kL2:
      for (double x : v) acc = std::hypot(acc, x);
      return acc;
    case BaseNorm::kLinf:
      for (double x : v) acc = std::max(acc, std::abs(x));
      return acc;
  }
  return acc;
}

std::string family_id(const NormFamily& family) {
  return std::visit(Overloaded{
                        [](const SaturatingStepNorm& f) { return "E9:a=" + format_number(f.a); },
                        [](const ExpPlateauNorm&) { return std::string("E12"); },
                        [](const DeterministicNorm& f) { return "E19:" + std::string(to_string(f.base)); },
                        [](const SaturatingVectorNorm& f) {
                          return "E19b:a=" + format_number(f.a) + "," + std::string(to_string(f.base));
                        },
                        [](const MixturePlateauNorm&) { return std::string("E21"); },
                        [](const SqrtRatioNorm&) { return std::string("E25"); },
                        [](const ShiftedStepNorm& f) { return "E27:a=" + format_number(f.a); },
                    },
                    family);
}

PNSpace::PNSpace(NormFamily family, std::size_t dim, TriangleFn tau, TriangleFn tau_star)
    : family_(std::move(family)), dim_(dim), tau_(tau), tau_star_(tau_star) {
  if (dim_ == 0) throw std::invalid_argument("space dimension must be positive");
  if (is_scalar_family(family_) && dim_ != 1) {
    throw std::invalid_argument(family_id(family_) + " is only defined on the real line (dim=1)");
  }
  const double a = std::visit(Overloaded{
                                  [](const SaturatingStepNorm& f) { return f.a; },
                                  [](const SaturatingVectorNorm& f) { return f.a; },
                                  [](const ShiftedStepNorm& f) { return f.a; },
                                  [](const auto&) { return 1.0; },
                              },
                              family_);
  if (!(a > 0.0) || std::isinf(a)) throw std::invalid_argument("family parameter a must be finite and > 0");
}

PNSpace PNSpace::with_default_triangles(NormFamily family, std::size_t dim) {
  const TNorm min(TNormId::kMin);
  const TNorm prod(TNormId::kProd);
  return std::visit(
      Overloaded{
          [&](const ExpPlateauNorm&) { return PNSpace(family, dim, TriangleFn::sup(prod), TriangleFn::inf(prod)); },
          [&](const MixturePlateauNorm&) {
            return PNSpace(family, dim, TriangleFn::sup(TNorm(TNormId::kLukasiewicz)), TriangleFn::sup(min));
          },
          [&](const SqrtRatioNorm&) {
            return PNSpace(family, dim, TriangleFn::sup(prod), TriangleFn::inf(TNorm(TNormId::kT2)));
          },
          [&](const auto&) { return PNSpace(family, dim, TriangleFn::sup(min), TriangleFn::max()); },
      },
      family);
}

double PNSpace::magnitude(const Vec& p) const {
  if (p.size() != dim_) {
    throw std::invalid_argument("vector has dimension " + std::to_string(p.size()) + ", space has " +
                                std::to_string(dim_));
  }
  return std::visit(Overloaded{
                        [&](const DeterministicNorm& f) { return base_norm(f.base, p); },
                        [&](const SaturatingVectorNorm& f) { return base_norm(f.base, p); },
                        [&](const auto&) { return std::abs(p[0]); },
                    },
                    family_);
}

DistFn PNSpace::norm(const Vec& p) const { return norm_at_magnitude(magnitude(p)); }

DistFn PNSpace::norm_at_magnitude(double m) const {
  if (std::isnan(m) || m < 0.0) throw std::invalid_argument("magnitude must be >= 0");
  if (m == 0.0) return DistFn::unit();
  return std::visit(
      Overloaded{
          [m](const SaturatingStepNorm& f) { return DistFn::step(saturate(m, f.a)); },
          [m](const ExpPlateauNorm&) { return DistFn::plateau(std::exp(-std::sqrt(m))); },
          [m](const DeterministicNorm&) { return DistFn::step(m); },
          [m](const SaturatingVectorNorm& f) { return DistFn::step(saturate(m, f.a)); },
          [m](const MixturePlateauNorm&) { return DistFn::plateau(std::isinf(m) ? 0.0 : 1.0 / (m + 2.0)); },
          [m](const SqrtRatioNorm&) { return std::isinf(m) ? DistFn::vanishing() : DistFn::ratio(std::sqrt(m)); },
          [m](const ShiftedStepNorm& f) { return DistFn::step(std::isinf(m) ? m : (f.a + m) / f.a); },
      },
      family_);
}

std::string PNSpace::describe() const {
  std::string out = family_id(family_);
  if (dim_ != 1) out += (out.find(':') == std::string::npos ? ":" : ",") + std::string("dim=") + std::to_string(dim_);
  return out + " tau=" + tau_.spec() + " taustar=" + tau_star_.spec();
}

PNSpace parse_space(std::string_view spec, std::optional<TriangleFn> tau, std::optional<TriangleFn> tau_star) {
  spec = detail::trim(spec);
  const auto colon = spec.find(':');
  const auto id = spec.substr(0, colon);
  std::optional<double> a;
  std::optional<BaseNorm> base;
  std::size_t dim = 1;
  if (colon != std::string_view::npos) {
    for (auto token : detail::split(spec.substr(colon + 1), ',')) {
      token = detail::trim(token);
      if (token.empty()) continue;
      if (token == "l1") {
        base = BaseNorm::kL1;
      } else if (token == "l2") {
        base = BaseNorm::kL2;
      } else if (token == "linf") {
        base = BaseNorm::kLinf;
      } else if (token == "rational") {
        // carrier flag only
      } else if (token.substr(0, 2) == "a=") {
        a = detail::parse_double(token.substr(2));
      } else if (token.substr(0, 4) == "dim=") {
        const double d = detail::parse_double(token.substr(4));
        if (d < 1 || d != std::floor(d)) throw std::invalid_argument("dim must be a positive integer");
        dim = static_cast<std::size_t>(d);
      } else {
        throw std::invalid_argument("unknown space option '" + std::string(token) + "'");
      }
    }
  }

  NormFamily family;
  if (id == "E9") {
    family = SaturatingStepNorm{a.value_or(1.0)};
  } else if (id == "E12") {
    family = ExpPlateauNorm{};
  } else if (id == "E19") {
    family = DeterministicNorm{base.value_or(BaseNorm::kL2)};
  } else if (id == "E19b") {
    family = SaturatingVectorNorm{a.value_or(1.0), base.value_or(BaseNorm::kL2)};
  } else if (id == "E21") {
    family = MixturePlateauNorm{};
  } else if (id == "E25") {
    family = SqrtRatioNorm{};
  } else if (id == "E27") {
    family = ShiftedStepNorm{a.value_or(1.0)};
  } else {
    throw std::invalid_argument("unknown space '" + std::string(id) + "' (expected E9|E12|E19|E19b|E21|E25|E27)");
  }
  const bool takes_a = id == "E9" || id == "E19b" || id == "E27";
  const bool takes_base = id == "E19" || id == "E19b";
  if (a && !takes_a) throw std::invalid_argument(std::string(id) + " takes no parameter a");
  if (base && !takes_base) throw std::invalid_argument(std::string(id) + " takes no base norm");

  PNSpace defaults = PNSpace::with_default_triangles(family, dim);
  return PNSpace(family, dim, tau.value_or(defaults.tau()), tau_star.value_or(defaults.tau_star()));
}

Vec zero_vec(std::size_t dim) { return Vec(dim, 0.0); }

Vec unit_vec(std::size_t dim, std::size_t axis) {
  Vec v(dim, 0.0);
  v.at(axis) = 1.0;
  return v;
}

namespace {
void same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
}
}  // namespace

Vec operator+(const Vec& a, const Vec& b) {
  same_dim(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  same_dim(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec operator-(const Vec& a) { return -1.0 * a; }

Vec operator*(double s, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

std::string format_vec(const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

Vec parse_vec(std::string_view text) {
  Vec v;
  for (auto part : detail::split(text, ',')) v.push_back(detail::parse_double(part));
  return v;
}

SampleSpec SampleSpec::defaults(std::size_t dim) {
  SampleSpec s;
  const std::vector<double> mags{0.5, 1.0, 2.0, 4.0, 8.0};
  s.vectors.push_back(zero_vec(dim));
  for (double m : mags) {
    for (double sign : {-1.0, 1.0}) {
      for (std::size_t axis = 0; axis < dim; ++axis) s.vectors.push_back((sign * m) * unit_vec(dim, axis));
      if (dim > 1) s.vectors.push_back(Vec(dim, sign * m));
    }
  }
  s.lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};
  s.scalars = {0.25, 0.5, 1.0, 2.0, 4.0};
  return s;
}

SampleSpec SampleSpec::signed_powers(std::size_t dim, int k_max) {
  SampleSpec s = defaults(dim);
  s.vectors = {zero_vec(dim)};
  for (int k = -k_max; k <= k_max; ++k) {
    for (double sign : {-1.0, 1.0}) {
      for (std::size_t axis = 0; axis < dim; ++axis) {
        s.vectors.push_back((sign * std::ldexp(1.0, k)) * unit_vec(dim, axis));
      }
    }
  }
  return s;
}

namespace {

void record(AxiomCheck& check, Witness w) {
  check.holds = false;
  ++check.failed;
  if (check.violations.size() < kMaxStoredViolations) check.violations.push_back(std::move(w));
}

double effective_tol(double tol, const DistFn& f, const DistFn& g) {
  return std::max(tol, default_tolerance(f, g));
}

// Norms depend on the magnitude only, so convolutions of sampled norms are
// memoized on the magnitude pair.
class ConvolutionCache {
 public:
  ConvolutionCache(const PNSpace& space, const TriangleFn& tau) : space_(space), tau_(tau) {}

  const DistFn& operator()(double m1, double m2) {
    if (m2 < m1) std::swap(m1, m2);
    auto it = memo_.find({m1, m2});
    if (it == memo_.end()) {
      it = memo_.emplace(std::pair{m1, m2}, tau_(space_.norm_at_magnitude(m1), space_.norm_at_magnitude(m2))).first;
    }
    return it->second;
  }

 private:
  const PNSpace& space_;
  const TriangleFn& tau_;
  std::map<std::pair<double, double>, DistFn> memo_;
};

}  // namespace

AxiomReport axiom_suite(const PNSpace& space, const SampleSpec& samples, double tol) {
  if (samples.vectors.empty()) throw std::invalid_argument("axiom_suite: no sample vectors");
  AxiomReport report;
  const DistFn unit = DistFn::unit();
  ConvolutionCache tau(space, space.tau());
  ConvolutionCache tau_star(space, space.tau_star());

  for (const Vec& p : samples.vectors) {
    const DistFn nu = space.norm(p);
    const bool zero = is_zero(p);

    ++report.n1.checked;
    const bool is_unit = pointwise_equal(nu, unit, tol);
    if (zero != is_unit) {
      record(report.n1, {"p=" + format_vec(p) + (zero ? " is zero but nu_p != e0" : " nonzero but nu_p == e0"),
                         0.0, nu, unit});
    }

    ++report.n2.checked;
    const DistFn nu_neg = space.norm(-p);
    if (!pointwise_equal(nu, nu_neg, tol)) record(report.n2, {"p=" + format_vec(p), 0.0, nu_neg, nu});

    for (const Vec& q : samples.vectors) {
      const double mp = space.magnitude(p);
      const double mq = space.magnitude(q);
      const DistFn& lhs = tau(mp, mq);
      const DistFn rhs = space.norm(p + q);
      ++report.n3.checked;
      if (auto c = compare_leq(lhs, rhs, effective_tol(tol, lhs, rhs)); !c) {
        record(report.n3, {"p=" + format_vec(p) + " q=" + format_vec(q), c.witness, lhs, rhs});
      }
      const DistFn& upper = tau_star(mp, mq);
      ++report.tau_below_tau_star.checked;
      if (auto c = compare_leq(lhs, upper, effective_tol(tol, lhs, upper)); !c) {
        record(report.tau_below_tau_star, {"p=" + format_vec(p) + " q=" + format_vec(q), c.witness, lhs, upper});
      }
    }

    for (double lambda : samples.lambdas) {
      const DistFn& rhs = tau_star(space.magnitude(lambda * p), space.magnitude((1.0 - lambda) * p));
      ++report.n4.checked;
      if (auto c = compare_leq(nu, rhs, effective_tol(tol, nu, rhs)); !c) {
        record(report.n4, {"p=" + format_vec(p) + " lambda=" + format_number(lambda), c.witness, nu, rhs});
      }
    }
  }
  return report;
}

SerstnevReport serstnev_check(const PNSpace& space, const SampleSpec& samples, double tol) {
  SerstnevReport report;
  for (double alpha : samples.scalars) {
    if (alpha == 0.0) throw std::invalid_argument("serstnev_check: alpha samples must be nonzero");
    for (const Vec& p : samples.vectors) {
      const DistFn lhs = space.norm(alpha * p);
      const DistFn rhs = scale_arg(space.norm(p), std::abs(alpha));
      ++report.checked;
      const double t = effective_tol(tol, lhs, rhs);
      auto c = compare_leq(lhs, rhs, t);
      if (c) c = compare_leq(rhs, lhs, t);
      if (!c) {
        report.holds = false;
        report.violations.push_back({alpha, p, c.witness, lhs, rhs});
      }
    }
  }
  return report;
}

AxiomCheck lemma2_check(const PNSpace& space, const SampleSpec& samples, double tol) {
  AxiomCheck check;
  for (double alpha : samples.scalars) {
    for (double beta : samples.scalars) {
      if (std::abs(alpha) > std::abs(beta)) continue;
      for (const Vec& p : samples.vectors) {
        const DistFn small = space.norm(beta * p);
        const DistFn large = space.norm(alpha * p);
        ++check.checked;
        if (auto c = compare_leq(small, large, effective_tol(tol, small, large)); !c) {
          record(check, {"alpha=" + format_number(alpha) + " beta=" + format_number(beta) + " p=" + format_vec(p),
                         c.witness, small, large});
        }
      }
    }
  }
  return check;
}

std::vector<double> default_lg_probes() { return {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}; }

std::vector<double> default_escape() {
  std::vector<double> out;
  for (int k = 1; k <= 64; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

LgReport lg_probe(const PNSpace& space, const std::vector<double>& x_probes, const std::vector<double>& escape) {
  if (escape.empty()) throw std::invalid_argument("lg_probe: empty escape sequence");
  LgReport report;
  const Vec dir = unit_vec(space.dim(), 0);
  for (double x : x_probes) {
    const double last = space.norm(escape.back() * dir)(x);
    if (!(last < kLgThreshold)) {
      report.has_lg = false;
      report.failures.push_back({x, last});
    }
  }
  return report;
}

std::optional<double> lemma3_delta_probe(const PNSpace& space, const Vec& p, double h) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("lemma3_delta_probe: h must lie in (0,1)");
  if (pointwise_equal(space.norm(p), DistFn::vanishing(), 0.0)) {
    throw std::invalid_argument("lemma3_delta_probe: nu_p must differ from epsilon_inf");
  }
  auto ok = [&](double alpha) { return space.norm(alpha * p)(h) > 1.0 - h; };

  constexpr double kFloor = 1e-12;
  constexpr double kCeiling = 1e12;
  if (!ok(kFloor)) return std::nullopt;
  double lo = kFloor;
  double hi = kCeiling;
  if (ok(hi)) return hi;

  while (true) {
    while (hi - lo > 1e-12 * hi) {
      const double mid = (hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    // Confirm on a geometric sample of (0, hi); shrink if the family is not
    // monotone in |alpha|.
    bool clean = true;
    for (int i = 0; i < 64; ++i) {
      const double alpha = kFloor * std::pow(lo / kFloor, i / 63.0);
      if (!ok(alpha)) {
        hi = alpha;
        lo = kFloor;
        clean = false;
        break;
      }
    }
    if (clean) return hi;
  }
}

}  // namespace pncalc
