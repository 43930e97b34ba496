#include "pncalc/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "detail.hpp"

namespace pncalc {

namespace {

// Candidate split points contributed by one operand: its samples, or its
// breakpoints together with their right neighbours.
std::vector<double> split_candidates(const DistFn& f, const GridPolicy& policy) {
  std::vector<double> pts = policy.abscissae();
  if (const auto s = f.as_step()) {
    for (double b : s->breakpoints) {
      pts.push_back(b);
      pts.push_back(std::nextafter(b, kInf));
    }
  } else if (const auto* g = std::get_if<Grid>(&f.repr())) {
    pts.insert(pts.end(), g->xs.begin(), g->xs.end());
  }
  pts.erase(std::remove_if(pts.begin(), pts.end(), [](double x) { return !(x > 0.0); }), pts.end());
  detail::sort_unique(pts);
  return pts;
}

DistFn sup_conv_exact(TNorm t, const Step& f, const Step& g) {
  std::vector<std::pair<double, double>> sums;
  sums.reserve(f.breakpoints.size() * g.breakpoints.size());
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    for (std::size_t j = 0; j < g.breakpoints.size(); ++j) {
      sums.emplace_back(f.breakpoints[i] + g.breakpoints[j], t.apply(f.levels[i + 1], g.levels[j + 1]));
    }
  }
  std::sort(sums.begin(), sums.end());

  std::vector<double> bps;
  std::vector<double> levels{0.0};
  double running = 0.0;
  for (std::size_t k = 0; k < sums.size();) {
    const double at = sums[k].first;
    for (; k < sums.size() && sums[k].first == at; ++k) running = std::max(running, sums[k].second);
    if (running > levels.back()) {
      bps.push_back(at);
      levels.push_back(running);
    }
  }
  return DistFn::step(std::move(bps), std::move(levels));
}

// For x > 0 the infimum over s in [0,x] is attained, within each constancy
// interval (b_i, b_{i+1}] of F, at the largest admissible s.
double inf_conv_at(TConorm s, const Step& f, const DistFn& fd, const DistFn& gd, double x) {
  double best = fd(x);
  for (std::size_t i = 0; i < f.breakpoints.size() && f.breakpoints[i] < x; ++i) {
    best = std::min(best, s.apply(f.levels[i], gd(x - f.breakpoints[i])));
  }
  return best;
}

DistFn inf_conv_exact(TConorm s, const Step& f, const Step& g, const DistFn& fd, const DistFn& gd) {
  std::vector<double> pts = f.breakpoints;
  pts.insert(pts.end(), g.breakpoints.begin(), g.breakpoints.end());
  for (double b : f.breakpoints) {
    for (double d : g.breakpoints) pts.push_back(b + d);
  }
  detail::sort_unique(pts);
  if (pts.empty()) return DistFn::vanishing();

  // The result is constant on each (pts[k], pts[k+1]]; probe midpoints so
  // that no shifted argument lands on a breakpoint.
  std::vector<double> levels{0.0};
  double running = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double x = k + 1 < pts.size() ? 0.5 * (pts[k] + pts[k + 1]) : pts[k] + 1.0;
    running = std::max(running, inf_conv_at(s, f, fd, gd, x));
    levels.push_back(running);
  }
  return DistFn::step(std::move(pts), std::move(levels));
}

template <class Combine, class Better>
std::vector<double> sampled_extremum(const DistFn& f, const DistFn& g, const std::vector<double>& xs,
                                     const GridPolicy& policy, bool include_endpoints, double init,
                                     Combine combine, Better better) {
  const auto sf = split_candidates(f, policy);
  const auto tg = split_candidates(g, policy);
  std::vector<double> f_at(sf.size());
  std::vector<double> g_at(tg.size());
  for (std::size_t i = 0; i < sf.size(); ++i) f_at[i] = f(sf[i]);
  for (std::size_t j = 0; j < tg.size(); ++j) g_at[j] = g(tg[j]);

  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double x = xs[k];
    double best = init;
    if (include_endpoints) {
      best = better(best, combine(0.0, g(x)));
      best = better(best, combine(f(x), 0.0));
    }
    for (std::size_t i = 0; i < sf.size() && sf[i] <= x; ++i) best = better(best, combine(f_at[i], g(x - sf[i])));
    for (std::size_t j = 0; j < tg.size() && tg[j] <= x; ++j) best = better(best, combine(f(x - tg[j]), g_at[j]));
    out[k] = best;
  }
  return out;
}

}  // namespace

DistFn sup_conv(TNorm t, const DistFn& f, const DistFn& g, const GridPolicy& policy) {
  const auto sf = f.as_step();
  const auto sg = g.as_step();
  if (sf && sg) return sup_conv_exact(t, *sf, *sg);
  if (f.is_unit()) return g;
  if (g.is_unit()) return f;
  if (f == DistFn::vanishing() || g == DistFn::vanishing()) return DistFn::vanishing();

  const auto xs = policy.abscissae();
  auto vs = sampled_extremum(
      f, g, xs, policy, false, 0.0, [t](double a, double b) { return t.apply(a, b); },
      [](double a, double b) { return std::max(a, b); });
  for (std::size_t k = 1; k < vs.size(); ++k) vs[k] = std::max(vs[k], vs[k - 1]);
  const double plateau = std::max(vs.back(), t.apply(f.plateau(), g.plateau()));
  return DistFn::grid(xs, std::move(vs), plateau);
}

DistFn inf_conv(TConorm s, const DistFn& f, const DistFn& g, const GridPolicy& policy) {
  const auto sf = f.as_step();
  const auto sg = g.as_step();
  if (sf && sg) return inf_conv_exact(s, *sf, *sg, f, g);
  if (f.is_unit()) return g;
  if (g.is_unit()) return f;
  if (f == DistFn::vanishing() || g == DistFn::vanishing()) return DistFn::vanishing();

  const auto xs = policy.abscissae();
  auto vs = sampled_extremum(
      f, g, xs, policy, true, 1.0, [s](double a, double b) { return s.apply(a, b); },
      [](double a, double b) { return std::min(a, b); });
  for (std::size_t k = vs.size() - 1; k-- > 0;) vs[k] = std::min(vs[k], vs[k + 1]);
  const double plateau = std::max(vs.back(), std::min(f.plateau(), g.plateau()));
  return DistFn::grid(xs, std::move(vs), plateau);
}

DistFn max_tf(const DistFn& f, const DistFn& g, const GridPolicy& policy) { return pointwise_min(f, g, policy); }

DistFn TriangleFn::operator()(const DistFn& f, const DistFn& g) const {
  switch (kind_) {
    case Kind::kSupConv: return sup_conv(tnorm_, f, g, policy_);
    case Kind::kInfConv: return inf_conv(dual(tnorm_), f, g, policy_);
    case Kind::kMax: return max_tf(f, g, policy_);
  }
  throw std::logic_error("unreachable");
}

std::string TriangleFn::spec() const {
  switch (kind_) {
    case Kind::kSupConv: return "sup:" + std::string(tnorm_.name());
    case Kind::kInfConv: return "inf:" + std::string(tnorm_.name());
    case Kind::kMax: return "max";
  }
  return "?";
}

TriangleFn parse_triangle(std::string_view spec, GridPolicy policy) {
  spec = detail::trim(spec);
  if (spec == "max" || spec == "M") return TriangleFn::max(policy);
  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const auto kind = spec.substr(0, colon);
    const auto t = parse_tnorm(spec.substr(colon + 1));
    if (kind == "sup") return TriangleFn::sup(t, policy);
    if (kind == "inf") return TriangleFn::inf(t, policy);
  }
  throw std::invalid_argument("triangle function must be sup:<tnorm>, inf:<tnorm> or max; got '" +
                              std::string(spec) + "'");
}

TfLawReport tf_law_suite(const TriangleFn& tau, std::size_t n_samples, std::uint64_t seed, const DistFn& unit) {
  if (n_samples == 0) throw std::invalid_argument("tf_law_suite: need at least one sample");
  constexpr double kTol = 1e-12;
  std::mt19937_64 rng(seed);

  TfLawReport report;
  report.samples = n_samples;
  auto fail = [&](bool& flag, const char* law, std::string operands, double witness) {
    flag = false;
    if (!report.first_violation) report.first_violation = TfViolation{law, std::move(operands), witness};
  };
  auto differ = [&](const DistFn& a, const DistFn& b) -> std::optional<double> {
    if (auto c = compare_leq(a, b, kTol); !c) return c.witness;
    if (auto c = compare_leq(b, a, kTol); !c) return c.witness;
    return std::nullopt;
  };

  for (std::size_t i = 0; i < n_samples; ++i) {
    const DistFn f = random_dyadic_step(rng);
    const DistFn g = random_dyadic_step(rng);
    const DistFn h = random_dyadic_step(rng);
    const DistFn f_up = pointwise_max(f, random_dyadic_step(rng));
    const std::string fgh = "F=" + describe(f) + " G=" + describe(g) + " H=" + describe(h);

    if (auto w = differ(tau(f, g), tau(g, f))) fail(report.commutative, "commutative", fgh, *w);
    if (auto w = differ(tau(tau(f, g), h), tau(f, tau(g, h)))) fail(report.associative, "associative", fgh, *w);
    if (auto c = compare_leq(tau(f, h), tau(f_up, h), kTol); !c) {
      fail(report.monotone, "monotone", fgh + " F'=" + describe(f_up), c.witness);
    }
    if (auto w = differ(tau(f, unit), f)) fail(report.unit, "unit", "F=" + describe(f) + " e=" + describe(unit), *w);
  }
  return report;
}

}  // namespace pncalc
