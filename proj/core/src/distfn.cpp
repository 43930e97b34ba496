#include "pncalc/distfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "detail.hpp"

namespace pncalc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

Step canonical_step(std::vector<double> breakpoints, std::vector<double> levels) {
  require(levels.size() == breakpoints.size() + 1, "step: need one more level than breakpoints");
  require(levels.front() == 0.0, "step: level below the first breakpoint must be 0");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    require(!std::isnan(breakpoints[i]) && breakpoints[i] >= 0.0, "step: breakpoints must be >= 0");
    if (i > 0) require(breakpoints[i] > breakpoints[i - 1], "step: breakpoints must be strictly ascending");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    require(in_unit_interval(levels[i]), "step: levels must lie in [0,1]");
    if (i > 0) require(levels[i] >= levels[i - 1], "step: levels must be nondecreasing");
  }

  Step out;
  out.levels.push_back(0.0);
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (std::isinf(breakpoints[i])) break;  // only affects F(+inf), which is 1 anyway
    if (levels[i + 1] > out.levels.back()) {
      out.breakpoints.push_back(breakpoints[i]);
      out.levels.push_back(levels[i + 1]);
    }
  }
  return out;
}

// Level of a step immediately to the right of x.
double level_above(const Step& s, double x) {
  const auto it = std::upper_bound(s.breakpoints.begin(), s.breakpoints.end(), x);
  return s.levels[static_cast<std::size_t>(it - s.breakpoints.begin())];
}

template <class Op>
DistFn combine_steps(const Step& f, const Step& g, Op op) {
  std::vector<double> bps = f.breakpoints;
  bps.insert(bps.end(), g.breakpoints.begin(), g.breakpoints.end());
  detail::sort_unique(bps);
  std::vector<double> levels{0.0};
  levels.reserve(bps.size() + 1);
  for (double b : bps) levels.push_back(op(level_above(f, b), level_above(g, b)));
  return DistFn::step(std::move(bps), std::move(levels));
}

template <class Op>
DistFn combine_sampled(const DistFn& f, const DistFn& g, const GridPolicy& policy, Op op) {
  std::vector<double> xs = policy.abscissae();
  for (const DistFn* h : {&f, &g}) {
    if (const auto* grid = std::get_if<Grid>(&h->repr())) xs.insert(xs.end(), grid->xs.begin(), grid->xs.end());
  }
  detail::sort_unique(xs);
  std::vector<double> values(xs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    running = std::max(running, op(f(xs[i]), g(xs[i])));
    values[i] = running;
  }
  return DistFn::grid(std::move(xs), std::move(values), op(f.plateau(), g.plateau()));
}

}  // namespace

double GridPolicy::x_min() const { return x_max * std::ldexp(1.0, -20); }

std::vector<double> GridPolicy::abscissae() const {
  if (points < 2 || !(x_max > 0.0) || std::isinf(x_max)) {
    throw std::invalid_argument("grid policy: need at least 2 points and a finite positive x_max");
  }
  std::vector<double> xs(points);
  const double lo = std::log(x_min());
  const double hi = std::log(x_max);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  xs.back() = x_max;
  return xs;
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kStep: return "step";
    case Family::kPlateau: return "plateau";
    case Family::kRatio: return "ratio";
    case Family::kGrid: return "grid";
  }
  return "?";
}

DistFn DistFn::step(double c) {
  require(!std::isnan(c) && c >= 0.0, "step: threshold must be >= 0 or +inf");
  if (std::isinf(c)) return DistFn(Step{{}, {0.0}});
  return DistFn(Step{{c}, {0.0, 1.0}});
}

DistFn DistFn::step(std::vector<double> breakpoints, std::vector<double> levels) {
  return DistFn(canonical_step(std::move(breakpoints), std::move(levels)));
}

DistFn DistFn::plateau(double gamma) {
  require(in_unit_interval(gamma), "plateau: gamma must lie in [0,1]");
  return DistFn(Plateau{gamma});
}

DistFn DistFn::ratio(double beta) {
  require(beta > 0.0 && std::isfinite(beta), "ratio: beta must be finite and > 0");
  return DistFn(Ratio{beta});
}

DistFn DistFn::grid(std::vector<double> xs, std::vector<double> values) {
  require(!values.empty(), "grid: no samples");
  const double last = values.back();
  return grid(std::move(xs), std::move(values), last);
}

DistFn DistFn::grid(std::vector<double> xs, std::vector<double> values, double plateau) {
  require(!xs.empty() && xs.size() == values.size(), "grid: xs and values must be nonempty and of equal length");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require(std::isfinite(xs[i]) && xs[i] > 0.0, "grid: abscissae must be finite and > 0");
    require(in_unit_interval(values[i]), "grid: values must lie in [0,1]");
    if (i > 0) {
      require(xs[i] > xs[i - 1], "grid: abscissae must be strictly ascending");
      require(values[i] >= values[i - 1], "grid: values must be nondecreasing");
    }
  }
  require(in_unit_interval(plateau) && plateau >= values.back(), "grid: plateau must lie in [last value, 1]");
  return DistFn(Grid{std::move(xs), std::move(values), plateau});
}

double DistFn::eval(double x) const {
  if (std::isnan(x)) throw std::invalid_argument("eval: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return std::visit(
      Overloaded{
          [x](const Step& s) {
            const auto it = std::lower_bound(s.breakpoints.begin(), s.breakpoints.end(), x);
            return s.levels[static_cast<std::size_t>(it - s.breakpoints.begin())];
          },
          [](const Plateau& p) { return p.gamma; },
          [x](const Ratio& r) { return x / (x + r.beta); },
          [x](const Grid& g) {
            if (x <= g.xs.front()) return g.values.front();
            if (x > g.xs.back()) return g.plateau;
            const auto it = std::lower_bound(g.xs.begin(), g.xs.end(), x);
            const auto i = static_cast<std::size_t>(it - g.xs.begin());
            if (g.xs[i] == x) return g.values[i];
            const double t = (x - g.xs[i - 1]) / (g.xs[i] - g.xs[i - 1]);
            return std::min(g.values[i], g.values[i - 1] + t * (g.values[i] - g.values[i - 1]));
          },
      },
      repr_);
}

double DistFn::left_limit(double x) const {
  if (std::isnan(x)) throw std::invalid_argument("left_limit: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return plateau();
  return eval(x);
}

double DistFn::plateau() const {
  return std::visit(Overloaded{
                        [](const Step& s) { return s.levels.back(); },
                        [](const Plateau& p) { return p.gamma; },
                        [](const Ratio&) { return 1.0; },
                        [](const Grid& g) { return g.plateau; },
                    },
                    repr_);
}

Family DistFn::family() const { return static_cast<Family>(repr_.index()); }

bool DistFn::is_exact() const {
  return std::holds_alternative<Step>(repr_) || std::holds_alternative<Plateau>(repr_);
}

std::optional<Step> DistFn::as_step() const {
  if (const auto* s = std::get_if<Step>(&repr_)) return *s;
  if (const auto* p = std::get_if<Plateau>(&repr_)) {
    if (p->gamma == 0.0) return Step{{}, {0.0}};
    return Step{{0.0}, {0.0, p->gamma}};
  }
  return std::nullopt;
}

bool DistFn::is_unit() const {
  const auto s = as_step();
  return s && s->breakpoints == std::vector<double>{0.0} && s->levels.back() == 1.0;
}

double default_tolerance(const DistFn& f, const DistFn& g) {
  return (f.family() == Family::kGrid || g.family() == Family::kGrid) ? 1e-6 : 0.0;
}

std::vector<double> probe_points(const DistFn& f, const GridPolicy& policy) {
  std::vector<double> pts;
  std::visit(Overloaded{
                 [&](const Step& s) {
                   for (double b : s.breakpoints) {
                     if (b > 0.0) pts.push_back(b);
                     pts.push_back(std::nextafter(b, kInf));
                   }
                 },
                 [&](const Plateau&) { pts.push_back(1.0); },
                 [&](const Ratio& r) {
                   pts = policy.abscissae();
                   pts.push_back(r.beta);
                 },
                 [&](const Grid& g) { pts = g.xs; },
             },
             f.repr());
  return pts;
}

Comparison compare_leq(const DistFn& f, const DistFn& g, double tol, const GridPolicy& policy) {
  double horizon = kInf;
  for (const DistFn* h : {&f, &g}) {
    if (const auto* grid = std::get_if<Grid>(&h->repr())) horizon = std::min(horizon, grid->xs.back());
  }
  // A grid is only known at its samples, so against a grid the smooth
  // families are probed there too; interpolating a concave curve between
  // samples would otherwise show up as a spurious violation.
  std::vector<double> pts;
  for (const DistFn* h : {&f, &g}) {
    if (std::isfinite(horizon) && (h->family() == Family::kRatio || h->family() == Family::kPlateau)) continue;
    const auto more = probe_points(*h, policy);
    pts.insert(pts.end(), more.begin(), more.end());
  }
  detail::sort_unique(pts);
  const double beyond = pts.empty() ? 1.0 : 2.0 * pts.back() + 1.0;
  if (std::isinf(horizon)) pts.push_back(beyond);

  for (double x : pts) {
    if (x > horizon) break;
    const double fx = f(x);
    const double gx = g(x);
    if (fx > gx + tol) return {false, x, fx, gx};
  }

  const double pf = f.plateau();
  const double pg = g.plateau();
  if (pf > pg + tol) {
    if (std::isfinite(horizon)) return {false, kInf, pf, pg};
    // Both sides are exact families: a finite witness exists, find one.
    for (double x = beyond; std::isfinite(x); x *= 2.0) {
      const double fx = f(x);
      const double gx = g(x);
      if (fx > gx + tol) return {false, x, fx, gx};
    }
    return {false, kInf, pf, pg};
  }
  return {};
}

bool pointwise_equal(const DistFn& f, const DistFn& g, double tol, const GridPolicy& policy) {
  return compare_leq(f, g, tol, policy).holds && compare_leq(g, f, tol, policy).holds;
}

double levy_dist(const DistFn& f, const DistFn& g, const GridPolicy& policy) {
  auto changes = [&](const DistFn& h) {
    std::vector<double> pts;
    if (const auto s = h.as_step()) {
      pts = s->breakpoints;
    } else if (const auto* grid = std::get_if<Grid>(&h.repr())) {
      pts = grid->xs;
    } else {
      pts = policy.abscissae();
    }
    return pts;
  };
  const auto cf = changes(f);
  const auto cg = changes(g);
  const bool both_steps = f.is_exact() && g.is_exact();

  // Between consecutive change points both sides are constant (steps) or
  // slowly varying (everything else), so interval midpoints are probed
  // rather than the shifted breakpoints themselves.
  auto admissible = [&](double h) {
    std::vector<double> pts = cg;
    pts.reserve(cg.size() + 2 * cf.size() + 1);
    for (double c : cf) {
      pts.push_back(c + h);
      pts.push_back(c - h);
    }
    if (!both_steps) pts.insert(pts.end(), cf.begin(), cf.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(), [](double x) { return !(x > 0.0) || std::isinf(x); }),
              pts.end());
    detail::sort_unique(pts);

    std::vector<double> probes;
    probes.reserve(2 * pts.size() + 2);
    double prev = 0.0;
    for (double x : pts) {
      probes.push_back(0.5 * (prev + x));
      if (!both_steps) probes.push_back(x);
      prev = x;
    }
    probes.push_back(prev + 1.0);

    for (double x : probes) {
      const double gx = g(x);
      if (f(x - h) - h > gx) return false;
      if (gx > f(x + h) + h) return false;
    }
    return true;
  };

  if (admissible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? hi : lo) = mid;
  }
  return hi;
}

DistFn scale_arg(const DistFn& f, double a) {
  require(a > 0.0 && std::isfinite(a), "scale_arg: factor must be finite and > 0");
  return std::visit(Overloaded{
                        [a](const Step& s) {
                          auto bps = s.breakpoints;
                          for (double& b : bps) b *= a;
                          return DistFn::step(std::move(bps), s.levels);
                        },
                        [](const Plateau& p) { return DistFn::plateau(p.gamma); },
                        [a](const Ratio& r) { return DistFn::ratio(r.beta * a); },
                        [a](const Grid& g) {
                          auto xs = g.xs;
                          for (double& x : xs) x *= a;
                          return DistFn::grid(std::move(xs), g.values, g.plateau);
                        },
                    },
                    f.repr());
}

std::string_view to_string(Membership m) {
  return m == Membership::kInDPlus ? "in_D_plus" : "delta_plus_only";
}

Membership dplus_membership(const DistFn& f) {
  return f.plateau() >= 1.0 - kDPlusTolerance ? Membership::kInDPlus : Membership::kDeltaPlusOnly;
}

DistFn pointwise_min(const DistFn& f, const DistFn& g, const GridPolicy& policy) {
  if (f.is_unit()) return g;
  if (g.is_unit()) return f;
  const auto sf = f.as_step();
  const auto sg = g.as_step();
  if (sf && sg) return combine_steps(*sf, *sg, [](double a, double b) { return std::min(a, b); });
  const auto* rf = std::get_if<Ratio>(&f.repr());
  const auto* rg = std::get_if<Ratio>(&g.repr());
  if (rf && rg) return DistFn::ratio(std::max(rf->beta, rg->beta));
  return combine_sampled(f, g, policy, [](double a, double b) { return std::min(a, b); });
}

DistFn pointwise_max(const DistFn& f, const DistFn& g, const GridPolicy& policy) {
  if (f.is_unit() || g.is_unit()) return DistFn::unit();
  const auto sf = f.as_step();
  const auto sg = g.as_step();
  if (sf && sg) return combine_steps(*sf, *sg, [](double a, double b) { return std::max(a, b); });
  const auto* rf = std::get_if<Ratio>(&f.repr());
  const auto* rg = std::get_if<Ratio>(&g.repr());
  if (rf && rg) return DistFn::ratio(std::min(rf->beta, rg->beta));
  return combine_sampled(f, g, policy, [](double a, double b) { return std::max(a, b); });
}

DistFn parse_distfn(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution spec must look like family:param, got '" + std::string(text) + "'");
  }
  const auto family = text.substr(0, colon);
  const auto param = text.substr(colon + 1);
  if (family == "step") return DistFn::step(detail::parse_double(param));
  if (family == "plateau") return DistFn::plateau(detail::parse_double(param));
  if (family == "ratio") return DistFn::ratio(detail::parse_double(param));
  if (family == "grid") {
    if (param.empty() || param.front() != '@') throw std::invalid_argument("grid spec must be grid:@<path>");
    return load_grid_file(std::filesystem::path(std::string(param.substr(1))));
  }
  throw std::invalid_argument("unknown distribution family '" + std::string(family) + "'");
}

DistFn load_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid file " + path.string());
  std::vector<double> xs;
  std::vector<double> vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    std::istringstream row{std::string(view)};
    std::string xs_text;
    std::string vs_text;
    std::string extra;
    if (!(row >> xs_text >> vs_text) || (row >> extra)) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    }
    try {
      xs.push_back(detail::parse_double(xs_text));
      vs.push_back(detail::parse_double(vs_text));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return DistFn::grid(std::move(xs), std::move(vs));
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {
std::string join(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_number(xs[i]);
  }
  return out + "]";
}
}  // namespace

std::string describe(const DistFn& f) {
  return std::visit(Overloaded{
                        [](const Step& s) {
                          if (s.breakpoints.empty()) return std::string("step(inf)");
                          if (s.breakpoints.size() == 1 && s.levels.back() == 1.0) {
                            return "step(" + format_number(s.breakpoints.front()) + ")";
                          }
                          return "step(b=" + join(s.breakpoints) + " v=" + join(s.levels) + ")";
                        },
                        [](const Plateau& p) { return "plateau(" + format_number(p.gamma) + ")"; },
                        [](const Ratio& r) { return "ratio(" + format_number(r.beta) + ")"; },
                        [](const Grid& g) {
                          return "grid(n=" + std::to_string(g.xs.size()) + " xmax=" + format_number(g.xs.back()) +
                                 " plateau=" + format_number(g.plateau) + ")";
                        },
                    },
                    f.repr());
}

}  // namespace pncalc
