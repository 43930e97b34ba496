#include "pncalc/boundedness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail.hpp"

namespace pncalc {

namespace {

// inf of the finite x with f(x) >= level (or > level when strict), nullopt if
// no finite x qualifies.
std::optional<double> first_reaching(const DistFn& f, double level, bool strict) {
  auto meets = [&](double v) { return strict ? v > level : v >= level; };
  if (const auto s = f.as_step()) {
    for (std::size_t j = 1; j < s->levels.size(); ++j) {
      if (meets(s->levels[j])) return s->breakpoints[j - 1];
    }
    return std::nullopt;
  }
  if (const auto* r = std::get_if<Ratio>(&f.repr())) {
    // x / (x + beta) >= level  <=>  x >= level * beta / (1 - level).
    if (level >= 1.0) return std::nullopt;
    if (level < 0.0 || (level == 0.0 && strict)) return 0.0;
    return level * r->beta / (1.0 - level);
  }
  const auto& g = std::get<Grid>(f.repr());
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    if (meets(g.values[i])) return i == 0 ? 0.0 : g.xs[i];
  }
  return std::nullopt;
}

double effective_tol(const DistFn& f, const DistFn& g) { return std::max(kClassifyTolerance, default_tolerance(f, g)); }

}  // namespace

SetSpec SetSpec::finite(std::vector<Vec> members) {
  SetSpec s;
  s.kind = Kind::kFinite;
  s.members = std::move(members);
  return s;
}

SetSpec SetSpec::all_reals() {
  SetSpec s;
  s.kind = Kind::kAllReals;
  return s;
}

SetSpec SetSpec::interval(double lo, double hi, std::size_t samples) {
  if (!(lo < hi) || std::isinf(lo) || std::isinf(hi)) throw std::invalid_argument("interval needs finite lo < hi");
  if (samples == 0) throw std::invalid_argument("interval needs at least one sample");
  SetSpec s;
  s.kind = Kind::kInterval;
  s.lo = lo;
  s.hi = hi;
  s.samples = samples;
  return s;
}

SetSpec SetSpec::sequence_image(SequenceSpec seq, std::size_t horizon) {
  if (horizon == 0) throw std::invalid_argument("sequence image needs a positive horizon");
  SetSpec s;
  s.kind = Kind::kSequenceImage;
  s.sequence = std::move(seq);
  s.horizon = horizon;
  return s;
}

std::vector<Vec> SetSpec::enumerate(std::size_t dim) const {
  std::vector<Vec> out;
  switch (kind) {
    case Kind::kFinite:
      for (const Vec& p : members) {
        if (p.size() != dim) throw std::invalid_argument("set member has the wrong dimension");
      }
      return members;
    case Kind::kAllReals:
      out.push_back(zero_vec(dim));
      for (int k = -10; k <= 60; ++k) {
        for (std::size_t axis = 0; axis < dim; ++axis) {
          out.push_back(std::ldexp(1.0, k) * unit_vec(dim, axis));
          out.push_back(-std::ldexp(1.0, k) * unit_vec(dim, axis));
        }
      }
      return out;
    case Kind::kInterval:
      if (dim != 1) throw std::invalid_argument("interval sets live on the real line");
      for (std::size_t i = 1; i <= samples; ++i) {
        out.push_back({lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples + 1)});
      }
      return out;
    case Kind::kSequenceImage:
      for (std::size_t m = 1; m <= horizon; ++m) out.push_back(sequence.term(m, dim));
      return out;
  }
  return out;
}

bool SetSpec::contains(const Vec& p) const {
  switch (kind) {
    case Kind::kFinite: return std::find(members.begin(), members.end(), p) != members.end();
    case Kind::kAllReals: return true;
    case Kind::kInterval: return p.size() == 1 && lo < p[0] && p[0] < hi;
    case Kind::kSequenceImage: {
      const auto terms = enumerate(p.size());
      return std::find(terms.begin(), terms.end(), p) != terms.end();
    }
  }
  return false;
}

SetSpec parse_set(std::string_view text, std::size_t samples, std::size_t horizon) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "all_reals") {
    if (!rest.empty()) throw std::invalid_argument("all_reals takes no arguments");
    return SetSpec::all_reals();
  }
  if (kind == "finite") {
    std::vector<Vec> members;
    for (auto part : detail::split(rest, ';')) members.push_back(parse_vec(part));
    if (members.empty()) throw std::invalid_argument("finite set is empty");
    return SetSpec::finite(std::move(members));
  }
  if (kind == "interval") {
    const auto parts = detail::split(rest, ',');
    if (parts.size() != 2) throw std::invalid_argument("interval expects interval:<lo>,<hi>");
    return SetSpec::interval(detail::parse_double(parts[0]), detail::parse_double(parts[1]), samples);
  }
  if (kind == "seq") return SetSpec::sequence_image(parse_sequence(rest), horizon);
  throw std::invalid_argument("unknown set '" + std::string(kind) + "' (expected finite|all_reals|interval|seq)");
}

std::string describe(const SetSpec& set) {
  switch (set.kind) {
    case SetSpec::Kind::kFinite: {
      std::string out = "finite:";
      for (std::size_t i = 0; i < set.members.size(); ++i) {
        if (i) out += ';';
        out += format_vec(set.members[i]);
      }
      return out;
    }
    case SetSpec::Kind::kAllReals: return "all_reals";
    case SetSpec::Kind::kInterval: return "interval:" + format_number(set.lo) + "," + format_number(set.hi);
    case SetSpec::Kind::kSequenceImage: return "seq:" + describe(set.sequence);
  }
  return "?";
}

DistFn prob_radius(const PNSpace& space, const SetSpec& set) {
  switch (set.kind) {
    case SetSpec::Kind::kAllReals: return space.norm_at_magnitude(kInf);
    case SetSpec::Kind::kInterval:
      if (space.dim() != 1) throw std::invalid_argument("interval sets live on the real line");
      return space.norm_at_magnitude(std::max(std::abs(set.lo), std::abs(set.hi)));
    default: break;
  }
  const auto members = set.enumerate(space.dim());
  if (members.empty()) throw std::invalid_argument("probabilistic radius of the empty set");
  DistFn r = space.norm(members.front());
  for (std::size_t i = 1; i < members.size(); ++i) r = pointwise_min(r, space.norm(members[i]));
  return r;
}

std::string_view to_string(BoundClass c) {
  switch (c) {
    case BoundClass::kCertainlyBounded: return "certainly_bounded";
    case BoundClass::kPerhapsBounded: return "perhaps_bounded";
    case BoundClass::kPerhapsUnbounded: return "perhaps_unbounded";
    case BoundClass::kCertainlyUnbounded: return "certainly_unbounded";
  }
  return "?";
}

RadiusReport classify_radius(const DistFn& radius, double tol) {
  RadiusReport report;
  report.radius = radius;
  report.plateau = radius.plateau();
  // A ratio only approaches 1; the tolerance is for exact and sampled
  // families, not for pushing x out to ~beta / tol.
  const bool ratio = std::holds_alternative<Ratio>(radius.repr());
  if (const auto x0 = ratio ? std::nullopt : first_reaching(radius, 1.0 - tol, false)) {
    report.cls = BoundClass::kCertainlyBounded;
    report.x0 = x0;
  } else if (report.plateau >= 1.0 - tol) {
    report.cls = BoundClass::kPerhapsBounded;
  } else if (report.plateau < tol) {
    report.cls = BoundClass::kCertainlyUnbounded;
  } else {
    report.cls = BoundClass::kPerhapsUnbounded;
    report.x0 = first_reaching(radius, tol, true);
  }
  report.d_bounded = report.cls == BoundClass::kCertainlyBounded || report.cls == BoundClass::kPerhapsBounded;
  return report;
}

RadiusReport classify_set(const PNSpace& space, const SetSpec& set, double tol) {
  return classify_radius(prob_radius(space, set), tol);
}

DBoundedWitness dbounded_witness(const PNSpace& space, const SetSpec& set) {
  DBoundedWitness out;
  const RadiusReport report = classify_set(space, set);
  if (!report.d_bounded) return out;
  out.g = report.radius;
  out.verified = true;
  for (const Vec& p : set.enumerate(space.dim())) {
    const DistFn nu = space.norm(p);
    ++out.members_checked;
    if (!compare_leq(*out.g, nu, effective_tol(*out.g, nu))) out.verified = false;
  }
  return out;
}

HConstruction construct_h(const PNSpace& space, const SequenceSpec& seq, const Vec& target, double lambda,
                          std::size_t horizon) {
  HConstruction out;
  std::vector<DistFn> norms;
  std::vector<DistFn> diffs;
  for (std::size_t m = 1; m <= horizon; ++m) {
    const Vec p = seq.term(m, space.dim());
    norms.push_back(space.norm(p));
    diffs.push_back(space.norm(p - target));
  }
  const DistFn nu_target = space.norm(target);

  auto outside_dplus = [&](const DistFn& f, const std::string& what) {
    if (in_dplus(f)) return false;
    out.failure = "premise: " + what + " = " + describe(f) + " is not in D+";
    return true;
  };
  if (outside_dplus(nu_target, "nu_target")) return out;
  for (std::size_t m = 1; m <= horizon; ++m) {
    if (outside_dplus(norms[m - 1], "nu_p" + std::to_string(m))) return out;
    if (outside_dplus(diffs[m - 1], "nu_(p" + std::to_string(m) + "-target)")) return out;
  }

  const auto conv = convergence_probe(space, seq, target, {lambda}, horizon);
  if (!conv.converges) {
    out.failure = "premise: sequence does not converge at lambda=" + format_number(lambda) + " within horizon " +
                  std::to_string(horizon);
    return out;
  }
  out.n = *conv.levels.front().n;

  DistFn g = diffs[out.n - 1];
  for (std::size_t m = out.n + 1; m <= horizon; ++m) g = pointwise_min(g, diffs[m - 1]);
  DistFn h = space.tau()(g, nu_target);
  if (outside_dplus(h, "tau(G, nu_target)")) return out;
  for (std::size_t m = 1; m < out.n; ++m) h = pointwise_min(h, norms[m - 1]);
  if (outside_dplus(h, "H")) return out;

  for (std::size_t m = 1; m <= horizon; ++m) {
    if (auto c = compare_leq(h, norms[m - 1], effective_tol(h, norms[m - 1])); !c) {
      out.failure = "nu_p" + std::to_string(m) + " < H at x=" + format_number(c.witness);
      return out;
    }
  }
  out.h = h;
  return out;
}

CompactnessReport compactness_probe(const PNSpace& space, const SetSpec& set, const SequenceSpec& seq, double lambda,
                                    std::size_t horizon) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
  if (horizon < 2) throw std::invalid_argument("compactness_probe needs a horizon of at least 2");
  std::vector<Vec> terms;
  for (std::size_t m = 1; m <= horizon; ++m) {
    terms.push_back(seq.term(m, space.dim()));
    if (!set.contains(terms.back())) {
      throw std::invalid_argument("sequence term p" + std::to_string(m) + "=" + format_vec(terms.back()) +
                                  " is not in A");
    }
  }
  const std::size_t first = horizon / 2;  // 0-based start of the tail window
  const std::vector<Vec> window(terms.begin() + static_cast<std::ptrdiff_t>(first), terms.end());
  const std::string window_label = "p" + std::to_string(first + 1) + "..p" + std::to_string(horizon);

  CompactnessReport report;
  bool separated = true;
  for (std::size_t i = 0; i < window.size() && separated; ++i) {
    for (std::size_t j = i + 1; j < window.size() && separated; ++j) {
      if (neighborhood_contains(space, window[i], window[j], lambda)) separated = false;
    }
  }
  if (separated) {
    report.refuted = true;
    report.reason = "tail terms " + window_label + " are pairwise outside each other's " + format_number(lambda) +
                    "-neighborhoods";
    return report;
  }

  const auto limit = seq.classical_limit(space.dim());
  const bool limit_in_set = limit && set.contains(*limit);
  if (limit && !limit_in_set && convergence_probe(space, seq, *limit, {lambda}, horizon).converges) {
    report.refuted = true;
    report.reason = "sequence converges to " + format_vec(*limit) + ", which is not in A";
    return report;
  }

  std::vector<Vec> candidates = window;
  if (limit_in_set) candidates.push_back(*limit);
  for (const Vec& c : candidates) {
    std::size_t attracted = 0;
    for (const Vec& q : window) attracted += neighborhood_contains(space, c, q, lambda) ? 1 : 0;
    if (attracted > 1) {
      report.reason = "candidate limit " + format_vec(c) + " attracts " + std::to_string(attracted) + " tail terms";
      return report;
    }
  }
  report.refuted = true;
  report.reason = "no candidate limit attracts more than one of " + window_label;
  return report;
}

}  // namespace pncalc
