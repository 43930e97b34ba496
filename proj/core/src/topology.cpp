#include "pncalc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "detail.hpp"

namespace pncalc {

namespace {

Vec or_default(const Vec& v, Vec fallback) { return v.empty() ? fallback : v; }

double weight(SequenceSpec::Kind kind, std::size_t m) {
  switch (kind) {
    case SequenceSpec::Kind::kHarmonic: return 1.0 / static_cast<double>(m);
    case SequenceSpec::Kind::kGeometric: return std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(m, 2000)));
    case SequenceSpec::Kind::kDecay: return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(m, 2000)));
    default: return 0.0;
  }
}

void check_lambdas(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("lambda list is empty");
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("lambda must lie in (0,1), got " + format_number(l));
  }
}

void check_horizon(const SequenceSpec& seq, std::size_t horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  if (horizon > seq.max_horizon()) {
    throw std::invalid_argument("horizon " + std::to_string(horizon) + " exceeds the " +
                                std::to_string(seq.max_horizon()) + " listed terms");
  }
}

std::vector<Vec> terms_up_to(const SequenceSpec& seq, std::size_t dim, std::size_t horizon) {
  std::vector<Vec> out;
  out.reserve(horizon);
  for (std::size_t m = 1; m <= horizon; ++m) out.push_back(seq.term(m, dim));
  return out;
}

}  // namespace

Vec SequenceSpec::term(std::size_t m, std::size_t dim) const {
  if (m == 0) throw std::out_of_range("sequence indices start at 1");
  if (kind == Kind::kExplicit) {
    if (m > terms.size()) throw std::out_of_range("explicit sequence has only " + std::to_string(terms.size()) + " terms");
    if (terms[m - 1].size() != dim) throw std::invalid_argument("sequence term has the wrong dimension");
    return terms[m - 1];
  }
  const Vec dir = or_default(direction, unit_vec(dim, 0));
  const Vec off = or_default(offset, zero_vec(dim));
  return off + weight(kind, m) * dir;
}

std::optional<Vec> SequenceSpec::classical_limit(std::size_t dim) const {
  switch (kind) {
    case Kind::kExplicit:
      if (terms.empty()) return std::nullopt;
      return terms.back();
    case Kind::kGeometric:
      if (!direction.empty() && is_zero(direction)) return or_default(offset, zero_vec(dim));
      return std::nullopt;
    default: return or_default(offset, zero_vec(dim));
  }
}

std::size_t SequenceSpec::max_horizon() const {
  return kind == Kind::kExplicit ? terms.size() : std::numeric_limits<std::size_t>::max();
}

SequenceSpec SequenceSpec::harmonic(Vec direction, Vec offset) {
  return {Kind::kHarmonic, std::move(direction), std::move(offset), {}};
}
SequenceSpec SequenceSpec::geometric(Vec direction, Vec offset) {
  return {Kind::kGeometric, std::move(direction), std::move(offset), {}};
}
SequenceSpec SequenceSpec::decay(Vec direction, Vec offset) {
  return {Kind::kDecay, std::move(direction), std::move(offset), {}};
}
SequenceSpec SequenceSpec::constant(Vec value) { return {Kind::kConstant, {}, std::move(value), {}}; }
SequenceSpec SequenceSpec::explicit_terms(std::vector<Vec> terms) {
  if (terms.empty()) throw std::invalid_argument("explicit sequence needs at least one term");
  return {Kind::kExplicit, {}, {}, std::move(terms)};
}

SequenceSpec parse_sequence(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (kind == "explicit") {
    std::vector<Vec> terms;
    for (auto part : detail::split(rest, ';')) terms.push_back(parse_vec(part));
    return SequenceSpec::explicit_terms(std::move(terms));
  }
  if (kind == "constant") {
    if (detail::trim(rest).empty()) throw std::invalid_argument("constant sequence needs a value, e.g. constant:1");
    return SequenceSpec::constant(parse_vec(rest));
  }

  SequenceSpec seq;
  if (kind == "harmonic") {
    seq.kind = SequenceSpec::Kind::kHarmonic;
  } else if (kind == "geometric") {
    seq.kind = SequenceSpec::Kind::kGeometric;
  } else if (kind == "decay" || kind == "geometric_decay") {
    seq.kind = SequenceSpec::Kind::kDecay;
  } else {
    throw std::invalid_argument("unknown sequence '" + std::string(kind) +
                                "' (expected harmonic|geometric|decay|constant|explicit)");
  }
  if (!detail::trim(rest).empty()) {
    for (auto part : detail::split(rest, ';')) {
      part = detail::trim(part);
      if (part.substr(0, 4) == "dir=") {
        seq.direction = parse_vec(part.substr(4));
      } else if (part.substr(0, 7) == "offset=") {
        seq.offset = parse_vec(part.substr(7));
      } else {
        throw std::invalid_argument("unknown sequence option '" + std::string(part) + "'");
      }
    }
  }
  if (!seq.direction.empty() && !seq.offset.empty() && seq.direction.size() != seq.offset.size()) {
    throw std::invalid_argument("sequence dir and offset differ in dimension");
  }
  return seq;
}

std::string describe(const SequenceSpec& seq) {
  using Kind = SequenceSpec::Kind;
  if (seq.kind == Kind::kExplicit) {
    std::string out = "explicit:";
    for (std::size_t i = 0; i < seq.terms.size(); ++i) {
      if (i) out += ';';
      out += format_vec(seq.terms[i]);
    }
    return out;
  }
  if (seq.kind == Kind::kConstant) return "constant:" + (seq.offset.empty() ? std::string("0") : format_vec(seq.offset));
  std::string out = seq.kind == Kind::kHarmonic ? "harmonic" : seq.kind == Kind::kGeometric ? "geometric" : "decay";
  std::string opts;
  if (!seq.direction.empty()) opts += "dir=" + format_vec(seq.direction);
  if (!seq.offset.empty()) opts += std::string(opts.empty() ? "" : ";") + "offset=" + format_vec(seq.offset);
  return opts.empty() ? out : out + ":" + opts;
}

std::vector<double> default_lambdas() { return {0.5, 0.25, 0.1, 0.05}; }

bool neighborhood_contains(const PNSpace& space, const Vec& p, const Vec& q, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
  return space.norm(p - q)(lambda) > 1.0 - lambda;
}

ConvergenceReport convergence_probe(const PNSpace& space, const SequenceSpec& seq, const Vec& target,
                                    const std::vector<double>& lambdas, std::size_t horizon) {
  check_lambdas(lambdas);
  check_horizon(seq, horizon);
  std::vector<DistFn> norms;
  norms.reserve(horizon);
  for (const Vec& p : terms_up_to(seq, space.dim(), horizon)) norms.push_back(space.norm(p - target));

  ConvergenceReport report;
  report.horizon = horizon;
  for (double lambda : lambdas) {
    LevelResult level{lambda, std::nullopt, kInf, 0};
    std::vector<bool> inside(horizon);
    for (std::size_t i = 0; i < horizon; ++i) {
      const double margin = norms[i](lambda) - (1.0 - lambda);
      inside[i] = margin > 0.0;
      if (margin < level.worst_margin) {
        level.worst_margin = margin;
        level.worst_index = i + 1;
      }
    }
    std::size_t n = horizon;
    while (n > 0 && inside[n - 1]) --n;
    if (n < horizon) level.n = n + 1;
    report.converges = report.converges && level.n.has_value();
    report.levels.push_back(level);
  }
  return report;
}

CauchyReport cauchy_probe(const PNSpace& space, const SequenceSpec& seq, const std::vector<double>& lambdas,
                          std::size_t horizon) {
  check_lambdas(lambdas);
  check_horizon(seq, horizon);
  const auto terms = terms_up_to(seq, space.dim(), horizon);

  CauchyReport report;
  report.horizon = horizon;
  report.levels.reserve(lambdas.size());
  for (double lambda : lambdas) report.levels.push_back({lambda, std::size_t{1}, kInf, 0});

  for (std::size_t m = 0; m < horizon; ++m) {
    for (std::size_t n = m + 1; n < horizon; ++n) {
      const DistFn nu = space.norm(terms[m] - terms[n]);
      for (LevelResult& level : report.levels) {
        const double margin = nu(level.lambda) - (1.0 - level.lambda);
        if (margin <= 0.0) level.n = std::max(*level.n, m + 2);
        if (margin < level.worst_margin) {
          level.worst_margin = margin;
          level.worst_index = m + 1;
        }
      }
    }
  }
  for (LevelResult& level : report.levels) {
    // With N = horizon no pair is left to check; call that a failure.
    if (horizon < 2 || *level.n >= horizon) level.n.reset();
    report.cauchy = report.cauchy && level.n.has_value();
  }
  return report;
}

std::string_view to_string(Completeness c) {
  switch (c) {
    case Completeness::kCauchyAndConverges: return "cauchy_and_converges";
    case Completeness::kCauchyNoLimitDetected: return "cauchy_no_limit_detected";
    case Completeness::kNotCauchy: return "not_cauchy";
  }
  return "?";
}

CompletenessReport completeness_probe(const PNSpace& space, const SequenceSpec& seq,
                                      const std::vector<double>& lambdas, std::size_t horizon) {
  CompletenessReport report;
  report.cauchy = cauchy_probe(space, seq, lambdas, horizon);
  if (!report.cauchy.cauchy) return report;

  report.verdict = Completeness::kCauchyNoLimitDetected;
  const auto limit = seq.classical_limit(space.dim());
  if (!limit) return report;
  report.convergence = convergence_probe(space, seq, *limit, lambdas, horizon);
  if (report.convergence->converges) {
    report.verdict = Completeness::kCauchyAndConverges;
    report.limit = limit;
  }
  return report;
}

std::vector<BatteryItem> default_battery(std::size_t dim) {
  const Vec zero = zero_vec(dim);
  const Vec e1 = unit_vec(dim, 0);
  return {
      {"harmonic", SequenceSpec::harmonic(), zero},
      {"decay", SequenceSpec::decay(), zero},
      {"constant", SequenceSpec::constant(e1), e1},
      {"geometric", SequenceSpec::geometric(), zero},
  };
}

EquivalenceReport equivalence_probe(const PNSpace& a, const PNSpace& b, const std::vector<BatteryItem>& battery,
                                    const std::vector<double>& lambdas, std::size_t horizon) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("equivalence_probe: spaces have dimensions " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
  }
  if (battery.empty()) throw std::invalid_argument("equivalence_probe: empty battery");
  EquivalenceReport report;
  for (const BatteryItem& item : battery) {
    const bool ca = convergence_probe(a, item.seq, item.target, lambdas, horizon).converges;
    const bool cb = convergence_probe(b, item.seq, item.target, lambdas, horizon).converges;
    report.items.push_back({item.label, ca, cb});
    if (ca != cb && report.equivalent) {
      report.equivalent = false;
      report.witness = item.label;
    }
  }
  return report;
}

std::size_t rank(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<Vec> rows = vectors;
  const std::size_t cols = rows.front().size();
  for (const Vec& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("rank: vectors differ in dimension");
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (std::abs(rows[i][c]) > std::abs(rows[pivot][c])) pivot = i;
    }
    if (std::abs(rows[pivot][c]) < 1e-12) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const double f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

std::vector<Vec> l1_sphere_samples(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("l1_sphere_samples: n must be positive");
  std::vector<Vec> out;
  for (std::size_t j = 0; j < n; ++j) {
    out.push_back(unit_vec(n, j));
    out.push_back(-unit_vec(n, j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (double si : {-0.5, 0.5}) {
        for (double sj : {-0.5, 0.5}) {
          Vec v = zero_vec(n);
          v[i] = si;
          v[j] = sj;
          out.push_back(v);
        }
      }
    }
  }
  if (n == 2) {
    constexpr int kSteps = 1000;
    for (int k = 0; k <= kSteps; ++k) {
      const double t = static_cast<double>(k) / kSteps;
      for (double s0 : {-1.0, 1.0}) {
        for (double s1 : {-1.0, 1.0}) out.push_back({s0 * t, s1 * (1.0 - t)});
      }
    }
  } else if (n > 2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
      Vec v(n);
      for (double& x : v) x = u(rng);
      const double s = base_norm(BaseNorm::kL1, v);
      if (s > 0.0) out.push_back((1.0 / s) * v);
    }
  }
  return out;
}

FindCReport find_c(const PNSpace& space, const std::vector<Vec>& basis, const PNSpace& field,
                   const std::vector<Vec>& coeff_samples) {
  if (field.dim() != 1) throw std::invalid_argument("find_c: the field space must have dimension 1");
  if (basis.empty()) throw std::invalid_argument("find_c: empty basis");
  for (const Vec& p : basis) {
    if (p.size() != space.dim()) throw std::invalid_argument("find_c: basis vector has the wrong dimension");
  }
  if (rank(basis) != basis.size()) throw std::invalid_argument("find_c: basis is linearly dependent");
  if (coeff_samples.empty()) throw std::invalid_argument("find_c: no coefficient samples");

  std::vector<DistFn> norms;
  norms.reserve(coeff_samples.size());
  for (const Vec& beta : coeff_samples) {
    if (beta.size() != basis.size()) throw std::invalid_argument("find_c: coefficient sample has the wrong length");
    const double s = base_norm(BaseNorm::kL1, beta);
    if (!(s > 0.0)) throw std::invalid_argument("find_c: zero coefficient sample");
    Vec q = zero_vec(space.dim());
    for (std::size_t j = 0; j < basis.size(); ++j) q = q + (beta[j] / s) * basis[j];
    norms.push_back(space.norm(q));
  }

  // Move-to-front: the binding sample tends to stay binding across c.
  auto feasible = [&](double c) {
    const DistFn rhs = field.norm({c});
    for (std::size_t i = 0; i < norms.size(); ++i) {
      if (!compare_leq(norms[i], rhs, std::max(1e-9, default_tolerance(norms[i], rhs)))) {
        std::rotate(norms.begin(), norms.begin() + static_cast<std::ptrdiff_t>(i),
                    norms.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        return false;
      }
    }
    return true;
  };

  FindCReport report;
  report.samples = norms.size();
  constexpr double kLow = 1e-6;
  constexpr double kHigh = 1e6;
  if (!feasible(kLow)) return report;
  double lo = kLow;
  double hi = 2.0 * lo;
  while (hi <= kHigh && feasible(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  if (hi > kHigh) {
    report.c = lo;
    return report;
  }
  for (int i = 0; i < 60 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  report.c = lo;
  return report;
}

}  // namespace pncalc
