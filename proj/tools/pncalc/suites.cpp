#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "pncalc/boundedness.hpp"
#include "pncalc/pnspace.hpp"
#include "pncalc/topology.hpp"
#include "pncalc/triangle.hpp"
#include "scenario.hpp"

namespace pncalc::app {

namespace {

// Collects failed sub-checks of one criterion.
class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }

  CheckResult result(const std::string& summary) const {
    if (failures_.empty()) return {name_, true, summary + " (" + std::to_string(checks_) + " checks)"};
    std::string detail = std::to_string(failures_.size()) + " of " + std::to_string(checks_) + " checks failed:";
    for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) detail += " [" + failures_[i] + "]";
    return {name_, false, detail};
  }

 private:
  std::string name_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

PNSpace space(const std::string& spec) { return parse_space(spec); }

CheckResult step_convolution() {
  Criterion c("step-convolution exactness");
  // Oracle: closed-form operands and t-norms, sup over a uniform split grid.
  auto eps1 = [](double s) { return s > 1.0 ? 1.0 : 0.0; };
  auto eps2 = [](double s) { return s > 2.0 ? 1.0 : 0.0; };
  const std::vector<std::pair<TNormId, std::function<double(double, double)>>> tnorms{
      {TNormId::kMin, [](double a, double b) { return std::min(a, b); }},
      {TNormId::kProd, [](double a, double b) { return a * b; }},
      {TNormId::kLukasiewicz, [](double a, double b) { return std::max(a + b - 1.0, 0.0); }},
  };
  constexpr int kSplits = 10000;
  for (const auto& [id, t] : tnorms) {
    const TNorm tn(id);
    const DistFn r = sup_conv(tn, DistFn::step(1.0), DistFn::step(2.0));
    const auto s = r.as_step();
    c.expect(s && s->breakpoints == std::vector<double>{3.0} && s->levels == std::vector<double>{0.0, 1.0},
             std::string(tn.name()) + ": got " + describe(r));
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double x = 0.0123 + 0.03 * k;
      double best = 0.0;
      for (int i = 0; i <= kSplits; ++i) {
        const double u = x * i / kSplits;
        best = std::max(best, t(eps1(u), eps2(x - u)));
      }
      worst = std::max(worst, std::abs(best - r(x)));
    }
    c.expect(worst <= 1e-6, std::string(tn.name()) + ": oracle gap " + format_number(worst));
  }
  return c.result("sup_conv(T, step(1), step(2)) = step(3) for min, prod, lukasiewicz; oracle gap <= 1e-6");
}

CheckResult triangle_laws() {
  Criterion c("triangle-function laws");
  const std::vector<TriangleFn> taus{TriangleFn::sup(TNorm(TNormId::kMin)), TriangleFn::sup(TNorm(TNormId::kProd)),
                                     TriangleFn::max()};
  for (const TriangleFn& tau : taus) {
    const TfLawReport rep = tf_law_suite(tau, 50, 7);
    std::string why = tau.spec();
    if (rep.first_violation) why += ": " + rep.first_violation->law + " " + rep.first_violation->operands;
    c.expect(rep.all_hold(), why);
  }
  std::mt19937_64 rng(7);
  const std::vector<TriangleFn> dominated{TriangleFn::sup(TNorm(TNormId::kMin)), TriangleFn::sup(TNorm(TNormId::kProd)),
                                          TriangleFn::sup(TNorm(TNormId::kLukasiewicz)),
                                          TriangleFn::inf(TNorm(TNormId::kProd))};
  for (int i = 0; i < 100; ++i) {
    const DistFn f = random_dyadic_step(rng);
    const DistFn g = random_dyadic_step(rng);
    const DistFn m = max_tf(f, g);
    for (const TriangleFn& tau : dominated) {
      c.expect(compare_leq(tau(f, g), m, 1e-9).holds, tau.spec() + " > M at F=" + describe(f) + " G=" + describe(g));
    }
  }
  return c.result("assoc/comm/monotone/unit on 50 samples for sup:min, sup:prod, max; tau <= M on 100 pairs");
}

CheckResult exp_plateau_axioms() {
  Criterion c("PN axioms, exponential plateau norm");
  const PNSpace e12(ExpPlateauNorm{}, 1, TriangleFn::sup(TNorm(TNormId::kProd)), TriangleFn::inf(TNorm(TNormId::kProd)));
  const AxiomReport rep = axiom_suite(e12, SampleSpec::defaults(1), 1e-9);
  c.expect(rep.n1.holds, "N1");
  c.expect(rep.n2.holds, "N2");
  c.expect(rep.n3.holds, "N3");
  c.expect(rep.n4.holds, "N4");
  const SerstnevReport s = serstnev_check(e12, SampleSpec::defaults(1), 1e-9);
  c.expect(!s.holds && !s.violations.empty(), "serstnev should be violated");
  std::string witness = "none";
  if (!s.violations.empty()) {
    const auto& v = s.violations.front();
    witness = "alpha=" + format_number(v.alpha) + " p=" + format_vec(v.p) + " " + describe(v.scaled_norm) + " vs " +
              describe(v.scaled_arg);
  }
  return c.result("E12 passes N1-N4 on the default grid; serstnev violated at " + witness);
}

CheckResult serstnev_contrast() {
  Criterion c("Serstnev contrast");
  c.expect(serstnev_check(space("E19"), SampleSpec::defaults(1), 1e-9).holds, "E19 should be serstnev");
  const SerstnevReport e9 = serstnev_check(space("E9:a=1"), SampleSpec::defaults(1), 1e-9);
  const auto it = std::find_if(e9.violations.begin(), e9.violations.end(),
                               [](const SerstnevViolation& v) { return v.alpha == 2.0 && v.p == Vec{1.0}; });
  c.expect(it != e9.violations.end(), "E9 has no violation at alpha=2, p=1");
  if (it != e9.violations.end()) {
    c.expect(pointwise_equal(it->scaled_norm, DistFn::step(2.0 / 3.0), 1e-12), "nu_2 = " + describe(it->scaled_norm));
    c.expect(pointwise_equal(it->scaled_arg, DistFn::step(1.0), 1e-12), "nu_1(x/2) = " + describe(it->scaled_arg));
  }
  return c.result("E19 serstnev; E9 violated at alpha=2, p=1 with step(2/3) vs step(1)");
}

CheckResult classification() {
  Criterion c("classification battery");
  const RadiusReport e9 = classify_set(space("E9:a=1"), SetSpec::all_reals());
  c.expect(e9.cls == BoundClass::kCertainlyBounded, "E9 class " + std::string(to_string(e9.cls)));
  c.expect(e9.x0 && *e9.x0 == 1.0, "E9 x0");
  c.expect(pointwise_equal(e9.radius, DistFn::step(1.0), 0.0), "E9 radius " + describe(e9.radius));

  const double a = std::sqrt(2.0);
  const double b = std::sqrt(10.0);
  const RadiusReport e25 = classify_set(space("E25"), SetSpec::interval(a, b));
  const double root = std::sqrt(std::max(std::abs(a), std::abs(b)));
  double gap = 0.0;
  for (int k = -30; k <= 30; ++k) {
    const double t = std::pow(10.0, k / 10.0);
    gap = std::max(gap, std::abs(e25.radius(t) - t / (t + root)));
  }
  c.expect(gap <= 1e-6, "E25 radius gap " + format_number(gap));
  c.expect(e25.cls == BoundClass::kPerhapsBounded, "E25 class " + std::string(to_string(e25.cls)));

  const RadiusReport one = classify_set(space("E12"), SetSpec::finite({{1.0}}));
  c.expect(one.cls == BoundClass::kPerhapsUnbounded, "E12 {1} class " + std::string(to_string(one.cls)));
  c.expect(close(one.plateau, std::exp(-1.0), 1e-9), "E12 {1} plateau " + format_number(one.plateau));

  std::vector<Vec> squares;
  for (int m = 1; m <= 50; ++m) squares.push_back({double(m) * m});
  const RadiusReport sq = classify_set(space("E12"), SetSpec::finite(squares));
  c.expect(sq.cls == BoundClass::kCertainlyUnbounded, "E12 squares class " + std::string(to_string(sq.cls)));
  return c.result("E9 certainly_bounded x0=1; E25 perhaps_bounded (radius gap " + format_number(gap) +
                  "); E12 {1} perhaps_unbounded; E12 {m^2} certainly_unbounded");
}

CheckResult witness_coherence() {
  Criterion c("D-bounded witness coherence");
  std::vector<Vec> squares;
  for (int m = 1; m <= 50; ++m) squares.push_back({double(m) * m});
  const std::vector<std::pair<std::string, SetSpec>> battery{
      {"E9:a=1", SetSpec::all_reals()},
      {"E25", SetSpec::interval(std::sqrt(2.0), std::sqrt(10.0))},
      {"E12", SetSpec::finite({{1.0}})},
      {"E12", SetSpec::finite({{1.0}, {2.0}, {3.0}})},
      {"E12", SetSpec::finite(squares)},
      {"E12", SetSpec::finite({{0.0}})},
      {"E19", SetSpec::sequence_image(SequenceSpec::harmonic())},
      {"E27:a=1", SetSpec::interval(-3.0, 3.0)},
      {"E21", SetSpec::sequence_image(SequenceSpec::harmonic())},
  };
  std::size_t members = 0;
  for (const auto& [spec, set] : battery) {
    const PNSpace sp = space(spec);
    const std::string label = spec + " " + describe(set);
    const RadiusReport rep = classify_set(sp, set);
    const DBoundedWitness w = dbounded_witness(sp, set);
    c.expect(w.g.has_value() == rep.d_bounded, label + ": witness/classifier disagree");
    if (!w.g) continue;
    for (const Vec& p : set.enumerate(sp.dim())) {
      ++members;
      const DistFn nu = sp.norm(p);
      c.expect(compare_leq(*w.g, nu, std::max(1e-9, default_tolerance(*w.g, nu))).holds,
               label + ": nu_p < G at p=" + format_vec(p));
    }
  }
  return c.result(std::to_string(battery.size()) + " sets; nu_p >= G on " + std::to_string(members) + " members");
}

CheckResult scaling_monotonicity() {
  Criterion c("scaling monotonicity");
  const std::vector<std::string> specs{"E9:a=1", "E12", "E19", "E25", "E27:a=1"};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-4.0, 4.0);
  std::uniform_real_distribution<double> vec(-8.0, 8.0);
  for (int i = 0; i < 200; ++i) {
    const PNSpace sp = space(specs[i % specs.size()]);
    double alpha = coef(rng);
    double beta = coef(rng);
    if (std::abs(alpha) > std::abs(beta)) std::swap(alpha, beta);
    const Vec p{vec(rng)};
    const DistFn small = sp.norm(beta * p);
    const DistFn large = sp.norm(alpha * p);
    c.expect(compare_leq(small, large, 1e-9).holds, family_id(sp.family()) + " alpha=" + format_number(alpha) +
                                                        " beta=" + format_number(beta) + " p=" + format_vec(p));
  }
  return c.result("nu_{beta p} <= nu_{alpha p} on 200 random triples over E9/E12/E19/E25/E27");
}

CheckResult lg_property() {
  Criterion c("LG-property");
  c.expect(lg_probe(space("E12"), default_lg_probes(), default_escape()).has_lg, "E12 should have LG");
  const LgReport e9 = lg_probe(space("E9:a=1"), default_lg_probes(), default_escape());
  c.expect(!e9.has_lg, "E9 should fail LG");
  const auto at2 = std::find_if(e9.failures.begin(), e9.failures.end(), [](const LgFailure& f) { return f.x == 2.0; });
  c.expect(at2 != e9.failures.end() && at2->limit == 1.0, "E9 failure at x=2 with limit 1");
  return c.result("E12 has LG; E9 fails at x=2 with limit 1");
}

CheckResult convergence_contrast() {
  Criterion c("convergence contrast");
  const double lambda = 0.25;
  const auto e19 = convergence_probe(space("E19"), SequenceSpec::harmonic(), {0.0}, {lambda}, 64);
  const auto expected = static_cast<std::size_t>(std::ceil(1.0 / lambda)) + 1;
  c.expect(e19.converges && e19.levels[0].n == expected, "E19 N should be " + std::to_string(expected));
  const PNSpace e21 = space("E21");
  const auto rep = convergence_probe(e21, SequenceSpec::harmonic(), {0.0}, {lambda}, 64);
  c.expect(!rep.converges, "E21 should diverge");
  for (std::size_t m = 1; m <= 64; ++m) {
    c.expect(!neighborhood_contains(e21, {0.0}, SequenceSpec::harmonic().term(m, 1), lambda),
             "E21 p" + std::to_string(m) + " inside N_0(0.25)");
  }
  return c.result("E19 N=5 at lambda=0.25; E21 outside N_0(0.25) at every index up to 64");
}

CheckResult completeness() {
  Criterion c("completeness probe");
  const auto e19 = completeness_probe(space("E19"), SequenceSpec::harmonic(), default_lambdas(), 64);
  c.expect(e19.verdict == Completeness::kCauchyAndConverges && e19.limit == Vec{0.0},
           "E19 harmonic: " + std::string(to_string(e19.verdict)));
  const auto e9 = completeness_probe(space("E9:a=1"), SequenceSpec::geometric(), {0.25}, 64);
  c.expect(e9.verdict == Completeness::kNotCauchy, "E9 geometric: " + std::string(to_string(e9.verdict)));
  return c.result("E19 harmonic cauchy_and_converges(0); E9 geometric not_cauchy at 0.25");
}

CheckResult h_construction() {
  Criterion c("bounding H construction");
  auto check = [&](const std::string& spec, double lambda) {
    const PNSpace sp = space(spec);
    const HConstruction h = construct_h(sp, SequenceSpec::harmonic(), {0.0}, lambda, 64);
    c.expect(h.h.has_value(), spec + ": " + h.failure);
    if (!h.h) return;
    c.expect(in_dplus(*h.h), spec + ": H not in D+");
    for (std::size_t m = 1; m <= 64; ++m) {
      const DistFn nu = sp.norm(SequenceSpec::harmonic().term(m, 1));
      c.expect(compare_leq(*h.h, nu, std::max(1e-9, default_tolerance(*h.h, nu))).holds,
               spec + ": nu_p" + std::to_string(m) + " < H");
    }
  };
  check("E19", 0.25);
  check("E25", 0.5);
  const HConstruction e21 = construct_h(space("E21"), SequenceSpec::harmonic(), {0.0}, 0.25, 64);
  c.expect(!e21.h && e21.failure.rfind("premise", 0) == 0, "E21 should fail its premise, got '" + e21.failure + "'");
  return c.result("H in D+ below nu_{1/m}, m <= 64, for E19 and E25; E21 fails: " + e21.failure);
}

CheckResult equivalence() {
  Criterion c("equivalence experiments");
  const PNSpace a = space("E19:l2,dim=2");
  const PNSpace b = space("E19b:a=1,l2,dim=2");
  c.expect(equivalence_probe(a, b, default_battery(2)).equivalent, "E19 vs E19b refuted");
  const auto r = equivalence_probe(space("E21"), space("E19"), default_battery(1));
  c.expect(!r.equivalent && r.witness == std::string("harmonic"), "E21 vs E19 should be refuted by harmonic");

  const FindCReport fc = find_c(a, {{1.0, 0.0}, {0.0, 1.0}}, space("E19"), l1_sphere_samples(2, 7));
  // Oracle: min of the l2 norm over a dense walk of the unit l1 sphere.
  double oracle = kInf;
  constexpr int kSteps = 100000;
  for (int k = 0; k <= kSteps; ++k) {
    const double t = static_cast<double>(k) / kSteps;
    oracle = std::min(oracle, std::hypot(t, 1.0 - t));
  }
  c.expect(fc.c.has_value(), "find_c found nothing");
  const double found = fc.c.value_or(0.0);
  c.expect(close(found, oracle, 0.01) && close(found, 0.7071, 0.01), "c=" + format_number(found));
  return c.result("E19~E19b on the default battery; E21 vs E19 refuted by harmonic; c=" + format_number(found) +
                  " (oracle " + format_number(oracle) + ")");
}

}  // namespace

std::vector<CheckResult> acceptance_checks() {
  std::vector<CheckResult> out;
  for (auto* fn : {step_convolution, triangle_laws, exp_plateau_axioms, serstnev_contrast, classification,
                   witness_coherence, scaling_monotonicity, lg_property, convergence_contrast, completeness,
                   h_construction, equivalence}) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({"criterion " + std::to_string(out.size() + 1), false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

std::vector<CheckResult> law_checks(std::uint64_t seed,
                                    const std::vector<std::pair<std::string, BinaryOp>>& extra_tnorms) {
  std::vector<CheckResult> out;
  auto tnorm_result = [](const std::string& name, const LawReport& rep) {
    std::string detail = std::to_string(rep.samples) + " samples";
    if (rep.first_violation && !rep.tnorm_laws_hold()) {
      const auto& v = *rep.first_violation;
      detail = v.law + " x=" + format_number(v.x) + " y=" + format_number(v.y) + " z=" + format_number(v.z) +
               " lhs=" + format_number(v.lhs) + " rhs=" + format_number(v.rhs);
    }
    return CheckResult{"tnorm " + name, rep.tnorm_laws_hold(), detail};
  };
  for (TNormId id : {TNormId::kMin, TNormId::kProd, TNormId::kLukasiewicz, TNormId::kT2}) {
    const TNorm t(id);
    out.push_back(tnorm_result(std::string(t.name()), law_suite(t, 1000, seed)));
  }
  for (const auto& [name, op] : extra_tnorms) out.push_back(tnorm_result(name, law_suite(op, 1000, seed)));

  for (const char* spec : {"sup:min", "sup:prod", "sup:lukasiewicz", "sup:t2", "inf:prod", "inf:min", "max"}) {
    const TfLawReport rep = tf_law_suite(parse_triangle(spec), 50, seed);
    std::string detail = std::to_string(rep.samples) + " samples";
    if (rep.first_violation) detail = rep.first_violation->law + " " + rep.first_violation->operands;
    out.push_back({std::string("triangle ") + spec, rep.all_hold(), detail});
  }

  for (const char* spec : {"E9:a=1", "E12", "E19", "E19:l2,dim=2", "E19b:a=1,l2,dim=2", "E21", "E25", "E27:a=1"}) {
    const PNSpace sp = parse_space(spec);
    const AxiomReport rep = axiom_suite(sp, SampleSpec::defaults(sp.dim()), 1e-9);
    std::string detail = sp.describe();
    for (const auto* check : {&rep.n1, &rep.n2, &rep.n3, &rep.n4}) {
      if (!check->violations.empty()) {
        const Witness& w = check->violations.front();
        detail = w.detail + " x=" + format_number(w.x) + " lhs=" + describe(w.lhs) + " rhs=" + describe(w.rhs);
        break;
      }
    }
    out.push_back({std::string("axioms ") + spec, rep.all_hold(), detail});
  }
  return out;
}

Report run_suite(const std::string& name, std::uint64_t seed) {
  std::vector<CheckResult> results;
  if (name == "paper-examples") {
    results = acceptance_checks();
  } else if (name == "laws") {
    results = law_checks(seed);
  } else {
    throw ValidationError("unknown suite '" + name + "' (expected paper-examples or laws)");
  }
  Report out;
  out.add("suite", name);
  out.add("seed", std::to_string(seed));
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass ? 1 : 0;
    out.add("check", std::string(r.pass ? "pass " : "FAIL ") + r.name + ": " + r.detail);
  }
  out.add("passed", std::to_string(passed) + "/" + std::to_string(results.size()));
  out.add("violations", results.size() - passed);
  return out;
}

}  // namespace pncalc::app
