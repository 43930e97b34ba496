#include "tasks.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>

#include "pncalc/boundedness.hpp"
#include "pncalc/pnspace.hpp"
#include "pncalc/topology.hpp"
#include "pncalc/triangle.hpp"

namespace pncalc::app {

namespace {

constexpr std::size_t kMaxListed = 16;

// Hands out option values in report order, falling back to defaults, and
// echoes each resolved value.
class Resolver {
 public:
  Resolver(const Scenario& sc, Report& report) : sc_(sc), report_(report) {}

  std::string get(const std::string& key, const std::string& fallback) {
    const auto it = sc_.settings.find(key);
    std::string v = it == sc_.settings.end() ? fallback : it->second;
    report_.add(key, v);
    return v;
  }

  std::string required(const std::string& key) {
    const auto it = sc_.settings.find(key);
    if (it == sc_.settings.end() || it->second.empty()) {
      throw ValidationError("task " + sc_.task + " needs --" + key);
    }
    report_.add(key, it->second);
    return it->second;
  }

 private:
  const Scenario& sc_;
  Report& report_;
};

double to_double(const std::string& key, const std::string& text) {
  try {
    return parse_vec(text).at(0);
  } catch (const std::exception&) {
    throw ValidationError("option " + key + ": expected a number, got '" + text + "'");
  }
}

std::size_t to_count(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ValidationError("option " + key + ": expected a positive integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  try {
    return parse_vec(text);
  } catch (const std::exception&) {
    throw ValidationError("option " + key + ": expected a comma separated list of numbers, got '" + text + "'");
  }
}

std::vector<std::string> split_semicolons(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(';', start);
    out.push_back(text.substr(start, end - start));
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

std::string join_vecs(const std::vector<Vec>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ';';
    out += format_vec(vs[i]);
  }
  return out;
}

GridPolicy policy_from(Resolver& r) {
  GridPolicy policy;
  policy.points = to_count("grid", r.get("grid", "1024"));
  policy.x_max = to_double("xmax", r.get("xmax", "64"));
  if (policy.points < 2 || !(policy.x_max > 0.0)) throw ValidationError("grid needs at least 2 points and xmax > 0");
  return policy;
}

std::string level_line(const LevelResult& l) {
  return "lambda=" + format_number(l.lambda) + " N=" + (l.n ? std::to_string(*l.n) : std::string("none")) +
         " worst_margin=" + format_number(l.worst_margin) + " worst_index=" + std::to_string(l.worst_index);
}

void add_check(Report& out, const std::string& name, const AxiomCheck& c) {
  out.add(name, c.holds ? "holds" : "violated");
  out.add(name + ".checked", c.checked);
  out.add(name + ".failed", c.failed);
  if (!c.violations.empty()) {
    const Witness& w = c.violations.front();
    out.add(name + ".witness", w.detail + " x=" + format_number(w.x) + " lhs=" + describe(w.lhs) +
                                   " rhs=" + describe(w.rhs));
  }
}

void convolve(Resolver& r, Report& out) {
  const std::string kind = r.get("kind", "sup");
  const TNorm t = parse_tnorm(r.get("tnorm", "min"));
  const DistFn f = parse_distfn(r.required("lhs"));
  const DistFn g = parse_distfn(r.required("rhs"));
  const GridPolicy policy = policy_from(r);
  r.get("seed", "");
  TriangleFn tau = TriangleFn::max(policy);
  if (kind == "sup") {
    tau = TriangleFn::sup(t, policy);
  } else if (kind == "inf") {
    tau = TriangleFn::inf(t, policy);
  } else if (kind != "max") {
    throw ValidationError("option kind: expected sup, inf or max, got '" + kind + "'");
  }
  out.add_distfn("", tau(f, g));
}

SampleSpec samples_from(const std::string& text, std::size_t dim) {
  if (text == "default") return SampleSpec::defaults(dim);
  if (text.rfind("powers:", 0) == 0) {
    return SampleSpec::signed_powers(dim, static_cast<int>(to_count("samples", text.substr(7))));
  }
  throw ValidationError("option samples: expected default or powers:<k>, got '" + text + "'");
}

void axioms(Resolver& r, Report& out) {
  const std::string spec = r.required("space");
  const PNSpace defaults = parse_space(spec);
  const std::string tau = r.get("tau", defaults.tau().spec());
  const std::string tau_star = r.get("taustar", defaults.tau_star().spec());
  const std::string samples = r.get("samples", "default");
  const double tol = to_double("tol", r.get("tol", "1e-9"));
  const GridPolicy policy = policy_from(r);
  r.get("seed", "");
  const PNSpace space = parse_space(spec, parse_triangle(tau, policy), parse_triangle(tau_star, policy));

  const AxiomReport rep = axiom_suite(space, samples_from(samples, space.dim()), tol);
  add_check(out, "n1", rep.n1);
  add_check(out, "n2", rep.n2);
  add_check(out, "n3", rep.n3);
  add_check(out, "n4", rep.n4);
  add_check(out, "tau_le_taustar", rep.tau_below_tau_star);
  out.add("verdict", rep.all_hold() ? "pn_space" : "not_pn_space");
}

void serstnev(Resolver& r, Report& out) {
  const PNSpace space = parse_space(r.required("space"));
  const std::string samples = r.get("samples", "default");
  const double tol = to_double("tol", r.get("tol", "1e-9"));
  r.get("seed", "");
  const SerstnevReport rep = serstnev_check(space, samples_from(samples, space.dim()), tol);
  out.add("serstnev", rep.holds ? "holds" : "violated");
  out.add("checked", rep.checked);
  out.add("violations", rep.violations.size());
  for (std::size_t i = 0; i < rep.violations.size() && i < kMaxListed; ++i) {
    const auto& v = rep.violations[i];
    out.add("violation", "alpha=" + format_number(v.alpha) + " p=" + format_vec(v.p) + " x=" + format_number(v.x) +
                             " nu_alpha_p=" + describe(v.scaled_norm) + " nu_p_scaled=" + describe(v.scaled_arg));
  }
}

SetSpec set_from(Resolver& r, const PNSpace&) {
  const std::string set = r.required("set");
  const std::size_t samples = to_count("samples", r.get("samples", "200"));
  const std::size_t horizon = to_count("horizon", r.get("horizon", std::to_string(kDefaultHorizon)));
  return parse_set(set, samples, horizon);
}

void radius(Resolver& r, Report& out, bool classify) {
  const PNSpace space = parse_space(r.required("space"));
  const SetSpec set = set_from(r, space);
  r.get("seed", "");
  const RadiusReport rep = classify_set(space, set);
  out.add_distfn("radius", rep.radius);
  out.add("class", to_string(rep.cls));
  out.add("x0", rep.x0 ? format_number(*rep.x0) : std::string("none"));
  out.add("plateau", rep.plateau);
  out.add("d_bounded", rep.d_bounded);
  if (classify) {
    const DBoundedWitness w = dbounded_witness(space, set);
    out.add("witness", w.g ? describe(*w.g) : std::string("none"));
    if (w.g) {
      out.add("witness.verified", w.verified);
      out.add("witness.members_checked", w.members_checked);
    }
  }
}

void converge(Resolver& r, Report& out) {
  const PNSpace space = parse_space(r.required("space"));
  const SequenceSpec seq = parse_sequence(r.required("seq"));
  const Vec target = to_list("target", r.get("target", format_vec(zero_vec(space.dim()))));
  const auto lambdas = to_list("lambdas", r.get("lambdas", format_vec(default_lambdas())));
  const std::size_t horizon = to_count("horizon", r.get("horizon", std::to_string(kDefaultHorizon)));
  r.get("seed", "");
  const ConvergenceReport rep = convergence_probe(space, seq, target, lambdas, horizon);
  for (const auto& l : rep.levels) out.add("level", level_line(l));
  out.add("verdict", rep.converges ? "converges" : "diverges");
}

void cauchy(Resolver& r, Report& out) {
  const PNSpace space = parse_space(r.required("space"));
  const SequenceSpec seq = parse_sequence(r.required("seq"));
  const auto lambdas = to_list("lambdas", r.get("lambdas", format_vec(default_lambdas())));
  const std::size_t horizon = to_count("horizon", r.get("horizon", std::to_string(kDefaultHorizon)));
  r.get("seed", "");
  const CompletenessReport rep = completeness_probe(space, seq, lambdas, horizon);
  for (const auto& l : rep.cauchy.levels) out.add("level", level_line(l));
  out.add("cauchy", rep.cauchy.cauchy);
  out.add("verdict", to_string(rep.verdict));
  out.add("limit", rep.limit ? format_vec(*rep.limit) : std::string("none"));
}

void equiv(Resolver& r, Report& out) {
  const PNSpace a = parse_space(r.required("a"));
  const PNSpace b = parse_space(r.required("b"));
  const std::string battery = r.get("battery", "default");
  if (battery != "default") throw ValidationError("option battery: only 'default' is available");
  const auto lambdas = to_list("lambdas", r.get("lambdas", format_vec(default_lambdas())));
  const std::size_t horizon = to_count("horizon", r.get("horizon", std::to_string(kDefaultHorizon)));
  r.get("seed", "");
  const EquivalenceReport rep = equivalence_probe(a, b, default_battery(a.dim()), lambdas, horizon);
  for (const auto& item : rep.items) {
    out.add("item", item.label + " a=" + (item.converges_a ? "converges" : "diverges") +
                        " b=" + (item.converges_b ? "converges" : "diverges"));
  }
  out.add("verdict", rep.equivalent ? "equivalent_on_battery" : "refuted");
  if (rep.witness) out.add("witness", *rep.witness);
}

void find_c_task(Resolver& r, Report& out) {
  const PNSpace space = parse_space(r.required("space"));
  std::vector<Vec> standard;
  for (std::size_t j = 0; j < space.dim(); ++j) standard.push_back(unit_vec(space.dim(), j));
  const std::string basis_text = r.get("basis", join_vecs(standard));
  const PNSpace field = parse_space(r.get("field", "E19"));
  const std::uint64_t seed = std::stoull(r.get("seed", ""));
  std::vector<Vec> basis;
  for (const auto& part : split_semicolons(basis_text)) basis.push_back(to_list("basis", part));
  const FindCReport rep = find_c(space, basis, field, l1_sphere_samples(basis.size(), seed));
  out.add("coefficient_samples", rep.samples);
  out.add("c", rep.c ? format_number(*rep.c) : std::string("none_found"));
}

void compact(Resolver& r, Report& out) {
  const PNSpace space = parse_space(r.required("space"));
  const std::string set_text = r.required("set");
  const SequenceSpec seq = parse_sequence(r.required("seq"));
  const double lambda = to_double("lambda", r.get("lambda", "0.25"));
  const std::size_t horizon = to_count("horizon", r.get("horizon", std::to_string(kDefaultHorizon)));
  const std::size_t samples = to_count("samples", r.get("samples", "200"));
  r.get("seed", "");
  const SetSpec set = parse_set(set_text, samples, horizon);
  const CompactnessReport rep = compactness_probe(space, set, seq, lambda, horizon);
  out.add("verdict", rep.refuted ? "refuted" : "no_refutation");
  out.add("reason", rep.reason);
}

void lgprobe(Resolver& r, Report& out) {
  const PNSpace space = parse_space(r.required("space"));
  const auto xs = to_list("x", r.get("x", format_vec(default_lg_probes())));
  r.get("seed", "");
  const LgReport rep = lg_probe(space, xs, default_escape());
  out.add("lg", rep.has_lg ? "has_LG" : "fails");
  for (const auto& f : rep.failures) out.add("failure", "x=" + format_number(f.x) + " limit=" + format_number(f.limit));
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PNCALC_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const unsigned long long v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  return 7;
}

Report run_task(const Scenario& scenario, std::uint64_t seed) {
  task_options(scenario.task);  // validates the name
  Scenario sc = scenario;
  if (!sc.settings.count("seed")) sc.settings["seed"] = std::to_string(seed);
  try {
    std::stoull(sc.settings["seed"]);
  } catch (const std::exception&) {
    throw ValidationError("option seed: expected an unsigned integer, got '" + sc.settings["seed"] + "'");
  }

  Report out;
  out.add("task", sc.task);
  Resolver r(sc, out);
  try {
    const std::string& t = sc.task;
    if (t == "convolve") convolve(r, out);
    else if (t == "axioms") axioms(r, out);
    else if (t == "serstnev") serstnev(r, out);
    else if (t == "classify") radius(r, out, true);
    else if (t == "radius") radius(r, out, false);
    else if (t == "converge") converge(r, out);
    else if (t == "cauchy") cauchy(r, out);
    else if (t == "equiv") equiv(r, out);
    else if (t == "find_c") find_c_task(r, out);
    else if (t == "compact") compact(r, out);
    else if (t == "lgprobe") lgprobe(r, out);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  } catch (const std::out_of_range& e) {
    throw ValidationError(e.what());
  }
  return out;
}

}  // namespace pncalc::app
