// continua: command-line front end for the exact PL dynamics library.
//
// Exit codes: 0 satisfied, 1 unsatisfied, 2 input error, 3 certification
// failure. CONTINUA_LOG sets the log level (trace, debug, info, warn, error).

#include "continua/cantor.hpp"
#include "continua/io.hpp"
#include "continua/quasi_attractor.hpp"
#include "continua/svg.hpp"

#include "CLI11.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

using namespace continua;
using io::json;

namespace {

enum Exit { kSatisfied = 0, kUnsatisfied = 1, kInputError = 2, kCertificationFailure = 3, kInternal = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 1;
  unsigned trials = 0;
  std::string epsilon;
  int depth = -1;
  int edge_depth = -1;
  unsigned segments = 8;
  std::string out;
  std::string format = "json";
  std::string input;
  std::string orbit;
  std::string model;
  std::string homeo;
  std::string homeo_out;
  std::string point;
  std::string delta;
  std::string orientation = "R";
  unsigned steps = 20;
  unsigned modulus_trials = 200;
  bool identity = false;
  std::size_t arc = 0;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-")
    std::cout << text;
  else
    io::write_file(o.out, text);
}

Rational rational_arg(const std::string& text, const char* name) {
  if (text.empty()) throw InputError(std::string("--") + name + " is required");
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("--") + name + ": " + e.what());
  }
}

json load_json(const std::string& path) {
  try {
    return io::parse_json(io::read_file(path));
  } catch (const io::ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

bool is_model(const json& j) { return j.is_object() && j.contains("vertices") && j.contains("arcs"); }

PLHomeo load_map(const std::string& path) {
  json j = load_json(path);
  if (is_model(j)) throw InputError(path + " holds a model, not an interval map");
  return io::plhomeo_from_json(j);
}

unsigned depth_arg(const Options& o, unsigned fallback) {
  return o.depth < 0 ? fallback : static_cast<unsigned>(o.depth);
}

YModel model_for(const Options& o) {
  if (!o.model.empty()) return io::ymodel_from_json(load_json(o.model));
  return build_y(o.segments);
}

YHomeo homeo_for(const Options& o, const YModel& model) {
  if (o.identity) return identity_y(model);
  if (!o.homeo.empty()) {
    YHomeo g = io::yhomeo_from_json(load_json(o.homeo));
    validate(model, g);
    return g;
  }
  unsigned depth = depth_arg(o, 3);
  unsigned edge = o.edge_depth < 0 ? depth + 8 : static_cast<unsigned>(o.edge_depth);
  return build_g_star(model, depth, edge);
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw InputError("format '" + o.format + "' is not available for this command");
}

int cmd_build_fstar(const Options& o) {
  if (o.depth < 0) throw InputError("--depth is required");
  require_format(o, {"json", "svg"});
  unsigned depth = static_cast<unsigned>(o.depth);
  PLHomeo f = build_f_star_edges(depth, o.edge_depth < 0 ? depth : static_cast<unsigned>(o.edge_depth));
  spdlog::info("f*_{}: {} breakpoints, {} wandering intervals", depth, f.size(), wandering_intervals(f).size());
  emit(o, o.format == "svg" ? svg::phase_diagram(f) : io::dump(io::to_json(f)));
  return kSatisfied;
}

int cmd_check_peps(const Options& o) {
  PLHomeo f = load_map(o.input);
  Rational eps = rational_arg(o.epsilon, "epsilon");
  auto w = check_P_eps(f, eps);
  json out{{"epsilon", io::to_json(eps)}, {"satisfied", w.has_value()}, {"witness", nullptr}};
  if (w) out["witness"] = io::to_json(*w);
  emit(o, io::dump(out));
  return w ? kSatisfied : kUnsatisfied;
}

int cmd_conjugate(const Options& o) {
  PLHomeo g = load_map(o.input);
  if (o.depth < 1) throw InputError("--depth must be at least 1");
  auto report = build_conjugacy(g, static_cast<unsigned>(o.depth));
  spdlog::info("depth {}: residual {}", report.depth, report.residual.to_double());
  emit(o, io::dump(io::to_json(report)));
  return kSatisfied;
}

int cmd_explode(const Options& o) {
  require_format(o, {"json", "svg"});
  PLHomeo f = load_map(o.input);
  Orientation orient;
  if (o.orientation == "R") orient = Orientation::R;
  else if (o.orientation == "L") orient = Orientation::L;
  else throw InputError("--orientation must be R or L");
  PLHomeo out = explode_fixed_point(f, rational_arg(o.point, "point"), rational_arg(o.delta, "delta"), orient);
  emit(o, o.format == "svg" ? svg::phase_diagram(out) : io::dump(io::to_json(out)));
  return kSatisfied;
}

int cmd_shadow(const Options& o) {
  Rational eps = rational_arg(o.epsilon, "epsilon");
  json input = load_json(o.input);
  std::string csv;
  try {
    csv = io::read_file(o.orbit);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  bool model_csv = csv.rfind("index,arc,t", 0) == 0;
  if (!is_model(input)) {
    if (model_csv) throw InputError("interval map given with a model orbit");
    PLHomeo f = io::plhomeo_from_json(input);
    IntervalOrbit orbit = io::interval_orbit_from_csv(csv);
    for (const auto& x : orbit.points)
      if (!f.domain().contains(x)) throw InputError("orbit point " + x.str() + " outside the map domain");
    orbit.delta = verify_pseudo_orbit(f, orbit);
    auto set = shadowing_set(f, orbit, eps);
    json out = io::to_json(set);
    out["max_jump"] = io::to_json(orbit.delta);
    emit(o, io::dump(out));
    return set.empty() ? kUnsatisfied : kSatisfied;
  }
  if (!model_csv) throw InputError("model given with an interval orbit");
  YModel model = io::ymodel_from_json(input);
  YHomeo g = homeo_for(o, model);
  YOrbit orbit = io::y_orbit_from_csv(csv);
  for (const auto& p : orbit.points) {
    if (p.arc >= model.arcs().size()) throw InputError("orbit refers to a missing arc");
    if (p.t.sign() < 0 || Rational(1) < p.t) throw InputError("orbit parameter outside [0, 1]");
  }
  auto w = shadow_on_model(model, g, orbit, eps);
  json out{{"epsilon", io::to_json(eps)}, {"witness", nullptr}};
  if (w) out["witness"] = io::to_json(*w);
  emit(o, io::dump(out));
  return w ? kSatisfied : kUnsatisfied;
}

int cmd_orbit(const Options& o) {
  require_format(o, {"csv", "json"});
  json input = load_json(o.input);
  Rational delta = rational_arg(o.delta, "delta");
  Rational x0 = rational_arg(o.point, "point");
  if (!is_model(input)) {
    PLHomeo f = io::plhomeo_from_json(input);
    auto orbit = generate_pseudo_orbit(f, delta, Window{0, static_cast<long>(o.steps)}, x0, o.seed);
    if (o.format == "csv") {
      emit(o, io::to_csv(orbit));
    } else {
      json pts = json::array();
      for (const auto& x : orbit.points) pts.push_back(io::to_json(x));
      emit(o, io::dump({{"first_index", orbit.first_index}, {"delta", io::to_json(delta)}, {"points", pts}}));
    }
    return kSatisfied;
  }
  YModel model = io::ymodel_from_json(input);
  YHomeo g = homeo_for(o, model);
  if (o.arc >= model.arcs().size()) throw InputError("--arc out of range");
  auto orbit = generate_y_pseudo_orbit(model, g, delta, o.steps, YPoint{o.arc, x0}, o.seed);
  if (o.format == "csv") {
    emit(o, io::to_csv(orbit));
  } else {
    json pts = json::array();
    for (const auto& p : orbit.points) pts.push_back(io::to_json(p));
    emit(o, io::dump({{"first_index", 0}, {"delta", io::to_json(delta)}, {"points", pts}}));
  }
  return kSatisfied;
}

int cmd_modulus(const Options& o) {
  PLHomeo f = load_map(o.input);
  Rational eps = rational_arg(o.epsilon, "epsilon");
  unsigned trials = o.trials == 0 ? 200 : o.trials;
  ModulusConfig cfg;
  cfg.window = {0, static_cast<long>(o.steps)};
  Rational delta = estimate_shadowing_modulus(f, eps, trials, o.seed, cfg);
  emit(o, io::dump({{"epsilon", io::to_json(eps)},
                    {"trials", trials},
                    {"seed", o.seed},
                    {"steps", o.steps},
                    {"delta", io::to_json(delta)}}));
  return delta.is_zero() ? kUnsatisfied : kSatisfied;
}

int cmd_build_y(const Options& o) {
  require_format(o, {"json", "svg"});
  YModel model = build_y(o.segments);
  std::optional<YHomeo> g;
  if (o.depth >= 0 || !o.homeo_out.empty()) g = homeo_for(o, model);
  if (!o.homeo_out.empty()) io::write_file(o.homeo_out, io::dump(io::to_json(*g)));
  emit(o, o.format == "svg" ? svg::model_diagram(model, g ? &*g : nullptr) : io::dump(io::to_json(model)));
  return kSatisfied;
}

int cmd_certify(const Options& o) {
  Rational eps = o.epsilon.empty() ? Rational(1, 10) : rational_arg(o.epsilon, "epsilon");
  unsigned trials = o.trials == 0 ? 1000 : o.trials;
  YModel model = model_for(o);
  YHomeo g = homeo_for(o, model);
  auto report = check_arc_decomposition(model);
  if (!report.ok) throw InputError("model is not an arc decomposition: " + report.problems.front());

  json config{{"epsilon", io::to_json(eps)},
              {"trials", trials},
              {"seed", o.seed},
              {"steps", o.steps},
              {"modulus_trials", o.modulus_trials},
              {"arcs", model.arcs().size()}};
  CertificateConfig cc;
  cc.trials = o.modulus_trials;
  cc.seed = o.seed;
  GlobalShadowing global;
  try {
    global = global_shadowing_delta(model, g, eps, cc);
  } catch (const CoverFailure& e) {
    json uncovered = json::array();
    for (const auto& p : e.uncovered) uncovered.push_back(io::to_json(p));
    emit(o, io::dump({{"config", config}, {"error", e.what()}, {"uncovered", uncovered}}));
    spdlog::error("{}", e.what());
    return kCertificationFailure;
  }
  spdlog::info("global delta {} over {} arcs", global.delta.str(), global.cover.size());
  auto per_arc = sample_certificates(model, g, global.certificates, trials, o.steps, o.seed);
  auto whole = sample_global(model, g, global, eps, trials, o.steps, o.seed);
  auto sampling = [](const SamplingReport& r) {
    return json{{"orbits", r.orbits}, {"steps", r.steps}, {"failed", r.failed}};
  };
  emit(o, io::dump({{"config", config},
                    {"global", io::to_json(global)},
                    {"sampling", {{"per_arc", sampling(per_arc)}, {"model", sampling(whole)}}}}));
  if (!per_arc.ok() || !whole.ok()) {
    spdlog::error("{} per-arc and {} model orbits were not shadowed", per_arc.failed.size(), whole.failed.size());
    return kUnsatisfied;
  }
  return kSatisfied;
}

int cmd_render(const Options& o) {
  json input = load_json(o.input);
  if (is_model(input)) {
    YModel model = io::ymodel_from_json(input);
    std::optional<YHomeo> g;
    if (!o.homeo.empty() || o.depth >= 0 || o.identity) g = homeo_for(o, model);
    emit(o, svg::model_diagram(model, g ? &*g : nullptr));
  } else {
    emit(o, svg::phase_diagram(io::plhomeo_from_json(input)));
  }
  return kSatisfied;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("continua");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("CONTINUA_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Exact PL interval and arc-model dynamics"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--out", o.out, "Output path (stdout when omitted)");
    sub->add_option("--format", o.format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));
  };
  auto map_input = [&](CLI::App* sub) { sub->add_option("input", o.input, "Map JSON")->required(); };
  auto y_dynamics = [&](CLI::App* sub) {
    sub->add_option("--homeo", o.homeo, "Model homeomorphism JSON (default: g* from --depth)");
    sub->add_option("--edge-depth", o.edge_depth, "Deepest level of the edge gaps added to g*");
    sub->add_flag("--identity", o.identity, "Use the identity on every arc");
  };

  auto* fstar = app.add_subcommand("build-fstar", "Write the depth-N truncation of f*");
  common(fstar);
  fstar->add_option("--depth", o.depth, "N")->required();
  fstar->add_option("--edge-depth", o.edge_depth, "Add outermost gaps down to this level");

  auto* peps = app.add_subcommand("check-peps", "Search an alternating chain witnessing P_eps");
  common(peps);
  map_input(peps);
  peps->add_option("--epsilon", o.epsilon, "eps as num/den")->required();

  auto* conj = app.add_subcommand("conjugate", "Build the inductive conjugacy to f*");
  common(conj);
  map_input(conj);
  conj->add_option("--depth", o.depth, "Matching rounds")->required();

  auto* expl = app.add_subcommand("explode", "Replace a fixed point by a wandering interval");
  common(expl);
  map_input(expl);
  expl->add_option("--point", o.point, "Fixed point p")->required();
  expl->add_option("--delta", o.delta, "Half width of the window")->required();
  expl->add_option("--orientation", o.orientation, "R or L");

  auto* shadow = app.add_subcommand("shadow", "Exact shadowing set or model witness for an orbit");
  common(shadow);
  shadow->add_option("input", o.input, "Map or model JSON")->required();
  shadow->add_option("orbit", o.orbit, "Orbit CSV")->required();
  shadow->add_option("--epsilon", o.epsilon, "eps as num/den")->required();
  shadow->add_option("--depth", o.depth, "g* depth for model input");
  y_dynamics(shadow);

  auto* orb = app.add_subcommand("orbit", "Seeded delta-pseudo-orbit of a map or a model");
  common(orb);
  orb->add_option("input", o.input, "Map or model JSON")->required();
  orb->add_option("--delta", o.delta, "Jump bound")->required();
  orb->add_option("--point", o.point, "Start point (parameter t on --arc for a model)")->required();
  orb->add_option("--arc", o.arc, "Start arc for a model");
  orb->add_option("--steps", o.steps, "Orbit length");
  orb->add_option("--depth", o.depth, "g* depth for model input");
  y_dynamics(orb);

  auto* mod = app.add_subcommand("modulus", "Empirical shadowing modulus");
  common(mod);
  map_input(mod);
  mod->add_option("--epsilon", o.epsilon, "eps as num/den")->required();
  mod->add_option("--trials", o.trials, "Pseudo-orbits per grid level");
  mod->add_option("--steps", o.steps, "Orbit length");

  auto* by = app.add_subcommand("build-y", "Write the arc model of Y");
  common(by);
  by->add_option("--segments", o.segments, "Number M of vertical segments");
  by->add_option("--depth", o.depth, "Also build g* of this depth");
  by->add_option("--homeo-out", o.homeo_out, "Write g* JSON here");
  y_dynamics(by);

  auto* cert = app.add_subcommand("certify", "Certificates, global delta and sampled validation");
  common(cert);
  cert->add_option("--segments", o.segments, "Number M of vertical segments");
  cert->add_option("--model", o.model, "Model JSON instead of build-y");
  cert->add_option("--depth", o.depth, "g* depth");
  cert->add_option("--epsilon", o.epsilon, "eps as num/den (default 1/10)");
  cert->add_option("--trials", o.trials, "Sampled orbits per check (default 1000)");
  cert->add_option("--steps", o.steps, "Orbit length");
  cert->add_option("--modulus-trials", o.modulus_trials, "Orbits per level in modulus estimates");
  y_dynamics(cert);

  auto* render = app.add_subcommand("render", "SVG of a map or a model");
  common(render);
  render->add_option("input", o.input, "Map or model JSON")->required();
  render->add_option("--depth", o.depth, "Color the model by g* of this depth");
  y_dynamics(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*fstar) return cmd_build_fstar(o);
    if (*peps) return cmd_check_peps(o);
    if (*conj) return cmd_conjugate(o);
    if (*expl) return cmd_explode(o);
    if (*shadow) return cmd_shadow(o);
    if (*orb) return cmd_orbit(o);
    if (*mod) return cmd_modulus(o);
    if (*by) return cmd_build_y(o);
    if (*cert) return cmd_certify(o);
    if (*render) return cmd_render(o);
  } catch (const NoInwardStub& e) {
    spdlog::error("{}", e.what());
    return kCertificationFailure;
  } catch (const CertificationFailure& e) {
    spdlog::error("{}", e.what());
    return kCertificationFailure;
  } catch (const io::ParseError& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  } catch (const InputError& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  } catch (const MalformedModel& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  } catch (const std::domain_error& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  } catch (const InsufficientIntervals& e) {
    spdlog::error("{}", e.what());
    return kUnsatisfied;
  } catch (const NotInFixedSet& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    spdlog::critical("{}", e.what());
    return kInternal;
  }
  return kInternal;
}
