#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qnls/checkpoint.hpp"
#include "qnls/cli.hpp"
#include "qnls/dynamics.hpp"
#include "qnls/errors.hpp"
#include "qnls/functionals.hpp"
#include "qnls/groundstate.hpp"
#include "qnls/oracle.hpp"
#include "qnls/potential_well.hpp"
#include "qnls/serialize.hpp"

namespace qnls::cli {

namespace fs = std::filesystem;

namespace {

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
  return out.str();
}

struct Context {
  const RunConfig& cfg;
  std::string command;
  fs::path out;
  std::uint64_t seed = 1;
  int threads = 1;
  bool exploratory = false;
  Json results = Json::object();
  std::vector<std::string> checkpoints;
  std::string status = "ok";
};

std::vector<double> broadcast(std::vector<double> v, int dim, const std::string& what) {
  if (static_cast<int>(v.size()) == dim) return v;
  if (v.size() == 1) return std::vector<double>(dim, v[0]);
  throw ValidationError("config: " + what + " needs 1 or " + std::to_string(dim) + " entries");
}

WaveParams params_from(const Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const int dim = static_cast<int>(c.integer("params", "dim", 1));
  if (dim < 1 || dim > 5) return WaveParams::make(dim, 1.0, 1.0, std::vector<double>(std::max(dim, 0), 0.0));
  std::vector<double> vel = c.numbers("params", "c", {0.0});
  if (vel.size() == 1 && dim > 1) {
    const double s = vel[0];
    vel.assign(dim, 0.0);
    vel[0] = s;
  }
  if (static_cast<int>(vel.size()) != dim) throw ValidationError("config: params.c needs 1 or d entries");
  return WaveParams::make(dim, c.number("params", "kappa", 1.0), c.number("params", "omega", 1.0), vel,
                          ctx.exploratory);
}

SolverOptions solver_from(const Context& ctx, int dim, const std::string& grid_section = "grid") {
  const RunConfig& c = ctx.cfg;
  SolverOptions o;
  std::vector<double> pts = broadcast(c.numbers(grid_section, "points", {64.0}), dim, grid_section + ".points");
  for (double p : pts) o.points.push_back(static_cast<int>(p));
  o.box = broadcast(c.numbers(grid_section, "box", {20.0}), dim, grid_section + ".box");
  o.seeds = static_cast<int>(c.integer("solver", "seeds", o.seeds));
  o.max_iters = static_cast<int>(c.integer("solver", "max_iters", o.max_iters));
  o.min_iters = static_cast<int>(c.integer("solver", "min_iters", o.min_iters));
  o.tol = c.number("solver", "tol", o.tol);
  o.residual_tol = c.number("solver", "residual_tol", o.residual_tol);
  o.residual_target = c.number("solver", "residual_target", o.residual_target);
  o.localization = c.number("solver", "localization", o.localization);
  o.quantize_box = c.flag("solver", "quantize_box", o.quantize_box);
  o.seed = ctx.seed;
  o.threads = ctx.threads;
  o.exploratory = ctx.exploratory;
  return o;
}

GridPtr grid_from(const Context& ctx, int dim, const std::string& section = "grid") {
  const RunConfig& c = ctx.cfg;
  std::vector<int> pts;
  for (double p : broadcast(c.numbers(section, "points", {64.0}), dim, section + ".points"))
    pts.push_back(static_cast<int>(p));
  return make_grid(dim, pts, broadcast(c.numbers(section, "box", {20.0}), dim, section + ".box"));
}

void save_checkpoint(Context& ctx, const FieldPair& p, const WaveParams& params, const std::string& name) {
  const fs::path path = ctx.out / name;
  save_pair(p, CheckpointMeta{params.kappa, params.omega, params.c}, path);
  ctx.checkpoints.push_back(name);
}

GroundStateResult solve(Context& ctx, const WaveParams& params, const SolverOptions& opts, const std::string& name) {
  GroundStateResult r = minimize(params, opts);
  ctx.results[name] = r;
  save_checkpoint(ctx, r.profile, params, name + ".qnlsf");
  return r;
}

void require_converged(Context& ctx, bool converged, const std::string& what) {
  if (!converged) {
    ctx.status = "not_converged";
    throw ConvergenceError(what + " did not converge");
  }
}

double gaussian(const Point& x, double width) {
  double r2 = 0.0;
  for (double y : x) r2 += y * y;
  return std::exp(-0.5 * r2 / (width * width));
}

// Plain initial data described by [section].initial.
FieldPair initial_pair(Context& ctx, const std::string& section, const WaveParams& params) {
  const RunConfig& c = ctx.cfg;
  const std::string kind = c.text(section, "initial", "gaussian");
  const int dim = params.dim();
  if (kind == "gaussian") {
    const GridPtr g = grid_from(ctx, dim);
    const double a = c.number(section, "amplitude_first", 1.0);
    const double b = c.number(section, "amplitude_second", 0.5);
    const double wa = c.number(section, "width_first", 1.0);
    const double wb = c.number(section, "width_second", wa);
    if (!(wa > 0.0) || !(wb > 0.0)) throw ValidationError("config: Gaussian widths must be positive");
    return FieldPair(ComplexField::sample(g, [&](const Point& x) { return cplx(a * gaussian(x, wa)); }),
                     ComplexField::sample(g, [&](const Point& x) { return cplx(b * gaussian(x, wb)); }),
                     Gauge::plain);
  }
  if (kind == "exact") {
    if (dim != 1) throw ValidationError("config: the exact pair lives in d = 1");
    return oracle::exact_pair(c.number(section, "b", 0.5), grid_from(ctx, dim), Gauge::plain);
  }
  if (kind == "groundstate") {
    const GroundStateResult r = solve(ctx, params, solver_from(ctx, dim), "groundstate");
    require_converged(ctx, r.converged, "ground state");
    return restore_phases(r.profile, params).scaled(c.number(section, "scale", 1.0));
  }
  if (kind == "checkpoint") {
    const auto path = c.get(section, "checkpoint");
    if (!path) throw ValidationError("config: " + section + ".checkpoint is required");
    Checkpoint cp = load_pair(*path);
    if (cp.pair.gauge == Gauge::plain) return cp.pair;
    const WaveParams stored = WaveParams::make(cp.pair.grid().dim(), cp.meta.kappa, cp.meta.omega, cp.meta.c, true);
    return restore_phases(cp.pair, stored);
  }
  throw ValidationError("config: unknown initial data '" + kind + "'");
}

void cmd_groundstate(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const GroundStateResult r = solve(ctx, params, solver_from(ctx, params.dim()), "groundstate");
  require_converged(ctx, r.converged, "ground state");
}

void cmd_mu_scan(Context& ctx) {
  const WaveParams base = params_from(ctx);
  const std::vector<double> omegas = ctx.cfg.numbers("scan", "omegas", {base.omega});
  std::vector<WaveParams> list;
  for (double w : omegas) list.push_back(WaveParams::make(base.dim(), base.kappa, w, base.c, ctx.exploratory));
  const SolverOptions opts = solver_from(ctx, base.dim());
  Json rows = Json::array();
  bool all = true;
  for (const WaveParams& p : list) {
    const GroundStateResult r = minimize(p, opts);
    rows.push_back(Json{{"omega", p.omega}, {"mu", r.mu}, {"converged", r.converged}, {"box", r.box}});
    all = all && r.converged;
  }
  ctx.results["scan"] = rows;
  require_converged(ctx, all, "mu scan");
}

void cmd_scaling(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const ScalingReport r = scaling_check(params, ctx.cfg.number("scaling", "lambda", 2.0), solver_from(ctx, params.dim()));
  ctx.results["scaling"] = r;
  require_converged(ctx, r.converged, "scaling check");
}

void cmd_direction(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const double speed = ctx.cfg.number("direction", "speed", params.speed());
  const DirectionReport r =
      direction_check(params.dim(), params.kappa, params.omega, speed, solver_from(ctx, params.dim()));
  ctx.results["direction"] = r;
  require_converged(ctx, r.converged, "direction check");
}

void cmd_boost(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const BoostReport r = resonance_boost_check(params.kappa, params.omega, params.c, solver_from(ctx, params.dim()));
  ctx.results["boost"] = r;
  require_converged(ctx, r.converged, "boost check");
}

void cmd_evolve(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const FieldPair p0 = initial_pair(ctx, "evolve", params);
  const RunConfig& c = ctx.cfg;
  EvolveOptions o;
  o.T = c.number("evolve", "T", 1.0);
  o.dt = c.number("evolve", "dt", 1e-3);
  o.cadence = c.integer("evolve", "cadence", 100);
  o.nonlinear = c.flag("evolve", "nonlinear", true);
  o.monitor = c.flag("evolve", "monitor", true);
  const std::vector<double> snaps = c.numbers("evolve", "snapshots", {-1.0});
  int taken = 0;
  o.observer = [&](double t, const FieldPair& s) {
    for (double ts : snaps)
      if (ts >= 0.0 && std::abs(t - ts) <= 1e-9 * std::max(1.0, ts))
        save_checkpoint(ctx, s, params, "snapshot_" + std::to_string(taken++) + ".qnlsf");
    return std::string();
  };
  const EvolutionTrace tr = evolve(p0, params.kappa, o);
  ctx.results["evolution"] = tr;
  write_trace_csv(tr, ctx.out / "trace.csv");
  save_checkpoint(ctx, tr.final_state, params, "final.qnlsf");
}

void cmd_twave(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const GroundStateResult r = solve(ctx, params, solver_from(ctx, params.dim()), "groundstate");
  require_converged(ctx, r.converged, "ground state");
  const RunConfig& c = ctx.cfg;
  const WaveTrackReport w =
      traveling_wave_test(restore_phases(r.profile, params), params, c.number("twave", "T", 5.0),
                          c.number("twave", "dt", 1e-3), static_cast<int>(c.integer("twave", "samples", 10)));
  ctx.results["twave"] = w;
}

void cmd_galilean(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const FieldPair p0 = initial_pair(ctx, "galilean", params);
  const RunConfig& c = ctx.cfg;
  ctx.results["galilean"] =
      galilean_check(p0, params.kappa, params.c, c.number("galilean", "T", 1.0), c.number("galilean", "dt", 1e-3));
}

struct Reference {
  MuReference mu;
  FieldPair profile;  // plain gauge
};

Reference reference_for(Context& ctx, const WaveParams& params) {
  const GroundStateResult r = solve(ctx, params, solver_from(ctx, params.dim()), "groundstate");
  require_converged(ctx, r.converged, "reference ground state");
  return {MuReference::from_result(r, "groundstate"), restore_phases(r.profile, params)};
}

// The reference ground state scaled by [section].scale, or other initial data.
FieldPair well_data(Context& ctx, const std::string& section, const WaveParams& params, const Reference& ref) {
  const RunConfig& c = ctx.cfg;
  if (c.text(section, "initial", "groundstate") != "groundstate") return initial_pair(ctx, section, params);
  return ref.profile.scaled(c.number(section, "scale", 1.0));
}

void cmd_classify(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const Reference ref = reference_for(ctx, params);
  ctx.results["verdict"] = classify(well_data(ctx, "classify", params, ref), params, ref.mu);
}

void cmd_invariance(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const Reference ref = reference_for(ctx, params);
  const FieldPair p = well_data(ctx, "invariance", params, ref);
  const RunConfig& c = ctx.cfg;
  ctx.results["invariance"] =
      invariance_experiment(p, params, ref.mu, c.number("invariance", "T", 5.0), c.number("invariance", "dt", 1e-3),
                            c.integer("invariance", "cadence", 100));
}

Threshold threshold_for(Context& ctx, int dim, double kappa) {
  const WaveParams unit = unit_threshold_params(dim, kappa, 0, ctx.exploratory || (kappa > 0.5 && dim == 4));
  SolverOptions o = solver_from(ctx, dim, ctx.cfg.has("unit", "points") ? "unit" : "grid");
  o.exploratory = o.exploratory || unit.kind == WaveCase::exploratory;
  const GroundStateResult r = solve(ctx, unit, o, "unit");
  require_converged(ctx, r.converged, "unit-velocity ground state");
  return threshold_constants(kappa, MuReference::from_result(r, "unit-velocity solve"));
}

void cmd_thresholds(Context& ctx) {
  const WaveParams params = params_from(ctx);
  ctx.results["threshold"] = threshold_for(ctx, params.dim(), params.kappa);
}

void cmd_oscillate(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const Threshold th = threshold_for(ctx, params.dim(), params.kappa);
  const FieldPair p0 = initial_pair(ctx, "oscillate", params);
  const RunConfig& c = ctx.cfg;
  OscillationOptions o;
  o.direction.assign(params.dim(), 0.0);
  o.direction[static_cast<std::size_t>(c.integer("oscillate", "axis", 0))] = 1.0;
  o.start = c.number("oscillate", "start", 0.0);
  o.ratio = c.number("oscillate", "ratio", o.ratio);
  o.max_points = static_cast<int>(c.integer("oscillate", "max_points", o.max_points));
  o.evolve = c.flag("oscillate", "evolve", true);
  o.T = c.number("oscillate", "T", o.T);
  o.dt = c.number("oscillate", "dt", o.dt);
  o.cadence = c.integer("oscillate", "cadence", o.cadence);
  const OscillationReport r = oscillation_experiment(p0, th, o);
  ctx.results["oscillation"] = r;
  if (r.evolution) write_trace_csv(*r.evolution, ctx.out / "trace.csv");
}

void cmd_charge(Context& ctx) {
  const WaveParams params = params_from(ctx);
  const WaveParams unit = WaveParams::make(params.dim(), params.kappa, 1.0, std::vector<double>(params.dim(), 0.0));
  const SolverOptions opts = solver_from(ctx, params.dim());
  const GroundStateResult r = solve(ctx, unit, opts, "groundstate");
  require_converged(ctx, r.converged, "unit ground state");
  const RunConfig& c = ctx.cfg;
  ctx.results["charge_threshold"] = charge_threshold_check(r, opts, c.number("charge", "omega_second", 2.0),
                                                           c.number("charge", "omega_large", 10.0));
  const long pairs = c.integer("charge", "gn_pairs", 0);
  if (pairs > 0) ctx.results["gn"] = gn_experiment(r, static_cast<int>(pairs), ctx.seed);
}

void cmd_check(Context& ctx) {
  const oracle::SuiteReport s = oracle::integrity_suite(ctx.seed + 10);
  Json fd = Json::array();
  for (std::size_t i = 0; i < s.fd.size(); ++i) fd.push_back(Json{{"case", s.fd_cases[i].name}, {"report", s.fd[i]}});
  Json brute = Json::array();
  for (std::size_t i = 0; i < s.brute.size(); ++i)
    brute.push_back(Json{{"case", s.brute_cases[i].name}, {"report", s.brute[i]}});
  ctx.results["exact"] = {{"l", s.exact.L}, {"n", s.exact.N}, {"s", s.exact.S},
                          {"q", s.exact.Q}, {"e", s.exact.E}, {"k", s.exact.K}};
  ctx.results["fd"] = fd;
  ctx.results["fd_worst"] = s.fd_worst;
  ctx.results["brute"] = brute;
  ctx.results["brute_agree"] = s.brute_agree;
  const bool pass = s.fd_worst < 1e-6 && s.brute_agree;
  ctx.results["pass"] = pass;
  if (!pass) {
    ctx.status = "failed";
    throw NumericalError("oracle suite failed");
  }
}

void dispatch(Context& ctx) {
  const std::string& c = ctx.command;
  if (c == "groundstate") return cmd_groundstate(ctx);
  if (c == "mu-scan") return cmd_mu_scan(ctx);
  if (c == "scaling-check") return cmd_scaling(ctx);
  if (c == "direction-check") return cmd_direction(ctx);
  if (c == "boost-check") return cmd_boost(ctx);
  if (c == "evolve") return cmd_evolve(ctx);
  if (c == "twave-test") return cmd_twave(ctx);
  if (c == "galilean-check") return cmd_galilean(ctx);
  if (c == "classify") return cmd_classify(ctx);
  if (c == "invariance") return cmd_invariance(ctx);
  if (c == "oscillate") return cmd_oscillate(ctx);
  if (c == "thresholds") return cmd_thresholds(ctx);
  if (c == "charge-threshold") return cmd_charge(ctx);
  if (c == "check") return cmd_check(ctx);
  throw ValidationError("unknown experiment '" + c + "'");
}

void write_summary(const Context& ctx, const std::string& started, const std::string& message) {
  Json s{{"experiment", ctx.command},
         {"status", ctx.status},
         {"seed", ctx.seed},
         {"threads", ctx.threads},
         {"exploratory", ctx.exploratory},
         {"config", ctx.cfg.echo()},
         {"timestamp", started},
         {"checkpoints", ctx.checkpoints},
         {"results", ctx.results}};
  if (!message.empty()) s["message"] = message;
  write_json(s, ctx.out / "summary.json");
}

}  // namespace

int run(const RunConfig& config, const Flags& flags) {
  if (flags.command == "report") {
    std::cout << report_bundle(flags.out);
    return Exit::ok;
  }
  Context ctx{config, flags.command, flags.out, 1, 1, false, Json::object(), {}, "ok"};
  const std::string started = timestamp();
  int code = Exit::ok;
  std::string message;
  try {
    const std::string named = config.text("run", "experiment", flags.command);
    if (named != flags.command)
      throw ValidationError("config names experiment '" + named + "' but the command is '" + flags.command + "'");
    ctx.seed = flags.seed ? *flags.seed : static_cast<std::uint64_t>(config.integer("run", "seed", 1));
    ctx.threads = flags.threads ? *flags.threads : static_cast<int>(config.integer("run", "threads", 1));
    if (ctx.threads < 1) throw ValidationError("threads must be >= 1");
    ctx.exploratory = flags.exploratory || config.flag("run", "exploratory", false);
    if (ctx.command != "check") params_from(ctx);
    fs::create_directories(ctx.out);
    std::ofstream(ctx.out / "config.ini") << config.echo();
    dispatch(ctx);
  } catch (const ValidationError& e) {
    ctx.status = "invalid";
    message = e.what();
    code = Exit::validation;
  } catch (const FormatError& e) {
    ctx.status = "invalid";
    message = e.what();
    code = Exit::validation;
  } catch (const ConvergenceError& e) {
    ctx.status = "not_converged";
    message = e.what();
    code = Exit::nonconvergence;
  } catch (const std::exception& e) {
    if (ctx.status == "ok") ctx.status = "numerical_error";
    message = e.what();
    code = Exit::numerical;
  }
  if (!message.empty()) std::cerr << "qnls " << ctx.command << ": " << message << '\n';
  try {
    if (code != Exit::validation || fs::exists(ctx.out)) write_summary(ctx, started, message);
  } catch (const std::exception& e) {
    std::cerr << "qnls: could not write summary: " << e.what() << '\n';
    if (code == Exit::ok) code = Exit::numerical;
  }
  return code;
}

std::string report_bundle(const fs::path& dir) {
  Json runs = Json::array();
  if (fs::is_directory(dir)) {
    std::vector<fs::path> subdirs;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_directory()) subdirs.push_back(e.path());
    std::sort(subdirs.begin(), subdirs.end());
    for (const fs::path& d : subdirs) {
      const fs::path file = d / "summary.json";
      if (!fs::exists(file)) continue;
      Json s;
      try {
        std::ifstream in(file);
        s = Json::parse(in);
        if (!s.is_object() || !s.contains("experiment") || !s.contains("timestamp"))
          throw std::runtime_error("missing experiment or timestamp");
      } catch (const std::exception& e) {
        std::cerr << "report: skipping " << d.string() << ": " << e.what() << '\n';
        continue;
      }
      Json entry{{"run", d.filename().string()},
                 {"experiment", s["experiment"]},
                 {"timestamp", s["timestamp"]},
                 {"status", s.value("status", "unknown")},
                 {"config", s.value("config", "")}};
      bool complete = true;
      for (const auto& cp : s.value("checkpoints", Json::array()))
        if (!fs::exists(d / cp.get<std::string>())) complete = false;
      entry["complete"] = complete;
      const Json& r = s.value("results", Json::object());
      Json mu = Json::object();
      Json verdicts = Json::object();
      for (auto it = r.begin(); it != r.end(); ++it) {
        if (!it.value().is_object()) continue;
        if (it.value().contains("mu")) mu[it.key()] = it.value()["mu"];
        for (const char* k : {"membership", "reason", "converged", "pass"})
          if (it.value().contains(k)) verdicts[it.key() + "." + k] = it.value()[k];
        if (it.value().contains("params")) entry["params"] = it.value()["params"];
      }
      entry["mu"] = mu;
      entry["verdicts"] = verdicts;
      runs.push_back(entry);
    }
  }
  std::stable_sort(runs.begin(), runs.end(), [](const Json& a, const Json& b) {
    return a["timestamp"].get<std::string>() < b["timestamp"].get<std::string>();
  });
  const Json index{{"runs", runs}};
  const std::string text = index.dump(2) + "\n";
  if (fs::is_directory(dir)) std::ofstream(dir / "index.json") << text;
  return text;
}

}  // namespace qnls::cli
