// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion numbers as arguments to run a subset.
//
// Heavy criteria (9-11) take minutes each on one core.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnls/cli.hpp"
#include "qnls/dynamics.hpp"
#include "qnls/functionals.hpp"
#include "qnls/groundstate.hpp"
#include "qnls/oracle.hpp"
#include "qnls/potential_well.hpp"

using namespace qnls;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_residual(const GroundStateResult& r) { return std::max(r.residual_first, r.residual_second); }

double radius2(const Point& x, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += x[k] * x[k];
  return s;
}

// d = 4, kappa = 1/4, c = 0 ground state at omega = 1, shared by 10 and 11.
const GroundStateResult& unit_d4() {
  static const GroundStateResult r = [] {
    SolverOptions o;
    o.points.assign(4, 32);
    o.box.assign(4, 10.0);
    o.seeds = 1;
    return minimize(WaveParams::make(4, 0.25, 1.0, std::vector<double>(4, 0.0)), o);
  }();
  return r;
}

double q_star() { return charge(unit_d4().profile); }

Outcome exact_recovery() {
  const auto ex = oracle::exact_solution(0.5);
  SolverOptions o;
  o.points = {512};
  o.box = {80.0};
  o.seeds = 5;
  const auto r = minimize(oracle::exact_params(0.5), o);
  const auto ref = oracle::exact_pair(0.5, r.profile.grid_ptr());
  const double dist = oracle::relative_distance(oracle::align_pair(r.profile, ref), ref);
  const bool pass = r.converged && std::abs(r.mu - ex.S) <= 0.002 && dist < 1e-3;
  return {pass, fmt("mu=%.9f (quadrature %.9f) profile error %.2e", r.mu, ex.S, dist)};
}

Outcome stationary_residual() {
  SolverOptions o;
  o.points = {512};
  o.box = {80.0};
  o.seeds = 5;
  const auto params = oracle::exact_params(0.5);
  const auto r = minimize(params, o);
  const auto [r1, r2] = el_residual(r.profile, params);
  const auto [d1, d2] = pohozaev_defects(r.profile, params);
  const auto f = action(r.profile, params);
  const double T = dirichlet(r.profile.first) / 2 + params.kappa * dirichlet(r.profile.second) / 2;
  const double p1 = std::abs(d1) / (2 * f.L_tilde);
  const double p2 = std::abs(d2) / (2 * T);
  const bool pass = std::max(r1, r2) < 1e-6 && p1 < 1e-5 && p2 < 1e-5;
  return {pass, fmt("el_residual (%.2e, %.2e), Pohozaev relative (%.2e, %.2e)", r1, r2, p1, p2)};
}

Outcome scaling_law() {
  const double c = 2 * 2 * kPi / 40.0;
  const auto params = WaveParams::make(1, 1.0, 1.0, {c});
  SolverOptions o;
  o.points = {512};
  o.box = {40.0};
  o.seeds = 2;
  const auto r = scaling_check(params, 2.0, o);
  return {r.converged && r.mismatch < 0.02,
          fmt("mu(1,c)=%.6f mu(4,2c)=%.6f ratio %.4f against %.0f (%.2e)", r.mu_base, r.mu_scaled, r.ratio, r.expected,
              r.mismatch)};
}

Outcome resonance_boost() {
  SolverOptions o;
  o.points = {512};
  o.box = {16 * kPi};
  o.seeds = 2;
  const auto r = resonance_boost_check(0.5, 1.0, {1.0}, o);
  return {r.converged && r.difference < 0.01,
          fmt("mu(1+1/4, 1)=%.8f mu(1, 0)=%.8f difference %.2e", r.mu_boosted, r.mu_rest, r.difference)};
}

Outcome conservation() {
  auto g = make_grid(1, {256}, {40.0});
  auto u = ComplexField::sample(
      g, [](const Point& x) { return 0.5 * std::exp(-x[0] * x[0] / 2) * std::polar(1.0, 0.3 * std::sin(x[0])); });
  auto v = ComplexField::sample(g, [](const Point& x) { return cplx(0.35 * std::exp(-(x[0] - 1) * (x[0] - 1) / 3)); });
  EvolveOptions o;
  o.T = 1.0;
  o.dt = 1e-3;
  o.cadence = 10;
  const auto tr = evolve(FieldPair(u, v, Gauge::plain), 2.0, o);
  double dq = 0.0, de = 0.0, dp = 0.0;
  for (std::size_t i = 0; i < tr.time.size(); ++i) {
    dq = std::max(dq, std::abs(tr.Q[i] - tr.Q[0]) / std::abs(tr.Q[0]));
    de = std::max(de, std::abs(tr.E[i] - tr.E[0]) / std::abs(tr.E[0]));
    dp = std::max(dp, std::abs(tr.P[i][0] - tr.P[0][0]) / std::abs(tr.P[0][0]));
  }
  const bool pass = tr.reason == Termination::completed && dq < 1e-10 && de < 1e-6 && dp < 1e-8;
  return {pass, fmt("relative drift Q %.2e, E %.2e, P %.2e", dq, de, dp)};
}

Outcome traveling_waves() {
  auto g = make_grid(1, {512}, {80.0});
  const auto standing =
      traveling_wave_test(oracle::exact_pair(0.5, g, Gauge::plain), oracle::exact_params(0.5), 5.0, 1e-3, 10);

  const auto params = WaveParams::make(1, 1.0, 1.0, {2 * 2 * kPi * 2 / 40.0});
  SolverOptions o;
  o.points = {256};
  o.box = {40.0};
  const auto gs = minimize(params, o);
  const auto moving = traveling_wave_test(restore_phases(gs.profile, params), params, 4.0, 1e-3, 10);
  const bool pass = standing.max_error < 1e-3 && standing.T >= 5.0 - 1e-9 && gs.converged &&
                    moving.max_error < 1e-2 && moving.T > 3.9;
  return {pass, fmt("standing %.2e over T=%.2f; moving (c=%.4f) %.2e over T=%.3f", standing.max_error, standing.T,
                    params.c[0], moving.max_error, moving.T)};
}

Outcome galilean() {
  const double L = 40.0;
  auto g = make_grid(1, {256}, {L});
  auto u = ComplexField::sample(
      g, [](const Point& x) { return std::exp(-x[0] * x[0] / 2) * std::polar(1.0, 0.3 * std::sin(x[0])); });
  auto v = ComplexField::sample(g, [](const Point& x) { return cplx(0.7 * std::exp(-(x[0] - 1) * (x[0] - 1) / 3)); });
  const double c = 2 * kPi * 4 / L;
  const double T = 4 * g->spacing(0) / c;
  const auto r = galilean_check(FieldPair(u, v, Gauge::plain), 0.5, {c}, T, T / 1000);
  return {r.discrepancy < 1e-6, fmt("discrepancy %.2e at c=%.4f, T=%.4f", r.discrepancy, c, T)};
}

Outcome resonant_nonexistence() {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "qnls_acceptance_resonant";
  fs::remove_all(out);
  const auto cfg = cli::RunConfig::parse(
      "[run]\nexperiment=groundstate\nexploratory=true\n[params]\ndim=1\nkappa=0.5\nomega=0.25\nc=1\n"
      "[grid]\npoints=1024\nbox=256\n[solver]\nseeds=5\nmin_iters=200\n");
  cli::Flags flags;
  flags.command = "groundstate";
  flags.out = out;
  const int code = cli::run(cfg, flags);
  std::ifstream in(out / "summary.json");
  const auto s = nlohmann::json::parse(in);
  int monotone = 0, decreasing = 0;
  const auto& seeds = s["results"]["groundstate"]["seeds"];
  for (const auto& seed : seeds) {
    const auto tail = seed["quadratic_tail"].get<std::vector<double>>();
    if (tail.size() < 101) continue;
    bool ok = true;
    for (std::size_t i = 1; i < tail.size(); ++i) ok = ok && tail[i] <= tail[i - 1] * (1 + 1e-12);
    monotone += ok;
    decreasing += tail.back() < tail.front();
  }
  return {code == cli::Exit::nonconvergence && monotone >= 4,
          fmt("exit %d, L~ non-increasing over the last 100 iterations in %d of %zu seeds (%d strictly lower)", code,
              monotone, seeds.size(), decreasing)};
}

Outcome zero_mass_existence() {
  auto solve = [](int dim, double kappa, double omega, int n, double box) {
    std::vector<double> c(dim, 0.0);
    c[0] = 1.0;
    SolverOptions o;
    o.points.assign(dim, n);
    o.box.assign(dim, box);
    o.seeds = 1;
    return minimize(WaveParams::make(dim, kappa, omega, c), o);
  };
  const auto b1 = solve(3, 0.25, 0.5, 64, 32 * kPi);
  const auto b2 = solve(3, 0.25, 0.5, 128, 64 * kPi);
  const auto c1 = solve(5, 2.0, 0.25, 16, 16 * kPi / 3);
  const auto c2 = solve(5, 2.0, 0.25, 24, 8 * kPi);
  auto ok = [](const GroundStateResult& r) { return r.converged && max_residual(r) < 1e-5 && r.mu > 0.0; };
  const double db = std::abs(b2.mu - b1.mu) / b2.mu;
  const double dc = std::abs(c2.mu - c1.mu) / c2.mu;
  const bool pass = ok(b1) && ok(b2) && ok(c1) && ok(c2) && db < 0.05 && dc < 0.05;
  return {pass, fmt("B: mu %.4f -> %.4f (%.1f%%, residual %.1e); C: mu %.3f (box %.2f) -> %.3f (box %.2f) (%.1f%%, "
                    "residual %.1e)",
                    b1.mu, b2.mu, 100 * db, std::max(max_residual(b1), max_residual(b2)), c1.mu, c1.box[0], c2.mu,
                    c2.box[0], 100 * dc, std::max(max_residual(c1), max_residual(c2)))};
}

Outcome dichotomy_d4() {
  const double kappa = 0.25, L = 8.0;
  const double amp = std::sqrt(5.2), bamp = 3.6, width = 1.22;
  auto data = [&](const GridPtr& g) {
    auto u = ComplexField::sample(g, [&](const Point& x) { return cplx(amp * std::exp(-radius2(x, 4) / 2)); });
    auto v = ComplexField::sample(
        g, [&](const Point& x) { return cplx(bamp * std::exp(-radius2(x, 4) / (2 * width * width))); });
    return FieldPair(u, v, Gauge::plain);
  };

  const auto unit_params = unit_threshold_params(4, kappa);
  SolverOptions uo;
  uo.points.assign(4, 32);
  uo.box.assign(4, 16 * kPi);
  uo.seeds = 1;
  const auto unit = minimize(unit_params, uo);
  const auto threshold = threshold_constants(kappa, MuReference::from_result(unit, "unit"));

  const auto blow_data = data(make_grid(4, {32, 32, 32, 32}, {L, L, L, L}));
  const double Q = charge(blow_data), E = energy(blow_data, kappa), mass = norm_squared(blow_data.first);
  const double qs = q_star();
  EvolveOptions eo;
  eo.T = 2.0;
  eo.dt = 1e-3;
  eo.cadence = 25;
  const auto blow = evolve(blow_data, kappa, eo);
  const double t_stop = blow.time.back();

  OscillationOptions oo;
  oo.direction = {1.0, 0.0, 0.0, 0.0};
  oo.T = 2.0;
  oo.dt = 1e-3;
  oo.cadence = 50;
  const auto osc = oscillation_experiment(data(make_grid(4, {128, 24, 24, 24}, {L, L, L, L})), threshold, oo);

  const bool premise = Q > qs && E < 0.0 && mass < threshold.value;
  const bool blew = blow.reason == Termination::blowup_indicated && t_stop < 2.0;
  bool global = false;
  std::string boosted = "no A+ point on the schedule";
  if (osc.first_plus && osc.evolution) {
    const auto& tr = *osc.evolution;
    global = tr.reason == Termination::completed && tr.time.back() >= 2.0 - 1e-9 &&
             osc.max_gradient < osc.bound.gradient_bound && osc.max_shifted < osc.bound.shifted_bound;
    boosted = fmt("first A+ at |c|=%.3f, evolved to t=%.2f (%s), max gradient %.1f < %.1f, shifted %.1f < %.1f",
                  osc.schedule[*osc.first_plus].speed, tr.time.back(), to_string(tr.reason).c_str(), osc.max_gradient,
                  osc.bound.gradient_bound, osc.max_shifted, osc.bound.shifted_bound);
  }
  const bool pass = premise && blew && global && osc.n_monotone;
  return {pass, fmt("Q=%.2f > Q*=%.2f, E=%.3f, |u0|^2=%.2f < A0=%.2f; unboosted %s at t=%.3f; %s; N monotone %d",
                    Q, qs, E, mass, threshold.value, to_string(blow.reason).c_str(), t_stop, boosted.c_str(),
                    int(osc.n_monotone))};
}

Outcome sharp_gn() {
  const auto& unit = unit_d4();
  const auto r = gn_experiment(unit, 100, 2024);
  const bool pass = unit.converged && r.random.size() == 100 && r.max_random <= 1.02 && r.minimizer >= 0.98;
  return {pass, fmt("Q*=%.4f, minimizer %.5f, max over 100 random pairs %.5f", r.q_star, r.minimizer, r.max_random)};
}

Outcome oracle_integrity() {
  const auto s = oracle::integrity_suite(11);
  return {s.fd_worst < 1e-6 && s.brute_agree,
          fmt("worst finite-difference error %.2e over %zu cases, brute agreement %s on %zu cases", s.fd_worst,
              s.fd.size(), s.brute_agree ? "yes" : "no", s.brute.size())};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exact-solution recovery", exact_recovery},
      {2, "stationary residual", stationary_residual},
      {3, "scaling law", scaling_law},
      {4, "mass-resonance boost", resonance_boost},
      {5, "conservation", conservation},
      {6, "traveling-wave propagation", traveling_waves},
      {7, "Galilean symmetry", galilean},
      {8, "mass-resonant non-convergence", resonant_nonexistence},
      {9, "zero-mass existence", zero_mass_existence},
      {10, "d=4 dichotomy", dichotomy_d4},
      {11, "sharp GN constant", sharp_gn},
      {12, "oracle integrity", oracle_integrity},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-32s %s  %s [%.1fs]\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
