#include "qnls/potential_well.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qnls/errors.hpp"
#include "qnls/functionals.hpp"
#include "qnls/oracle.hpp"

namespace qnls {

namespace {

double shifted_dirichlet(const ComplexField& f, const std::vector<double>& shift) {
  const Grid& g = f.grid();
  const Buffer s = to_spectral(f);
  const int d = g.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double q = 0.0;
    for (int j = 0; j < d; ++j) {
      const double k = g.wavenumbers(j)[static_cast<std::size_t>(g.axis_index(i, j))] - shift[j];
      q += k * k;
    }
    total += q * std::norm(s[i]);
  }
  return total * g.cell_volume() / static_cast<double>(g.size());
}

std::vector<double> scaled_vector(const std::vector<double>& c, double s) {
  std::vector<double> out(c);
  for (double& x : out) x *= s;
  return out;
}

}  // namespace

std::string to_string(Membership m) {
  switch (m) {
    case Membership::A_plus:
      return "A_plus";
    case Membership::A_minus:
      return "A_minus";
    case Membership::outside:
      return "outside";
  }
  return "unknown";
}

MuReference MuReference::from_result(const GroundStateResult& r, std::string source) {
  if (!r.converged) throw ConvergenceError("mu reference taken from a non-converged ground state");
  return MuReference{r.params, r.mu, std::move(source)};
}

WellVerdict classify(const FieldPair& p, const WaveParams& params, const MuReference& mu) {
  if (p.gauge != Gauge::plain) throw ValidationError("classify expects a plain-gauge pair");
  if (!mu.params.same_as(params)) throw ValidationError("mu reference was computed for different parameters");
  WellVerdict w;
  w.params = params;
  w.L = quadratic_part(p, params);
  w.N = coupling(p);
  w.S = w.L - w.N;
  w.K = 2.0 * w.L - 3.0 * w.N;
  w.mu = mu.mu;
  w.mu_source = mu.source;
  const bool below = w.S <= mu.mu * (1.0 + 1e-6) + 1e-9;
  if (!below)
    w.membership = Membership::outside;
  else if (w.K >= -1e-9 * std::abs(w.L))
    w.membership = Membership::A_plus;
  else
    w.membership = Membership::A_minus;
  w.margin = std::min(mu.mu - w.S, std::abs(w.K));
  return w;
}

InvarianceReport invariance_experiment(const FieldPair& p, const WaveParams& params, const MuReference& mu,
                                       double T, double dt, long cadence) {
  const WellVerdict start = classify(p, params, mu);
  if (start.membership == Membership::outside) throw ValidationError("initial data lies outside both wells");
  InvarianceReport rep;
  rep.initial = start.membership;
  EvolveOptions opts;
  opts.T = T;
  opts.dt = dt;
  opts.cadence = cadence;
  opts.observer = [&](double t, const FieldPair& q) {
    const WellVerdict w = classify(q, params, mu);
    rep.times.push_back(t);
    rep.memberships.push_back(w.membership);
    rep.S.push_back(w.S);
    rep.K.push_back(w.K);
    if (w.membership != rep.initial) {
      ++rep.flips;
      if (!rep.first_flip) rep.first_flip = t;
    }
    return to_string(w.membership);
  };
  rep.reason = evolve(p, params.kappa, opts).reason;
  return rep;
}

double shifted_gradient(const FieldPair& p, double kappa, const std::vector<double>& c) {
  if (static_cast<int>(c.size()) != p.grid().dim()) throw ValidationError("velocity has wrong length");
  return shifted_dirichlet(p.first, scaled_vector(c, 0.5)) +
         kappa * shifted_dirichlet(p.second, scaled_vector(c, 0.5 / kappa));
}

double gradient_energy(const FieldPair& p, double kappa) { return dirichlet(p.first) + kappa * dirichlet(p.second); }

AprioriBound apriori_bound(const FieldPair& p, const WaveParams& params, const MuReference& mu) {
  const WellVerdict w = classify(p, params, mu);
  if (w.membership != Membership::A_plus) throw ValidationError("a priori bound needs data in A_plus");
  AprioriBound b;
  b.shifted_bound = 6.0 * mu.mu;
  b.gradient_bound =
      12.0 * mu.mu + params.speed_squared() * std::max(1.0, 0.5 / params.kappa) * charge(p);
  b.shifted_value = shifted_gradient(p, params.kappa, params.c);
  b.gradient_value = gradient_energy(p, params.kappa);
  return b;
}

WaveParams unit_threshold_params(int dim, double kappa, int axis, bool exploratory) {
  if (std::abs(kappa - 0.5) <= kCaseTolerance) throw ValidationError("no threshold constant exists at kappa = 1/2");
  if (axis < 0 || axis >= dim) throw ValidationError("axis out of range");
  std::vector<double> c(dim, 0.0);
  c[axis] = 1.0;
  const double omega = kappa < 0.5 ? 1.0 / (8.0 * kappa) : 0.25;
  return WaveParams::make(dim, kappa, omega, c, exploratory);
}

Threshold threshold_constants(double kappa, const MuReference& unit) {
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  if (std::abs(kappa - 0.5) <= kCaseTolerance) throw ValidationError("no threshold constant exists at kappa = 1/2");
  const WaveParams& p = unit.params;
  if (std::abs(p.kappa - kappa) > kCaseTolerance) throw ValidationError("unit reference has a different kappa");
  const double omega = kappa < 0.5 ? 1.0 / (8.0 * kappa) : 0.25;
  if (std::abs(p.speed() - 1.0) > 1e-12 || std::abs(p.omega - omega) > 1e-12)
    throw ValidationError("unit reference must be at |c| = 1 and omega = " + std::to_string(omega));
  if (!(unit.mu > 0.0)) throw ValidationError("unit mu must be positive");
  Threshold t;
  t.kappa = kappa;
  t.unit = unit;
  if (kappa < 0.5) {
    t.branch = 'A';
    t.factor = 16.0 * kappa / (1.0 - 2.0 * kappa);
  } else {
    t.branch = 'B';
    t.factor = 8.0 * kappa / (2.0 * kappa - 1.0);
    t.exploratory = p.dim() == 4;
  }
  t.value = t.factor * unit.mu;
  return t;
}

OscillationReport oscillation_experiment(const FieldPair& p0, const Threshold& threshold,
                                         const OscillationOptions& opts) {
  if (p0.gauge != Gauge::plain) throw ValidationError("oscillation experiment expects a plain-gauge pair");
  const Grid& g = p0.grid();
  const int d = g.dim();
  const double kappa = threshold.kappa;
  if (threshold.unit.params.dim() != d) throw ValidationError("threshold computed in another dimension");
  if (static_cast<int>(opts.direction.size()) != d) throw ValidationError("direction has wrong length");
  int axis = -1;
  for (int j = 0; j < d; ++j) {
    if (opts.direction[j] == 0.0) continue;
    if (axis >= 0) throw ValidationError("the schedule direction must be a coordinate axis");
    axis = j;
  }
  if (axis < 0) throw ValidationError("direction must be nonzero");
  const double sign = opts.direction[axis] > 0.0 ? 1.0 : -1.0;
  if (!(opts.ratio > 1.0) || opts.max_points < 1) throw ValidationError("schedule needs ratio > 1 and points >= 1");

  // Smallest speed s with s/2 and s/(2 kappa) both lattice wavenumbers.
  const double dk = 2.0 * M_PI / g.box()[axis];
  double step = 0.0;
  for (int q = 1; q <= 1000; ++q) {
    const double r = q / kappa;
    if (std::abs(r - std::round(r)) <= 1e-9 * r) {
      step = 2.0 * dk * q;
      break;
    }
  }
  if (step == 0.0) throw ValidationError("kappa is incommensurate with the lattice");
  const double kmax = M_PI * g.points()[axis] / g.box()[axis];
  const double reach = std::max(0.5, 0.5 / kappa);

  OscillationReport rep;
  rep.threshold = threshold;
  const bool branch_a = threshold.branch == 'A';
  rep.mass = branch_a ? norm_squared(p0.first) : norm_squared(p0.second);
  rep.below_threshold = rep.mass < threshold.value;
  const double mass_coef = branch_a ? (1.0 - 2.0 * kappa) / (16.0 * kappa) : (2.0 * kappa - 1.0) / (8.0 * kappa);
  const double kinetic = 0.5 * dirichlet(p0.first) + 0.5 * kappa * dirichlet(p0.second);

  long last = 0;
  double requested = opts.start > 0.0 ? opts.start : step;
  for (int k = 0; k < opts.max_points; ++k, requested *= opts.ratio) {
    const long m = std::max(1L, std::lround(requested / step));
    if (m == last) continue;
    const double speed = static_cast<double>(m) * step;
    if (reach * speed > 0.5 * kmax * (1.0 + 1e-9)) {
      rep.unresolved.push_back(requested);
      break;
    }
    last = m;
    OscillationPoint pt;
    pt.requested = requested;
    pt.speed = speed;
    pt.c.assign(d, 0.0);
    pt.c[axis] = sign * speed;
    pt.omega = branch_a ? speed * speed / (8.0 * kappa) : speed * speed / 4.0;
    const WaveParams params = WaveParams::make(d, kappa, pt.omega, pt.c, threshold.exploratory);
    pt.mu = std::pow(speed, 6.0 - d) * threshold.unit.mu;
    const MuReference ref{params, pt.mu, "scaled from " + threshold.unit.source};
    const FieldPair q(phase_modulate(p0.first, scaled_vector(pt.c, 0.5)),
                      phase_modulate(p0.second, scaled_vector(pt.c, 0.5 / kappa)), Gauge::plain);
    const WellVerdict w = classify(q, params, ref);
    pt.S = w.S;
    pt.K = w.K;
    pt.N = w.N;
    pt.membership = w.membership;
    pt.lhs = kinetic - w.N;
    pt.rhs = pt.mu - speed * speed * mass_coef * rep.mass;
    rep.schedule.push_back(pt);
    if (!rep.first_plus && w.membership == Membership::A_plus) rep.first_plus = rep.schedule.size() - 1;
  }

  double nmax = 0.0;
  for (const auto& pt : rep.schedule) nmax = std::max(nmax, std::abs(pt.N));
  rep.n_monotone = true;
  for (std::size_t i = 1; i < rep.schedule.size(); ++i)
    if (std::abs(rep.schedule[i].N) > std::abs(rep.schedule[i - 1].N) + 1e-8 * nmax) rep.n_monotone = false;

  if (!rep.first_plus) {
    rep.note = "no schedule point reached A_plus";
    return rep;
  }
  if (!opts.evolve) return rep;

  const OscillationPoint& pt = rep.schedule[*rep.first_plus];
  const WaveParams params = WaveParams::make(d, kappa, pt.omega, pt.c, threshold.exploratory);
  const MuReference ref{params, pt.mu, "scaled from " + threshold.unit.source};
  const FieldPair q(phase_modulate(p0.first, scaled_vector(pt.c, 0.5)),
                    phase_modulate(p0.second, scaled_vector(pt.c, 0.5 / kappa)), Gauge::plain);
  rep.bound = apriori_bound(q, params, ref);
  EvolveOptions eo;
  eo.T = opts.T;
  eo.dt = opts.dt;
  eo.cadence = opts.cadence;
  eo.observer = [&](double, const FieldPair& s) {
    rep.max_shifted = std::max(rep.max_shifted, shifted_gradient(s, kappa, pt.c));
    rep.max_gradient = std::max(rep.max_gradient, gradient_energy(s, kappa));
    return to_string(classify(s, params, ref).membership);
  };
  rep.evolution = evolve(q, kappa, eo);
  return rep;
}

ChargeThresholdReport charge_threshold_check(const GroundStateResult& unit, const SolverOptions& opts,
                                             double omega_second, double omega_large) {
  const WaveParams& p = unit.params;
  if (p.dim() != 4 || p.speed() != 0.0) throw ValidationError("charge threshold check needs the d = 4, c = 0 minimizer");
  if (std::abs(p.omega - 1.0) > 1e-12) throw ValidationError("charge threshold check needs omega = 1");
  if (!unit.converged) throw ConvergenceError("unit ground state did not converge");
  ChargeThresholdReport rep;
  const FieldPair plain = restore_phases(unit.profile, p);
  rep.q_star = charge(plain);
  rep.energy = energy(plain, p.kappa);
  rep.kinetic = 0.5 * gradient_energy(plain, p.kappa);
  rep.mu_first = unit.mu;

  SolverOptions o = opts;
  o.points = unit.points;
  o.box = unit.box;
  o.warm_start.reset();
  rep.omega_second = omega_second;
  const GroundStateResult second = minimize(WaveParams::make(4, p.kappa, omega_second, {0.0, 0.0, 0.0, 0.0}), o);
  if (!second.converged) throw ConvergenceError("ground state at the second frequency did not converge");
  rep.mu_second = second.mu;
  rep.ratio = second.mu / unit.mu;

  const GridPtr& g = plain.grid_ptr();
  auto gauss = ComplexField::sample(g, [](const Point& x) {
    double r2 = 0.0;
    for (double y : x) r2 += y * y;
    return cplx(std::exp(-0.5 * r2));
  });
  FieldPair sample(gauss, gauss, Gauge::plain);
  const double s = std::sqrt(0.5 * rep.q_star / charge(sample));
  sample.first *= cplx(s);
  sample.second *= cplx(s);
  rep.sample_charge = charge(sample);
  rep.omega_large = omega_large;
  const WaveParams large = WaveParams::make(4, p.kappa, omega_large, {0.0, 0.0, 0.0, 0.0});
  rep.sample_verdict = classify(sample, large, MuReference{large, omega_large * rep.q_star, "omega Q*"});
  return rep;
}

GnReport gn_experiment(const GroundStateResult& unit, int count, std::uint64_t seed) {
  const WaveParams& p = unit.params;
  if (p.dim() != 4 || p.speed() != 0.0) throw ValidationError("GN experiment needs the d = 4, c = 0 minimizer");
  if (count < 0) throw ValidationError("count must be non-negative");
  GnReport rep;
  const FieldPair plain = restore_phases(unit.profile, p);
  rep.q_star = charge(plain);
  rep.minimizer = gn_quotient(plain, p.kappa, rep.q_star);
  const GridPtr& g = plain.grid_ptr();
  double lmin = g->box()[0], hmax = 0.0;
  for (int j = 0; j < g->dim(); ++j) {
    lmin = std::min(lmin, g->box()[j]);
    hmax = std::max(hmax, g->spacing(j));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> band(0.1, 0.6), spread(0.05, 0.2);
  for (int i = 0; i < count; ++i) {
    const double k0 = band(rng) * M_PI / hmax;
    const double w = spread(rng) * lmin;
    const FieldPair q = oracle::random_band_limited(g, seed + 1000003ULL * static_cast<std::uint64_t>(i + 1), k0, w);
    const double v = gn_quotient(q, p.kappa, rep.q_star);
    rep.random.push_back(v);
    rep.max_random = std::max(rep.max_random, v);
  }
  return rep;
}

}  // namespace qnls
