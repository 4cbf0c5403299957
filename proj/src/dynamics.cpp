#include "qnls/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qnls/functionals.hpp"

namespace qnls {

namespace {

Buffer multiplier(const Grid& g, double stiffness, double dt) {
  Buffer m(g.size());
  const auto& k2 = g.k_squared();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::polar(1.0, -dt * stiffness * k2[i]);
  return m;
}

double pair_distance(const FieldPair& a, const FieldPair& b) {
  const double num = norm_squared(a.first - b.first) + norm_squared(a.second - b.second);
  const double den = norm_squared(b.first) + norm_squared(b.second);
  return std::sqrt(num / den);
}

void require_plain(const FieldPair& p) {
  if (p.gauge != Gauge::plain) throw ValidationError("time evolution acts on plain-gauge pairs");
}

void require_finite(const FieldPair& p, double t) {
  if (!p.first.all_finite() || !p.second.all_finite())
    throw NumericalError("non-finite field values at t = " + std::to_string(t));
}

long whole_steps(double T, double dt) {
  if (!(dt > 0.0) || !(T > 0.0)) throw ValidationError("T and dt must be positive");
  const double r = T / dt;
  const long n = std::lround(r);
  if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * r) throw ValidationError("T is not a whole number of steps dt");
  return n;
}

// Cell counts c_j t / h_j; throws when they are not integers.
std::vector<long> cells_moved(const Grid& g, const std::vector<double>& c, double t) {
  std::vector<long> out(g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    const double m = c[j] * t / g.spacing(j);
    out[j] = std::lround(m);
    if (std::abs(m - static_cast<double>(out[j])) > 1e-9 * std::max(1.0, std::abs(m)))
      throw ValidationError("comparison time is off-grid: c t is not a whole number of cells");
  }
  return out;
}

FieldPair shifted(const FieldPair& p, std::span<const long> cells) {
  return FieldPair(shift_cells(p.first, cells), shift_cells(p.second, cells), p.gauge);
}

}  // namespace

Propagator::Propagator(GridPtr grid, double kappa, double dt, bool nonlinear)
    : grid_(std::move(grid)), kappa_(kappa), dt_(dt), nonlinear_(nonlinear) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("time step must be positive");
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  half_u_ = multiplier(*grid_, 1.0, 0.5 * dt);
  half_v_ = multiplier(*grid_, kappa, 0.5 * dt);
  full_u_ = multiplier(*grid_, 1.0, dt);
  full_v_ = multiplier(*grid_, kappa, dt);
}

void Propagator::linear(Buffer& u, Buffer& v, const Buffer& mu, const Buffer& mv) const {
  grid_->forward(u);
  grid_->forward(v);
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] *= mu[i];
    v[i] *= mv[i];
  }
  grid_->inverse(u);
  grid_->inverse(v);
}

void Propagator::nonlinear(Buffer& u, Buffer& v) const {
  const double h = dt_;
  const cplx I(0.0, 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx u0 = u[i], v0 = v[i];
    auto fu = [&](cplx a, cplx b) { return 2.0 * I * b * std::conj(a); };
    auto fv = [&](cplx a) { return I * a * a; };
    const cplx k1u = fu(u0, v0), k1v = fv(u0);
    const cplx u1 = u0 + 0.5 * h * k1u, v1 = v0 + 0.5 * h * k1v;
    const cplx k2u = fu(u1, v1), k2v = fv(u1);
    const cplx u2 = u0 + 0.5 * h * k2u, v2 = v0 + 0.5 * h * k2v;
    const cplx k3u = fu(u2, v2), k3v = fv(u2);
    const cplx u3 = u0 + h * k3u, v3 = v0 + h * k3v;
    const cplx k4u = fu(u3, v3), k4v = fv(u3);
    u[i] = u0 + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v[i] = v0 + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
}

void Propagator::advance(FieldPair& p, long steps) const {
  require_plain(p);
  if (!p.grid().same_shape(*grid_)) throw ValidationError("pair and propagator live on different grids");
  if (steps <= 0) return;
  Buffer& u = p.first.buffer();
  Buffer& v = p.second.buffer();
  if (!nonlinear_) {
    const Buffer mu = multiplier(*grid_, 1.0, dt_ * static_cast<double>(steps));
    const Buffer mv = multiplier(*grid_, kappa_, dt_ * static_cast<double>(steps));
    linear(u, v, mu, mv);
    return;
  }
  linear(u, v, half_u_, half_v_);
  for (long s = 0; s < steps; ++s) {
    nonlinear(u, v);
    if (s + 1 < steps)
      linear(u, v, full_u_, full_v_);
    else
      linear(u, v, half_u_, half_v_);
  }
}

FieldPair strang_step(const FieldPair& p, double dt, double kappa, bool nonlinear) {
  FieldPair out = p;
  Propagator(p.grid_ptr(), kappa, dt, nonlinear).advance(out, 1);
  require_finite(out, dt);
  return out;
}

FieldPair conjugate(const FieldPair& p) {
  FieldPair out = p;
  for (auto& z : out.first.values()) z = std::conj(z);
  for (auto& z : out.second.values()) z = std::conj(z);
  return out;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::completed:
      return "completed";
    case Termination::blowup_indicated:
      return "blowup_indicated";
    case Termination::underresolved:
      return "underresolved";
  }
  return "unknown";
}

double tail_fraction(const ComplexField& f) {
  const Buffer s = to_spectral(f);
  const auto& kr = f.grid().relative_wavenumber();
  double top = 0.0, total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = std::norm(s[i]);
    total += w;
    if (kr[i] > 2.0 / 3.0) top += w;
  }
  return total > 0.0 ? top / total : 0.0;
}

Termination blowup_monitor(const EvolutionTrace& trace, double growth, double tail_limit) {
  if (trace.time.empty()) return Termination::completed;
  const double g0 = std::hypot(trace.grad_first.front(), trace.grad_second.front());
  const double g = std::hypot(trace.grad_first.back(), trace.grad_second.back());
  const bool tail = std::max(trace.tail_first.back(), trace.tail_second.back()) > tail_limit;
  if (tail && g > growth * g0) return Termination::blowup_indicated;
  if (tail) return Termination::underresolved;
  return Termination::completed;
}

EvolutionTrace evolve(const FieldPair& p0, double kappa, const EvolveOptions& opts) {
  require_plain(p0);
  const long steps = whole_steps(opts.T, opts.dt);
  if (opts.cadence < 1 || steps % opts.cadence != 0) throw ValidationError("cadence must divide the step count");
  const Propagator prop(p0.grid_ptr(), kappa, opts.dt, opts.nonlinear);

  EvolutionTrace tr;
  FieldPair p = p0;
  auto sample = [&](double t) {
    tr.time.push_back(t);
    tr.Q.push_back(charge(p));
    tr.E.push_back(energy(p, kappa));
    tr.P.push_back(momentum(p));
    tr.grad_first.push_back(std::sqrt(dirichlet(p.first)));
    tr.grad_second.push_back(std::sqrt(dirichlet(p.second)));
    tr.tail_first.push_back(tail_fraction(p.first));
    tr.tail_second.push_back(tail_fraction(p.second));
    if (opts.observer) {
      std::string label = opts.observer(t, p);
      if (!label.empty()) tr.labels.push_back(std::move(label));
    }
  };
  sample(0.0);
  for (long done = 0; done < steps;) {
    prop.advance(p, opts.cadence);
    done += opts.cadence;
    const double t = static_cast<double>(done) * opts.dt;
    require_finite(p, t);
    sample(t);
    tr.steps = done;
    if (opts.monitor) {
      tr.reason = blowup_monitor(tr, opts.growth, opts.tail_limit);
      if (tr.reason != Termination::completed) break;
    }
  }
  tr.final_state = std::move(p);
  return tr;
}

WaveTrackReport traveling_wave_test(const FieldPair& profile, const WaveParams& params, double T, double dt,
                                    int samples) {
  require_plain(profile);
  const Grid& g = profile.grid();
  if (params.dim() != g.dim()) throw ValidationError("parameter dimension differs from grid dimension");
  if (!(T > 0.0) || !(dt > 0.0) || samples < 1) throw ValidationError("T, dt and samples must be positive");

  // Shortest time after which c t is a whole number of cells on every axis.
  double tau = 0.0;
  int lead = -1;
  for (int j = 0; j < g.dim(); ++j)
    if (params.c[j] != 0.0) lead = j;
  if (lead < 0) {
    tau = T / samples;
  } else {
    const double base = g.spacing(lead) / std::abs(params.c[lead]);
    for (int m = 1; m <= 4096 && tau == 0.0; ++m) {
      try {
        cells_moved(g, params.c, m * base);
        tau = m * base;
      } catch (const ValidationError&) {
      }
    }
    if (tau == 0.0) throw ValidationError("no on-grid comparison time: velocity components are incommensurate");
  }
  const double interval = tau * std::max(1.0, std::floor(T / (samples * tau)));
  const long count = static_cast<long>(std::floor(T / interval + 1e-9));
  if (count < 1) throw ValidationError("T is shorter than one on-grid comparison interval");
  const long per = static_cast<long>(std::ceil(interval / dt - 1e-9));

  WaveTrackReport rep;
  rep.dt = interval / static_cast<double>(per);
  rep.T = interval * static_cast<double>(count);
  const Propagator prop(profile.grid_ptr(), params.kappa, rep.dt);
  FieldPair p = profile;
  for (long k = 1; k <= count; ++k) {
    prop.advance(p, per);
    const double t = interval * static_cast<double>(k);
    require_finite(p, t);
    const auto cells = cells_moved(g, params.c, t);
    FieldPair expect = shifted(profile, cells);
    expect.first *= std::polar(1.0, params.omega * t);
    expect.second *= std::polar(1.0, 2.0 * params.omega * t);
    const double err = pair_distance(p, expect);
    rep.times.push_back(t);
    rep.errors.push_back(err);
    rep.max_error = std::max(rep.max_error, err);
  }
  return rep;
}

GalileanReport galilean_check(const FieldPair& p0, double kappa, const std::vector<double>& c, double T, double dt) {
  require_plain(p0);
  if (std::abs(kappa - 0.5) > kCaseTolerance) throw ValidationError("the Galilean symmetry needs kappa = 1/2");
  const Grid& g = p0.grid();
  if (static_cast<int>(c.size()) != g.dim()) throw ValidationError("velocity has wrong length");
  const long steps = whole_steps(T, dt);
  const auto cells = cells_moved(g, c, T);
  std::vector<double> half(c);
  for (double& x : half) x *= 0.5;
  double c2 = 0.0;
  for (double x : c) c2 += x * x;

  const Propagator prop(p0.grid_ptr(), kappa, dt);
  FieldPair boosted(phase_modulate(p0.first, half), phase_modulate(p0.second, c), Gauge::plain);
  prop.advance(boosted, steps);

  FieldPair evolved = p0;
  prop.advance(evolved, steps);
  FieldPair moved = shifted(evolved, cells);
  FieldPair expect(phase_modulate(moved.first, half), phase_modulate(moved.second, c), Gauge::plain);
  expect.first *= std::polar(1.0, -0.25 * c2 * T);
  expect.second *= std::polar(1.0, -0.5 * c2 * T);

  require_finite(boosted, T);
  GalileanReport rep;
  rep.T = T;
  rep.discrepancy = pair_distance(boosted, expect);
  return rep;
}

SemitrivialReport semitrivial_perturbation(const FieldPair& p0, double kappa, double T, double dt, long cadence) {
  require_plain(p0);
  const long steps = whole_steps(T, dt);
  if (cadence < 1 || steps % cadence != 0) throw ValidationError("cadence must divide the step count");
  const Propagator full(p0.grid_ptr(), kappa, dt);
  const Propagator free(p0.grid_ptr(), kappa, dt, false);
  const double u0 = std::sqrt(norm_squared(p0.first));
  const double v0 = std::sqrt(norm_squared(p0.second));
  if (!(v0 > 0.0)) throw ValidationError("semitrivial scenario needs v0 != 0");

  SemitrivialReport rep;
  FieldPair p = p0;
  FieldPair reference(ComplexField(p0.grid_ptr()), p0.second, Gauge::plain);
  auto record = [&](double t) {
    const double nu = std::sqrt(norm_squared(p.first));
    rep.time.push_back(t);
    rep.norm_first.push_back(nu);
    rep.max_growth = std::max(rep.max_growth, u0 > 0.0 ? nu / u0 : nu);
    const double dv = std::sqrt(norm_squared(p.second - reference.second)) / v0;
    rep.max_free_error = std::max(rep.max_free_error, dv);
  };
  record(0.0);
  for (long done = 0; done < steps; done += cadence) {
    full.advance(p, cadence);
    free.advance(reference, cadence);
    const double t = static_cast<double>(done + cadence) * dt;
    require_finite(p, t);
    record(t);
    if (std::max(tail_fraction(p.first), tail_fraction(p.second)) > 0.1) {
      rep.reason = Termination::underresolved;
      break;
    }
  }
  return rep;
}

}  // namespace qnls
