#include "qnls/functionals.hpp"

#include <cmath>
#include <limits>

namespace qnls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_gauge(const FieldPair& p, Gauge g, const char* what) {
  if (p.gauge != g) throw ValidationError(std::string(what) + (g == Gauge::plain ? " needs a plain-gauge pair" : " needs a tilde-gauge pair"));
}

void require_dim(const FieldPair& p, const WaveParams& params) {
  if (p.grid().dim() != params.dim()) throw ValidationError("parameter dimension differs from grid dimension");
}

double spectral_weight(const Grid& g) { return g.cell_volume() / static_cast<double>(g.size()); }

// Sum of (|xi|^2 s + m) |f_hat|^2 - c.xi |f_hat|^2 * twist, scaled to an integral.
double spectral_form(const Grid& g, std::span<const cplx> f_hat, double stiffness, double mass,
                     std::span<const double> drift) {
  const auto& k2 = g.k_squared();
  double acc = 0.0;
  const bool has_drift = !drift.empty();
  for (std::size_t i = 0; i < f_hat.size(); ++i) {
    double sym = stiffness * k2[i] + mass;
    if (has_drift) {
      for (int j = 0; j < g.dim(); ++j) sym -= drift[j] * g.wavenumbers(j)[g.axis_index(i, j)];
    }
    acc += sym * std::norm(f_hat[i]);
  }
  return acc * spectral_weight(g);
}

bool phases_representable(const Grid& g, const WaveParams& params) {
  const auto k1 = params.first_phase();
  const auto k2 = params.second_phase();
  return grid_compatible(g, k1) && grid_compatible(g, k2);
}

}  // namespace

double energy(const FieldPair& p, double kappa) {
  require_gauge(p, Gauge::plain, "energy");
  return 0.5 * dirichlet(p.first) + 0.5 * kappa * dirichlet(p.second) - coupling(p);
}

double charge(const FieldPair& p) { return 0.5 * norm_squared(p.first) + norm_squared(p.second); }

std::vector<double> momentum(const FieldPair& p) {
  const Grid& g = p.grid();
  const Buffer u = to_spectral(p.first);
  const Buffer v = to_spectral(p.second);
  std::vector<double> out(g.dim(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = std::norm(u[i]) + std::norm(v[i]);
    for (int j = 0; j < g.dim(); ++j) out[j] -= g.wavenumbers(j)[g.axis_index(i, j)] * w;
  }
  for (double& x : out) x *= 0.5 * spectral_weight(g);
  return out;
}

double coupling(const FieldPair& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.first.size(); ++i) {
    const cplx u = p.first[i];
    acc += (u * u * std::conj(p.second[i])).real();
  }
  return acc * p.grid().cell_volume();
}

double quadratic_part(const FieldPair& p, const WaveParams& params) {
  require_gauge(p, Gauge::plain, "L");
  require_dim(p, params);
  const Grid& g = p.grid();
  const Buffer u = to_spectral(p.first);
  const Buffer v = to_spectral(p.second);
  return 0.5 * spectral_form(g, u, 1.0, params.omega, params.c) +
         0.5 * spectral_form(g, v, params.kappa, 2.0 * params.omega, params.c);
}

ActionModel::ActionModel(GridPtr grid, WaveParams params)
    : grid_(std::move(grid)), params_(std::move(params)) {
  if (grid_->dim() != params_.dim()) throw ValidationError("parameter dimension differs from grid dimension");
  a_ = params_.mass_first();
  b_ = params_.mass_second();
  first_massless_ = params_.first_massless();
  second_massless_ = params_.second_massless();
  if (first_massless_) a_ = 0.0;
  if (second_massless_) b_ = 0.0;
  const auto beta = params_.beta();
  if (!params_.beta_zero()) {
    if (!grid_compatible(*grid_, beta))
      throw ValidationError("coupling wavenumber (1 - 1/(2 kappa)) c is not a lattice wavenumber of the box");
    trivial_phase_ = false;
    ComplexField ones(grid_);
    for (auto& z : ones.values()) z = 1.0;
    phase_ = phase_modulate(ones, beta).buffer();
  }
}

double ActionModel::quadratic(const FieldPair& p) const {
  const Buffer u = to_spectral(p.first);
  const Buffer v = to_spectral(p.second);
  return quadratic_spectral(u, v);
}

double ActionModel::quadratic_spectral(std::span<const cplx> u_hat, std::span<const cplx> v_hat) const {
  return 0.5 * spectral_form(*grid_, u_hat, 1.0, a_, {}) +
         0.5 * spectral_form(*grid_, v_hat, params_.kappa, 2.0 * b_, {});
}

double ActionModel::kinetic_spectral(std::span<const cplx> u_hat, std::span<const cplx> v_hat) const {
  return 0.5 * spectral_form(*grid_, u_hat, 1.0, 0.0, {}) +
         0.5 * spectral_form(*grid_, v_hat, params_.kappa, 0.0, {});
}

double ActionModel::cubic(std::span<const cplx> u, std::span<const cplx> v) const {
  double acc = 0.0;
  if (trivial_phase_) {
    for (std::size_t i = 0; i < u.size(); ++i) acc += (u[i] * u[i] * std::conj(v[i])).real();
  } else {
    for (std::size_t i = 0; i < u.size(); ++i) acc += (phase_[i] * u[i] * u[i] * std::conj(v[i])).real();
  }
  return acc * grid_->cell_volume();
}

std::array<double, 4> ActionModel::cubic_along(std::span<const cplx> u, std::span<const cplx> v,
                                               std::span<const cplx> du, std::span<const cplx> dv) const {
  std::array<double, 4> n{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx ph = trivial_phase_ ? cplx(1.0) : phase_[i];
    const cplx vb = std::conj(v[i]);
    const cplx kb = std::conj(dv[i]);
    const cplx uh = u[i] * du[i];
    n[0] += (ph * u[i] * u[i] * vb).real();
    n[1] += (ph * (2.0 * uh * vb + u[i] * u[i] * kb)).real();
    n[2] += (ph * (du[i] * du[i] * vb + 2.0 * uh * kb)).real();
    n[3] += (ph * du[i] * du[i] * kb).real();
  }
  for (double& x : n) x *= grid_->cell_volume();
  return n;
}

void ActionModel::cubic_gradient(std::span<const cplx> u, std::span<const cplx> v, std::span<cplx> gu,
                                 std::span<cplx> gv) const {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx ph = trivial_phase_ ? cplx(1.0) : phase_[i];
    gu[i] = 2.0 * std::conj(ph * u[i]) * v[i];
    gv[i] = ph * u[i] * u[i];
  }
}

void ActionModel::apply_quadratic_symbol(std::span<cplx> u_hat, std::span<cplx> v_hat) const {
  const auto& k2 = grid_->k_squared();
  for (std::size_t i = 0; i < u_hat.size(); ++i) {
    u_hat[i] *= k2[i] + a_;
    v_hat[i] *= params_.kappa * k2[i] + 2.0 * b_;
  }
}

void ActionModel::project_massless_spectral(std::span<cplx> u_hat, std::span<cplx> v_hat) const {
  if (first_massless_) u_hat[0] = 0.0;
  if (second_massless_) v_hat[0] = 0.0;
}

FieldPair ActionModel::action_gradient(const FieldPair& p) const {
  Buffer u = to_spectral(p.first);
  Buffer v = to_spectral(p.second);
  apply_quadratic_symbol(u, v);
  ComplexField gu = from_spectral(grid_, std::move(u));
  ComplexField gv = from_spectral(grid_, std::move(v));
  Buffer nu(grid_->size()), nv(grid_->size());
  cubic_gradient(p.first.values(), p.second.values(), nu, nv);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    gu[i] -= nu[i];
    gv[i] -= nv[i];
  }
  if (first_massless_) gu = zero_mode_project(gu);
  if (second_massless_) gv = zero_mode_project(gv);
  return FieldPair(std::move(gu), std::move(gv), Gauge::tilde);
}

FieldPair strip_phases(const FieldPair& plain, const WaveParams& params) {
  require_gauge(plain, Gauge::plain, "strip_phases");
  require_dim(plain, params);
  auto k1 = params.first_phase();
  auto k2 = params.second_phase();
  for (double& x : k1) x = -x;
  for (double& x : k2) x = -x;
  return FieldPair(phase_modulate(plain.first, k1), phase_modulate(plain.second, k2), Gauge::tilde);
}

FieldPair restore_phases(const FieldPair& tilde, const WaveParams& params) {
  require_gauge(tilde, Gauge::tilde, "restore_phases");
  require_dim(tilde, params);
  return FieldPair(phase_modulate(tilde.first, params.first_phase()),
                   phase_modulate(tilde.second, params.second_phase()), Gauge::plain);
}

FunctionalReport action(const FieldPair& p, const WaveParams& params) {
  require_dim(p, params);
  FunctionalReport r;
  r.a = params.mass_first();
  r.b = params.mass_second();
  const Grid& g = p.grid();
  const bool representable = phases_representable(g, params);

  auto fill_plain = [&](const FieldPair& plain) {
    r.E = energy(plain, params.kappa);
    r.Q = charge(plain);
    r.P = momentum(plain);
    r.L = quadratic_part(plain, params);
    r.N = coupling(plain);
    r.S = r.L - r.N;
    r.K = 2.0 * r.L - 3.0 * r.N;
    r.has_plain = true;
  };
  auto fill_tilde = [&](const FieldPair& tilde) {
    const ActionModel model(p.grid_ptr(), params);
    r.L_tilde = model.quadratic(tilde);
    r.N_tilde = model.cubic(tilde);
    r.S_tilde = r.L_tilde - r.N_tilde;
    r.K_tilde = 2.0 * r.L_tilde - 3.0 * r.N_tilde;
    r.has_tilde = true;
  };

  r.E = r.L = r.N = r.S = r.K = kNaN;
  r.L_tilde = r.N_tilde = r.S_tilde = r.K_tilde = kNaN;
  r.Q = charge(p);
  if (p.gauge == Gauge::plain) {
    fill_plain(p);
    if (representable) fill_tilde(strip_phases(p, params));
  } else {
    fill_tilde(p);
    if (representable) fill_plain(restore_phases(p, params));
  }
  return r;
}

std::pair<double, double> el_residual(const FieldPair& tilde, const WaveParams& params) {
  require_gauge(tilde, Gauge::tilde, "el_residual");
  const ActionModel model(tilde.grid_ptr(), params);
  const FieldPair r = model.action_gradient(tilde);
  return {std::sqrt(norm_squared(r.first)), std::sqrt(norm_squared(r.second))};
}

double gn_quotient(const FieldPair& p, double kappa, double q_star) {
  require_gauge(p, Gauge::plain, "gn_quotient");
  if (p.grid().dim() != 4) throw ValidationError("the sharp Gagliardo-Nirenberg quotient is defined for d = 4");
  if (!(q_star > 0.0)) throw ValidationError("reference charge must be positive");
  const double grad = dirichlet(p.first) + kappa * dirichlet(p.second);
  const double denom = 0.5 * std::sqrt(charge(p) / q_star) * grad;
  if (!(denom > 0.0)) throw ValidationError("gn_quotient denominator vanishes");
  return std::abs(coupling(p)) / denom;
}

std::pair<double, double> pohozaev_defects(const FieldPair& tilde, const WaveParams& params) {
  require_gauge(tilde, Gauge::tilde, "pohozaev_defects");
  if (!params.beta_zero()) throw ValidationError("Pohozaev defects are only defined when (1 - 1/(2 kappa)) c = 0");
  const ActionModel model(tilde.grid_ptr(), params);
  const Buffer u = to_spectral(tilde.first);
  const Buffer v = to_spectral(tilde.second);
  const double lt = model.quadratic_spectral(u, v);
  const double t = model.kinetic_spectral(u, v);
  const double nt = model.cubic(tilde);
  const double d = tilde.grid().dim();
  return {2.0 * lt - 3.0 * nt, 2.0 * t - 0.5 * d * nt};
}

}  // namespace qnls
