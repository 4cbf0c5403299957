#include "qnls/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qnls::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson on [-R, R] with n (even) panels.
template <class F>
double simpson(F&& f, double R, int n) {
  const double h = 2.0 * R / n;
  double acc = f(-R) + f(R);
  for (int i = 1; i < n; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(-R + i * h);
  return acc * h / 3.0;
}

// Simpson with repeated halving; Richardson (error ~ h^4) on the last two levels.
double integrate(const auto& f, double R, double& gap) {
  int n = 1024;
  double prev = simpson(f, R, n);
  double prev_extrap = prev;
  gap = 1.0;
  for (int level = 0; level < 6; ++level) {
    n *= 2;
    const double cur = simpson(f, R, n);
    const double extrap = cur + (cur - prev) / 15.0;
    gap = std::abs(extrap - prev_extrap);
    prev = cur;
    prev_extrap = extrap;
  }
  return prev_extrap;
}

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

SechIntegrals sech_integrals() {
  // sech^4(40) ~ 1e-68: the truncated tails are far below double precision.
  SechIntegrals s;
  double g4 = 0.0, g6 = 0.0;
  s.sech4 = integrate([](double x) { return std::pow(sech(x), 4); }, 40.0, g4);
  s.sech6 = integrate([](double x) { return std::pow(sech(x), 6); }, 40.0, g6);
  s.halving_gap = std::max(g4, g6);
  return s;
}

ExactSolution exact_solution(double B) {
  if (!(B > 0.0)) throw ValidationError("exact solution needs B > 0");
  const SechIntegrals I = sech_integrals();
  ExactSolution e;
  e.B = B;
  e.kappa = 2.0;
  e.omega = 4.0 * B * B;
  e.amplitude_first = 6.0 * B * B;
  e.amplitude_second = 3.0 * B * B;
  const double A = e.amplitude_first;
  const double C = e.amplitude_second;
  // s = sech^2(Bx): int s^2 = I4/B, int s^3 = I6/B, int s'^2 = 4B (I4 - I6).
  const double s2 = I.sech4 / B;
  const double s3 = I.sech6 / B;
  const double ds2 = 4.0 * B * (I.sech4 - I.sech6);
  e.norm_first = A * A * s2;
  e.norm_second = C * C * s2;
  e.grad_first = A * A * ds2;
  e.grad_second = C * C * ds2;
  e.N = A * A * C * s3;
  e.L = 0.5 * e.grad_first + 0.5 * e.omega * e.norm_first + 0.5 * e.kappa * e.grad_second +
        e.omega * e.norm_second;
  e.S = e.L - e.N;
  e.K = 2.0 * e.L - 3.0 * e.N;
  e.Q = 0.5 * e.norm_first + e.norm_second;
  e.T = 0.5 * e.grad_first + 0.5 * e.kappa * e.grad_second;
  e.E = e.T - e.N;
  return e;
}

WaveParams exact_params(double B) { return WaveParams::make(1, 2.0, 4.0 * B * B, {0.0}); }

FieldPair exact_pair(double B, const GridPtr& grid, Gauge gauge) {
  if (grid->dim() != 1) throw ValidationError("the exact solution lives on a d = 1 grid");
  if (grid->box()[0] < 40.0 / B) throw ValidationError("box too small for the exact solution (need L >= 40/B)");
  const double A = 6.0 * B * B;
  const double C = 3.0 * B * B;
  auto shape = [B](const Point& x) { return std::pow(sech(B * x[0]), 2); };
  return FieldPair(ComplexField::sample(grid, [&](const Point& x) { return cplx(A * shape(x)); }),
                   ComplexField::sample(grid, [&](const Point& x) { return cplx(C * shape(x)); }), gauge);
}

FieldPair random_band_limited(const GridPtr& grid, std::uint64_t seed, double k0, double width, Gauge gauge) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto make = [&]() {
    Buffer s(grid->size());
    const auto& k2 = grid->k_squared();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double w = std::exp(-k2[i] / (2.0 * k0 * k0));
      s[i] = cplx(normal(rng), normal(rng)) * w;
    }
    ComplexField f = from_spectral(grid, std::move(s));
    double peak = 0.0;
    for (const auto& z : f.values()) peak = std::max(peak, std::abs(z));
    if (peak > 0.0) f *= 1.0 / peak;
    if (width > 0.0) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        const Point x = grid->coordinate(i);
        double r2 = 0.0;
        for (int j = 0; j < grid->dim(); ++j) r2 += x[j] * x[j];
        f[i] *= std::exp(-r2 / (2.0 * width * width));
      }
    }
    return f;
  };
  ComplexField u = make();
  ComplexField v = make();
  return FieldPair(std::move(u), std::move(v), gauge);
}

FdCheckReport fd_gradient_check(const FieldPair& tilde, const WaveParams& params, const std::vector<double>& eps,
                                int directions, std::uint64_t seed, bool quadratic_only) {
  if (tilde.gauge != Gauge::tilde) throw ValidationError("fd_gradient_check needs a tilde-gauge pair");
  const ActionModel model(tilde.grid_ptr(), params);
  auto value = [&](const FieldPair& p) {
    const double q = model.quadratic(p);
    return quadratic_only ? q : q - model.cubic(p);
  };
  FieldPair grad;
  if (quadratic_only) {
    Buffer u = to_spectral(tilde.first), v = to_spectral(tilde.second);
    model.apply_quadratic_symbol(u, v);
    grad = FieldPair(from_spectral(tilde.grid_ptr(), std::move(u)), from_spectral(tilde.grid_ptr(), std::move(v)),
                     Gauge::tilde);
  } else {
    grad = model.action_gradient(tilde);
  }

  FdCheckReport rep;
  rep.eps = eps;
  rep.errors.assign(eps.size(), 0.0);
  rep.gradient_norm = std::sqrt(norm_squared(grad.first) + norm_squared(grad.second));
  const double h = *std::min_element(tilde.grid().box().begin(), tilde.grid().box().end()) /
                   static_cast<double>(*std::max_element(tilde.grid().points().begin(), tilde.grid().points().end()));
  for (int dir = 0; dir < directions; ++dir) {
    FieldPair d = random_band_limited(tilde.grid_ptr(), seed + 977 * dir, 0.25 / h, 0.0, Gauge::tilde);
    if (model.first_massless()) d.first = zero_mode_project(d.first);
    if (model.second_massless()) d.second = zero_mode_project(d.second);
    const double exact = inner(grad.first, d.first) + inner(grad.second, d.second);
    const double scale = std::max(std::abs(exact), 1e-300);
    for (std::size_t e = 0; e < eps.size(); ++e) {
      FieldPair plus = tilde, minus = tilde;
      plus.first += eps[e] * d.first;
      plus.second += eps[e] * d.second;
      minus.first -= eps[e] * d.first;
      minus.second -= eps[e] * d.second;
      const double fd = (value(plus) - value(minus)) / (2.0 * eps[e]);
      rep.errors[e] = std::max(rep.errors[e], std::abs(fd - exact) / scale);
    }
  }
  rep.best = *std::min_element(rep.errors.begin(), rep.errors.end());
  for (std::size_t e = 0; e + 1 < eps.size(); ++e) {
    const double ratio = rep.errors[e] / std::max(rep.errors[e + 1], 1e-300);
    rep.orders.push_back(std::log10(ratio) / std::log10(eps[e] / eps[e + 1]));
  }
  return rep;
}

namespace {

void require_tiny(const Grid& g) {
  if (g.size() > kBruteMaxPoints) throw ValidationError("brute-force path is limited to 64 grid points");
}

// Neighbour index along one axis with periodic wrap.
std::size_t neighbour(const Grid& g, std::size_t flat, int axis, int step) {
  const int n = g.points()[axis];
  const int i = g.axis_index(flat, axis);
  const int j = ((i + step) % n + n) % n;
  return flat + (static_cast<std::ptrdiff_t>(j) - i) * static_cast<std::ptrdiff_t>(g.stride(axis));
}

double fd_dirichlet(const ComplexField& f) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int j = 0; j < g.dim(); ++j) acc += std::norm(f[neighbour(g, i, j, 1)] - f[i]) / (g.spacing(j) * g.spacing(j));
  return acc * g.cell_volume();
}

double fd_current(const ComplexField& f, int axis) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const cplx d = (f[neighbour(g, i, axis, 1)] - f[neighbour(g, i, axis, -1)]) / (2.0 * g.spacing(axis));
    acc += (cplx(0.0, 1.0) * d * std::conj(f[i])).real();
  }
  return acc * g.cell_volume();
}

// |f_hat_m|^2 by direct O(N^2) DFT, indexed like the grid.
std::vector<double> direct_power(const ComplexField& f) {
  const Grid& g = f.grid();
  std::vector<double> out(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    cplx acc = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
      double ph = 0.0;
      for (int j = 0; j < g.dim(); ++j)
        ph -= 2.0 * kPi * g.axis_index(m, j) * g.axis_index(x, j) / static_cast<double>(g.points()[j]);
      acc += f[x] * std::polar(1.0, ph);
    }
    out[m] = std::norm(acc);
  }
  return out;
}

}  // namespace

FunctionalReport brute_functionals(const FieldPair& plain, const WaveParams& params) {
  if (plain.gauge != Gauge::plain) throw ValidationError("brute_functionals needs a plain-gauge pair");
  const Grid& g = plain.grid();
  require_tiny(g);
  if (params.dim() != g.dim()) throw ValidationError("parameter dimension differs from grid dimension");
  FunctionalReport r;
  r.a = params.mass_first();
  r.b = params.mass_second();
  const double vol = g.cell_volume();
  double nu = 0.0, nv = 0.0, cub = 0.0;
  for (std::size_t i = 0; i < plain.first.size(); ++i) {
    const cplx u = plain.first[i], v = plain.second[i];
    nu += std::norm(u);
    nv += std::norm(v);
    cub += (u * u * std::conj(v)).real();
  }
  nu *= vol;
  nv *= vol;
  cub *= vol;
  const double du = fd_dirichlet(plain.first);
  const double dv = fd_dirichlet(plain.second);
  r.P.assign(g.dim(), 0.0);
  double drift = 0.0;
  for (int j = 0; j < g.dim(); ++j) {
    const double cu = fd_current(plain.first, j);
    const double cv = fd_current(plain.second, j);
    r.P[j] = 0.5 * (cu + cv);
    drift += params.c[j] * r.P[j];
  }
  r.Q = 0.5 * nu + nv;
  r.N = cub;
  r.E = 0.5 * du + 0.5 * params.kappa * dv - cub;
  r.L = 0.5 * du + 0.5 * params.omega * nu + 0.5 * params.kappa * dv + params.omega * nv + drift;
  r.S = r.L - r.N;
  r.K = 2.0 * r.L - 3.0 * r.N;
  r.has_plain = true;
  r.L_tilde = r.N_tilde = r.S_tilde = r.K_tilde = std::nan("");
  return r;
}

BruteComparison compare_brute(const FieldPair& plain, const WaveParams& params) {
  const Grid& g = plain.grid();
  require_tiny(g);
  BruteComparison c;
  c.spectral = action(plain, params);
  c.brute = brute_functionals(plain, params);
  const double w = g.cell_volume() / static_cast<double>(g.size());
  const auto pu = direct_power(plain.first);
  const auto pv = direct_power(plain.second);
  double def_u = 0.0, def_v = 0.0;
  std::vector<double> cur_u(g.dim(), 0.0), cur_v(g.dim(), 0.0);
  for (std::size_t m = 0; m < pu.size(); ++m) {
    for (int j = 0; j < g.dim(); ++j) {
      const double k = g.wavenumbers(j)[g.axis_index(m, j)];
      const double h = g.spacing(j);
      const double fd2 = 2.0 * (1.0 - std::cos(k * h)) / (h * h);
      const double fd1 = std::sin(k * h) / h;
      def_u += std::abs(k * k - fd2) * pu[m];
      def_v += std::abs(k * k - fd2) * pv[m];
      cur_u[j] += std::abs(k - fd1) * pu[m];
      cur_v[j] += std::abs(k - fd1) * pv[m];
    }
  }
  def_u *= w;
  def_v *= w;
  double drift_bound = 0.0;
  double pbound = 0.0;
  for (int j = 0; j < g.dim(); ++j) {
    const double pj = 0.5 * w * (cur_u[j] + cur_v[j]);
    pbound = std::max(pbound, pj);
    drift_bound += std::abs(params.c[j]) * pj;
  }
  c.bound_E = 0.5 * def_u + 0.5 * params.kappa * def_v;
  c.bound_L = c.bound_E + drift_bound;
  c.bound_P = pbound;
  c.diff_E = std::abs(c.spectral.E - c.brute.E);
  c.diff_L = std::abs(c.spectral.L - c.brute.L);
  c.diff_S = std::abs(c.spectral.S - c.brute.S);
  c.diff_Q = std::abs(c.spectral.Q - c.brute.Q);
  c.diff_P = 0.0;
  for (int j = 0; j < g.dim(); ++j) c.diff_P = std::max(c.diff_P, std::abs(c.spectral.P[j] - c.brute.P[j]));
  auto slack = [](double v) { return 1e-11 * (1.0 + std::abs(v)); };
  c.agree = c.diff_E <= c.bound_E + slack(c.spectral.E) && c.diff_L <= c.bound_L + slack(c.spectral.L) &&
            c.diff_S <= c.bound_L + slack(c.spectral.S) && c.diff_Q <= slack(c.spectral.Q) &&
            c.diff_P <= c.bound_P + slack(1.0);
  return c;
}

namespace {

// Circular centroid of |f|^2 along each axis.
std::vector<double> centroid(const ComplexField& f) {
  const Grid& g = f.grid();
  std::vector<double> out(g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    const double k1 = 2.0 * kPi / g.box()[j];
    cplx acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      acc += std::norm(f[i]) * std::polar(1.0, k1 * g.coordinates(j)[g.axis_index(i, j)]);
    out[j] = std::arg(acc) / k1;
  }
  return out;
}

}  // namespace

FieldPair align_pair(const FieldPair& p, const FieldPair& reference) {
  const auto cp = centroid(p.first);
  const auto cr = centroid(reference.first);
  std::vector<double> y(cp.size());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = cr[j] - cp[j];
  FieldPair moved(spectral_shift(p.first, y), spectral_shift(p.second, y), p.gauge);

  cplx overlap = 0.0;
  for (std::size_t i = 0; i < moved.first.size(); ++i) overlap += reference.first[i] * std::conj(moved.first[i]);
  const double theta0 = std::arg(overlap);
  FieldPair best;
  double best_err = std::numeric_limits<double>::infinity();
  for (double theta : {theta0, theta0 + kPi}) {
    FieldPair cand = moved;
    cand.first *= std::polar(1.0, theta);
    cand.second *= std::polar(1.0, 2.0 * theta);
    const double err = relative_distance(cand, reference);
    if (err < best_err) {
      best_err = err;
      best = std::move(cand);
    }
  }
  return best;
}

double relative_distance(const FieldPair& a, const FieldPair& b) {
  const double num = norm_squared(a.first - b.first) + norm_squared(a.second - b.second);
  const double den = norm_squared(b.first) + norm_squared(b.second);
  return std::sqrt(num / den);
}

SuiteReport integrity_suite(std::uint64_t seed) {
  SuiteReport rep;
  rep.exact = exact_solution(0.5);
  rep.fd_cases = {
      {"d1-oracle", exact_params(0.5), {256}, {40.0}},
      {"d2-caseA", WaveParams::make(2, 1.0, 1.0, {0.5, 0.0}), {32, 32}, {8.0 * std::numbers::pi, 16.0}},
      {"d3-caseB", WaveParams::make(3, 0.25, 0.5, {1.0, 0.0, 0.0}), {16, 16, 16}, {8.0 * std::numbers::pi, 20.0, 20.0}},
      {"d5-caseC", WaveParams::make(5, 2.0, 0.25, {1.0, 0.0, 0.0, 0.0, 0.0}), {8, 8, 8, 8, 8},
       {16.0 * std::numbers::pi / 3.0, 16.0, 16.0, 16.0, 16.0}},
  };
  rep.fd_worst = 0.0;
  for (std::size_t i = 0; i < rep.fd_cases.size(); ++i) {
    const auto& c = rep.fd_cases[i];
    const auto g = make_grid(c.params.dim(), c.points, c.box);
    double lmin = *std::min_element(c.box.begin(), c.box.end());
    const double hmax = lmin / *std::max_element(c.points.begin(), c.points.end());
    const FieldPair x = random_band_limited(g, seed + 31 * i, 0.3 / hmax, 0.15 * lmin, Gauge::tilde);
    rep.fd.push_back(fd_gradient_check(x, c.params, {1e-3, 1e-4, 1e-5}, 10, seed + 101 * i));
    rep.fd_worst = std::max(rep.fd_worst, rep.fd.back().best);
  }
  rep.brute_cases = {
      {"d1-n64", exact_params(0.5), {64}, {20.0}},
      {"d1-moving", WaveParams::make(1, 1.0, 1.0, {0.5}), {48}, {8.0 * std::numbers::pi}},
      {"d2-8x8", WaveParams::make(2, 0.25, 1.0, {0.3, -0.2}), {8, 8}, {6.0, 7.0}},
      {"d1-n32", WaveParams::make(1, 0.25, 1.0, {0.7}), {32}, {12.0}},
  };
  rep.brute_agree = true;
  for (std::size_t i = 0; i < rep.brute_cases.size(); ++i) {
    const auto& c = rep.brute_cases[i];
    const auto g = make_grid(c.params.dim(), c.points, c.box);
    const double hmax = c.box[0] / c.points[0];
    const FieldPair x = random_band_limited(g, seed + 57 * i, 0.5 / hmax);
    rep.brute.push_back(compare_brute(x, c.params));
    rep.brute_agree = rep.brute_agree && rep.brute.back().agree;
  }
  return rep;
}

}  // namespace qnls::oracle

