#include "qnls/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qnls/parallel.hpp"

namespace qnls {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kWindow = 50;

double require_positive_coupling(double n) {
  if (!(n > 0.0)) throw ValidationError("N~ <= 0: the ray through this pair never meets the Nehari manifold");
  return n;
}

// Buffers of both components, with the handful of vector operations the
// iteration needs. Spectral dot products carry the weight h^d / N.
struct PairBuffer {
  Buffer u;
  Buffer v;

  explicit PairBuffer(std::size_t n = 0) : u(n), v(n) {}
  PairBuffer(Buffer a, Buffer b) : u(std::move(a)), v(std::move(b)) {}

  void scale(double s) {
    for (auto& z : u) z *= s;
    for (auto& z : v) z *= s;
  }
  void axpy(double t, const PairBuffer& d) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] += t * d.u[i];
      v[i] += t * d.v[i];
    }
  }
  // this = -z + beta * this
  void conjugate_update(const PairBuffer& z, double beta) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = beta * u[i] - z.u[i];
      v[i] = beta * v[i] - z.v[i];
    }
  }
};

double dot(const PairBuffer& a, const PairBuffer& b, double weight) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    acc += (a.u[i] * std::conj(b.u[i])).real() + (a.v[i] * std::conj(b.v[i])).real();
  }
  return acc * weight;
}

PairBuffer forward(const Grid& g, PairBuffer p) {
  g.forward(p.u);
  g.forward(p.v);
  return p;
}

PairBuffer inverse(const Grid& g, PairBuffer p) {
  g.inverse(p.u);
  g.inverse(p.v);
  return p;
}

// First t > 0 where d/dt log J along x + t d changes sign, i.e. where
// 3 L' N - 2 L N' >= 0, or where N reaches zero. Returns 0 when no point
// without a clear increase of J is found.
double line_search(double L0, double L1, double L2, const std::array<double, 4>& n, double guess) {
  auto N = [&](double t) { return n[0] + t * (n[1] + t * (n[2] + t * n[3])); };
  auto L = [&](double t) { return L0 + t * (L1 + t * L2); };
  auto stop = [&](double t) {
    const double nt = N(t);
    if (nt <= 0.0) return true;
    const double dl = L1 + 2.0 * L2 * t;
    const double dn = n[1] + t * (2.0 * n[2] + 3.0 * n[3] * t);
    return 3.0 * dl * nt - 2.0 * L(t) * dn >= 0.0;
  };
  // Geometric scan from far below the previous step, then a uniform scan of
  // the bracketing octave, so the first crossing is the one found.
  double lo = 0.0;
  double hi = (guess > 0.0 ? guess : 1.0) * std::ldexp(1.0, -40);
  for (int k = 0; k < 400 && !stop(hi); ++k) {
    lo = hi;
    hi *= 2.0;
  }
  if (!stop(hi)) return 0.0;
  constexpr int kScan = 64;
  const double base = lo;
  const double width = hi - lo;
  for (int k = 1; k <= kScan; ++k) {
    const double t = base + width * k / kScan;
    if (stop(t)) {
      hi = t;
      break;
    }
    lo = t;
  }
  for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (stop(mid) ? hi : lo) = mid;
  }
  const double t = N(hi) > 0.0 ? hi : lo;
  auto f = [&](double s) { return 3.0 * std::log(L(s)) - 2.0 * std::log(N(s)); };
  if (!(N(t) > 0.0) || !(f(t) <= f(0.0) + 1e-12)) return 0.0;
  return t;
}

// Periodic distance of coordinate x from c on a box of length L.
double wrapped(double x, double c, double L) {
  double d = std::fmod(x - c, L);
  if (d > 0.5 * L) d -= L;
  if (d < -0.5 * L) d += L;
  return std::abs(d);
}

// Share of the L^2 mass of the selected components lying in the outer shell
// around their circular centroid.
double shell_fraction(const Grid& g, std::span<const cplx> u, std::span<const cplx> v, bool use_u, bool use_v) {
  std::vector<double> rho(g.size(), 0.0);
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = (use_u ? std::norm(u[i]) : 0.0) + (use_v ? std::norm(v[i]) : 0.0);
  const double total = std::accumulate(rho.begin(), rho.end(), 0.0);
  if (!(total > 0.0)) return 1.0;
  std::vector<double> center(g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    const double k1 = kTwoPi / g.box()[j];
    cplx acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) acc += rho[i] * std::polar(1.0, k1 * g.coordinates(j)[g.axis_index(i, j)]);
    center[j] = std::arg(acc) / k1;
  }
  double outer = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      if (wrapped(g.coordinates(j)[g.axis_index(i, j)], center[j], g.box()[j]) > 0.4 * g.box()[j]) {
        outer += rho[i];
        break;
      }
    }
  }
  return outer / total;
}

struct SeedRun {
  FieldPair x;
  SeedOutcome outcome;
  std::vector<double> J;
};

SeedRun descend(const ActionModel& model, const FieldPair& start, const SolverOptions& opts) {
  const Grid& g = model.grid();
  const GridPtr& grid = model.grid_ptr();
  const double weight = g.cell_volume() / static_cast<double>(g.size());
  const double kappa = model.params().kappa;
  const double floor = std::pow(kTwoPi / *std::max_element(g.box().begin(), g.box().end()), 2);
  const double sigma_u = std::max(model.a(), floor);
  const double sigma_v = std::max(2.0 * model.b(), kappa * floor);
  const auto& k2 = g.k_squared();

  PairBuffer x_hat = forward(g, PairBuffer(start.first.buffer(), start.second.buffer()));
  model.project_massless_spectral(x_hat.u, x_hat.v);
  PairBuffer x = inverse(g, x_hat);

  PairBuffer d(g.size()), d_hat(g.size()), z_old_hat(g.size());
  double gz_old = 0.0;
  double step = 1.0;
  bool restart = true;

  SeedRun run;
  SeedOutcome& out = run.outcome;
  double L = 0.0, N = 0.0;
  auto project = [&] {
    L = model.quadratic_spectral(x_hat.u, x_hat.v);
    N = require_positive_coupling(model.cubic(x.u, x.v));
    const double s = 2.0 * L / (3.0 * N);
    x.scale(s);
    x_hat.scale(s);
    d.scale(s);
    d_hat.scale(s);
    L *= s * s;
    N *= s * s * s;
  };
  project();

  double relative = 0.0;
  int it = 0;
  for (;; ++it) {
    const double J = 4.0 / 27.0 * L * L * L / (N * N);
    run.J.push_back(J);
    out.quadratic_history.push_back(L);
    if (!std::isfinite(J)) throw NumericalError("non-finite Weinstein value during minimization");

    // S~'(x) on the manifold, which is the gradient of log J up to 3/L~.
    PairBuffer ax_hat = x_hat;
    model.apply_quadratic_symbol(ax_hat.u, ax_hat.v);
    PairBuffer grad = inverse(g, ax_hat);
    Buffer nu(g.size()), nv(g.size());
    model.cubic_gradient(x.u, x.v, nu, nv);
    for (std::size_t i = 0; i < nu.size(); ++i) {
      grad.u[i] -= nu[i];
      grad.v[i] -= nv[i];
    }
    PairBuffer g_hat = forward(g, std::move(grad));
    model.project_massless_spectral(g_hat.u, g_hat.v);
    const double xnorm = std::sqrt(dot(x_hat, x_hat, weight));
    relative = std::sqrt(dot(g_hat, g_hat, weight)) / xnorm;

    if (it >= kWindow && it >= opts.min_iters) {
      const double drop = (run.J[it - kWindow] - J) / J;
      if (relative <= opts.residual_target && drop <= opts.tol) {
        out.stop = "residual";
        break;
      }
      if (drop <= 1e-15) {
        out.stop = "stagnated";
        break;
      }
    }
    if (it >= opts.max_iters) {
      out.stop = "max_iters";
      break;
    }

    PairBuffer z_hat = g_hat;
    for (std::size_t i = 0; i < k2.size(); ++i) {
      z_hat.u[i] /= k2[i] + sigma_u;
      z_hat.v[i] /= kappa * k2[i] + sigma_v;
    }
    const double gz = dot(g_hat, z_hat, weight);
    double beta = 0.0;
    if (restart) d_hat = d = PairBuffer(g.size());
    if (!restart && gz_old > 0.0) beta = std::max(0.0, (gz - dot(g_hat, z_old_hat, weight)) / gz_old);
    PairBuffer z = inverse(g, z_hat);

    double L1 = 0.0, L2 = 0.0;
    std::array<double, 4> n{};
    double slope = 0.0;
    for (int attempt = 0; attempt < 2; ++attempt) {
      d.conjugate_update(z, beta);
      d_hat.conjugate_update(z_hat, beta);
      L1 = dot(ax_hat, d_hat, weight);
      n = model.cubic_along(x.u, x.v, d.u, d.v);
      slope = 3.0 * L1 * n[0] - 2.0 * L * n[1];
      if (slope < 0.0 || beta == 0.0) break;
      beta = 0.0;
    }
    if (!(slope < 0.0)) {
      // No descent direction left at roundoff level: the iterate is
      // stationary, and further iterations would repeat it unchanged.
      out.stop = "stationary";
      for (int k = 0; k < kWindow; ++k) {
        run.J.push_back(J);
        out.quadratic_history.push_back(L);
      }
      break;
    }
    L2 = model.quadratic_spectral(d_hat.u, d_hat.v);
    const double t = line_search(L, L1, L2, n, step);
    if (t == 0.0) {
      if (!restart) {
        restart = true;
        continue;
      }
      out.stop = "stationary";
      for (int k = 0; k < kWindow; ++k) {
        run.J.push_back(J);
        out.quadratic_history.push_back(L);
      }
      break;
    }
    step = t;
    x.axpy(step, d);
    x_hat.axpy(step, d_hat);
    if (it % 100 == 99) x_hat = forward(g, x);
    project();

    z_old_hat = std::move(z_hat);
    gz_old = gz;
    restart = false;
  }

  FieldPair result(ComplexField(grid, std::move(x.u)), ComplexField(grid, std::move(x.v)), Gauge::tilde);
  const bool massive_u = !model.first_massless();
  const bool massive_v = !model.second_massless();
  const bool any_massive = massive_u || massive_v;
  out.shell = shell_fraction(g, result.first.values(), result.second.values(), massive_u || !any_massive,
                             massive_v || !any_massive);
  out.iterations = it;
  out.J = run.J.back();
  out.residual = relative;
  const std::size_t last = run.J.size() - 1;
  const double drop = (run.J[last >= kWindow ? last - kWindow : 0] - run.J[last]) / run.J[last];
  out.converged = relative <= opts.residual_tol && drop <= opts.tol && out.shell <= opts.localization;
  run.x = std::move(result);
  return run;
}

// Characteristic length of the ground state, from the positive mass terms.
double profile_length(const ActionModel& model) {
  const double m = model.a() > 0.0 ? model.a() : 2.0 * model.b() / model.params().kappa;
  return m > 0.0 ? 2.0 / std::sqrt(m) : 2.0;
}

FieldPair make_seed(const ActionModel& model, int index, std::uint64_t seed) {
  const GridPtr& grid = model.grid_ptr();
  const Grid& g = *grid;
  const double min_box = *std::min_element(g.box().begin(), g.box().end());
  const double ell = std::min(profile_length(model), 0.1 * min_box);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  ComplexField u, v;
  if (index == 0) {
    auto sech2 = [&](double scale) {
      return ComplexField::sample(grid, [&](const Point& p) {
        double r2 = 0.0;
        for (int j = 0; j < g.dim(); ++j) r2 += p[j] * p[j];
        const double s = 1.0 / std::cosh(std::sqrt(r2) / scale);
        return cplx(s * s);
      });
    };
    u = sech2(ell);
    v = sech2(ell);
  } else {
    auto gaussian = [&](double width, const std::vector<double>& center) {
      return ComplexField::sample(grid, [&](const Point& p) {
        double r2 = 0.0;
        for (int j = 0; j < g.dim(); ++j) r2 += (p[j] - center[j]) * (p[j] - center[j]);
        return cplx(std::exp(-r2 / (2.0 * width * width)));
      });
    };
    const double wu = ell * (0.4 + 0.8 * unit(rng));
    const double wv = wu * (0.6 + 0.6 * unit(rng));
    std::vector<double> cu(g.dim()), cv(g.dim());
    for (int j = 0; j < g.dim(); ++j) {
      cu[j] = (unit(rng) - 0.5) * 0.2 * g.box()[j];
      cv[j] = cu[j] + (unit(rng) - 0.5) * wu;
    }
    u = gaussian(wu, cu);
    v = gaussian(wv, cv);
  }
  if (!model.params().beta_zero()) v = phase_modulate(v, model.params().beta());
  if (model.first_massless()) u = zero_mode_project(u);
  if (model.second_massless()) v = zero_mode_project(v);
  FieldPair p(std::move(u), std::move(v), Gauge::tilde);
  if (model.cubic(p) <= 0.0) p.second *= -1.0;
  return p;
}

// Moves the peak of |first|^2 onto the origin node with a symmetry translation.
FieldPair recenter(const FieldPair& p, const WaveParams& params) {
  const Grid& g = p.grid();
  std::size_t peak = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < p.first.size(); ++i) {
    const double r = std::norm(p.first[i]);
    if (r > best) {
      best = r;
      peak = i;
    }
  }
  std::vector<double> y(g.dim());
  for (int j = 0; j < g.dim(); ++j) y[j] = (g.points()[j] / 2 - g.axis_index(peak, j)) * g.spacing(j);
  return translate_symmetry(p, y, params);
}

void require_solvable(const WaveParams& params, bool exploratory) {
  if (params.kind == WaveCase::exploratory && !exploratory)
    throw ValidationError("parameters lie outside cases A, B, C; rerun with --exploratory");
  if (params.kind == WaveCase::C && params.dim() == 4 && !exploratory)
    throw ValidationError("case C in d = 4 is not covered by the existence theory; rerun with --exploratory");
}

double vector_norm(const std::vector<double>& c) {
  double s = 0.0;
  for (double x : c) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::pair<FieldPair, double> nehari_project(const FieldPair& tilde, const WaveParams& params) {
  if (tilde.gauge != Gauge::tilde) throw ValidationError("nehari_project needs a tilde-gauge pair");
  const ActionModel model(tilde.grid_ptr(), params);
  const double n = require_positive_coupling(model.cubic(tilde));
  const double lambda = 2.0 * model.quadratic(tilde) / (3.0 * n);
  return {tilde.scaled(lambda), lambda};
}

double weinstein_value(const FieldPair& tilde, const WaveParams& params) {
  if (tilde.gauge != Gauge::tilde) throw ValidationError("weinstein_value needs a tilde-gauge pair");
  const ActionModel model(tilde.grid_ptr(), params);
  const double n = require_positive_coupling(model.cubic(tilde));
  const double l = model.quadratic(tilde);
  return 4.0 / 27.0 * l * l * l / (n * n);
}

std::vector<double> quantize_box(const std::vector<double>& box, const std::vector<std::vector<double>>& wavenumbers) {
  std::vector<double> out = box;
  for (std::size_t j = 0; j < box.size(); ++j) {
    std::vector<double> ks;
    for (const auto& k : wavenumbers)
      if (j < k.size() && std::abs(k[j]) > 1e-14) ks.push_back(std::abs(k[j]));
    if (ks.empty()) continue;
    auto fits = [&](double L) {
      return std::all_of(ks.begin(), ks.end(), [&](double k) {
        const double m = L * k / kTwoPi;
        return std::abs(m - std::round(m)) <= 1e-9 * std::max(1.0, std::abs(m));
      });
    };
    double best = -1.0;
    for (double k : ks) {
      const double m0 = std::round(box[j] * k / kTwoPi);
      for (int dm = -64; dm <= 64; ++dm) {
        const double m = m0 + dm;
        if (m < 1.0) continue;
        const double L = kTwoPi * m / k;
        if (fits(L) && (best < 0.0 || std::abs(L - box[j]) < std::abs(best - box[j]))) best = L;
      }
    }
    if (best < 0.0) throw ValidationError("no nearby box length makes the requested wavenumbers lattice-compatible");
    out[j] = best;
  }
  return out;
}

DecayFit decay_fit(const ComplexField& f) {
  const Grid& g = f.grid();
  double peak = 0.0;
  for (const auto& z : f.values()) peak = std::max(peak, std::abs(z));
  if (!(peak > 0.0)) throw ValidationError("decay fit of a zero field");
  std::size_t origin = 0;
  for (int j = 0; j < g.dim(); ++j) origin += static_cast<std::size_t>(g.points()[j] / 2) * g.stride(j);
  const double L = g.box()[0];
  std::vector<double> xs, ys;
  double window_max = 0.0;
  for (int i = g.points()[0] / 2; i < g.points()[0]; ++i) {
    const double x = g.coordinates(0)[i];
    if (x < 0.25 * L || x > 0.45 * L) continue;
    const double a = std::abs(f[origin + (i - g.points()[0] / 2) * g.stride(0)]);
    window_max = std::max(window_max, a);
    if (a > 1e-12 * peak) {
      xs.push_back(x);
      ys.push_back(std::log(a));
    }
  }
  if (window_max > 1e-2 * peak) throw ValidationError("tail has not decayed by two decades: box too small");
  if (xs.size() < 8) throw ValidationError("tail lies below the floating-point floor: box too large");

  auto fit = [&](const std::vector<double>& t, double& slope) {
    const double n = static_cast<double>(t.size());
    const double mt = std::accumulate(t.begin(), t.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      stt += (t[i] - mt) * (t[i] - mt);
      sty += (t[i] - mt) * (ys[i] - my);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    slope = sty / stt;
    return syy > 0.0 ? sty * sty / (stt * syy) : 1.0;
  };
  std::vector<double> logs(xs.size());
  std::transform(xs.begin(), xs.end(), logs.begin(), [](double x) { return std::log(x); });
  DecayFit out;
  double s = 0.0;
  out.exp_r2 = fit(xs, s);
  out.exp_rate = -s;
  out.alg_r2 = fit(logs, s);
  out.alg_power = -s;
  out.samples = static_cast<int>(xs.size());
  out.model = out.exp_r2 >= out.alg_r2 ? "exp" : "alg";
  return out;
}

GroundStateResult minimize(const WaveParams& params, const SolverOptions& opts) {
  require_solvable(params, opts.exploratory);
  if (static_cast<int>(opts.points.size()) != params.dim() || static_cast<int>(opts.box.size()) != params.dim())
    throw ValidationError("grid specification does not match the dimension");
  if (opts.seeds < 1) throw ValidationError("at least one seed is required");

  GroundStateResult res;
  res.params = params;
  res.requested_box = opts.box;
  res.box = (opts.quantize_box && !params.beta_zero()) ? quantize_box(opts.box, {params.beta()}) : opts.box;
  res.points = opts.points;
  const GridPtr grid = make_grid(params.dim(), res.points, res.box, opts.max_points);
  const ActionModel model(grid, params);

  std::vector<std::optional<SeedRun>> runs(opts.seeds);
  std::vector<std::string> failures(opts.seeds);
  parallel_for(static_cast<std::size_t>(opts.seeds), opts.threads, [&](std::size_t i) {
    const std::uint64_t s = opts.seed + 7919 * i;
    try {
      FieldPair start;
      if (i == 0 && opts.warm_start) {
        if (!opts.warm_start->grid().same_shape(*grid)) throw ValidationError("warm start lives on a different grid");
        start = FieldPair(ComplexField(grid, opts.warm_start->first.buffer()),
                          ComplexField(grid, opts.warm_start->second.buffer()), Gauge::tilde);
      } else {
        start = make_seed(model, static_cast<int>(i), s);
      }
      runs[i] = descend(model, start, opts);
      runs[i]->outcome.seed = s;
    } catch (const ValidationError& e) {
      failures[i] = e.what();
    }
  });

  int best = -1;
  for (int pass = 0; pass < 2 && best < 0; ++pass) {
    for (int i = 0; i < opts.seeds; ++i) {
      if (!runs[i] || (pass == 0 && !runs[i]->outcome.converged)) continue;
      if (best < 0 || runs[i]->outcome.J < runs[best]->outcome.J) best = i;
    }
  }
  for (int i = 0; i < opts.seeds; ++i) {
    if (runs[i]) {
      SeedOutcome o = runs[i]->outcome;
      if (opts.reference_mu) o.below_reference = o.J < *opts.reference_mu * (1.0 - 1e-6);
      res.seeds.push_back(std::move(o));
    } else {
      SeedOutcome o;
      o.seed = opts.seed + 7919 * i;
      o.stop = failures[i];
      res.seeds.push_back(std::move(o));
    }
  }
  if (best < 0) throw NumericalError("no seed reached N~ > 0");

  res.best_seed = best;
  res.weinstein_history = runs[best]->J;
  res.profile = nehari_project(recenter(runs[best]->x, params), params).first;
  res.converged = runs[best]->outcome.converged;
  const FunctionalReport rep = action(res.profile, params);
  res.mu = rep.S_tilde;
  const auto [r1, r2] = el_residual(res.profile, params);
  res.residual_first = r1;
  res.residual_second = r2;
  res.relative_residual =
      std::hypot(r1, r2) / std::sqrt(norm_squared(res.profile.first) + norm_squared(res.profile.second));
  if (params.beta_zero()) res.pohozaev = pohozaev_defects(res.profile, params);
  auto fit = [](const ComplexField& f) {
    try {
      return decay_fit(f);
    } catch (const ValidationError& e) {
      DecayFit none;
      none.model = "none";
      none.note = e.what();
      return none;
    }
  };
  res.decay = {fit(res.profile.first), fit(res.profile.second)};
  return res;
}

MuEstimate mu_ladder(const WaveParams& params, const std::vector<Level>& ladder, SolverOptions opts) {
  if (ladder.empty()) throw ValidationError("empty refinement ladder");
  MuEstimate est;
  for (const Level& level : ladder) {
    opts.points = level.points;
    opts.box = level.box;
    const GroundStateResult r = minimize(params, opts);
    if (!r.converged) throw ConvergenceError("mu ladder: a refinement level did not converge");
    est.levels.push_back(r.mu);
  }
  est.value = est.levels.back();
  est.uncertainty = est.levels.size() > 1 ? std::abs(est.levels.back() - est.levels[est.levels.size() - 2]) : 0.0;
  est.converged = true;
  return est;
}

ScalingReport scaling_check(const WaveParams& params, double lambda, const SolverOptions& opts) {
  if (!(lambda > 0.0)) throw ValidationError("scaling factor must be positive");
  if (!(params.omega > 0.0) || params.speed() == 0.0) throw ValidationError("scaling law needs omega > 0 and c != 0");
  std::vector<double> c2 = params.c;
  for (double& x : c2) x *= lambda;
  const WaveParams scaled = WaveParams::make(params.dim(), params.kappa, lambda * lambda * params.omega, c2, opts.exploratory);

  ScalingReport rep;
  rep.exponent = 6 - params.dim();
  rep.factor = lambda;
  const GroundStateResult base = minimize(params, opts);
  SolverOptions o2 = opts;
  o2.box = base.box;
  for (double& L : o2.box) L /= lambda;
  const GroundStateResult other = minimize(scaled, o2);
  rep.mu_base = base.mu;
  rep.mu_scaled = other.mu;
  rep.ratio = other.mu / base.mu;
  rep.expected = std::pow(lambda, rep.exponent);
  rep.mismatch = std::abs(rep.ratio / rep.expected - 1.0);
  rep.converged = base.converged && other.converged;
  return rep;
}

DirectionReport direction_check(int dim, double kappa, double omega, double speed, const SolverOptions& opts) {
  if (dim < 2) throw ValidationError("direction check needs d >= 2");
  std::vector<double> c1(dim, 0.0), c2(dim, 0.0);
  c1[0] = speed;
  c2[1] = speed;
  const WaveParams p1 = WaveParams::make(dim, kappa, omega, c1, opts.exploratory);
  const WaveParams p2 = WaveParams::make(dim, kappa, omega, c2, opts.exploratory);
  DirectionReport rep;
  rep.anisotropic = opts.points.size() < 2 || opts.points[0] != opts.points[1] || opts.box[0] != opts.box[1];
  SolverOptions o = opts;
  if (speed != 0.0 && !p1.beta_zero()) {
    std::vector<double> both(dim, 0.0);
    both[0] = both[1] = std::abs(p1.beta()[0]);
    o.box = quantize_box(opts.box, {both});
  }
  const GroundStateResult r1 = minimize(p1, o);
  const GroundStateResult r2 = minimize(p2, o);
  rep.mu_first_axis = r1.mu;
  rep.mu_second_axis = r2.mu;
  rep.difference = std::abs(r1.mu - r2.mu) / std::max(std::abs(r1.mu), std::abs(r2.mu));
  rep.converged = r1.converged && r2.converged;
  return rep;
}

BoostReport resonance_boost_check(double kappa, double omega, const std::vector<double>& c,
                                  const SolverOptions& opts) {
  if (std::abs(kappa - 0.5) > kCaseTolerance) throw ValidationError("the boost identity needs kappa = 1/2");
  const int dim = static_cast<int>(c.size());
  const double c2 = vector_norm(c) * vector_norm(c);
  const WaveParams boosted = WaveParams::make(dim, 0.5, omega + c2 / 4.0, c, opts.exploratory);
  const WaveParams rest = WaveParams::make(dim, 0.5, omega, std::vector<double>(dim, 0.0), opts.exploratory);
  BoostReport rep;
  const GroundStateResult rb = minimize(boosted, opts);
  const GroundStateResult rr = minimize(rest, opts);
  rep.mu_boosted = rb.mu;
  rep.mu_rest = rr.mu;
  rep.difference = std::abs(rb.mu - rr.mu) / std::max(std::abs(rb.mu), std::abs(rr.mu));
  rep.converged = rb.converged && rr.converged;
  if (grid_compatible(rb.profile.grid(), boosted.first_phase())) {
    const FunctionalReport plain = action(restore_phases(rb.profile, boosted), boosted);
    rep.plain_action = plain.S;
    rep.plain_nehari = plain.K;
  }
  return rep;
}

}  // namespace qnls
