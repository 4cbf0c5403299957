#include <doctest.h>

#include <cmath>

#include "qnls/groundstate.hpp"
#include "qnls/oracle.hpp"

using namespace qnls;

TEST_CASE("Nehari projection puts the pair on K = 0") {
  auto g = make_grid(1, {128}, {40.0});
  auto params = WaveParams::make(1, 2.0, 1.0, {0.0});
  auto u = ComplexField::sample(g, [](const Point& x) { return cplx(std::exp(-x[0] * x[0] / 4)); });
  auto v = ComplexField::sample(g, [](const Point& x) { return cplx(std::exp(-x[0] * x[0] / 2)); });
  auto [p, lambda] = nehari_project(FieldPair(u, v, Gauge::tilde), params);
  CHECK(lambda > 0.0);
  const auto r = action(p, params);
  CHECK(std::abs(r.K_tilde) < 1e-10 * r.L_tilde);
  CHECK(weinstein_value(p, params) == doctest::Approx(r.S_tilde).epsilon(1e-12));
}

TEST_CASE("a single seed recovers the exact ground state") {
  auto params = oracle::exact_params(0.5);
  SolverOptions o;
  o.points = {512};
  o.box = {80.0};
  o.seeds = 1;
  const auto r = minimize(params, o);
  REQUIRE(r.converged);
  CHECK(r.mu == doctest::Approx(oracle::exact_solution(0.5).S).epsilon(1e-6));
  const auto ref = oracle::exact_pair(0.5, r.profile.grid_ptr());
  CHECK(oracle::relative_distance(oracle::align_pair(r.profile, ref), ref) < 1e-4);
  CHECK(r.decay.first.model == "exp");
  CHECK(r.decay.first.exp_rate == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("box quantization stretches to the nearest lattice") {
  const auto box = quantize_box({10.0}, {{0.5}});
  const double k = 2 * 3.141592653589793 / box[0];
  CHECK(box[0] >= 10.0);
  CHECK(std::abs(0.5 / k - std::round(0.5 / k)) < 1e-12);
  CHECK(quantize_box({4 * 3.141592653589793}, {{0.5}})[0] == doctest::Approx(4 * 3.141592653589793));
}

TEST_CASE("inadmissible parameters never reach the solver") {
  SolverOptions o;
  o.points = {64};
  o.box = {20.0};
  auto p = WaveParams::make(1, 0.5, 0.25, {1.0}, true);
  CHECK_THROWS_AS(minimize(p, o), ValidationError);
}

TEST_CASE("an unreachable mass ladder level raises ConvergenceError") {
  auto params = oracle::exact_params(0.5);
  SolverOptions o;
  o.seeds = 1;
  o.max_iters = 2;
  o.min_iters = 0;
  CHECK_THROWS_AS(mu_ladder(params, {Level{{64}, {40.0}}}, o), ConvergenceError);
}
