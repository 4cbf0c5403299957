#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qnls/dynamics.hpp"
#include "qnls/functionals.hpp"
#include "qnls/oracle.hpp"

using namespace qnls;

namespace {

FieldPair smooth_pair(const GridPtr& g) {
  auto u = ComplexField::sample(
      g, [](const Point& x) { return 0.5 * std::exp(-x[0] * x[0] / 2) * std::polar(1.0, 0.3 * std::sin(x[0])); });
  auto v = ComplexField::sample(g, [](const Point& x) { return cplx(0.35 * std::exp(-(x[0] - 1) * (x[0] - 1) / 3)); });
  return FieldPair(u, v, Gauge::plain);
}

}  // namespace

TEST_CASE("the free flow of a plane wave is an exact phase rotation") {
  const double L = 2 * std::numbers::pi;
  auto g = make_grid(1, {32}, {L});
  auto u = ComplexField::sample(g, [](const Point& x) { return std::polar(1.0, 3 * x[0]); });
  auto v = ComplexField::sample(g, [](const Point& x) { return std::polar(1.0, 2 * x[0]); });
  const double kappa = 0.7, dt = 0.01;
  auto p = strang_step(FieldPair(u, v, Gauge::plain), dt, kappa, false);
  CHECK(std::abs(p.first[5] - u[5] * std::polar(1.0, -9 * dt)) < 1e-14);
  CHECK(std::abs(p.second[5] - v[5] * std::polar(1.0, -4 * kappa * dt)) < 1e-14);
}

TEST_CASE("charge is conserved to roundoff and energy to the splitting order") {
  auto g = make_grid(1, {256}, {40.0});
  EvolveOptions o;
  o.T = 0.5;
  o.cadence = 50;
  const auto tr = evolve(smooth_pair(g), 2.0, o);
  CHECK(tr.reason == Termination::completed);
  CHECK(tr.time.back() == doctest::Approx(0.5));
  CHECK(std::abs(tr.Q.back() - tr.Q.front()) < 1e-12 * tr.Q.front());
  CHECK(std::abs(tr.E.back() - tr.E.front()) < 1e-6 * std::abs(tr.E.front()));
}

TEST_CASE("conjugation reverses time") {
  auto g = make_grid(1, {128}, {30.0});
  const auto p = smooth_pair(g);
  EvolveOptions o;
  o.T = 0.2;
  o.cadence = 200;
  const auto fw = evolve(p, 2.0, o).final_state;
  const auto bw = evolve(conjugate(fw), 2.0, o).final_state;
  CHECK(oracle::relative_distance(conjugate(bw), p) < 1e-11);
}

TEST_CASE("step counts must divide the horizon") {
  auto g = make_grid(1, {64}, {20.0});
  EvolveOptions o;
  o.T = 1.0;
  o.dt = 0.3;
  CHECK_THROWS_AS(evolve(smooth_pair(g), 2.0, o), ValidationError);
  o.dt = 1e-3;
  o.cadence = 7;
  CHECK_THROWS_AS(evolve(smooth_pair(g), 2.0, o), ValidationError);
}

TEST_CASE("blowup monitor needs both gradient growth and a spectral tail") {
  EvolutionTrace t;
  t.time = {0.0, 1.0};
  t.grad_first = {1.0, 10.0};
  t.grad_second = {0.0, 0.0};
  t.tail_first = {0.0, 0.2};
  t.tail_second = {0.0, 0.0};
  CHECK(blowup_monitor(t) == Termination::blowup_indicated);
  t.grad_first = {1.0, 2.0};
  CHECK(blowup_monitor(t) == Termination::underresolved);
  t.tail_first = {0.0, 0.01};
  CHECK(blowup_monitor(t) == Termination::completed);
}

TEST_CASE("tail fraction separates smooth data from grid noise") {
  auto g = make_grid(1, {64}, {20.0});
  auto smooth = ComplexField::sample(g, [](const Point& x) { return cplx(std::exp(-x[0] * x[0])); });
  auto rough = ComplexField::sample(g, [&](const Point& x) {
    return cplx(std::cos(std::numbers::pi * x[0] / g->spacing(0)));
  });
  CHECK(tail_fraction(smooth) < 1e-10);
  CHECK(tail_fraction(rough) > 0.99);
}

TEST_CASE("the exact standing wave keeps its shape") {
  auto g = make_grid(1, {512}, {80.0});
  const auto p = oracle::exact_pair(0.5, g, Gauge::plain);
  const auto r = traveling_wave_test(p, oracle::exact_params(0.5), 1.0, 1e-3, 4);
  CHECK(r.max_error < 1e-5);
}

TEST_CASE("Galilean boosts commute with the flow at kappa = 1/2") {
  const double L = 8 * std::numbers::pi;
  auto g = make_grid(1, {128}, {L});
  const double c = 1.0;
  const double T = 4 * g->spacing(0) / c;
  const auto r = galilean_check(smooth_pair(g), 0.5, {c}, T, T / 200);
  CHECK(r.discrepancy < 1e-10);
  CHECK_THROWS_AS(galilean_check(smooth_pair(g), 1.0, {c}, T, T / 200), ValidationError);
}

TEST_CASE("a small first component stays small next to a free second one") {
  auto g = make_grid(1, {128}, {30.0});
  auto u = ComplexField::sample(g, [](const Point& x) { return cplx(1e-6 * std::exp(-x[0] * x[0])); });
  auto v = ComplexField::sample(g, [](const Point& x) { return cplx(0.3 * std::exp(-x[0] * x[0] / 4)); });
  const auto r = semitrivial_perturbation(FieldPair(u, v, Gauge::plain), 1.0, 1.0, 1e-3, 100);
  CHECK(r.reason == Termination::completed);
  CHECK(r.max_free_error < 1e-9);
  CHECK(r.max_growth < 10.0);
}
