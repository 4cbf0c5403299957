#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qnls/checkpoint.hpp"
#include "qnls/functionals.hpp"
#include "qnls/oracle.hpp"

using namespace qnls;

namespace {

GridPtr exact_grid() { return make_grid(1, {512}, {80.0}); }

}  // namespace

TEST_CASE("functionals of the exact pair match quadrature") {
  const auto ex = oracle::exact_solution(0.5);
  const auto p = oracle::exact_pair(0.5, exact_grid(), Gauge::plain);
  const auto r = action(p, oracle::exact_params(0.5));
  REQUIRE(r.has_plain);
  CHECK(r.L == doctest::Approx(ex.L).epsilon(1e-9));
  CHECK(r.N == doctest::Approx(ex.N).epsilon(1e-9));
  CHECK(r.S == doctest::Approx(ex.S).epsilon(1e-9));
  CHECK(r.Q == doctest::Approx(ex.Q).epsilon(1e-9));
  CHECK(r.E == doctest::Approx(ex.E).epsilon(1e-9));
  CHECK(std::abs(r.K) < 1e-8);
  CHECK(std::abs(r.P[0]) < 1e-12);
}

TEST_CASE("the exact pair is stationary and satisfies the Pohozaev identities") {
  const auto p = oracle::exact_pair(0.5, exact_grid(), Gauge::tilde);
  const auto params = oracle::exact_params(0.5);
  auto [r1, r2] = el_residual(p, params);
  CHECK(r1 < 1e-9);
  CHECK(r2 < 1e-9);
  auto [d1, d2] = pohozaev_defects(p, params);
  CHECK(std::abs(d1) < 1e-8);
  CHECK(std::abs(d2) < 1e-8);
}

TEST_CASE("stripping and restoring phases round-trips") {
  auto g = make_grid(1, {128}, {8 * 3.141592653589793});
  auto params = WaveParams::make(1, 1.0, 1.0, {1.0});
  auto u = ComplexField::sample(g, [](const Point& x) { return cplx(std::exp(-x[0] * x[0] / 4)); });
  auto v = ComplexField::sample(g, [](const Point& x) { return cplx(0.5 * std::exp(-x[0] * x[0] / 2)); });
  FieldPair plain(u, v, Gauge::plain);
  auto back = restore_phases(strip_phases(plain, params), params);
  CHECK(oracle::relative_distance(back, plain) < 1e-14);
  auto r = action(plain, params);
  REQUIRE(r.has_tilde);
  CHECK(r.S == doctest::Approx(r.S_tilde).epsilon(1e-11));
  CHECK(r.K == doctest::Approx(r.K_tilde).epsilon(1e-11));
}

TEST_CASE("plain functionals refuse tilde pairs with moving phases") {
  auto g = make_grid(1, {64}, {8 * 3.141592653589793});
  FieldPair t{ComplexField(g), ComplexField(g), Gauge::tilde};
  CHECK_THROWS_AS(energy(t, 1.0), ValidationError);
}

TEST_CASE("checkpoints round-trip and reject foreign files") {
  const auto dir = std::filesystem::temp_directory_path() / "qnls_checkpoint_test";
  std::filesystem::create_directories(dir);
  const auto p = oracle::exact_pair(0.5, make_grid(1, {128}, {80.0}), Gauge::tilde);
  save_pair(p, CheckpointMeta{2.0, 1.0, {0.0}}, dir / "a.qnlsf");
  const auto cp = load_pair(dir / "a.qnlsf");
  CHECK(cp.pair.gauge == Gauge::tilde);
  CHECK(cp.meta.kappa == 2.0);
  CHECK(cp.pair.grid().box()[0] == 80.0);
  CHECK(oracle::relative_distance(cp.pair, p) == 0.0);
  std::ofstream(dir / "b.qnlsf") << "not a checkpoint";
  CHECK_THROWS_AS(load_pair(dir / "b.qnlsf"), FormatError);
  CHECK_THROWS_AS(load_pair(dir / "missing.qnlsf"), FormatError);
  std::filesystem::remove_all(dir);
}
