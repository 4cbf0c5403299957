#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qnls/field.hpp"
#include "qnls/functionals.hpp"
#include "qnls/params.hpp"

using namespace qnls;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("grid geometry is node centered with the origin on a node") {
  auto g = make_grid(2, {16, 8}, {4.0, 2.0});
  CHECK(g->size() == 128);
  CHECK(g->spacing(0) == doctest::Approx(0.25));
  CHECK(g->coordinates(0).front() == doctest::Approx(-2.0));
  CHECK(g->coordinates(0)[8] == doctest::Approx(0.0));
  CHECK(g->stride(0) == 8);
  CHECK(g->volume() == doctest::Approx(8.0));
  CHECK(g->wavenumbers(1)[1] == doctest::Approx(kPi));
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(make_grid(1, {15}, {1.0}), ValidationError);
  CHECK_THROWS_AS(make_grid(1, {4}, {1.0}), ValidationError);
  CHECK_THROWS_AS(make_grid(1, {16}, {-1.0}), ValidationError);
  CHECK_THROWS_AS(make_grid(2, {16}, {1.0}), ValidationError);
  CHECK_THROWS_AS(make_grid(6, std::vector<int>(6, 8), std::vector<double>(6, 1.0)), ValidationError);
  CHECK_THROWS_AS(make_grid(2, {1024, 1024}, {1.0, 1.0}, 1000), ValidationError);
}

TEST_CASE("forward then inverse transform is the identity") {
  auto g = make_grid(2, {16, 12}, {5.0, 3.0});
  auto f = ComplexField::sample(g, [](const Point& x) { return cplx(std::sin(x[0]) + x[1], std::cos(3 * x[1])); });
  auto back = from_spectral(g, to_spectral(f));
  CHECK(max_abs_diff(back, f) < 1e-13);
}

TEST_CASE("spectral derivatives of trigonometric data are exact") {
  auto g = make_grid(1, {32}, {2 * kPi});
  auto f = ComplexField::sample(g, [](const Point& x) { return cplx(std::sin(3 * x[0])); });
  auto df = derivative(f, 0);
  auto lap = laplacian(f);
  auto want = ComplexField::sample(g, [](const Point& x) { return cplx(3 * std::cos(3 * x[0])); });
  CHECK(max_abs_diff(df, want) < 1e-12);
  CHECK(max_abs_diff(lap, cplx(-9.0) * f) < 1e-11);
  CHECK(dirichlet(f) == doctest::Approx(9 * kPi).epsilon(1e-12));
  CHECK(norm_squared(f) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("current of a plane wave is minus its wavenumber times the mass") {
  auto g = make_grid(1, {32}, {2 * kPi});
  auto f = ComplexField::sample(g, [](const Point& x) { return std::polar(1.0, 2 * x[0]); });
  CHECK(current(f, 0) == doctest::Approx(-2 * norm_squared(f)).epsilon(1e-12));
}

TEST_CASE("phase modulation requires lattice wavenumbers") {
  auto g = make_grid(1, {32}, {2 * kPi});
  auto f = ComplexField::sample(g, [](const Point&) { return cplx(1.0); });
  const std::vector<double> on{3.0};
  const std::vector<double> off{0.5};
  CHECK(grid_compatible(*g, on));
  CHECK_FALSE(grid_compatible(*g, off));
  CHECK_NOTHROW(phase_modulate(f, on));
  CHECK_THROWS_AS(phase_modulate(f, off), ValidationError);
}

TEST_CASE("cell shifts agree with spectral shifts by whole cells") {
  auto g = make_grid(1, {64}, {20.0});
  auto f = ComplexField::sample(g, [](const Point& x) { return cplx(std::exp(-x[0] * x[0])); });
  const std::vector<long> cells{5};
  const std::vector<double> y{5 * g->spacing(0)};
  CHECK(max_abs_diff(shift_cells(f, cells), spectral_shift(f, y)) < 1e-10);
  auto moved = shift_cells(f, cells);
  CHECK(std::abs(moved[32 + 5] - f[32]) < 1e-15);
}

TEST_CASE("zero mode projection removes the mean") {
  auto g = make_grid(1, {16}, {3.0});
  auto f = ComplexField::sample(g, [](const Point& x) { return cplx(2.0 + x[0], 1.0); });
  auto p = zero_mode_project(f);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i];
  CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("translation symmetry leaves stripped functionals unchanged") {
  const double L = 8 * kPi;
  auto g = make_grid(1, {128}, {L});
  auto params = WaveParams::make(1, 1.0, 1.0, {0.5});
  auto u = ComplexField::sample(g, [](const Point& x) { return cplx(std::exp(-x[0] * x[0] / 2), 0.1 * x[0]); });
  auto v = ComplexField::sample(g, [](const Point& x) { return cplx(0.7 * std::exp(-x[0] * x[0] / 3)); });
  FieldPair p(u, v, Gauge::tilde);
  const std::vector<double> y{10 * g->spacing(0)};
  auto moved = translate_symmetry(p, y, params);
  auto a = action(p, params);
  auto b = action(moved, params);
  CHECK(b.L_tilde == doctest::Approx(a.L_tilde).epsilon(1e-12));
  CHECK(b.N_tilde == doctest::Approx(a.N_tilde).epsilon(1e-12));
}

TEST_CASE("field arithmetic and finiteness") {
  auto g = make_grid(1, {8}, {1.0});
  ComplexField a(g), b(g);
  a[0] = 1.0;
  b[0] = 2.0;
  CHECK((a + b)[0] == cplx(3.0));
  CHECK((b - a)[0] == cplx(1.0));
  CHECK((cplx(0, 1) * a)[0] == cplx(0, 1));
  CHECK(a.all_finite());
  a[1] = std::nan("");
  CHECK_FALSE(a.all_finite());
}
