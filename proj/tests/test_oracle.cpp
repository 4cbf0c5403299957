#include <doctest.h>

#include <cmath>

#include "qnls/oracle.hpp"

using namespace qnls;

TEST_CASE("sech integrals by quadrature") {
  const auto s = oracle::sech_integrals();
  CHECK(s.sech4 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(s.sech6 == doctest::Approx(16.0 / 15.0).epsilon(1e-12));
  CHECK(s.halving_gap < 1e-10);
}

TEST_CASE("exact solution values are mutually consistent") {
  const auto e = oracle::exact_solution(0.5);
  CHECK(e.omega == doctest::Approx(1.0));
  CHECK(e.S == doctest::Approx(e.L - e.N));
  CHECK(std::abs(2 * e.L - 3 * e.N) < 1e-10);
  CHECK(e.Q == doctest::Approx(0.5 * e.norm_first + e.norm_second));
  const auto e1 = oracle::exact_solution(1.0);
  CHECK(e1.S / e.S == doctest::Approx(std::pow(2.0, 5)).epsilon(1e-10));
}

TEST_CASE("finite differences confirm the action gradient at second order") {
  auto g = make_grid(1, {128}, {40.0});
  const auto p = oracle::random_band_limited(g, 3, 2.0, 4.0, Gauge::tilde);
  const auto r = oracle::fd_gradient_check(p, oracle::exact_params(0.5));
  CHECK(r.best < 1e-6);
  REQUIRE(r.orders.size() == 2);
  CHECK(r.orders[0] > 1.5);
}

TEST_CASE("brute-force functionals agree within the stencil deficit") {
  auto g = make_grid(1, {32}, {12.0});
  auto params = WaveParams::make(1, 1.0, 1.0, {0.0});
  const auto p = oracle::random_band_limited(g, 5, 1.0, 2.0);
  const auto c = oracle::compare_brute(p, params);
  CHECK(c.agree);
  CHECK(c.diff_Q < 1e-12);
  CHECK(c.diff_E <= c.bound_E);
  auto big = make_grid(1, {128}, {12.0});
  CHECK_THROWS_AS(oracle::brute_functionals(oracle::random_band_limited(big, 5, 1.0), params), ValidationError);
}

TEST_CASE("alignment undoes a shift and a gauge rotation") {
  auto g = make_grid(1, {512}, {80.0});
  const auto ref = oracle::exact_pair(0.5, g, Gauge::tilde);
  const std::vector<double> y{1.3};
  FieldPair moved(cplx(std::polar(1.0, 0.4)) * spectral_shift(ref.first, y),
                  cplx(std::polar(1.0, 0.8)) * spectral_shift(ref.second, y), Gauge::tilde);
  CHECK(oracle::relative_distance(moved, ref) > 0.1);
  CHECK(oracle::relative_distance(oracle::align_pair(moved, ref), ref) < 1e-8);
}

TEST_CASE("the integrity suite passes") {
  const auto s = oracle::integrity_suite();
  CHECK(s.fd_worst < 1e-6);
  CHECK(s.brute_agree);
  CHECK(s.fd.size() == s.fd_cases.size());
}
