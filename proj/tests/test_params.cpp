#include <doctest.h>

#include "qnls/errors.hpp"
#include "qnls/params.hpp"

using namespace qnls;

TEST_CASE("regimes are recognised from kappa, omega and c") {
  CHECK(WaveParams::make(1, 2.0, 1.0, {0.0}).kind == WaveCase::A);
  CHECK(WaveParams::make(3, 0.25, 0.5, {1.0, 0.0, 0.0}).kind == WaveCase::B);
  CHECK(WaveParams::make(5, 2.0, 0.25, {1.0, 0.0, 0.0, 0.0, 0.0}).kind == WaveCase::C);
}

TEST_CASE("masses and the coupling wavenumber") {
  auto p = WaveParams::make(3, 0.25, 0.5, {1.0, 0.0, 0.0});
  CHECK(p.mass_first() == doctest::Approx(0.25));
  CHECK(p.mass_second() == doctest::Approx(0.0));
  CHECK(p.second_massless());
  CHECK(p.beta()[0] == doctest::Approx(-1.0));
  CHECK(p.second_phase()[0] == doctest::Approx(2.0));
}

TEST_CASE("inadmissible parameters are rejected unless exploratory") {
  CHECK_THROWS_AS(WaveParams::make(1, 0.5, 0.25, {1.0}), ValidationError);
  CHECK_NOTHROW(WaveParams::make(1, 0.5, 0.25, {1.0}, true));
  CHECK_THROWS_AS(WaveParams::make(1, 1.0, 0.1, {1.0}, true), ValidationError);
  CHECK_THROWS_AS(WaveParams::make(6, 1.0, 1.0, std::vector<double>(6, 0.0)), ValidationError);
  CHECK_THROWS_AS(WaveParams::make(1, -1.0, 1.0, {0.0}), ValidationError);
  CHECK_FALSE(admissible_case(2, 0.25, 0.5, {1.0, 0.0}).has_value());
}
