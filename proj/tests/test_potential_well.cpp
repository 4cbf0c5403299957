#include <doctest.h>

#include <cmath>

#include "qnls/oracle.hpp"
#include "qnls/potential_well.hpp"

using namespace qnls;

namespace {

struct Fixture {
  WaveParams params = oracle::exact_params(0.5);
  GridPtr grid = make_grid(1, {512}, {80.0});
  FieldPair ground = oracle::exact_pair(0.5, grid, Gauge::plain);
  MuReference mu{params, oracle::exact_solution(0.5).S, "exact"};
};

}  // namespace

TEST_CASE("scalings of the ground state fall on either side of the Nehari manifold") {
  Fixture f;
  CHECK(classify(f.ground, f.params, f.mu).membership == Membership::A_plus);
  CHECK(classify(f.ground.scaled(0.5), f.params, f.mu).membership == Membership::A_plus);
  CHECK(classify(f.ground.scaled(1.5), f.params, f.mu).membership == Membership::A_minus);
  CHECK(classify(f.ground.scaled(3.0), f.params, f.mu).membership == Membership::A_minus);
}

TEST_CASE("data with too much action is outside both wells") {
  Fixture f;
  FieldPair p(cplx(3.0) * f.ground.first, ComplexField(f.grid), Gauge::plain);
  const auto v = classify(p, f.params, f.mu);
  CHECK(v.membership == Membership::outside);
  CHECK(v.S > f.mu.mu);
  CHECK_THROWS_AS(invariance_experiment(p, f.params, f.mu, 0.1, 1e-3, 50), ValidationError);
}

TEST_CASE("a reference for other parameters is refused") {
  Fixture f;
  MuReference other{WaveParams::make(1, 2.0, 2.0, {0.0}), 1.0, "other"};
  CHECK_THROWS_AS(classify(f.ground, f.params, other), ValidationError);
}

TEST_CASE("A+ is invariant along a short evolution") {
  Fixture f;
  const auto r = invariance_experiment(f.ground.scaled(0.8), f.params, f.mu, 0.5, 1e-3, 50);
  CHECK(r.initial == Membership::A_plus);
  CHECK(r.flips == 0);
  CHECK(r.memberships.size() == 11);
}

TEST_CASE("a-priori bounds hold at the initial time") {
  Fixture f;
  const auto b = apriori_bound(f.ground.scaled(0.8), f.params, f.mu);
  CHECK(b.shifted_bound == doctest::Approx(6 * f.mu.mu));
  CHECK(b.shifted_value <= b.shifted_bound);
  CHECK(b.gradient_value <= b.gradient_bound);
  CHECK_THROWS_AS(apriori_bound(f.ground.scaled(2.0), f.params, f.mu), ValidationError);
}

TEST_CASE("threshold constants follow the branch of kappa") {
  const auto pa = unit_threshold_params(4, 0.25);
  CHECK(pa.omega == doctest::Approx(0.5));
  CHECK(pa.kind == WaveCase::B);
  const auto ta = threshold_constants(0.25, MuReference{pa, 2.0, "test"});
  CHECK(ta.branch == 'A');
  CHECK(ta.value == doctest::Approx(16.0));
  const auto pb = unit_threshold_params(5, 2.0);
  const auto tb = threshold_constants(2.0, MuReference{pb, 3.0, "test"});
  CHECK(tb.branch == 'B');
  CHECK(tb.value == doctest::Approx(16.0));
  CHECK_THROWS_AS(unit_threshold_params(4, 0.5), ValidationError);
}
