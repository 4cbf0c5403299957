#pragma once

// Potential wells A+ / A- of the action at level mu(omega, c), their use as
// invariant sets of the flow, and the oscillating-data construction that
// moves fixed data into A+ by a large velocity.

#include <optional>
#include <string>
#include <vector>

#include "qnls/dynamics.hpp"
#include "qnls/field.hpp"
#include "qnls/groundstate.hpp"
#include "qnls/params.hpp"

namespace qnls {

enum class Membership { A_plus, A_minus, outside };
std::string to_string(Membership m);

/// A value of mu together with the parameters it belongs to and where it
/// came from.
struct MuReference {
  WaveParams params;
  double mu = 0.0;
  std::string source;

  static MuReference from_result(const GroundStateResult& r, std::string source = "groundstate");
};

struct WellVerdict {
  WaveParams params;
  double S = 0.0;
  double K = 0.0;
  double L = 0.0;
  double N = 0.0;
  double mu = 0.0;
  std::string mu_source;
  Membership membership = Membership::outside;
  /// min(mu - S, |K|).
  double margin = 0.0;
};

/// Plain-gauge S and K against mu. Boundary cases count as inside:
/// S <= mu (1 + 1e-6) + 1e-9 and K >= -1e-9 L. Rejects a reference computed
/// for other parameters.
WellVerdict classify(const FieldPair& p, const WaveParams& params, const MuReference& mu);

struct InvarianceReport {
  Membership initial = Membership::outside;
  std::vector<double> times;
  std::vector<Membership> memberships;
  std::vector<double> S;
  std::vector<double> K;
  int flips = 0;
  std::optional<double> first_flip;
  Termination reason = Termination::completed;
};

/// Classifies along an evolution at every cadence point. Data outside both
/// wells is refused.
InvarianceReport invariance_experiment(const FieldPair& p, const WaveParams& params, const MuReference& mu,
                                       double T, double dt, long cadence);

/// ||grad u - (i/2) c u||^2 + kappa ||grad v - (i/(2 kappa)) c v||^2.
double shifted_gradient(const FieldPair& p, double kappa, const std::vector<double>& c);

/// ||grad u||^2 + kappa ||grad v||^2.
double gradient_energy(const FieldPair& p, double kappa);

struct AprioriBound {
  /// 6 mu, bounding shifted_gradient along the flow.
  double shifted_bound = 0.0;
  /// 12 mu + |c|^2 max(1, 1/(2 kappa)) Q, bounding gradient_energy.
  double gradient_bound = 0.0;
  double shifted_value = 0.0;
  double gradient_value = 0.0;
};

/// Requires A+ membership.
AprioriBound apriori_bound(const FieldPair& p, const WaveParams& params, const MuReference& mu);

struct Threshold {
  /// 'A' for 0 < kappa < 1/2 (bound on ||u0||^2), 'B' for kappa > 1/2
  /// (bound on ||v0||^2).
  char branch = 'A';
  double kappa = 0.0;
  double value = 0.0;
  double factor = 0.0;
  MuReference unit;
  /// Set for kappa > 1/2 in d = 4, where existence of the unit minimizer is open.
  bool exploratory = false;
};

/// The zero-mass unit-velocity parameters defining the threshold:
/// (1/(8 kappa), e_axis) for kappa < 1/2 and (1/4, e_axis) for kappa > 1/2.
WaveParams unit_threshold_params(int dim, double kappa, int axis = 0, bool exploratory = false);

/// A0 = 16 kappa / (1 - 2 kappa) mu or B0 = 8 kappa / (2 kappa - 1) mu from
/// a reference at unit_threshold_params. kappa = 1/2 is rejected.
Threshold threshold_constants(double kappa, const MuReference& unit);

struct OscillationOptions {
  /// Unit direction of c.
  std::vector<double> direction;
  /// First requested speed; 0 means the smallest grid-compatible one.
  double start = 0.0;
  double ratio = 1.4142135623730951;
  int max_points = 12;
  bool evolve = true;
  double T = 2.0;
  double dt = 1e-3;
  long cadence = 50;
};

struct OscillationPoint {
  double requested = 0.0;
  double speed = 0.0;
  std::vector<double> c;
  double omega = 0.0;
  double mu = 0.0;
  double S = 0.0;
  double K = 0.0;
  double N = 0.0;
  /// The two sides of the equivalent form of S <= mu:
  /// 1/2 ||grad u0||^2 + kappa/2 ||grad v0||^2 - N_c  against
  /// |c|^2 (mu_unit - m ||w0||^2), with (m, w0) the branch's mass term.
  double lhs = 0.0;
  double rhs = 0.0;
  Membership membership = Membership::outside;
};

struct OscillationReport {
  Threshold threshold;
  /// ||u0||^2 (branch A) or ||v0||^2 (branch B).
  double mass = 0.0;
  bool below_threshold = false;
  std::vector<OscillationPoint> schedule;
  /// Requested speeds skipped because c/(2 kappa) or c/2 would leave the
  /// resolved band.
  std::vector<double> unresolved;
  std::optional<std::size_t> first_plus;
  bool n_monotone = false;
  std::optional<EvolutionTrace> evolution;
  AprioriBound bound;
  double max_shifted = 0.0;
  double max_gradient = 0.0;
  std::string note;
};

/// Modulates (u0, v0) by (e^{(i/2)c.x}, e^{(i/(2 kappa))c.x}) along a
/// geometric schedule of |c|, each speed rounded to the nearest
/// grid-compatible value, and classifies against |c|^{6-d} mu_unit. The
/// first A+ point is evolved when requested.
OscillationReport oscillation_experiment(const FieldPair& p0, const Threshold& threshold,
                                         const OscillationOptions& opts);

struct ChargeThresholdReport {
  double q_star = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;
  double omega_second = 0.0;
  double mu_first = 0.0;
  double mu_second = 0.0;
  double ratio = 0.0;
  double sample_charge = 0.0;
  double omega_large = 0.0;
  WellVerdict sample_verdict;
};

/// d = 4 at c = 0: E of the unit minimizer, mu(omega_second, 0) / mu(1, 0)
/// against omega_second (solved on the same grid), and a Gaussian pair with
/// Q = Q*/2 classified at omega_large against mu = omega_large Q*.
ChargeThresholdReport charge_threshold_check(const GroundStateResult& unit, const SolverOptions& opts,
                                             double omega_second = 2.0, double omega_large = 10.0);

struct GnReport {
  double q_star = 0.0;
  double minimizer = 0.0;
  double max_random = 0.0;
  std::vector<double> random;
};

/// gn_quotient at the c = 0 minimizer and at `count` random band-limited,
/// localized pairs on its grid.
GnReport gn_experiment(const GroundStateResult& unit, int count, std::uint64_t seed);

}  // namespace qnls
