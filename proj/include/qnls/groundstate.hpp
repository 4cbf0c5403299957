#pragma once

// Ground states: minimizers of S~ on the Nehari manifold, found by
// preconditioned nonlinear conjugate gradients on the Weinstein quotient
// J = (4/27) L~^3 / N~^2, plus the structural checks built on mu(omega, c).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnls/field.hpp"
#include "qnls/functionals.hpp"
#include "qnls/params.hpp"

namespace qnls {

/// (lambda0 p, lambda0) with lambda0 = 2 L~ / (3 N~); requires N~ > 0.
std::pair<FieldPair, double> nehari_project(const FieldPair& tilde, const WaveParams& params);

/// J = (4/27) L~^3 / N~^2; requires N~ > 0.
double weinstein_value(const FieldPair& tilde, const WaveParams& params);

struct SolverOptions {
  std::vector<int> points;
  std::vector<double> box;
  int seeds = 5;
  int max_iters = 6000;
  int min_iters = 50;
  /// Relative decrease of J over the last 50 iterations required to converge.
  double tol = 1e-8;
  /// el_residual / ||profile|| required to converge.
  double residual_tol = 1e-6;
  /// Iteration stops early once the residual falls below this.
  double residual_target = 1e-10;
  /// Largest admissible share of the massive components' L^2 mass lying in
  /// the outer shell |x_j - center_j| > 0.4 L_j.
  double localization = 1e-2;
  std::uint64_t seed = 1;
  int threads = 1;
  bool exploratory = false;
  /// Stretch the box along axes where beta is not a lattice wavenumber.
  bool quantize_box = true;
  std::size_t max_points = Grid::kDefaultMaxPoints;
  /// Seeds whose final J lies below reference_mu (1 - 1e-6) are flagged.
  std::optional<double> reference_mu;
  /// Starts the first seed from this tilde pair instead of a sech^2 profile.
  std::optional<FieldPair> warm_start;
};

struct DecayFit {
  std::string model;  // "exp", "alg" or "none"
  double exp_rate = 0.0;
  double exp_r2 = 0.0;
  double alg_power = 0.0;
  double alg_r2 = 0.0;
  int samples = 0;
  std::string note;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  double J = 0.0;
  double residual = 0.0;  // ||S~'|| / ||x||
  double shell = 0.0;
  int iterations = 0;
  bool converged = false;
  bool below_reference = false;
  std::string stop;
  /// L~ after each Nehari projection.
  std::vector<double> quadratic_history;
};

struct GroundStateResult {
  WaveParams params;
  FieldPair profile;
  double mu = 0.0;
  double residual_first = 0.0;
  double residual_second = 0.0;
  double relative_residual = 0.0;
  std::optional<std::pair<double, double>> pohozaev;
  std::vector<double> weinstein_history;
  std::pair<DecayFit, DecayFit> decay;
  std::vector<int> points;
  std::vector<double> box;
  std::vector<double> requested_box;
  bool converged = false;
  int best_seed = -1;
  std::vector<SeedOutcome> seeds;
};

/// Box lengths adjusted (as little as possible) so that every listed
/// wavenumber vector is a lattice wavenumber on every axis.
std::vector<double> quantize_box(const std::vector<double>& box,
                                 const std::vector<std::vector<double>>& wavenumbers);

/// Multi-start minimization. Non-convergence is reported through
/// `converged`, never thrown; inadmissible parameters throw ValidationError.
GroundStateResult minimize(const WaveParams& params, const SolverOptions& opts);

/// One refinement level of a mu ladder.
struct Level {
  std::vector<int> points;
  std::vector<double> box;
};

struct MuEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
  std::vector<double> levels;
  bool converged = false;
};

/// mu on each level; the value is the finest level and the uncertainty the
/// spread of the two finest. Throws ConvergenceError if a level fails.
MuEstimate mu_ladder(const WaveParams& params, const std::vector<Level>& ladder, SolverOptions opts);

struct ScalingReport {
  int exponent = 0;  // 6 - d
  double factor = 0.0;
  double mu_base = 0.0;
  double mu_scaled = 0.0;
  double ratio = 0.0;
  double expected = 0.0;
  double mismatch = 0.0;
  bool converged = false;
};

/// mu(omega, c) against mu(lambda^2 omega, lambda c), the second solved on
/// the box shrunk by lambda with the same point count.
ScalingReport scaling_check(const WaveParams& params, double lambda, const SolverOptions& opts);

struct DirectionReport {
  double mu_first_axis = 0.0;
  double mu_second_axis = 0.0;
  double difference = 0.0;
  bool anisotropic = false;
  bool converged = false;
};

/// mu with c along axis 0 against the same speed along axis 1 (d >= 2).
DirectionReport direction_check(int dim, double kappa, double omega, double speed, const SolverOptions& opts);

struct BoostReport {
  double mu_boosted = 0.0;
  double mu_rest = 0.0;
  double difference = 0.0;
  /// Plain-gauge S and K of the boosted profile, when c/2 is representable.
  std::optional<double> plain_action;
  std::optional<double> plain_nehari;
  bool converged = false;
};

/// kappa = 1/2 only: mu(omega + |c|^2/4, c) against mu(omega, 0).
BoostReport resonance_boost_check(double kappa, double omega, const std::vector<double>& c,
                                  const SolverOptions& opts);

/// Least-squares fits of log|f| against x and against log x along the
/// positive axis-0 ray through the origin, on the window [0.25 L, 0.45 L].
DecayFit decay_fit(const ComplexField& f);

}  // namespace qnls
