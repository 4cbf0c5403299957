#pragma once

// Time evolution of i u_t + Lap u = -2 v conj(u), i v_t + kappa Lap v = -u^2
// by Strang splitting: exact spectral propagation of the linear part around
// a pointwise RK4 solve of u' = 2i v conj(u), v' = i u^2.

#include <functional>
#include <string>
#include <vector>

#include "qnls/field.hpp"
#include "qnls/params.hpp"

namespace qnls {

/// Advances a plain-gauge pair by whole Strang steps. Consecutive linear
/// half steps between two outputs are merged into one full step.
class Propagator {
 public:
  Propagator(GridPtr grid, double kappa, double dt, bool nonlinear = true);

  double dt() const { return dt_; }
  double kappa() const { return kappa_; }
  /// Advances p in place by `steps` steps.
  void advance(FieldPair& p, long steps) const;

 private:
  void linear(Buffer& u, Buffer& v, const Buffer& mu, const Buffer& mv) const;
  void nonlinear(Buffer& u, Buffer& v) const;

  GridPtr grid_;
  double kappa_;
  double dt_;
  bool nonlinear_;
  Buffer half_u_, half_v_, full_u_, full_v_;
};

/// One Strang step; NumericalError if the result is not finite.
FieldPair strang_step(const FieldPair& p, double dt, double kappa, bool nonlinear = true);

/// (conj u, conj v): evolving this forward is evolving p backward.
FieldPair conjugate(const FieldPair& p);

enum class Termination { completed, blowup_indicated, underresolved };
std::string to_string(Termination t);

struct EvolutionTrace {
  std::vector<double> time;
  std::vector<double> Q;
  std::vector<double> E;
  std::vector<std::vector<double>> P;
  std::vector<double> grad_first;   // ||grad u||
  std::vector<double> grad_second;  // ||grad v||
  std::vector<double> tail_first;
  std::vector<double> tail_second;
  /// Optional per-sample labels supplied by an observer (e.g. well membership).
  std::vector<std::string> labels;
  Termination reason = Termination::completed;
  long steps = 0;
  FieldPair final_state;
};

struct EvolveOptions {
  double T = 1.0;
  double dt = 1e-3;
  /// Steps between two samples; must divide round(T / dt).
  long cadence = 100;
  bool nonlinear = true;
  /// Halt when the blowup monitor or the resolution sentinel fires.
  bool monitor = true;
  double growth = 5.0;
  double tail_limit = 0.1;
  /// Called at every sample; a non-empty return is stored in `labels`.
  std::function<std::string(double, const FieldPair&)> observer;
};

/// Share of |f_hat|^2 at relative wavenumber above 2/3.
double tail_fraction(const ComplexField& f);

EvolutionTrace evolve(const FieldPair& p0, double kappa, const EvolveOptions& opts);

/// blowup_indicated once (||grad u||^2 + ||grad v||^2)^{1/2} exceeds
/// `growth` times its initial value while either tail fraction exceeds
/// `tail_limit`; underresolved when only the tail condition holds.
Termination blowup_monitor(const EvolutionTrace& trace, double growth = 5.0, double tail_limit = 0.1);

struct WaveTrackReport {
  double max_error = 0.0;
  std::vector<double> times;
  std::vector<double> errors;
  double dt = 0.0;
  double T = 0.0;
  Termination reason = Termination::completed;
};

/// Evolves the plain pair `profile` (a stationary solution at (omega, c))
/// and compares with (e^{i omega t} phi(x - ct), e^{2 i omega t} psi(x - ct))
/// at times where c t is a whole number of cells. dt and T are adjusted
/// downward so the sample times fall on steps.
WaveTrackReport traveling_wave_test(const FieldPair& profile, const WaveParams& params, double T, double dt,
                                    int samples = 10);

struct GalileanReport {
  double discrepancy = 0.0;
  double T = 0.0;
};

/// kappa = 1/2: boost-then-evolve against evolve-then-boost. c/2 must be a
/// lattice wavenumber and c T a whole number of cells.
GalileanReport galilean_check(const FieldPair& p0, double kappa, const std::vector<double>& c, double T, double dt);

struct SemitrivialReport {
  double max_growth = 0.0;      // max ||u(t)|| / ||u0||
  double max_free_error = 0.0;  // max ||v(t) - e^{it kappa Lap} v0|| / ||v0||
  std::vector<double> time;
  std::vector<double> norm_first;
  Termination reason = Termination::completed;
};

SemitrivialReport semitrivial_perturbation(const FieldPair& p0, double kappa, double T, double dt, long cadence);

}  // namespace qnls
