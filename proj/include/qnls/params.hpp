#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qnls {

/// Parameter regime of the traveling-wave problem.
///
/// A: both L^2 coefficients a, b positive. B: 0 < kappa < 1/2 with b = 0,
/// d in 3..5. C: kappa > 1/2 with a = 0, d in 4..5. `exploratory` covers
/// everything else with a, b >= 0 (e.g. the mass-resonant zero-mass point).
enum class WaveCase { A, B, C, exploratory };

std::string to_string(WaveCase c);

inline constexpr double kCaseTolerance = 1e-12;

/// kappa, omega, the velocity c and the regime it falls in.
struct WaveParams {
  double kappa = 1.0;
  double omega = 1.0;
  std::vector<double> c;
  WaveCase kind = WaveCase::A;

  /// Validates against the admissible regimes; anything else throws
  /// ValidationError unless `exploratory` is set and a, b >= 0.
  static WaveParams make(int dim, double kappa, double omega, std::vector<double> c,
                         bool exploratory = false);

  int dim() const { return static_cast<int>(c.size()); }
  double speed_squared() const;
  double speed() const;
  /// a = omega - |c|^2/4.
  double mass_first() const;
  /// b = omega - |c|^2/(8 kappa).
  double mass_second() const;
  /// (1 - 1/(2 kappa)) c, the wavenumber of the stripped coupling phase.
  std::vector<double> beta() const;
  /// c/2, phase carried by the first component.
  std::vector<double> first_phase() const;
  /// c/(2 kappa), phase carried by the second component.
  std::vector<double> second_phase() const;
  bool first_massless() const;
  bool second_massless() const;
  bool beta_zero() const;
  bool same_as(const WaveParams& o, double tol = 1e-12) const;
};

/// The admissible regime of (d, kappa, omega, c), if any.
std::optional<WaveCase> admissible_case(int dim, double kappa, double omega,
                                        const std::vector<double>& c);

}  // namespace qnls
