#pragma once

// Conserved quantities, action, Nehari functional and their stripped-phase
// ("tilde") variants, plus the stationarity diagnostics built on them.

#include <utility>
#include <vector>

#include "qnls/field.hpp"
#include "qnls/params.hpp"

namespace qnls {

/// Values of every functional for one pair. Entries of the gauge that could
/// not be represented on the grid are NaN and flagged by has_plain/has_tilde.
struct FunctionalReport {
  double E = 0.0;
  double Q = 0.0;
  std::vector<double> P;
  double L = 0.0;
  double N = 0.0;
  double S = 0.0;
  double K = 0.0;
  double L_tilde = 0.0;
  double N_tilde = 0.0;
  double S_tilde = 0.0;
  double K_tilde = 0.0;
  double a = 0.0;
  double b = 0.0;
  bool has_plain = false;
  bool has_tilde = false;
};

/// 1/2 ||grad u||^2 + kappa/2 ||grad v||^2 - Re int u^2 conj(v). Plain gauge only.
double energy(const FieldPair& p, double kappa);
/// 1/2 ||u||^2 + ||v||^2, gauge independent.
double charge(const FieldPair& p);
/// 1/2 (i grad u, u) + 1/2 (i grad v, v), one entry per axis.
std::vector<double> momentum(const FieldPair& p);
/// N(u, v) = Re int u^2 conj(v).
double coupling(const FieldPair& p);
/// L_{omega,c}(u, v) for a plain pair.
double quadratic_part(const FieldPair& p, const WaveParams& params);

/// Evaluator for the stripped functionals L~, N~ on one grid.
///
/// Holds the coupling phase e^{i beta.x}, computed once; construction fails
/// when beta is not a lattice wavenumber of the box.
class ActionModel {
 public:
  ActionModel(GridPtr grid, WaveParams params);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const WaveParams& params() const { return params_; }
  double a() const { return a_; }
  double b() const { return b_; }
  bool first_massless() const { return first_massless_; }
  bool second_massless() const { return second_massless_; }

  /// L~ from physical fields.
  double quadratic(const FieldPair& p) const;
  /// L~ from the two spectra (unnormalized DFTs).
  double quadratic_spectral(std::span<const cplx> u_hat, std::span<const cplx> v_hat) const;
  /// 1/2 ||grad u||^2 + kappa/2 ||grad v||^2 from the spectra.
  double kinetic_spectral(std::span<const cplx> u_hat, std::span<const cplx> v_hat) const;
  /// N~ = Re int e^{i beta.x} u^2 conj(v).
  double cubic(std::span<const cplx> u, std::span<const cplx> v) const;
  double cubic(const FieldPair& p) const { return cubic(p.first.values(), p.second.values()); }
  /// Coefficients n0..n3 of N~(x + t d) as a cubic polynomial in t.
  std::array<double, 4> cubic_along(std::span<const cplx> u, std::span<const cplx> v,
                                    std::span<const cplx> du, std::span<const cplx> dv) const;

  /// Real-L^2 gradient of N~: (2 e^{-i beta.x} conj(u) v, e^{i beta.x} u^2).
  void cubic_gradient(std::span<const cplx> u, std::span<const cplx> v, std::span<cplx> gu,
                      std::span<cplx> gv) const;
  /// Applies (|xi|^2 + a, kappa |xi|^2 + 2b) to the spectra in place.
  void apply_quadratic_symbol(std::span<cplx> u_hat, std::span<cplx> v_hat) const;
  /// S~'(u, v) with the massless components projected mean-free.
  FieldPair action_gradient(const FieldPair& p) const;
  /// Zeroes the k = 0 mode of massless components (spectral input).
  void project_massless_spectral(std::span<cplx> u_hat, std::span<cplx> v_hat) const;

  std::span<const cplx> phase() const { return phase_; }

 private:
  GridPtr grid_;
  WaveParams params_;
  double a_ = 0.0;
  double b_ = 0.0;
  bool first_massless_ = false;
  bool second_massless_ = false;
  bool trivial_phase_ = true;
  Buffer phase_;
};

/// Full report. Plain pairs give E, Q, P, L, N, S, K directly and the tilde
/// values after stripping phases (when c/2, c/(2 kappa) are lattice
/// wavenumbers); tilde pairs the other way round.
FunctionalReport action(const FieldPair& p, const WaveParams& params);

/// Plain <-> tilde conversions; both require lattice-compatible phases.
FieldPair strip_phases(const FieldPair& plain, const WaveParams& params);
FieldPair restore_phases(const FieldPair& tilde, const WaveParams& params);

/// L^2 norms of the two stationary-equation residuals for a tilde pair:
///   -Lap phi + a phi - 2 e^{-i beta.x} psi conj(phi),
///   -kappa Lap psi + 2 b psi - e^{i beta.x} phi^2.
/// Massless components have their residual projected mean-free.
std::pair<double, double> el_residual(const FieldPair& tilde, const WaveParams& params);

/// |N(u,v)| / [1/2 (Q/Q*)^{1/2} (||grad u||^2 + kappa ||grad v||^2)], d = 4.
double gn_quotient(const FieldPair& p, double kappa, double q_star);

/// (2 L~ - 3 N~, 2 T - (d/2) N~) with T = 1/2 ||grad phi||^2 + kappa/2 ||grad psi||^2.
/// Only defined for beta = 0.
std::pair<double, double> pohozaev_defects(const FieldPair& tilde, const WaveParams& params);

}  // namespace qnls
