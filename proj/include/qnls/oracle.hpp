#pragma once

// Independent ground truth: the closed-form d = 1, kappa = 2 solution, its
// functional values by quadrature, finite-difference checks of the first
// variation, and a direct-summation evaluation path for tiny grids.

#include <cstdint>
#include <string>
#include <vector>

#include "qnls/field.hpp"
#include "qnls/functionals.hpp"
#include "qnls/params.hpp"

namespace qnls::oracle {

/// int sech^4 and int sech^6 over R, by composite Simpson with step halving.
struct SechIntegrals {
  double sech4 = 0.0;
  double sech6 = 0.0;
  /// Largest |Richardson-extrapolated - previous| over the final halving.
  double halving_gap = 0.0;
};

SechIntegrals sech_integrals();

/// phi = 6B^2 sech^2(Bx), psi = 3B^2 sech^2(Bx) solves the stationary system
/// with d = 1, kappa = 2, omega = 4B^2, c = 0. Values below are from quadrature.
struct ExactSolution {
  double B = 0.5;
  double kappa = 2.0;
  double omega = 1.0;
  double amplitude_first = 1.5;
  double amplitude_second = 0.75;
  double norm_first = 0.0;   // ||phi||^2
  double norm_second = 0.0;  // ||psi||^2
  double grad_first = 0.0;   // ||phi'||^2
  double grad_second = 0.0;  // ||psi'||^2
  double L = 0.0;
  double N = 0.0;
  double S = 0.0;
  double K = 0.0;
  double Q = 0.0;
  double E = 0.0;
  double T = 0.0;  // 1/2 ||phi'||^2 + kappa/2 ||psi'||^2
};

ExactSolution exact_solution(double B);
WaveParams exact_params(double B);
/// Sampled exact pair on a d = 1 grid; gauge tags coincide since c = 0.
FieldPair exact_pair(double B, const GridPtr& grid, Gauge gauge = Gauge::tilde);

struct FdCheckReport {
  std::vector<double> eps;
  /// Worst relative error over the directions, per eps.
  std::vector<double> errors;
  double best = 0.0;
  /// log10(err(eps_i)/err(eps_{i+1})) for consecutive decades.
  std::vector<double> orders;
  double gradient_norm = 0.0;
};

/// Central differences of S~ (or of L~ alone when quadratic_only) along
/// random smooth directions against <S~'(x), d>.
FdCheckReport fd_gradient_check(const FieldPair& tilde, const WaveParams& params,
                                const std::vector<double>& eps = {1e-3, 1e-4, 1e-5},
                                int directions = 10, std::uint64_t seed = 7,
                                bool quadratic_only = false);

inline constexpr std::size_t kBruteMaxPoints = 64;

/// Plain-gauge functionals by direct summation and second-order finite
/// differences (forward differences for |grad|^2, centered for currents).
FunctionalReport brute_functionals(const FieldPair& plain, const WaveParams& params);

/// Spectral vs brute-force values and the FD-symbol deficit bounds, with the
/// spectrum itself computed by a direct DFT.
struct BruteComparison {
  FunctionalReport spectral;
  FunctionalReport brute;
  double bound_E = 0.0;
  double bound_L = 0.0;
  double bound_P = 0.0;
  double diff_E = 0.0;
  double diff_L = 0.0;
  double diff_S = 0.0;
  double diff_Q = 0.0;
  double diff_P = 0.0;
  bool agree = false;
};

BruteComparison compare_brute(const FieldPair& plain, const WaveParams& params);

/// Translates p (fractionally, in Fourier space) so its |first|^2 centroid
/// matches that of reference, then applies the gauge rotation
/// (e^{i theta}, e^{2 i theta}) that best matches reference.
FieldPair align_pair(const FieldPair& p, const FieldPair& reference);

/// ||a - b|| / ||b|| over both components.
double relative_distance(const FieldPair& a, const FieldPair& b);

/// Random smooth pair: Fourier coefficients with Gaussian weight
/// exp(-|k|^2/(2 k0^2)). A positive `width` multiplies the result by
/// exp(-|x|^2/(2 width^2)) so the pair is localized inside the box.
FieldPair random_band_limited(const GridPtr& grid, std::uint64_t seed, double k0,
                              double width = 0.0, Gauge gauge = Gauge::plain);

struct SuiteCase {
  std::string name;
  WaveParams params;
  std::vector<int> points;
  std::vector<double> box;
};

struct SuiteReport {
  ExactSolution exact;
  std::vector<SuiteCase> fd_cases;
  std::vector<FdCheckReport> fd;
  std::vector<SuiteCase> brute_cases;
  std::vector<BruteComparison> brute;
  /// Largest best-eps relative error over the finite-difference cases.
  double fd_worst = 0.0;
  bool brute_agree = false;
};

/// Finite-difference checks of S~' on localized random pairs in cases A, B
/// and C, and spectral-vs-brute comparisons on grids of at most 64 points.
SuiteReport integrity_suite(std::uint64_t seed = 11);

}  // namespace qnls::oracle
