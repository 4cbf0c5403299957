#include "qnls/params.hpp"

#include <cmath>
#include <sstream>

#include "qnls/errors.hpp"

namespace qnls {

std::string to_string(WaveCase c) {
  switch (c) {
    case WaveCase::A: return "A";
    case WaveCase::B: return "B";
    case WaveCase::C: return "C";
    case WaveCase::exploratory: return "exploratory";
  }
  return "?";
}

namespace {

double norm2(const std::vector<double>& c) {
  double s = 0.0;
  for (double x : c) s += x * x;
  return s;
}

bool near(double x, double y) { return std::abs(x - y) <= kCaseTolerance * std::max(1.0, std::abs(y)); }

}  // namespace

std::optional<WaveCase> admissible_case(int dim, double kappa, double omega,
                                        const std::vector<double>& c) {
  if (dim < 1 || dim > 5 || static_cast<int>(c.size()) != dim || !(kappa > 0.0)) return std::nullopt;
  const double c2 = norm2(c);
  const double first = c2 / 4.0;
  const double second = c2 / (8.0 * kappa);
  if (omega > std::max(first, second) + kCaseTolerance) return WaveCase::A;
  if (c2 == 0.0) return std::nullopt;
  if (kappa < 0.5 && near(omega, second) && dim >= 3) return WaveCase::B;
  if (kappa > 0.5 && near(omega, first) && dim >= 4) return WaveCase::C;
  return std::nullopt;
}

WaveParams WaveParams::make(int dim, double kappa, double omega, std::vector<double> c,
                            bool exploratory) {
  if (dim < 1 || dim > 5) {
    std::ostringstream msg;
    msg << "dimension " << dim << " outside 1..5 (d = 6 is energy-critical)";
    throw ValidationError(msg.str());
  }
  if (static_cast<int>(c.size()) != dim) throw ValidationError("velocity has wrong length");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be positive");
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
  for (double x : c)
    if (!std::isfinite(x)) throw ValidationError("velocity must be finite");

  WaveParams p;
  p.kappa = kappa;
  p.omega = omega;
  p.c = std::move(c);
  if (auto kind = admissible_case(dim, kappa, omega, p.c)) {
    p.kind = *kind;
    return p;
  }
  const double a = p.mass_first();
  const double b = p.mass_second();
  if (exploratory && a >= -kCaseTolerance && b >= -kCaseTolerance) {
    p.kind = WaveCase::exploratory;
    return p;
  }
  std::ostringstream msg;
  msg << "parameters (d=" << dim << ", kappa=" << kappa << ", omega=" << omega
      << ", |c|^2=" << norm2(p.c) << ") match none of the admissible cases A, B, C";
  throw ValidationError(msg.str());
}

double WaveParams::speed_squared() const { return norm2(c); }
double WaveParams::speed() const { return std::sqrt(norm2(c)); }
double WaveParams::mass_first() const { return omega - speed_squared() / 4.0; }
double WaveParams::mass_second() const { return omega - speed_squared() / (8.0 * kappa); }

std::vector<double> WaveParams::beta() const {
  std::vector<double> out(c);
  for (double& x : out) x *= 1.0 - 1.0 / (2.0 * kappa);
  return out;
}

std::vector<double> WaveParams::first_phase() const {
  std::vector<double> out(c);
  for (double& x : out) x *= 0.5;
  return out;
}

std::vector<double> WaveParams::second_phase() const {
  std::vector<double> out(c);
  for (double& x : out) x /= 2.0 * kappa;
  return out;
}

bool WaveParams::first_massless() const {
  return std::abs(mass_first()) <= kCaseTolerance * std::max(1.0, omega);
}

bool WaveParams::second_massless() const {
  return std::abs(mass_second()) <= kCaseTolerance * std::max(1.0, omega);
}

bool WaveParams::beta_zero() const {
  for (double b : beta())
    if (std::abs(b) > 1e-14) return false;
  return true;
}

bool WaveParams::same_as(const WaveParams& o, double tol) const {
  if (c.size() != o.c.size()) return false;
  auto close = [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(x)); };
  if (!close(kappa, o.kappa) || !close(omega, o.omega)) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!close(c[i], o.c[i])) return false;
  return true;
}

}  // namespace qnls
