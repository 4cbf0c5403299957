#include "qnls/field.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qnls/params.hpp"

namespace qnls {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<cplx> s) { return reinterpret_cast<fftw_complex*>(s.data()); }

void require_same_grid(const ComplexField& a, const ComplexField& b) {
  if (a.grid_ptr() != b.grid_ptr() && !a.grid().same_shape(b.grid()))
    throw ValidationError("fields live on different grids");
}

}  // namespace

Grid::Grid(std::vector<int> points, std::vector<double> box, std::size_t max_points)
    : n_(std::move(points)), box_(std::move(box)) {
  const int d = static_cast<int>(n_.size());
  if (d < 1 || d > kMaxDim) throw ValidationError("grid dimension must lie in 1..5");
  if (static_cast<int>(box_.size()) != d) throw ValidationError("box list length differs from dimension");
  double total = 1.0;
  for (int j = 0; j < d; ++j) {
    if (n_[j] < 8 || n_[j] % 2 != 0) {
      std::ostringstream msg;
      msg << "points per axis must be even and >= 8 (axis " << j << " has " << n_[j] << ")";
      throw ValidationError(msg.str());
    }
    if (!(box_[j] > 0.0) || !std::isfinite(box_[j])) throw ValidationError("box lengths must be positive");
    total *= n_[j];
  }
  if (total > static_cast<double>(max_points)) {
    std::ostringstream msg;
    msg << "grid of " << static_cast<std::size_t>(total) << " points exceeds the memory budget of "
        << max_points;
    throw ValidationError(msg.str());
  }
  size_ = static_cast<std::size_t>(total);

  stride_.assign(d, 1);
  for (int j = d - 2; j >= 0; --j) stride_[j] = stride_[j + 1] * static_cast<std::size_t>(n_[j + 1]);

  cell_volume_ = 1.0;
  h_.resize(d);
  x_.resize(d);
  k_.resize(d);
  for (int j = 0; j < d; ++j) {
    h_[j] = box_[j] / n_[j];
    cell_volume_ *= h_[j];
    x_[j].resize(n_[j]);
    k_[j].resize(n_[j]);
    const double dk = 2.0 * std::numbers::pi / box_[j];
    for (int i = 0; i < n_[j]; ++i) {
      x_[j][i] = -0.5 * box_[j] + i * h_[j];
      const int m = i < n_[j] / 2 ? i : i - n_[j];
      k_[j][i] = dk * m;
    }
  }

  k2_.assign(size_, 0.0);
  kr_.assign(size_, 0.0);
  for (std::size_t f = 0; f < size_; ++f) {
    double s = 0.0;
    double r = 0.0;
    for (int j = 0; j < d; ++j) {
      const int i = axis_index(f, j);
      s += k_[j][i] * k_[j][i];
      const int m = i < n_[j] / 2 ? i : n_[j] - i;
      r = std::max(r, 2.0 * m / n_[j]);
    }
    k2_[f] = s;
    kr_[f] = r;
  }

  Buffer scratch(size_);
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft(d, n_.data(), as_fftw(scratch), as_fftw(scratch), FFTW_FORWARD,
                                FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft(d, n_.data(), as_fftw(scratch), as_fftw(scratch), FFTW_BACKWARD,
                                FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) throw NumericalError("FFTW planning failed");
}

Grid::~Grid() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_ != nullptr) fftw_destroy_plan(forward_plan_);
  if (inverse_plan_ != nullptr) fftw_destroy_plan(inverse_plan_);
}

Point Grid::coordinate(std::size_t flat) const {
  Point p{};
  for (int j = 0; j < dim(); ++j) p[j] = x_[j][axis_index(flat, j)];
  return p;
}

void Grid::forward(std::span<cplx> data) const {
  fftw_execute_dft(forward_plan_, as_fftw(data), as_fftw(data));
}

void Grid::inverse(std::span<cplx> data) const {
  fftw_execute_dft(inverse_plan_, as_fftw(data), as_fftw(data));
  const double s = 1.0 / static_cast<double>(size_);
  for (auto& z : data) z *= s;
}

bool Grid::same_shape(const Grid& other) const { return n_ == other.n_ && box_ == other.box_; }

GridPtr make_grid(int dim, const std::vector<int>& points, const std::vector<double>& box,
                  std::size_t max_points) {
  if (dim < 1 || dim > kMaxDim) throw ValidationError("grid dimension must lie in 1..5");
  if (static_cast<int>(points.size()) != dim || static_cast<int>(box.size()) != dim)
    throw ValidationError("grid lists must have one entry per dimension");
  return std::make_shared<const Grid>(points, box, max_points);
}

ComplexField::ComplexField(GridPtr grid) : grid_(std::move(grid)), data_(grid_->size()) {}

ComplexField::ComplexField(GridPtr grid, Buffer values) : grid_(std::move(grid)), data_(std::move(values)) {
  if (data_.size() != grid_->size()) throw ValidationError("field size does not match grid");
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

bool ComplexField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(cplx s, ComplexField a) { return a *= s; }

FieldPair::FieldPair(ComplexField u, ComplexField v, Gauge g)
    : first(std::move(u)), second(std::move(v)), gauge(g) {
  require_same_grid(first, second);
}

FieldPair FieldPair::scaled(double lambda) const {
  FieldPair out = *this;
  out.first *= lambda;
  out.second *= lambda;
  return out;
}

Buffer to_spectral(const ComplexField& f) {
  Buffer s = f.buffer();
  f.grid().forward(s);
  return s;
}

ComplexField from_spectral(const GridPtr& grid, Buffer spectrum) {
  grid->inverse(spectrum);
  return ComplexField(grid, std::move(spectrum));
}

ComplexField derivative(const ComplexField& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw ValidationError("derivative axis out of range");
  Buffer s = to_spectral(f);
  const auto& k = g.wavenumbers(axis);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= cplx(0.0, k[g.axis_index(i, axis)]);
  return from_spectral(f.grid_ptr(), std::move(s));
}

std::vector<ComplexField> gradient(const ComplexField& f) {
  const Grid& g = f.grid();
  const Buffer base = to_spectral(f);
  std::vector<ComplexField> out;
  out.reserve(g.dim());
  for (int axis = 0; axis < g.dim(); ++axis) {
    Buffer s = base;
    const auto& k = g.wavenumbers(axis);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= cplx(0.0, k[g.axis_index(i, axis)]);
    out.push_back(from_spectral(f.grid_ptr(), std::move(s)));
  }
  return out;
}

ComplexField laplacian(const ComplexField& f) {
  Buffer s = to_spectral(f);
  const auto& k2 = f.grid().k_squared();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= -k2[i];
  return from_spectral(f.grid_ptr(), std::move(s));
}

double inner(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f, g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += (f[i] * std::conj(g[i])).real();
  return s * f.grid().cell_volume();
}

double norm_squared(const ComplexField& f) {
  double s = 0.0;
  for (const auto& z : f.values()) s += std::norm(z);
  return s * f.grid().cell_volume();
}

double dirichlet(const ComplexField& f) {
  const Buffer s = to_spectral(f);
  const auto& k2 = f.grid().k_squared();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += k2[i] * std::norm(s[i]);
  return acc * f.grid().cell_volume() / static_cast<double>(f.size());
}

double current(const ComplexField& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw ValidationError("axis out of range");
  const Buffer s = to_spectral(f);
  const auto& k = g.wavenumbers(axis);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc -= k[g.axis_index(i, axis)] * std::norm(s[i]);
  return acc * g.cell_volume() / static_cast<double>(f.size());
}

bool grid_compatible(const Grid& grid, std::span<const double> k, double tol) {
  if (static_cast<int>(k.size()) != grid.dim()) return false;
  for (int j = 0; j < grid.dim(); ++j) {
    const double m = k[j] * grid.box()[j] / (2.0 * std::numbers::pi);
    if (std::abs(m - std::round(m)) > tol * std::max(1.0, std::abs(m))) return false;
  }
  return true;
}

ComplexField phase_modulate(const ComplexField& f, std::span<const double> k) {
  const Grid& g = f.grid();
  if (!grid_compatible(g, k)) throw ValidationError("phase wavenumber is not a lattice wavenumber of the box");
  bool zero = true;
  for (double kj : k) zero = zero && kj == 0.0;
  if (zero) return f;
  // Per-axis phase tables; the product over axes is exact to rounding.
  std::vector<std::vector<cplx>> tables(g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    const auto& x = g.coordinates(j);
    tables[j].resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) tables[j][i] = std::polar(1.0, k[j] * x[i]);
  }
  ComplexField out = f;
  for (std::size_t i = 0; i < out.size(); ++i) {
    cplx ph = tables[0][g.axis_index(i, 0)];
    for (int j = 1; j < g.dim(); ++j) ph *= tables[j][g.axis_index(i, j)];
    out[i] *= ph;
  }
  return out;
}

ComplexField zero_mode_project(const ComplexField& f) {
  Buffer s = to_spectral(f);
  s[0] = 0.0;
  return from_spectral(f.grid_ptr(), std::move(s));
}

ComplexField shift_cells(const ComplexField& f, std::span<const long> cells) {
  const Grid& g = f.grid();
  if (static_cast<int>(cells.size()) != g.dim()) throw ValidationError("shift has wrong length");
  ComplexField out(f.grid_ptr());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t src = 0;
    for (int j = 0; j < g.dim(); ++j) {
      const long n = g.points()[j];
      long idx = (g.axis_index(i, j) - cells[j]) % n;
      if (idx < 0) idx += n;
      src += static_cast<std::size_t>(idx) * g.stride(j);
    }
    out[i] = f[src];
  }
  return out;
}

ComplexField spectral_shift(const ComplexField& f, std::span<const double> y) {
  const Grid& g = f.grid();
  if (static_cast<int>(y.size()) != g.dim()) throw ValidationError("shift has wrong length");
  Buffer s = to_spectral(f);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double phase = 0.0;
    for (int j = 0; j < g.dim(); ++j) {
      const int idx = g.axis_index(i, j);
      // The Nyquist mode of a shifted band-limited field is ambiguous; drop its phase.
      if (2 * idx == g.points()[j]) continue;
      phase -= g.wavenumbers(j)[idx] * y[j];
    }
    s[i] *= std::polar(1.0, phase);
  }
  return from_spectral(f.grid_ptr(), std::move(s));
}

FieldPair translate_symmetry(const FieldPair& p, std::span<const double> y, const WaveParams& params) {
  const Grid& g = p.grid();
  if (static_cast<int>(y.size()) != g.dim()) throw ValidationError("shift has wrong length");
  std::vector<long> cells(g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    const double m = y[j] / g.spacing(j);
    if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m)))
      throw ValidationError("translation is not a multiple of the grid spacing");
    cells[j] = std::lround(m);
  }
  FieldPair out(shift_cells(p.first, cells), shift_cells(p.second, cells), p.gauge);
  if (p.gauge == Gauge::tilde) {
    if (params.dim() != g.dim()) throw ValidationError("parameter dimension differs from grid");
    double cy = 0.0;
    for (int j = 0; j < g.dim(); ++j) cy += params.c[j] * y[j];
    out.first *= std::polar(1.0, -0.5 * cy);
    out.second *= std::polar(1.0, -cy / (2.0 * params.kappa));
  }
  return out;
}

}  // namespace qnls
