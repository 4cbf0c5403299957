#pragma once

// Periodic spectral discretization of R^d: grids, complex fields, FFT-based
// differential operators and the symmetries acting on them.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <fftw3.h>

#include "qnls/errors.hpp"

namespace qnls {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 5;
using Point = std::array<double, kMaxDim>;

template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    void* p = fftw_malloc(n * sizeof(T));
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept {
    return true;
  }
};

/// SIMD-aligned complex storage shared by fields and FFT scratch space.
using Buffer = std::vector<cplx, FftwAllocator<cplx>>;

class Grid;
struct WaveParams;
using GridPtr = std::shared_ptr<const Grid>;

/// Rectangular periodic grid on [-L_j/2, L_j/2) with n_j nodes per axis.
///
/// Nodes sit at x_j = -L_j/2 + i h_j, so the origin is the node i = n_j/2.
/// Storage is row-major: axis 0 varies slowest. Spectral wavenumbers follow
/// the FFT ordering 2 pi k / L_j with k in [-n_j/2, n_j/2).
class Grid {
 public:
  static constexpr std::size_t kDefaultMaxPoints = std::size_t{1} << 24;

  Grid(std::vector<int> points, std::vector<double> box,
       std::size_t max_points = kDefaultMaxPoints);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const { return static_cast<int>(n_.size()); }
  const std::vector<int>& points() const { return n_; }
  const std::vector<double>& box() const { return box_; }
  std::size_t size() const { return size_; }
  double spacing(int axis) const { return h_[axis]; }
  double cell_volume() const { return cell_volume_; }
  double volume() const { return cell_volume_ * static_cast<double>(size_); }
  std::size_t stride(int axis) const { return stride_[axis]; }

  int axis_index(std::size_t flat, int axis) const {
    return static_cast<int>((flat / stride_[axis]) % static_cast<std::size_t>(n_[axis]));
  }
  const std::vector<double>& coordinates(int axis) const { return x_[axis]; }
  const std::vector<double>& wavenumbers(int axis) const { return k_[axis]; }
  /// |xi|^2 for every spectral index.
  const std::vector<double>& k_squared() const { return k2_; }
  /// Largest |k_j| / k_max_j over the axes, in [0, 1].
  const std::vector<double>& relative_wavenumber() const { return kr_; }

  Point coordinate(std::size_t flat) const;

  /// Unnormalized forward DFT, in place.
  void forward(std::span<cplx> data) const;
  /// Inverse DFT including the 1/N factor, in place.
  void inverse(std::span<cplx> data) const;

  bool same_shape(const Grid& other) const;

 private:
  std::vector<int> n_;
  std::vector<double> box_;
  std::vector<double> h_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
  std::vector<std::vector<double>> x_;
  std::vector<std::vector<double>> k_;
  std::vector<double> k2_;
  std::vector<double> kr_;
  fftw_plan forward_plan_ = nullptr;
  fftw_plan inverse_plan_ = nullptr;
};

/// Validating factory; errors are ValidationError.
GridPtr make_grid(int dim, const std::vector<int>& points, const std::vector<double>& box,
                  std::size_t max_points = Grid::kDefaultMaxPoints);

/// Complex double-precision samples on a grid.
class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(GridPtr grid);
  ComplexField(GridPtr grid, Buffer values);

  template <class F>
  static ComplexField sample(GridPtr grid, F&& f) {
    ComplexField out(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) out.data_[i] = f(grid->coordinate(i));
    return out;
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<cplx> values() { return data_; }
  std::span<const cplx> values() const { return data_; }
  Buffer& buffer() { return data_; }
  const Buffer& buffer() const { return data_; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

  ComplexField& operator+=(const ComplexField& o);
  ComplexField& operator-=(const ComplexField& o);
  ComplexField& operator*=(cplx s);

  bool all_finite() const;

 private:
  GridPtr grid_;
  Buffer data_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(cplx s, ComplexField a);

/// Whether the phases e^{(i/2)c.x}, e^{(i/2 kappa)c.x} have been stripped.
enum class Gauge : unsigned char { plain = 0, tilde = 1 };

/// The pair (u, v), or (phi~, psi~) in tilde gauge. Both share one grid.
struct FieldPair {
  ComplexField first;
  ComplexField second;
  Gauge gauge = Gauge::plain;

  FieldPair() = default;
  FieldPair(ComplexField u, ComplexField v, Gauge g = Gauge::plain);

  const Grid& grid() const { return first.grid(); }
  const GridPtr& grid_ptr() const { return first.grid_ptr(); }
  FieldPair scaled(double lambda) const;
};

/// Spectral derivative along each axis.
std::vector<ComplexField> gradient(const ComplexField& f);
ComplexField derivative(const ComplexField& f, int axis);
ComplexField laplacian(const ComplexField& f);

/// Re sum f conj(g) * cell volume.
double inner(const ComplexField& f, const ComplexField& g);
double norm_squared(const ComplexField& f);
/// ||grad f||^2 evaluated in spectral space.
double dirichlet(const ComplexField& f);
/// (i d_axis f, f)_{L^2}.
double current(const ComplexField& f, int axis);

Buffer to_spectral(const ComplexField& f);
ComplexField from_spectral(const GridPtr& grid, Buffer spectrum);

bool grid_compatible(const Grid& grid, std::span<const double> k, double tol = 1e-9);
/// Pointwise e^{i k.x} f; k must be a lattice wavenumber on every axis.
ComplexField phase_modulate(const ComplexField& f, std::span<const double> k);
/// f minus its mean; the k = 0 mode becomes exactly zero.
ComplexField zero_mode_project(const ComplexField& f);
/// f(x - m h), cyclic, for an integer number of cells per axis.
ComplexField shift_cells(const ComplexField& f, std::span<const long> cells);
/// f(x - y) for an arbitrary y, by Fourier phase shift.
ComplexField spectral_shift(const ComplexField& f, std::span<const double> y);

/// Translation by a lattice vector y. In tilde gauge this is
/// (e^{-(i/2)c.y} u(. - y), e^{-(i/2 kappa)c.y} v(. - y)), which leaves the
/// stripped functionals invariant; plain pairs are translated without phases.
FieldPair translate_symmetry(const FieldPair& p, std::span<const double> y,
                             const WaveParams& params);

}  // namespace qnls
