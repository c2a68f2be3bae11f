#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace specrk {

using Complex = std::complex<double>;

/// Uniform periodic Cartesian grid in 2 or 3 dimensions.
///
/// Axis 0 (x) is the real-to-complex axis and is stored fastest; the last
/// axis is the vertical (gravity) axis. Physical arrays are laid out as
/// index = i0 + n0 * (i1 + n1 * i2) and spectral arrays as
/// index = k0 + (n0/2 + 1) * (k1 + n1 * k2).
class GridSpec {
 public:
  GridSpec() = default;

  /// Throws Error(invalid_argument) unless dims is 2 or 3 and every n is even and >= 4.
  GridSpec(int dims, std::array<int, 3> n,
           std::array<double, 3> length = {2 * std::numbers::pi, 2 * std::numbers::pi,
                                           2 * std::numbers::pi});

  static GridSpec cube(int dims, int n) { return GridSpec(dims, {n, n, dims == 3 ? n : 1}); }

  int dims() const { return dims_; }
  int n(int axis) const { return n_[static_cast<std::size_t>(axis)]; }
  double length(int axis) const { return length_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return length(axis) / n(axis); }

  /// Number of stored spectral entries along an axis (n/2+1 on axis 0).
  int spectral_extent(int axis) const { return axis == 0 ? n(0) / 2 + 1 : n(axis); }

  std::size_t physical_size() const;
  std::size_t spectral_size() const;

  /// The 3/2-rule padded grid with the same physical extent.
  GridSpec padded() const;

  bool operator==(const GridSpec& other) const;

 private:
  int dims_ = 3;
  std::array<int, 3> n_{4, 4, 4};
  std::array<double, 3> length_{2 * std::numbers::pi, 2 * std::numbers::pi, 2 * std::numbers::pi};
};

/// Per-mode wavenumber tables for a grid.
///
/// `k[axis][m]` is the derivative wavenumber of spectral entry m; it is zero on
/// Nyquist entries so odd-order derivatives keep real fields real. `k2[m]` is
/// the true |k|^2 (Nyquist entries use +N/2), and `inv_kd2[m]` is 1/(k.k) built
/// from the derivative wavenumbers, or 0 where that product vanishes.
struct Wavenumbers {
  explicit Wavenumbers(const GridSpec& grid);

  GridSpec grid;
  std::array<std::vector<double>, 3> k;
  std::vector<double> k2;
  std::vector<double> inv_kd2;
  /// 1 on the zero and Nyquist planes of the r2c axis, 2 elsewhere.
  std::vector<double> weight;
  /// True for entries with any axis at its Nyquist index.
  std::vector<unsigned char> nyquist;

  /// Signed mode index along an axis for a storage index.
  static int mode_index(const GridSpec& grid, int axis, int storage_index);
};

}  // namespace specrk
