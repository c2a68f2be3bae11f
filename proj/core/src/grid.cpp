#include "specrk/grid.hpp"

#include <string>

#include "specrk/error.hpp"

namespace specrk {

GridSpec::GridSpec(int dims, std::array<int, 3> n, std::array<double, 3> length)
    : dims_(dims), n_(n), length_(length) {
  if (dims != 2 && dims != 3) {
    fail(ErrorCategory::invalid_argument, "grid dims must be 2 or 3, got " + std::to_string(dims));
  }
  for (int axis = 0; axis < dims; ++axis) {
    const int na = n_[static_cast<std::size_t>(axis)];
    if (na < 4 || na % 2 != 0) {
      fail(ErrorCategory::invalid_argument,
           "grid size along axis " + std::to_string(axis) + " must be even and >= 4, got " +
               std::to_string(na));
    }
    if (!(length_[static_cast<std::size_t>(axis)] > 0.0)) {
      fail(ErrorCategory::invalid_argument, "domain length must be positive");
    }
  }
  if (dims == 2) {
    n_[2] = 1;
  }
}

std::size_t GridSpec::physical_size() const {
  std::size_t total = 1;
  for (int axis = 0; axis < dims_; ++axis) total *= static_cast<std::size_t>(n(axis));
  return total;
}

std::size_t GridSpec::spectral_size() const {
  std::size_t total = 1;
  for (int axis = 0; axis < dims_; ++axis) total *= static_cast<std::size_t>(spectral_extent(axis));
  return total;
}

GridSpec GridSpec::padded() const {
  std::array<int, 3> m = n_;
  for (int axis = 0; axis < dims_; ++axis) {
    m[static_cast<std::size_t>(axis)] = 3 * n(axis) / 2;
  }
  // 3N/2 may be odd (N = 6, 10, ...); the padded grid only needs to be a valid
  // FFT size, so bypass the even-size check used for solution grids.
  GridSpec out;
  out.dims_ = dims_;
  out.n_ = m;
  out.length_ = length_;
  return out;
}

bool GridSpec::operator==(const GridSpec& other) const {
  if (dims_ != other.dims_) return false;
  for (int axis = 0; axis < dims_; ++axis) {
    if (n(axis) != other.n(axis) || length(axis) != other.length(axis)) return false;
  }
  return true;
}

int Wavenumbers::mode_index(const GridSpec& grid, int axis, int storage_index) {
  if (axis == 0) return storage_index;
  const int n = grid.n(axis);
  return storage_index <= n / 2 ? storage_index : storage_index - n;
}

Wavenumbers::Wavenumbers(const GridSpec& g) : grid(g) {
  const std::size_t modes = g.spectral_size();
  for (int axis = 0; axis < 3; ++axis) {
    k[static_cast<std::size_t>(axis)].assign(axis < g.dims() ? modes : 0, 0.0);
  }
  k2.assign(modes, 0.0);
  inv_kd2.assign(modes, 0.0);
  weight.assign(modes, 2.0);
  nyquist.assign(modes, 0);

  const int e0 = g.spectral_extent(0);
  const int e1 = g.spectral_extent(1);
  const int e2 = g.dims() == 3 ? g.spectral_extent(2) : 1;
  std::array<double, 3> scale{};
  for (int axis = 0; axis < g.dims(); ++axis) {
    scale[static_cast<std::size_t>(axis)] = 2 * std::numbers::pi / g.length(axis);
  }

  std::size_t m = 0;
  for (int i2 = 0; i2 < e2; ++i2) {
    for (int i1 = 0; i1 < e1; ++i1) {
      for (int i0 = 0; i0 < e0; ++i0, ++m) {
        const std::array<int, 3> idx{i0, i1, i2};
        double kk = 0.0;
        double kd = 0.0;
        bool nyq = false;
        for (int axis = 0; axis < g.dims(); ++axis) {
          const auto a = static_cast<std::size_t>(axis);
          const int mode = mode_index(g, axis, idx[a]);
          const bool axis_nyquist = (mode == g.n(axis) / 2);
          const double kv = scale[a] * mode;
          kk += kv * kv;
          const double kdv = axis_nyquist ? 0.0 : kv;
          k[a][m] = kdv;
          kd += kdv * kdv;
          nyq = nyq || axis_nyquist;
        }
        k2[m] = kk;
        inv_kd2[m] = kd > 0.0 ? 1.0 / kd : 0.0;
        nyquist[m] = nyq ? 1 : 0;
        if (i0 == 0 || i0 == g.n(0) / 2) weight[m] = 1.0;
      }
    }
  }
}

}  // namespace specrk
