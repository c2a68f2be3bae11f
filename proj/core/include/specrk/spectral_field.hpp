#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specrk/grid.hpp"

namespace specrk {

/// Fourier coefficients of a scalar or vector field on the half-spectrum layout.
/// Components are stored one after another (component-major).
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const GridSpec& grid, std::size_t components);

  const GridSpec& grid() const { return grid_; }
  std::size_t components() const { return components_; }
  std::size_t modes() const { return modes_; }
  std::size_t size() const { return data_.size(); }

  std::span<Complex> component(std::size_t j) {
    return std::span<Complex>(data_).subspan(j * modes_, modes_);
  }
  std::span<const Complex> component(std::size_t j) const {
    return std::span<const Complex>(data_).subspan(j * modes_, modes_);
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  void set_zero();

  bool operator==(const SpectralField&) const = default;

 private:
  GridSpec grid_;
  std::size_t components_ = 0;
  std::size_t modes_ = 0;
  std::vector<Complex> data_;
};

/// Real samples of a scalar or vector field on a grid, component-major.
class PhysicalField {
 public:
  PhysicalField() = default;
  PhysicalField(const GridSpec& grid, std::size_t components);

  const GridSpec& grid() const { return grid_; }
  std::size_t components() const { return components_; }
  std::size_t points() const { return points_; }

  std::span<double> component(std::size_t j) {
    return std::span<double>(data_).subspan(j * points_, points_);
  }
  std::span<const double> component(std::size_t j) const {
    return std::span<const double>(data_).subspan(j * points_, points_);
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

 private:
  GridSpec grid_;
  std::size_t components_ = 0;
  std::size_t points_ = 0;
  std::vector<double> data_;
};

/// Restores conjugate symmetry inside the zero and Nyquist planes of the r2c
/// axis. Self-conjugate entries end up with an imaginary part of exactly zero.
void enforce_hermitian(std::span<Complex> component, const GridSpec& grid);
void enforce_hermitian(SpectralField& field);

}  // namespace specrk
