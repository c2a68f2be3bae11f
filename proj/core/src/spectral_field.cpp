#include "specrk/spectral_field.hpp"

#include <algorithm>

#include "specrk/error.hpp"

namespace specrk {

SpectralField::SpectralField(const GridSpec& grid, std::size_t components)
    : grid_(grid),
      components_(components),
      modes_(grid.spectral_size()),
      data_(components * grid.spectral_size()) {}

void SpectralField::set_zero() { std::fill(data_.begin(), data_.end(), Complex{}); }

PhysicalField::PhysicalField(const GridSpec& grid, std::size_t components)
    : grid_(grid),
      components_(components),
      points_(grid.physical_size()),
      data_(components * grid.physical_size()) {}

void enforce_hermitian(std::span<Complex> c, const GridSpec& grid) {
  if (c.size() != grid.spectral_size()) {
    fail(ErrorCategory::shape_mismatch, "enforce_hermitian: component size does not match grid");
  }
  const int e0 = grid.spectral_extent(0);
  const int n1 = grid.n(1);
  const int n2 = grid.dims() == 3 ? grid.n(2) : 1;
  const auto at = [&](int i0, int i1, int i2) -> Complex& {
    return c[static_cast<std::size_t>(i0 + e0 * (i1 + n1 * i2))];
  };
  for (const int i0 : {0, grid.n(0) / 2}) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const int j2 = (n2 - i2) % n2;
      for (int i1 = 0; i1 < n1; ++i1) {
        const int j1 = (n1 - i1) % n1;
        const int self = i1 + n1 * i2;
        const int partner = j1 + n1 * j2;
        if (partner < self) continue;
        Complex& a = at(i0, i1, i2);
        if (partner == self) {
          a = Complex(a.real(), 0.0);
          continue;
        }
        Complex& b = at(i0, j1, j2);
        const Complex avg = 0.5 * (a + std::conj(b));
        a = avg;
        b = std::conj(avg);
      }
    }
  }
}

void enforce_hermitian(SpectralField& field) {
  for (std::size_t j = 0; j < field.components(); ++j) {
    enforce_hermitian(field.component(j), field.grid());
  }
}

}  // namespace specrk
