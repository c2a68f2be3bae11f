#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "specrk/spectral_field.hpp"

namespace specrk {

/// Spectral curl i k x u. A 3-component velocity gives a 3-component vorticity;
/// a 2-component (2D) velocity gives the scalar out-of-plane vorticity.
SpectralField curl(const SpectralField& velocity, const Wavenumbers& wavenumbers);
/// Span form: `velocity` holds dims components back to back, `out` holds 3 (3D) or 1 (2D).
void curl(std::span<const Complex> velocity, const Wavenumbers& wavenumbers, std::span<Complex> out);

/// Pointwise physical-space operation applied on the padded grid. `in` holds
/// every input component in order; `out` must be fully written.
using PointwiseKernel =
    std::function<void(std::span<const std::span<const double>> in,
                       std::span<const std::span<double>> out)>;

/// 3/2-rule dealiased evaluation of pointwise products.
///
/// Inputs are zero-padded to 3N/2 modes per axis, inverse transformed, combined
/// by the kernel, transformed back and truncated to the N-grid. Nyquist entries
/// are dropped on input and left zero on output, which makes quadratic kernels
/// exactly alias-free.
class Dealiaser {
 public:
  explicit Dealiaser(const GridSpec& grid);
  ~Dealiaser();
  Dealiaser(Dealiaser&&) noexcept;
  Dealiaser& operator=(Dealiaser&&) noexcept;

  const GridSpec& grid() const;
  const GridSpec& padded_grid() const;

  void product(std::span<const std::span<const Complex>> inputs, const PointwiseKernel& kernel,
               std::span<const std::span<Complex>> outputs);
  SpectralField product(std::span<const SpectralField* const> inputs,
                        const PointwiseKernel& kernel, std::size_t out_components);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper building a Dealiaser for the inputs' grid.
SpectralField dealiased_product(std::span<const SpectralField* const> inputs,
                                const PointwiseKernel& kernel, std::size_t out_components);

/// Pointwise cross product kernel. For 3D inputs are (a0,a1,a2,b0,b1,b2); for
/// 2D inputs are (a0,a1,w) with w the out-of-plane component, giving
/// (a1*w, -a0*w).
PointwiseKernel cross_product_kernel(int dims);

}  // namespace specrk
