#include "specrk/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>
#include <vector>

#include "specrk/error.hpp"

namespace specrk {

namespace detail {

void* aligned_allocate(std::size_t bytes) {
  void* p = fftw_malloc(std::max<std::size_t>(bytes, 1));
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void aligned_free(void* p) noexcept { fftw_free(p); }

std::mutex& fft_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

namespace {

std::vector<int> fftw_dims(const GridSpec& grid) {
  // FFTW is row-major with the halved dimension last; axis 0 is our r2c axis.
  std::vector<int> dims;
  for (int axis = grid.dims() - 1; axis >= 0; --axis) dims.push_back(grid.n(axis));
  return dims;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct Transformer::Impl {
  GridSpec grid;
  AlignedBuffer<double> real;
  AlignedBuffer<Complex> spectral;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Impl(const GridSpec& g)
      : grid(g), real(g.physical_size()), spectral(g.spectral_size()) {
    const auto dims = fftw_dims(g);
    std::lock_guard lock(detail::fft_planner_mutex());
    // FFTW_ESTIMATE never times candidate plans, so the chosen algorithm (and
    // therefore every rounding error) is identical from run to run.
    r2c = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), real.data(),
                            as_fftw(spectral.data()), FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), as_fftw(spectral.data()),
                            real.data(), FFTW_ESTIMATE);
    if (r2c == nullptr || c2r == nullptr) {
      fail(ErrorCategory::invalid_argument, "FFT planning failed");
    }
  }

  ~Impl() {
    std::lock_guard lock(detail::fft_planner_mutex());
    if (r2c != nullptr) fftw_destroy_plan(r2c);
    if (c2r != nullptr) fftw_destroy_plan(c2r);
  }
};

Transformer::Transformer(const GridSpec& grid) : impl_(std::make_unique<Impl>(grid)) {}
Transformer::~Transformer() = default;
Transformer::Transformer(Transformer&&) noexcept = default;
Transformer& Transformer::operator=(Transformer&&) noexcept = default;

const GridSpec& Transformer::grid() const { return impl_->grid; }

void Transformer::forward(std::span<const double> real, std::span<Complex> spectral) {
  if (real.size() != impl_->grid.physical_size() || spectral.size() != impl_->grid.spectral_size()) {
    fail(ErrorCategory::shape_mismatch, "forward_transform: array sizes do not match the grid");
  }
  std::copy(real.begin(), real.end(), impl_->real.data());
  fftw_execute_dft_r2c(impl_->r2c, impl_->real.data(), as_fftw(impl_->spectral.data()));
  std::copy_n(impl_->spectral.data(), spectral.size(), spectral.begin());
  enforce_hermitian(spectral, impl_->grid);
}

void Transformer::inverse(std::span<const Complex> spectral, std::span<double> real) {
  if (real.size() != impl_->grid.physical_size() || spectral.size() != impl_->grid.spectral_size()) {
    fail(ErrorCategory::shape_mismatch, "inverse_transform: array sizes do not match the grid");
  }
  std::copy(spectral.begin(), spectral.end(), impl_->spectral.data());
  enforce_hermitian(impl_->spectral.span(), impl_->grid);
  fftw_execute_dft_c2r(impl_->c2r, as_fftw(impl_->spectral.data()), impl_->real.data());
  const double scale = 1.0 / static_cast<double>(impl_->grid.physical_size());
  std::transform(impl_->real.data(), impl_->real.data() + real.size(), real.begin(),
                 [scale](double v) { return v * scale; });
}

SpectralField Transformer::forward(const PhysicalField& field) {
  if (!(field.grid() == impl_->grid)) {
    fail(ErrorCategory::shape_mismatch, "forward_transform: field grid differs from transform grid");
  }
  SpectralField out(field.grid(), field.components());
  for (std::size_t j = 0; j < field.components(); ++j) forward(field.component(j), out.component(j));
  return out;
}

PhysicalField Transformer::inverse(const SpectralField& field) {
  if (!(field.grid() == impl_->grid)) {
    fail(ErrorCategory::shape_mismatch, "inverse_transform: field grid differs from transform grid");
  }
  PhysicalField out(field.grid(), field.components());
  for (std::size_t j = 0; j < field.components(); ++j) inverse(field.component(j), out.component(j));
  return out;
}

SpectralField forward_transform(const PhysicalField& field) {
  Transformer t(field.grid());
  return t.forward(field);
}

PhysicalField inverse_transform(const SpectralField& field) {
  Transformer t(field.grid());
  return t.inverse(field);
}

}  // namespace specrk
