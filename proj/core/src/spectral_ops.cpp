#include "specrk/spectral_ops.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "specrk/error.hpp"
#include "specrk/transform.hpp"

namespace specrk {

void curl(std::span<const Complex> u, const Wavenumbers& wn, std::span<Complex> out) {
  const GridSpec& g = wn.grid;
  const std::size_t modes = g.spectral_size();
  const std::size_t out_components = g.dims() == 3 ? 3 : 1;
  if (u.size() != modes * static_cast<std::size_t>(g.dims()) || out.size() != modes * out_components) {
    fail(ErrorCategory::shape_mismatch, "curl: velocity must have one component per dimension");
  }
  const Complex i(0.0, 1.0);
  if (g.dims() == 3) {
    const auto ux = u.subspan(0, modes), uy = u.subspan(modes, modes), uz = u.subspan(2 * modes, modes);
    auto wx = out.subspan(0, modes), wy = out.subspan(modes, modes), wz = out.subspan(2 * modes, modes);
    const auto &kx = wn.k[0], &ky = wn.k[1], &kz = wn.k[2];
    for (std::size_t m = 0; m < modes; ++m) {
      wx[m] = i * (ky[m] * uz[m] - kz[m] * uy[m]);
      wy[m] = i * (kz[m] * ux[m] - kx[m] * uz[m]);
      wz[m] = i * (kx[m] * uy[m] - ky[m] * ux[m]);
    }
  } else {
    const auto ux = u.subspan(0, modes), uy = u.subspan(modes, modes);
    const auto &kx = wn.k[0], &ky = wn.k[1];
    for (std::size_t m = 0; m < modes; ++m) {
      out[m] = i * (kx[m] * uy[m] - ky[m] * ux[m]);
    }
  }
  for (std::size_t j = 0; j < out_components; ++j) {
    enforce_hermitian(out.subspan(j * modes, modes), g);
  }
}

SpectralField curl(const SpectralField& velocity, const Wavenumbers& wavenumbers) {
  if (!(velocity.grid() == wavenumbers.grid)) {
    fail(ErrorCategory::shape_mismatch, "curl: wavenumbers belong to a different grid");
  }
  SpectralField out(velocity.grid(), velocity.grid().dims() == 3 ? 3 : 1);
  curl(velocity.data(), wavenumbers, out.data());
  return out;
}

namespace {

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

// Transforms between the zero-padded half spectrum of the 3N/2 grid and
// physical space, skipping the 1D transforms whose input pencils are known to
// be zero (c2r) or whose output is discarded by truncation (r2c).
class PrunedPaddedTransform {
 public:
  PrunedPaddedTransform(const GridSpec& grid, const GridSpec& padded)
      : dims_(grid.dims()), work_(padded.spectral_size()), real_(padded.physical_size()) {
    const int kx = grid.n(0) / 2;  // retained r2c entries 0..N/2-1
    const int mx = padded.spectral_extent(0);
    const int m0 = padded.n(0);
    const int m1 = padded.n(1);
    const int n1 = grid.n(1);
    fftw_complex* w = as_fftw(work_.data());
    double* r = real_.data();

    std::lock_guard lock(detail::fft_planner_mutex());
    const auto plan_dft = [&](fftw_iodim dim, std::span<const fftw_iodim> loops, std::ptrdiff_t offset,
                              int sign) {
      fftw_plan p = fftw_plan_guru_dft(1, &dim, static_cast<int>(loops.size()), loops.data(), w + offset,
                                       w + offset, sign, FFTW_ESTIMATE);
      if (p == nullptr) fail(ErrorCategory::invalid_argument, "FFT planning failed");
      return Step{p, offset};
    };

    if (dims_ == 3) {
      const int m2 = padded.n(2);
      const int n2 = grid.n(2);
      (void)n2;
      const fftw_iodim along_z{m2, m1 * mx, m1 * mx};
      const std::ptrdiff_t hi_offset = static_cast<std::ptrdiff_t>(m1 - n1 / 2 + 1) * mx;
      const fftw_iodim lo_loops[2] = {{kx, 1, 1}, {n1 / 2, mx, mx}};
      const fftw_iodim hi_loops[2] = {{kx, 1, 1}, {n1 / 2 - 1, mx, mx}};
      const fftw_iodim along_y{m1, mx, mx};
      const fftw_iodim y_loops[2] = {{kx, 1, 1}, {m2, m1 * mx, m1 * mx}};
      for (const int sign : {FFTW_BACKWARD, FFTW_FORWARD}) {
        auto& steps = sign == FFTW_BACKWARD ? backward_ : forward_;
        steps.push_back(plan_dft(along_z, lo_loops, 0, sign));
        steps.push_back(plan_dft(along_z, hi_loops, hi_offset, sign));
        steps.push_back(plan_dft(along_y, y_loops, 0, sign));
      }
      // Forward order is x (r2c), y, then z.
      std::reverse(forward_.begin(), forward_.end());
    } else {
      const fftw_iodim along_y{m1, mx, mx};
      const fftw_iodim y_loops[1] = {{kx, 1, 1}};
      backward_.push_back(plan_dft(along_y, y_loops, 0, FFTW_BACKWARD));
      forward_.push_back(plan_dft(along_y, y_loops, 0, FFTW_FORWARD));
    }

    const int pencils = static_cast<int>(padded.physical_size() / static_cast<std::size_t>(m0));
    const fftw_iodim along_x{m0, 1, 1};
    const fftw_iodim c2r_loop{pencils, mx, m0};
    const fftw_iodim r2c_loop{pencils, m0, mx};
    c2r_ = fftw_plan_guru_dft_c2r(1, &along_x, 1, &c2r_loop, w, r, FFTW_ESTIMATE);
    r2c_ = fftw_plan_guru_dft_r2c(1, &along_x, 1, &r2c_loop, r, w, FFTW_ESTIMATE);
    if (c2r_ == nullptr || r2c_ == nullptr) fail(ErrorCategory::invalid_argument, "FFT planning failed");
  }

  ~PrunedPaddedTransform() {
    std::lock_guard lock(detail::fft_planner_mutex());
    for (auto* steps : {&backward_, &forward_}) {
      for (const Step& s : *steps) fftw_destroy_plan(s.plan);
    }
    fftw_destroy_plan(c2r_);
    fftw_destroy_plan(r2c_);
  }

  PrunedPaddedTransform(const PrunedPaddedTransform&) = delete;
  PrunedPaddedTransform& operator=(const PrunedPaddedTransform&) = delete;

  AlignedBuffer<Complex>& work() { return work_; }

  /// Unnormalized c2r of work() into `out`; work() is clobbered.
  void inverse(AlignedBuffer<double>& out) {
    for (const Step& s : backward_) run(s);
    fftw_execute_dft_c2r(c2r_, as_fftw(work_.data()), out.data());
  }

  /// Unnormalized r2c of `in` into work(); only retained entries are valid.
  void forward(AlignedBuffer<double>& in) {
    fftw_execute_dft_r2c(r2c_, in.data(), as_fftw(work_.data()));
    for (const Step& s : forward_) run(s);
  }

 private:
  struct Step {
    fftw_plan plan;
    std::ptrdiff_t offset;
  };

  void run(const Step& s) {
    fftw_complex* p = as_fftw(work_.data()) + s.offset;
    fftw_execute_dft(s.plan, p, p);
  }

  int dims_;
  AlignedBuffer<Complex> work_;
  AlignedBuffer<double> real_;
  std::vector<Step> backward_;
  std::vector<Step> forward_;
  fftw_plan c2r_ = nullptr;
  fftw_plan r2c_ = nullptr;
};

}  // namespace

struct Dealiaser::Impl {
  Impl(const GridSpec& g) : grid(g), padded(g.padded()), transform(grid, padded) {
    const std::size_t modes = grid.spectral_size();
    pad_map.assign(modes, -1);
    const int e0 = grid.spectral_extent(0);
    const int n1 = grid.n(1);
    const int n2 = grid.dims() == 3 ? grid.n(2) : 1;
    const int pe0 = padded.spectral_extent(0);
    const int m1 = padded.n(1);
    const int m2 = grid.dims() == 3 ? padded.n(2) : 1;
    const auto lift = [](int i, int n, int m) { return i <= n / 2 ? i : i + (m - n); };
    std::size_t idx = 0;
    for (int i2 = 0; i2 < n2; ++i2) {
      for (int i1 = 0; i1 < n1; ++i1) {
        for (int i0 = 0; i0 < e0; ++i0, ++idx) {
          const bool nyquist =
              i0 == grid.n(0) / 2 || i1 == n1 / 2 || (grid.dims() == 3 && i2 == n2 / 2);
          if (nyquist) continue;
          const int j1 = lift(i1, n1, m1);
          const int j2 = grid.dims() == 3 ? lift(i2, n2, m2) : 0;
          pad_map[idx] = static_cast<std::ptrdiff_t>(i0 + pe0 * (j1 + m1 * j2));
        }
      }
    }
  }

  void pad(std::span<const Complex> in) {
    // Scaling by 1/N^d here makes the c2r output the true physical values.
    const double scale = 1.0 / static_cast<double>(grid.physical_size());
    AlignedBuffer<Complex>& out = transform.work();
    std::fill_n(out.data(), out.size(), Complex{});
    Complex* dst = out.data();
    for (std::size_t m = 0; m < in.size(); ++m) {
      const std::ptrdiff_t p = pad_map[m];
      if (p >= 0) dst[p] = in[m] * scale;
    }
  }

  void truncate(std::span<Complex> out) {
    const double scale =
        static_cast<double>(grid.physical_size()) / static_cast<double>(padded.physical_size());
    const Complex* src = transform.work().data();
    for (std::size_t m = 0; m < out.size(); ++m) {
      const std::ptrdiff_t p = pad_map[m];
      out[m] = p >= 0 ? src[p] * scale : Complex{};
    }
    enforce_hermitian(out, grid);
  }

  GridSpec grid;
  GridSpec padded;
  PrunedPaddedTransform transform;
  std::vector<AlignedBuffer<double>> physical;
  // N-grid storage index -> padded storage index, or -1 for Nyquist entries.
  std::vector<std::ptrdiff_t> pad_map;
};

Dealiaser::Dealiaser(const GridSpec& grid) : impl_(std::make_unique<Impl>(grid)) {}
Dealiaser::~Dealiaser() = default;
Dealiaser::Dealiaser(Dealiaser&&) noexcept = default;
Dealiaser& Dealiaser::operator=(Dealiaser&&) noexcept = default;

const GridSpec& Dealiaser::grid() const { return impl_->grid; }
const GridSpec& Dealiaser::padded_grid() const { return impl_->padded; }

void Dealiaser::product(std::span<const std::span<const Complex>> inputs,
                        const PointwiseKernel& kernel, std::span<const std::span<Complex>> outputs) {
  Impl& d = *impl_;
  const std::size_t modes = d.grid.spectral_size();
  for (const auto& in : inputs) {
    if (in.size() != modes) {
      fail(ErrorCategory::shape_mismatch, "dealiased_product: input size differs from dealiaser grid");
    }
  }
  for (const auto& out : outputs) {
    if (out.size() != modes) {
      fail(ErrorCategory::shape_mismatch, "dealiased_product: output size differs from dealiaser grid");
    }
  }
  const std::size_t n_in = inputs.size();
  const std::size_t n_out = outputs.size();
  const std::size_t points = d.padded.physical_size();
  while (d.physical.size() < n_in + n_out) d.physical.emplace_back(points);

  for (std::size_t s = 0; s < n_in; ++s) {
    d.pad(inputs[s]);
    d.transform.inverse(d.physical[s]);
  }

  std::vector<std::span<const double>> in_views;
  std::vector<std::span<double>> out_views;
  in_views.reserve(n_in);
  out_views.reserve(n_out);
  for (std::size_t s = 0; s < n_in; ++s) in_views.emplace_back(d.physical[s].data(), points);
  for (std::size_t s = 0; s < n_out; ++s) out_views.push_back(d.physical[n_in + s].span());
  kernel(in_views, out_views);

  for (std::size_t j = 0; j < n_out; ++j) {
    d.transform.forward(d.physical[n_in + j]);
    d.truncate(outputs[j]);
  }
}

SpectralField Dealiaser::product(std::span<const SpectralField* const> inputs,
                                 const PointwiseKernel& kernel, std::size_t out_components) {
  std::vector<std::span<const Complex>> in;
  for (const SpectralField* f : inputs) {
    if (f == nullptr || !(f->grid() == impl_->grid)) {
      fail(ErrorCategory::shape_mismatch, "dealiased_product: input grid differs from dealiaser grid");
    }
    for (std::size_t j = 0; j < f->components(); ++j) in.push_back(f->component(j));
  }
  SpectralField out(impl_->grid, out_components);
  std::vector<std::span<Complex>> out_views;
  for (std::size_t j = 0; j < out_components; ++j) out_views.push_back(out.component(j));
  product(in, kernel, out_views);
  return out;
}

SpectralField dealiased_product(std::span<const SpectralField* const> inputs,
                                const PointwiseKernel& kernel, std::size_t out_components) {
  if (inputs.empty() || inputs.front() == nullptr) {
    fail(ErrorCategory::invalid_argument, "dealiased_product: no inputs");
  }
  Dealiaser d(inputs.front()->grid());
  return d.product(inputs, kernel, out_components);
}

PointwiseKernel cross_product_kernel(int dims) {
  if (dims == 3) {
    return [](std::span<const std::span<const double>> in, std::span<const std::span<double>> out) {
      const auto &a0 = in[0], &a1 = in[1], &a2 = in[2], &b0 = in[3], &b1 = in[4], &b2 = in[5];
      const auto &c0 = out[0], &c1 = out[1], &c2 = out[2];
      const std::size_t n = a0.size();
      for (std::size_t p = 0; p < n; ++p) {
        c0[p] = a1[p] * b2[p] - a2[p] * b1[p];
        c1[p] = a2[p] * b0[p] - a0[p] * b2[p];
        c2[p] = a0[p] * b1[p] - a1[p] * b0[p];
      }
    };
  }
  return [](std::span<const std::span<const double>> in, std::span<const std::span<double>> out) {
    const auto &a0 = in[0], &a1 = in[1], &w = in[2];
    const auto &c0 = out[0], &c1 = out[1];
    const std::size_t n = a0.size();
    for (std::size_t p = 0; p < n; ++p) {
      c0[p] = a1[p] * w[p];
      c1[p] = -a0[p] * w[p];
    }
  };
}

}  // namespace specrk
