#include "specrk/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "specrk/error.hpp"
#include "specrk/transform.hpp"

namespace specrk {

double energy_normalization(const GridSpec& grid) {
  const double n = static_cast<double>(grid.physical_size());
  return 1.0 / (2.0 * n * n);
}

namespace {

std::size_t checked_components(std::span<const Complex> data, const GridSpec& grid) {
  const std::size_t modes = grid.spectral_size();
  if (data.empty() || data.size() % modes != 0) {
    fail(ErrorCategory::shape_mismatch, "diagnostics: data is not a whole number of components");
  }
  return data.size() / modes;
}

}  // namespace

double kinetic_energy(std::span<const Complex> u, const GridSpec& grid) {
  const std::size_t comps = checked_components(u, grid);
  const std::size_t modes = grid.spectral_size();
  const Wavenumbers wn(grid);
  double sum = 0.0;
  for (std::size_t m = 0; m < modes; ++m) {
    double s = 0.0;
    for (std::size_t j = 0; j < comps; ++j) s += std::norm(u[j * modes + m]);
    sum += wn.weight[m] * s;
  }
  return sum * energy_normalization(grid);
}

double kinetic_energy(const SpectralField& velocity) {
  return kinetic_energy(velocity.data(), velocity.grid());
}

double dissipation_rate(std::span<const Complex> u, std::span<const Complex> f, const GridSpec& grid) {
  const std::size_t comps = checked_components(u, grid);
  if (f.size() != u.size()) fail(ErrorCategory::shape_mismatch, "dissipation_rate: shapes differ");
  const std::size_t modes = grid.spectral_size();
  const Wavenumbers wn(grid);
  double sum = 0.0;
  for (std::size_t m = 0; m < modes; ++m) {
    double s = 0.0;
    for (std::size_t j = 0; j < comps; ++j) {
      const Complex a = u[j * modes + m];
      const Complex b = f[j * modes + m];
      s += a.real() * b.real() + a.imag() * b.imag();
    }
    sum += wn.weight[m] * s;
  }
  return -2.0 * sum * energy_normalization(grid);
}

double dissipation_rate(const SpectralField& velocity, const SpectralField& tendency) {
  if (!(velocity.grid() == tendency.grid())) {
    fail(ErrorCategory::shape_mismatch, "dissipation_rate: grids differ");
  }
  return dissipation_rate(velocity.data(), tendency.data(), velocity.grid());
}

SpectrumRecord energy_spectrum(const SpectralField& velocity) {
  const GridSpec& g = velocity.grid();
  const Wavenumbers wn(g);
  const std::size_t modes = g.spectral_size();
  const std::size_t comps = velocity.components();
  std::vector<double> energy;
  const double norm = energy_normalization(g);
  for (std::size_t m = 0; m < modes; ++m) {
    const auto shell = static_cast<std::size_t>(std::floor(std::sqrt(wn.k2[m]) + 0.5));
    if (shell >= energy.size()) energy.resize(shell + 1, 0.0);
    double s = 0.0;
    for (std::size_t j = 0; j < comps; ++j) s += std::norm(velocity.component(j)[m]);
    energy[shell] += wn.weight[m] * s * norm;
  }
  SpectrumRecord out;
  out.energy = std::move(energy);
  out.shell.resize(out.energy.size());
  for (std::size_t i = 0; i < out.shell.size(); ++i) out.shell[i] = static_cast<double>(i);
  return out;
}

FieldErrorNorms field_error_norms(const SpectralField& u, const SpectralField& u_ref) {
  if (!(u.grid() == u_ref.grid()) || u.components() != u_ref.components()) {
    fail(ErrorCategory::shape_mismatch, "field_error_norms: fields live on different grids");
  }
  Transformer tr(u.grid());
  const PhysicalField a = tr.inverse(u);
  const PhysicalField b = tr.inverse(u_ref);
  double diff2 = 0.0, ref2 = 0.0, diff_max = 0.0, ref_max = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    diff2 += d * d;
    ref2 += db[i] * db[i];
    diff_max = std::max(diff_max, std::abs(d));
    ref_max = std::max(ref_max, std::abs(db[i]));
  }
  FieldErrorNorms out;
  // A zero reference makes the relative norms undefined; report absolute ones.
  out.l2_rel = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2 / static_cast<double>(da.size()));
  out.max_rel = ref_max > 0.0 ? diff_max / ref_max : diff_max;
  return out;
}

double interpolate_quadratic(const TimeSeries& ref, double x) {
  const auto& t = ref.t;
  if (t.size() < 3 || ref.value.size() != t.size()) {
    fail(ErrorCategory::invalid_argument, "compare_series: reference needs at least 3 samples");
  }
  if (!(x >= t.front() && x <= t.back())) {
    fail(ErrorCategory::out_of_range, "compare_series: time outside the reference range");
  }
  // Three consecutive samples around x: the interval containing x plus the
  // nearer outer neighbour.
  auto it = std::upper_bound(t.begin(), t.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - t.begin());
  if (hi == t.size()) hi = t.size() - 1;
  if (hi == 0) hi = 1;
  std::size_t i0;
  if (hi == 1) {
    i0 = 0;
  } else if (hi == t.size() - 1) {
    i0 = hi - 2;
  } else {
    i0 = (x - t[hi - 2] <= t[hi + 1] - x) ? hi - 2 : hi - 1;
  }
  const double x0 = t[i0], x1 = t[i0 + 1], x2 = t[i0 + 2];
  const double y0 = ref.value[i0], y1 = ref.value[i0 + 1], y2 = ref.value[i0 + 2];
  const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
  const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
  const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
  return y0 * l0 + y1 * l1 + y2 * l2;
}

double compare_series(const TimeSeries& series, const TimeSeries& ref) {
  if (series.t.size() != series.value.size()) {
    fail(ErrorCategory::shape_mismatch, "compare_series: series columns differ in length");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    const double d = std::abs(series.value[i] - interpolate_quadratic(ref, series.t[i]));
    if (std::isnan(d)) return d;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace specrk
