#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "specrk/spectral_field.hpp"

namespace specrk {

struct DiagnosticsRecord {
  double t = 0.0;
  /// Step that produced this state (0 for the initial record).
  double h = 0.0;
  double e_kin = 0.0;
  double eps = 0.0;
  long long rhs_evals = 0;
  long long rejections = 0;
};

struct SpectrumRecord {
  /// Shell m collects modes with m - 1/2 <= |k| < m + 1/2.
  std::vector<double> shell;
  std::vector<double> energy;
};

/// 1 / (2 N_total^2): converts weighted sums of |u_k|^2 into energy per unit volume.
double energy_normalization(const GridSpec& grid);

/// Kinetic energy per unit volume. `velocity` is one or more components back to back.
double kinetic_energy(std::span<const Complex> velocity, const GridSpec& grid);
double kinetic_energy(const SpectralField& velocity);

/// Dissipation rate -(1/N_total^2) sum w Re(u conj f) using the tendency f at u.
double dissipation_rate(std::span<const Complex> velocity, std::span<const Complex> tendency,
                        const GridSpec& grid);
double dissipation_rate(const SpectralField& velocity, const SpectralField& tendency);

SpectrumRecord energy_spectrum(const SpectralField& velocity);

struct FieldErrorNorms {
  double l2_rel = 0.0;
  double max_rel = 0.0;
};

/// Relative discrete L2 and max norms of u - u_ref in physical space.
FieldErrorNorms field_error_norms(const SpectralField& u, const SpectralField& u_ref);

struct TimeSeries {
  std::vector<double> t;
  std::vector<double> value;
};

/// Evaluates the piecewise quadratic interpolant of `ref` at x.
/// Throws Error(out_of_range) outside [t_front, t_back].
double interpolate_quadratic(const TimeSeries& ref, double x);

/// max_i |series_i - ref(t_i)| with ref interpolated piecewise quadratically.
double compare_series(const TimeSeries& series, const TimeSeries& ref);

}  // namespace specrk
