#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>

#include "specrk/spectral_field.hpp"
#include "specrk/spectral_ops.hpp"

namespace specrk {

struct PhysParams {
  double reynolds = 1.0;
  double richardson = 1.0;
  double prandtl = 1.0;
  /// Upper edge of the forced band 0 < |k| <= k_f; 0 disables forcing.
  double forcing_cutoff = 0.0;
  /// Zero the k = 0 velocity tendency (removes the mean-flow response to buoyancy).
  bool zero_mean_velocity = false;

  /// Throws Error(invalid_argument) on Re <= 0, Ri < 0, k_f < 0, or Pr <= 0 with density.
  void validate(bool with_density) const;
};

/// Velocity (dims components) optionally followed by density, plus time.
/// `fields` is the ODE state the integrators advance.
struct FlowState {
  FlowState() = default;
  FlowState(const GridSpec& grid, bool with_density);

  SpectralField fields;
  bool has_density = false;
  double time = 0.0;

  const GridSpec& grid() const { return fields.grid(); }
  std::size_t velocity_components() const { return static_cast<std::size_t>(grid().dims()); }

  std::span<Complex> velocity();
  std::span<const Complex> velocity() const;
  std::span<Complex> density();
  std::span<const Complex> density() const;

  SpectralField velocity_field() const;
  SpectralField density_field() const;
};

/// Right-hand side of the spectral Navier-Stokes or Boussinesq system.
///
/// Holds the wavenumber tables, dealiaser plans and scratch, so one instance
/// should be built per run and reused for every evaluation. Not thread-safe.
class FlowRhs {
 public:
  FlowRhs(const GridSpec& grid, const PhysParams& params, bool with_density);

  const GridSpec& grid() const { return wavenumbers_.grid; }
  const Wavenumbers& wavenumbers() const { return wavenumbers_; }
  const PhysParams& params() const { return params_; }
  bool with_density() const { return with_density_; }
  /// Length of the flattened state (components x modes).
  std::size_t state_size() const;

  void operator()(std::span<const Complex> state, std::span<Complex> tendency);

 private:
  Wavenumbers wavenumbers_;
  PhysParams params_;
  bool with_density_;
  Dealiaser dealiaser_;
  PointwiseKernel kernel_;
  SpectralField vorticity_;
  SpectralField products_;
};

/// Navier-Stokes tendency. Throws Error(wrong_system) if the state carries density.
SpectralField ns_rhs(const FlowState& state, const PhysParams& params);

/// Boussinesq tendencies (velocity, density). Throws Error(wrong_system) without density.
std::pair<SpectralField, SpectralField> boussinesq_rhs(const FlowState& state,
                                                       const PhysParams& params);

/// Removes the component along k of every mode; k = 0 is left alone.
void leray_project(std::span<Complex> velocity, const Wavenumbers& wavenumbers);
SpectralField leray_project(const SpectralField& velocity, const Wavenumbers& wavenumbers);

/// Scales every velocity mode with 0 < |k| <= k_f by one real factor so that the
/// kinetic energy becomes `target_energy`. Returns the factor.
///
/// Throws Error(forcing_impossible) when the band is empty (or the energy
/// outside it already exceeds the target) and the target cannot be reached.
double apply_forcing(FlowState& state, const PhysParams& params, double target_energy);

}  // namespace specrk
