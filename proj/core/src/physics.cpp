#include "specrk/physics.hpp"

#include <cmath>
#include <vector>

#include "specrk/diagnostics.hpp"
#include "specrk/error.hpp"

namespace specrk {

void PhysParams::validate(bool with_density) const {
  if (!(reynolds > 0.0) || !std::isfinite(reynolds)) {
    fail(ErrorCategory::invalid_argument, "reynolds must be positive");
  }
  if (!(richardson >= 0.0)) fail(ErrorCategory::invalid_argument, "richardson must be >= 0");
  if (!(forcing_cutoff >= 0.0)) fail(ErrorCategory::invalid_argument, "forcing cutoff must be >= 0");
  if (with_density && !(prandtl > 0.0)) {
    fail(ErrorCategory::invalid_argument, "prandtl must be positive when density is active");
  }
}

FlowState::FlowState(const GridSpec& grid, bool with_density)
    : fields(grid, static_cast<std::size_t>(grid.dims()) + (with_density ? 1 : 0)),
      has_density(with_density) {}

std::span<Complex> FlowState::velocity() {
  return fields.data().first(velocity_components() * fields.modes());
}

std::span<const Complex> FlowState::velocity() const {
  return fields.data().first(velocity_components() * fields.modes());
}

std::span<Complex> FlowState::density() {
  if (!has_density) fail(ErrorCategory::wrong_system, "state has no density component");
  return fields.component(velocity_components());
}

std::span<const Complex> FlowState::density() const {
  if (!has_density) fail(ErrorCategory::wrong_system, "state has no density component");
  return fields.component(velocity_components());
}

SpectralField FlowState::velocity_field() const {
  SpectralField out(grid(), velocity_components());
  const auto v = velocity();
  std::copy(v.begin(), v.end(), out.data().begin());
  return out;
}

SpectralField FlowState::density_field() const {
  SpectralField out(grid(), 1);
  const auto r = density();
  std::copy(r.begin(), r.end(), out.data().begin());
  return out;
}

FlowRhs::FlowRhs(const GridSpec& grid, const PhysParams& params, bool with_density)
    : wavenumbers_(grid),
      params_(params),
      with_density_(with_density),
      dealiaser_(grid),
      vorticity_(grid, grid.dims() == 3 ? 3 : 1),
      products_(grid, static_cast<std::size_t>(grid.dims()) * (with_density ? 2 : 1)) {
  params_.validate(with_density);
  const int dims = grid.dims();
  PointwiseKernel cross = cross_product_kernel(dims);
  if (!with_density) {
    kernel_ = std::move(cross);
    return;
  }
  // Inputs: u, omega, rho. Outputs: u x omega, then rho * u.
  const std::size_t d = static_cast<std::size_t>(dims);
  const std::size_t n_cross_in = d + (dims == 3 ? 3 : 1);
  kernel_ = [cross, d, n_cross_in](std::span<const std::span<const double>> in,
                                   std::span<const std::span<double>> out) {
    cross(in.first(n_cross_in), out.first(d));
    const auto& rho = in[n_cross_in];
    for (std::size_t j = 0; j < d; ++j) {
      const auto& u = in[j];
      const auto& ru = out[d + j];
      for (std::size_t p = 0; p < rho.size(); ++p) ru[p] = rho[p] * u[p];
    }
  };
}

std::size_t FlowRhs::state_size() const {
  return (static_cast<std::size_t>(grid().dims()) + (with_density_ ? 1 : 0)) * grid().spectral_size();
}

void FlowRhs::operator()(std::span<const Complex> state, std::span<Complex> tendency) {
  const GridSpec& g = grid();
  const std::size_t modes = g.spectral_size();
  const std::size_t d = static_cast<std::size_t>(g.dims());
  if (state.size() != state_size() || tendency.size() != state_size()) {
    fail(ErrorCategory::shape_mismatch, "rhs: state size does not match the system");
  }
  const auto velocity = state.first(d * modes);
  curl(velocity, wavenumbers_, vorticity_.data());

  std::vector<std::span<const Complex>> in;
  for (std::size_t j = 0; j < d; ++j) in.push_back(velocity.subspan(j * modes, modes));
  for (std::size_t j = 0; j < vorticity_.components(); ++j) in.push_back(vorticity_.component(j));
  if (with_density_) in.push_back(state.subspan(d * modes, modes));
  std::vector<std::span<Complex>> out;
  for (std::size_t j = 0; j < products_.components(); ++j) out.push_back(products_.component(j));
  dealiaser_.product(in, kernel_, out);

  const auto& k = wavenumbers_.k;
  const auto& k2 = wavenumbers_.k2;
  const auto& inv_kd2 = wavenumbers_.inv_kd2;
  const double nu = 1.0 / params_.reynolds;
  const double ri = params_.richardson;
  const std::size_t gravity = d - 1;

  for (std::size_t m = 0; m < modes; ++m) {
    Complex v[3];
    Complex kv(0.0, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      v[j] = products_.component(j)[m];
      if (with_density_ && j == gravity) v[j] -= ri * state[d * modes + m];
      kv += k[j][m] * v[j];
    }
    const Complex p = kv * inv_kd2[m];
    for (std::size_t j = 0; j < d; ++j) {
      tendency[j * modes + m] = v[j] - k[j][m] * p - nu * k2[m] * velocity[j * modes + m];
    }
  }
  if (params_.zero_mean_velocity) {
    for (std::size_t j = 0; j < d; ++j) tendency[j * modes] = Complex(0.0, 0.0);
  }

  if (with_density_) {
    const double kappa = 1.0 / (params_.reynolds * params_.prandtl);
    const Complex i(0.0, 1.0);
    const auto rho = state.subspan(d * modes, modes);
    auto f_rho = tendency.subspan(d * modes, modes);
    for (std::size_t m = 0; m < modes; ++m) {
      Complex div(0.0, 0.0);
      for (std::size_t j = 0; j < d; ++j) div += k[j][m] * products_.component(d + j)[m];
      f_rho[m] = -i * div - kappa * k2[m] * rho[m];
    }
  }

  for (std::size_t j = 0; j < d + (with_density_ ? 1 : 0); ++j) {
    enforce_hermitian(tendency.subspan(j * modes, modes), g);
  }
}

SpectralField ns_rhs(const FlowState& state, const PhysParams& params) {
  if (state.has_density) fail(ErrorCategory::wrong_system, "ns_rhs: state carries a density field");
  FlowRhs rhs(state.grid(), params, false);
  SpectralField out(state.grid(), state.velocity_components());
  rhs(state.fields.data(), out.data());
  return out;
}

std::pair<SpectralField, SpectralField> boussinesq_rhs(const FlowState& state,
                                                       const PhysParams& params) {
  if (!state.has_density) fail(ErrorCategory::wrong_system, "boussinesq_rhs: state has no density");
  FlowRhs rhs(state.grid(), params, true);
  SpectralField all(state.grid(), state.fields.components());
  rhs(state.fields.data(), all.data());
  SpectralField fu(state.grid(), state.velocity_components());
  SpectralField frho(state.grid(), 1);
  const auto src = all.data();
  std::copy_n(src.begin(), fu.size(), fu.data().begin());
  std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(fu.size()), frho.size(), frho.data().begin());
  return {std::move(fu), std::move(frho)};
}

void leray_project(std::span<Complex> u, const Wavenumbers& wn) {
  const GridSpec& g = wn.grid;
  const std::size_t modes = g.spectral_size();
  const std::size_t d = static_cast<std::size_t>(g.dims());
  if (u.size() != d * modes) {
    fail(ErrorCategory::shape_mismatch, "leray_project: expected one component per dimension");
  }
  for (std::size_t m = 0; m < modes; ++m) {
    if (wn.inv_kd2[m] == 0.0) continue;
    Complex ku(0.0, 0.0);
    for (std::size_t j = 0; j < d; ++j) ku += wn.k[j][m] * u[j * modes + m];
    const Complex p = ku * wn.inv_kd2[m];
    for (std::size_t j = 0; j < d; ++j) u[j * modes + m] -= wn.k[j][m] * p;
  }
  for (std::size_t j = 0; j < d; ++j) enforce_hermitian(u.subspan(j * modes, modes), g);
}

SpectralField leray_project(const SpectralField& velocity, const Wavenumbers& wavenumbers) {
  if (!(velocity.grid() == wavenumbers.grid)) {
    fail(ErrorCategory::shape_mismatch, "leray_project: wavenumbers belong to a different grid");
  }
  SpectralField out = velocity;
  leray_project(out.data(), wavenumbers);
  return out;
}

double apply_forcing(FlowState& state, const PhysParams& params, double target_energy) {
  if (!(params.forcing_cutoff > 0.0)) {
    fail(ErrorCategory::invalid_argument, "apply_forcing: forcing cutoff must be positive");
  }
  const GridSpec& g = state.grid();
  const Wavenumbers wn(g);
  const std::size_t modes = g.spectral_size();
  const std::size_t d = state.velocity_components();
  const double kf2 = params.forcing_cutoff * params.forcing_cutoff;
  auto u = state.velocity();

  const double total = kinetic_energy(u, g);
  if (total == target_energy) return 1.0;

  const double norm = energy_normalization(g);
  double band = 0.0;
  double outside = 0.0;
  for (std::size_t m = 0; m < modes; ++m) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += std::norm(u[j * modes + m]);
    s *= wn.weight[m];
    if (wn.k2[m] > 0.0 && wn.k2[m] <= kf2) {
      band += s;
    } else {
      outside += s;
    }
  }
  band *= norm;
  outside *= norm;
  const double needed = target_energy - outside;
  if (band == 0.0 || needed < 0.0) {
    fail(ErrorCategory::forcing_impossible,
         "apply_forcing: the forced band cannot restore the target energy");
  }
  const double gamma = std::sqrt(needed / band);
  for (std::size_t m = 0; m < modes; ++m) {
    if (wn.k2[m] > 0.0 && wn.k2[m] <= kf2) {
      for (std::size_t j = 0; j < d; ++j) u[j * modes + m] *= gamma;
    }
  }
  return gamma;
}

}  // namespace specrk
