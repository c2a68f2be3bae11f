#pragma once

#include <string>

#include "specrk/simulation.hpp"

namespace specrk {

/// Binary restart file, little-endian:
///   "SRKL", u32 version, u32 dims, 3 x u32 n, 3 x f64 length,
///   f64 time, f64 h, f64 h_last, u8 prev_rejected,
///   u8 history valid, f64 history h_prev, 3 x i64 (rhs evals, rejections, accepted steps),
///   u32 length + bytes of the RNG state, u32 components, u8 has_density,
///   u64 history entries, then the history derivative and the state, each as
///   component-major (re, im) f64 pairs.
void write_checkpoint(const SimulationState& state, const std::string& path);

/// Throws Error(format) on a bad magic, unknown version or truncated file,
/// Error(io) when the file cannot be opened.
SimulationState read_checkpoint(const std::string& path);

}  // namespace specrk
