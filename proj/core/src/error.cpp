#include "specrk/error.hpp"

namespace specrk {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::invalid_argument: return "invalid_argument";
    case ErrorCategory::shape_mismatch: return "shape_mismatch";
    case ErrorCategory::wrong_system: return "wrong_system";
    case ErrorCategory::forcing_impossible: return "forcing_impossible";
    case ErrorCategory::non_finite_state: return "non_finite_state";
    case ErrorCategory::step_size_underflow: return "step_size_underflow";
    case ErrorCategory::bootstrap_required: return "bootstrap_required";
    case ErrorCategory::unsupported_order: return "unsupported_order";
    case ErrorCategory::invalid_scale: return "invalid_scale";
    case ErrorCategory::out_of_range: return "out_of_range";
    case ErrorCategory::config: return "config";
    case ErrorCategory::io: return "io";
    case ErrorCategory::format: return "format";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::io: return 3;
    case ErrorCategory::format: return 4;
    case ErrorCategory::step_size_underflow: return 5;
    case ErrorCategory::non_finite_state: return 6;
    default: return 1;
  }
}

}  // namespace specrk
