#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specrk {

/// Machine-readable failure class carried by every exception the library throws.
enum class ErrorCategory {
  invalid_argument,
  shape_mismatch,
  wrong_system,
  forcing_impossible,
  non_finite_state,
  step_size_underflow,
  bootstrap_required,
  unsupported_order,
  invalid_scale,
  out_of_range,
  config,
  io,
  format,
};

std::string_view to_string(ErrorCategory category);

/// Process exit code used by the CLI for a given category (always nonzero).
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& what) {
  throw Error(category, what);
}

}  // namespace specrk
