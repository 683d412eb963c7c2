#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinflip {

enum class ErrorCode {
  degenerate_gyromagnetic,  // g == 1
  frame_unreachable,        // average-rest-frame fixed point not found
  domain,                   // argument outside a function's domain
  degenerate_orbit,         // mu^2 == 1
  step_size,                // dt * |H| >= pi, or too few steps per period
  regime,                   // closed form requested outside its validity
  no_resonance,             // g <= 1
  invalid_argument,         // non-finite or out-of-range input
  config,                   // configuration syntax or schema violation
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The CLI maps `config` to exit code 2
/// and all numeric codes to exit code 3.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool is_config() const noexcept { return code_ == ErrorCode::config; }

 private:
  ErrorCode code_;
};

}  // namespace spinflip
