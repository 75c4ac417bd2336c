#pragma once

#include <stdexcept>
#include <string>

namespace sigot {

enum class Errc {
  invalid_argument,
  grid_mismatch,
  degenerate,
  mass_mismatch,
  empty_support,
  negative_mass,
  non_finite,
  parse_error,
  io_error,
};

const char* to_string(Errc code) noexcept;

// All recoverable failures in the library are reported with this type.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sigot
