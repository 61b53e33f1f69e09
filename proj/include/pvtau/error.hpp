#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace pvtau {

enum class errc {
  pole,
  g_zero,
  resonance,
  non_invertible,
  cancellation_failure,
  series_margin,
  pole_proximity,
  residual_drift,
  degenerate_monodromy,
  genericity,
  config,
  non_solvable_order,
  usage,
};

const char* code_name(errc code);

inline std::string format_sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", x);
  return b;
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace pvtau
