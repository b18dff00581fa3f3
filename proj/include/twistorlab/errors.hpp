#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace twistorlab {

struct error : std::runtime_error {
  double residual;
  error(const std::string& what, double r = 0) : std::runtime_error(what), residual(r) {}
};

struct invalid_rotation : error { using error::error; };
struct invalid_curvature : error { using error::error; };
struct inconsistent_blocks : error { using error::error; };
struct parameter_error : error { using error::error; };
struct hypothesis_violated : error { using error::error; };
struct assembly_coverage : error { using error::error; };
struct unknown_model : error { using error::error; };

inline void require_t(double t) {
  if (!(t > 0) || !std::isfinite(t)) throw parameter_error("t must be positive, got " + std::to_string(t));
}

}  // namespace twistorlab
