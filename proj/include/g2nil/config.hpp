#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace g2nil {

namespace detail {
inline double initial_tolerance() {
  if (const char* s = std::getenv("G2NIL_TOLERANCE")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0 && std::isfinite(v)) return v;
  }
  return 1e-9;
}
inline std::atomic<double>& tolerance_slot() {
  static std::atomic<double> t{initial_tolerance()};
  return t;
}
}  // namespace detail

// global float tolerance; exact comparisons never consult it
inline double tolerance() { return detail::tolerance_slot().load(std::memory_order_relaxed); }
inline void set_tolerance(double eps) { detail::tolerance_slot().store(eps, std::memory_order_relaxed); }

// |lhs - rhs| <= eps (1 + |lhs| + |rhs|)
inline bool approx_equal(double lhs, double rhs, double eps = tolerance()) {
  return std::abs(lhs - rhs) <= eps * (1.0 + std::abs(lhs) + std::abs(rhs));
}

}  // namespace g2nil
