#pragma once

#include <cmath>
#include <cstdint>

#include "hozon/common.hpp"

namespace hozon {

// Numeric value with a standard error; the return type of every Monte-Carlo
// operation. Exact results carry std_err = 0.
struct Estimate {
  double value = 0.0;
  double std_err = 0.0;
  long long n_samples = 0;

  static Estimate exact(double v) { return {v, 0.0, 0}; }
};

// Mean and standard error from blocked moments of per-sample values.
inline Estimate estimate_from_moments(double sum, double sumsq, long long n,
                                      double scale = 1.0) {
  Estimate e;
  e.n_samples = n;
  if (n <= 0) return e;
  const double mean = sum / n;
  double var = 0.0;
  if (n > 1) var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
  e.value = scale * mean;
  e.std_err = std::fabs(scale) * std::sqrt(var / n);
  return e;
}

// value^(1/p) with the delta-method standard error. A non-positive mean maps
// to 0 (h_Q can vanish identically along a ray when Q touches the origin).
inline Estimate estimate_root(const Estimate& e, double p) {
  Estimate r;
  r.n_samples = e.n_samples;
  if (e.value <= 0.0) return r;
  r.value = std::pow(e.value, 1.0 / p);
  r.std_err = e.std_err * r.value / (p * e.value);
  return r;
}

inline Estimate estimate_pow(const Estimate& e, double alpha) {
  Estimate r;
  r.n_samples = e.n_samples;
  if (e.value <= 0.0) return r;
  r.value = std::pow(e.value, alpha);
  r.std_err = std::fabs(alpha) * r.value / e.value * e.std_err;
  return r;
}

inline Estimate estimate_scale(const Estimate& e, double c) {
  return {c * e.value, std::fabs(c) * e.std_err, e.n_samples};
}

// Product of independent estimates.
inline Estimate estimate_mul(const Estimate& a, const Estimate& b) {
  Estimate r;
  r.value = a.value * b.value;
  r.std_err = std::hypot(a.value * b.std_err, b.value * a.std_err);
  r.n_samples = a.n_samples + b.n_samples;
  return r;
}

inline Estimate estimate_div(const Estimate& a, const Estimate& b) {
  Estimate r;
  if (b.value == 0.0) return {HUGE_VAL, HUGE_VAL, 0};
  r.value = a.value / b.value;
  r.std_err = std::fabs(r.value) *
              std::hypot(a.value == 0.0 ? 0.0 : a.std_err / a.value,
                         b.std_err / b.value);
  r.n_samples = a.n_samples + b.n_samples;
  return r;
}

// Acceptance band for stochastic comparisons: max(3 * combined SE, rel * |ref|).
inline double accept_band(double se_combined, double rel_tol, double ref) {
  return std::max(3.0 * se_combined, rel_tol * std::fabs(ref));
}

inline double joint_se(const Estimate& a, const Estimate& b) {
  return std::hypot(a.std_err, b.std_err);
}

}  // namespace hozon
