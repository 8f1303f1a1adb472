#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hozon {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Ambient dimensions of the matrix space M[n,m] ~= R^{nm} (column-major
// flattening; column i of an n x m matrix occupies [i*n, (i+1)*n)).
struct Dims {
  int n = 1;  // column dimension
  int m = 1;  // number of difference slots
  int nm() const { return n * m; }
};

inline constexpr int kMaxAmbientDim = 8;

struct invalid_argument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct unsupported_body : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct efficiency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_dims(const Dims& d) {
  if (d.n < 1 || d.m < 1) throw invalid_argument("Dims: n, m must be >= 1");
  if (d.n * d.m > kMaxAmbientDim)
    throw invalid_argument("Dims: n*m exceeds sampling cap " +
                           std::to_string(kMaxAmbientDim));
}

// Surface area of the unit sphere S^{d-1}; S^0 carries counting measure 2.
inline double sphere_surface(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

// Volume of the unit ball in R^d.
inline double ball_volume(int d) {
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Generalized binomial binom(q + k, k) for real q > -1 and integer k >= 0,
// computed as prod_{j=1..k} (q + j) / j.
inline double binom_real(double q, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out *= (q + j) / j;
  return out;
}

// Columns of the flattened direction u in R^{nm}: column i as an n-vector.
inline Vec flat_column(const Vec& u, int n, int i) { return u.segment(i * n, n); }

inline Mat unflatten(const Vec& u, int n, int m) {
  return Eigen::Map<const Mat>(u.data(), n, m);
}

inline Vec flatten(const Mat& x) {
  return Eigen::Map<const Vec>(x.data(), x.size());
}

// Row vector theta^t.x in M[1,m] for theta in R^n, x in M[n,m].
inline Eigen::RowVectorXd pair_theta(const Vec& theta, const Mat& x) {
  if (theta.size() != x.rows()) throw invalid_argument("pair: shape mismatch");
  return theta.transpose() * x;
}

inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace hozon
