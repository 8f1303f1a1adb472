#include <cmath>

#include "hozon/kernels.hpp"

namespace hozon::kernels {

double hq_scalar(QKind q, int m, const double* w) {
  switch (q) {
    case QKind::kSegment:
      return std::fabs(w[0]);
    case QKind::kCube: {
      double s = 0.0;
      for (int c = 0; c < m; ++c) s += std::fabs(w[c]);
      return s;
    }
    case QKind::kSimplex: {
      double s = 0.0;
      for (int c = 0; c < m; ++c) s = std::max(s, w[c]);
      return s;
    }
    case QKind::kNegSimplex: {
      double s = 0.0;
      for (int c = 0; c < m; ++c) s = std::max(s, -w[c]);
      return s;
    }
    case QKind::kBall: {
      double s = 0.0;
      for (int c = 0; c < m; ++c) s += w[c] * w[c];
      return std::sqrt(s);
    }
  }
  return 0.0;
}

namespace {

inline double pow_int(double v, int p) {
  double r = v;
  for (int i = 1; i < p; ++i) r *= v;
  return r;
}

SumPair hq_pow_sum_scalar(QKind q, int n, int m, int p, const double* theta,
                          const double* const* diffs, std::size_t count) {
  double lane[4] = {0, 0, 0, 0};
  double lane_sq[4] = {0, 0, 0, 0};
  double w[8];
  for (std::size_t j = 0; j < count; ++j) {
    for (int c = 0; c < m; ++c) {
      double acc = 0.0;
      const double* const* col = diffs + c * n;
      for (int k = 0; k < n; ++k) acc += theta[k] * col[k][j];
      w[c] = acc;
    }
    const double h = hq_scalar(q, m, w);
    const double v = pow_int(h, p);
    lane[j & 3] += v;
    lane_sq[j & 3] += v * v;
  }
  return {(lane[0] + lane[1]) + (lane[2] + lane[3]),
          (lane_sq[0] + lane_sq[1]) + (lane_sq[2] + lane_sq[3])};
}

double max_dot_scalar(const double* const* coords, int d, const double* u,
                      std::size_t count) {
  double lane[4];
  for (auto& l : lane) l = -HUGE_VAL;
  for (std::size_t j = 0; j < count; ++j) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k) acc += u[k] * coords[k][j];
    lane[j & 3] = std::max(lane[j & 3], acc);
  }
  return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

void halfspace_mask_scalar(const double* const* coords, int d,
                           const double* normals, const double* offsets,
                           std::size_t n_facets, std::size_t count,
                           uint8_t* mask) {
  for (std::size_t j = 0; j < count; ++j) {
    bool ok = true;
    for (std::size_t f = 0; f < n_facets; ++f) {
      double acc = 0.0;
      const double* a = normals + f * d;
      for (int k = 0; k < d; ++k) acc += a[k] * coords[k][j];
      ok = ok && (acc <= offsets[f]);
    }
    mask[j] = ok ? 1 : 0;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", &hq_pow_sum_scalar, &max_dot_scalar,
                       &halfspace_mask_scalar};
  return ops;
}

SumPair hq_pow_sum_general(QKind q, int n, int m, double p, const double* theta,
                           const double* const* diffs, std::size_t count) {
  double lane[4] = {0, 0, 0, 0};
  double lane_sq[4] = {0, 0, 0, 0};
  double w[8];
  for (std::size_t j = 0; j < count; ++j) {
    for (int c = 0; c < m; ++c) {
      double acc = 0.0;
      const double* const* col = diffs + c * n;
      for (int k = 0; k < n; ++k) acc += theta[k] * col[k][j];
      w[c] = acc;
    }
    const double h = hq_scalar(q, m, w);
    const double v = h > 0.0 ? std::pow(h, p) : 0.0;
    lane[j & 3] += v;
    lane_sq[j & 3] += v * v;
  }
  return {(lane[0] + lane[1]) + (lane[2] + lane[3]),
          (lane_sq[0] + lane_sq[1]) + (lane_sq[2] + lane_sq[3])};
}

}  // namespace hozon::kernels
