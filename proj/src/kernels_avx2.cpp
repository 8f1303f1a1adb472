// AVX2 variants of the batch kernels. Per-lane arithmetic (vaddpd/vmulpd/
// vmaxpd/vsqrtpd) is correctly rounded, so with the shared 4-lane blocked
// reduction order these produce bit-identical results to the scalar kernels.
// This translation unit is the only one compiled with -mavx2; no FMA is used.

#include "hozon/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <cmath>

namespace hozon::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline __m256d hq_vec(QKind q, int m, const __m256d* w) {
  switch (q) {
    case QKind::kSegment:
      return abs_pd(w[0]);
    case QKind::kCube: {
      __m256d s = _mm256_setzero_pd();
      for (int c = 0; c < m; ++c) s = _mm256_add_pd(s, abs_pd(w[c]));
      return s;
    }
    case QKind::kSimplex: {
      __m256d s = _mm256_setzero_pd();
      for (int c = 0; c < m; ++c) s = _mm256_max_pd(s, w[c]);
      return s;
    }
    case QKind::kNegSimplex: {
      const __m256d zero = _mm256_setzero_pd();
      __m256d s = zero;
      for (int c = 0; c < m; ++c) s = _mm256_max_pd(s, _mm256_sub_pd(zero, w[c]));
      return s;
    }
    case QKind::kBall: {
      __m256d s = _mm256_setzero_pd();
      for (int c = 0; c < m; ++c) s = _mm256_add_pd(s, _mm256_mul_pd(w[c], w[c]));
      return _mm256_sqrt_pd(s);
    }
  }
  return _mm256_setzero_pd();
}

inline double pow_int(double v, int p) {
  double r = v;
  for (int i = 1; i < p; ++i) r *= v;
  return r;
}

SumPair hq_pow_sum_avx2(QKind q, int n, int m, int p, const double* theta,
                        const double* const* diffs, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  __m256d acc_sq = _mm256_setzero_pd();
  const std::size_t vec_end = count & ~std::size_t(3);
  __m256d w[8];
  for (std::size_t j = 0; j < vec_end; j += 4) {
    for (int c = 0; c < m; ++c) {
      __m256d s = _mm256_setzero_pd();
      const double* const* col = diffs + c * n;
      for (int k = 0; k < n; ++k) {
        const __m256d t = _mm256_set1_pd(theta[k]);
        s = _mm256_add_pd(s, _mm256_mul_pd(t, _mm256_loadu_pd(col[k] + j)));
      }
      w[c] = s;
    }
    const __m256d h = hq_vec(q, m, w);
    __m256d v = h;
    for (int i = 1; i < p; ++i) v = _mm256_mul_pd(v, h);
    acc = _mm256_add_pd(acc, v);
    acc_sq = _mm256_add_pd(acc_sq, _mm256_mul_pd(v, v));
  }
  alignas(32) double lane[4];
  alignas(32) double lane_sq[4];
  _mm256_store_pd(lane, acc);
  _mm256_store_pd(lane_sq, acc_sq);
  double ws[8];
  for (std::size_t j = vec_end; j < count; ++j) {
    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      const double* const* col = diffs + c * n;
      for (int k = 0; k < n; ++k) s += theta[k] * col[k][j];
      ws[c] = s;
    }
    const double v = pow_int(hq_scalar(q, m, ws), p);
    lane[j & 3] += v;
    lane_sq[j & 3] += v * v;
  }
  return {(lane[0] + lane[1]) + (lane[2] + lane[3]),
          (lane_sq[0] + lane_sq[1]) + (lane_sq[2] + lane_sq[3])};
}

double max_dot_avx2(const double* const* coords, int d, const double* u,
                    std::size_t count) {
  __m256d best = _mm256_set1_pd(-HUGE_VAL);
  const std::size_t vec_end = count & ~std::size_t(3);
  for (std::size_t j = 0; j < vec_end; j += 4) {
    __m256d s = _mm256_setzero_pd();
    for (int k = 0; k < d; ++k) {
      const __m256d t = _mm256_set1_pd(u[k]);
      s = _mm256_add_pd(s, _mm256_mul_pd(t, _mm256_loadu_pd(coords[k] + j)));
    }
    best = _mm256_max_pd(best, s);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, best);
  for (std::size_t j = vec_end; j < count; ++j) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += u[k] * coords[k][j];
    lane[j & 3] = std::max(lane[j & 3], s);
  }
  return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

void halfspace_mask_avx2(const double* const* coords, int d,
                         const double* normals, const double* offsets,
                         std::size_t n_facets, std::size_t count,
                         uint8_t* mask) {
  const std::size_t vec_end = count & ~std::size_t(3);
  for (std::size_t j = 0; j < vec_end; j += 4) {
    __m256d ok = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (std::size_t f = 0; f < n_facets; ++f) {
      __m256d s = _mm256_setzero_pd();
      const double* a = normals + f * d;
      for (int k = 0; k < d; ++k) {
        const __m256d t = _mm256_set1_pd(a[k]);
        s = _mm256_add_pd(s, _mm256_mul_pd(t, _mm256_loadu_pd(coords[k] + j)));
      }
      ok = _mm256_and_pd(ok, _mm256_cmp_pd(s, _mm256_set1_pd(offsets[f]), _CMP_LE_OQ));
    }
    const int bits = _mm256_movemask_pd(ok);
    mask[j + 0] = (bits >> 0) & 1;
    mask[j + 1] = (bits >> 1) & 1;
    mask[j + 2] = (bits >> 2) & 1;
    mask[j + 3] = (bits >> 3) & 1;
  }
  for (std::size_t j = vec_end; j < count; ++j) {
    bool ok = true;
    for (std::size_t f = 0; f < n_facets; ++f) {
      double s = 0.0;
      const double* a = normals + f * d;
      for (int k = 0; k < d; ++k) s += a[k] * coords[k][j];
      ok = ok && (s <= offsets[f]);
    }
    mask[j] = ok ? 1 : 0;
  }
}

}  // namespace

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Ops ops{"avx2", &hq_pow_sum_avx2, &max_dot_avx2,
                       &halfspace_mask_avx2};
  return &ops;
}

}  // namespace hozon::kernels

#else

namespace hozon::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace hozon::kernels

#endif
