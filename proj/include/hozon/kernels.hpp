#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace hozon::kernels {

// Support-function kinds of the built-in Q bodies in M[1,m]; evaluated
// closed-form inside the batch kernels.
enum class QKind : int { kSegment = 0, kCube = 1, kSimplex = 2, kNegSimplex = 3, kBall = 4 };

double hq_scalar(QKind q, int m, const double* w);

struct SumPair {
  double sum = 0.0;
  double sumsq = 0.0;
};

// Batch kernels operate on structure-of-arrays buffers. All reductions use a
// fixed 4-lane blocked order (element j accumulates into lane j mod 4, lanes
// combined as (l0+l1)+(l2+l3)) so that every variant is bit-identical.
struct Ops {
  const char* name;

  // sum_j h_Q(theta^t . X_j)^p with X_j the n x m matrix whose column c,
  // coordinate k lives in diffs[c*n+k][j]. p must be a positive integer.
  SumPair (*hq_pow_sum)(QKind q, int n, int m, int p, const double* theta,
                        const double* const* diffs, std::size_t count);

  // max_j <x_j, u> over d-dimensional points in SoA layout.
  double (*max_dot)(const double* const* coords, int d, const double* u,
                    std::size_t count);

  // mask[j] = 1 iff <a_f, x_j> <= b_f for every facet f; normals row-major F x d.
  void (*halfspace_mask)(const double* const* coords, int d,
                         const double* normals, const double* offsets,
                         std::size_t n_facets, std::size_t count, uint8_t* mask);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // null when unavailable on this CPU/build

// Active variant after override; default picks AVX2 when the CPU supports it.
const Ops& active();

// "auto" | "scalar" | "avx2"; throws on unknown names or unavailable variant.
void set_override(const std::string& name);

// Scalar fallback for non-integer exponents (same blocked reduction order).
SumPair hq_pow_sum_general(QKind q, int n, int m, double p, const double* theta,
                           const double* const* diffs, std::size_t count);

}  // namespace hozon::kernels
