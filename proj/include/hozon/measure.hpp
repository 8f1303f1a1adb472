#pragma once

#include <functional>

#include "hozon/body.hpp"
#include "hozon/estimate.hpp"
#include "hozon/rng.hpp"

namespace hozon {

// Runs fn(i) for i in [0, count) across threads; results must be written to
// per-index slots so the outcome is independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

struct McMoments {
  double sum = 0.0;
  double sumsq = 0.0;
  long long n = 0;
};

// Sharded Monte-Carlo mean of per-sample values. worker draws `count` samples
// from its own substream and accumulates moments; shards are reduced in index
// order, so results are bit-identical for a fixed (seed, shards) regardless of
// thread count.
Estimate mc_mean(const RngPlan& plan, StreamTag tag, uint64_t context,
                 long long total_samples,
                 const std::function<McMoments(Rng&, long long)>& worker,
                 double scale = 1.0);

inline constexpr double kAcceptanceFloor = 1e-4;

// Lebesgue volume: exact for the built-ins (and their affine images),
// rejection Monte-Carlo inside the tight bounding box otherwise.
Estimate volume(const Body& body, const RngPlan& plan, long long samples = 200000);

// Always-stochastic rejection volume (context selects the substream); used
// where a genuine Estimate with spread is wanted even for exact bodies.
Estimate volume_mc(const Body& body, const RngPlan& plan, long long samples,
                   uint64_t context);

// Uniform point in the body; closed-form samplers for the built-ins, rejection
// from the bounding box otherwise. Throws efficiency_error when the running
// acceptance rate drops below kAcceptanceFloor.
Vec uniform_sample(const Body& body, Rng& rng);

// Batch variant filling SoA coordinate buffers (cols[k][j] = coordinate k of
// sample j); uses the halfspace-mask kernel for facet bodies.
void uniform_sample_batch(const Body& body, Rng& rng, std::size_t count,
                          std::vector<std::vector<double>>& cols);

// Uniform direction on S^{d-1}; d = 1 yields ±1 with probability 1/2.
Vec sphere_sample(int d, Rng& rng);

// Adaptive Simpson quadrature. A negative abs_tol requests the default
// 1e-8 * (b-a) * max|f| from a coarse scan. Non-finite integrand values
// propagate as domain_error.
double quad_1d(const std::function<double(double)>& f, double a, double b,
               double abs_tol = -1.0, int max_depth = 24);

// Fixed direction grid on S^{d-1}: equispaced for d <= 2 (axes and diagonals
// included), seeded uniform for d >= 3. Shared across bodies for a fixed plan.
std::vector<Vec> direction_grid(int d, int count, const RngPlan& plan);

inline int default_grid_size(int d) {
  if (d <= 2) return 64;
  if (d <= 4) return 256;
  return 1024;
}

}  // namespace hozon
