#pragma once

#include "hozon/body.hpp"
#include "hozon/qbody.hpp"
#include "hozon/radial_mean.hpp"
#include "hozon/star.hpp"

namespace hozon {

// (L^p,Q)-centroid body support h_{Γ_{Q,p} L}(v), L a compact set in M[n,m]
// with positive volume:
//   h^p = (1/vol L) ∫_L h_Q(v^t.x)^p dx.
// Two independent routes are exposed: the compact-set route (uniform samples
// of L) and the polar-coordinates route through a star oracle.
Estimate centroid_support_volume(const Body& l, const QBody& q, double p,
                                 const Vec& v, const RngPlan& plan,
                                 long long samples = 200000);

Estimate centroid_support_sphere(const StarOracle& star, const QBody& q, double p,
                                 const Vec& v, const RngPlan& plan,
                                 long long n_dirs = 10000, uint64_t context = 0);

// Polar route against a precomputed chord-moment cache of L = R^m_{nm+p} K
// (cache.q must equal nm + p); vol_l is the matching volume estimate.
Estimate centroid_support_from_cache(const RadialMomentCache& cache,
                                     const Estimate& vol_l, const QBody& q,
                                     double p, const Vec& v);

// Γ_{Q,∞}: max of h_Q(v^t.x) over a vertex list or over a star-oracle grid.
double centroid_inf_support_points(const std::vector<Vec>& points, const QBody& q,
                                   const Vec& v);
double centroid_inf_support(const StarOracle& star, const QBody& q, const Vec& v,
                            const std::vector<Vec>& grid);

}  // namespace hozon
