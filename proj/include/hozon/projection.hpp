#pragma once

#include "hozon/body.hpp"
#include "hozon/estimate.hpp"
#include "hozon/qbody.hpp"
#include "hozon/rng.hpp"

namespace hozon {

// p-surface-area measure carrier: facet normals/areas of a polytope together
// with the exponent p (sigma_{K,p} = h_K^{1-p} d sigma_K).
struct SurfaceMeasure {
  std::vector<Facet> facets;
  double p = 1.0;
};

SurfaceMeasure surface_measure(const Body& body, double p);

// (L^p,Q)-projection body support
//   h_{Π_{Q,p} K}(x)^p = ∫_{S^{n-1}} h_Q(u^t.x)^p h_K(u)^{1-p} d sigma_K(u),
// exact facet sums for polytopes, boundary quadrature for balls/ellipsoids in
// n = 2 and sphere Monte-Carlo for balls in n >= 3. x is n x m.
Estimate projection_support(const Body& body, const QBody& q, double p,
                            const Mat& x, const RngPlan& plan);

// rho of the polar projection body Π^{◦,m}: 1 / h_{Π_{Q,p}K}. u is the
// flattened direction in R^{nm}.
Estimate polar_projection_radial(const Body& body, const QBody& q, double p,
                                 const Vec& u, const RngPlan& plan);

}  // namespace hozon
