#pragma once

#include <iosfwd>
#include <mutex>

#include "hozon/centroid.hpp"
#include "hozon/covariogram.hpp"
#include "hozon/radial_mean.hpp"

namespace hozon {

// One direction of a mean-zonoid support table with the three route values.
struct SupportEntry {
  Vec theta;
  Estimate direct;     // (m+1)-fold average of h_Q over difference matrices
  Estimate spherical;  // polar route through the radial mean body
  Estimate factored;   // scaled centroid body of the radial mean body
};

struct SupportTable {
  std::vector<SupportEntry> rows;
  double max_route_residual() const;
  void write_csv(std::ostream& os) const;
};

// Discretized representation measure d nu(u) = rho^{nm+p} du / ((nm+p) vol^m)
// on the seeded sphere sample backing the spherical route.
struct RepresentationMeasure {
  std::vector<Vec> dirs;
  std::vector<double> density;  // values of the density of nu w.r.t. du
  double dir_weight = 0.0;      // quadrature weight S_{nm-1} / #dirs
};

struct MeanZonoidBudget {
  long long direct_samples = 200000;
  long long sphere_dirs = 10000;
  long long chord_samples = 1000;
};

// Z^m_p(K, Q): the three independent computational routes share only the body
// oracle. Route caches are built lazily so direct-only tables stay cheap.
class MeanZonoid {
 public:
  MeanZonoid(BodyPtr body, QBody q, double p, int m, RngPlan plan,
             MeanZonoidBudget budget = {});

  int n() const { return body_->dim(); }
  int m() const { return m_; }
  double p() const { return p_; }
  const Body& body() const { return *body_; }
  const RngPlan& plan() const { return plan_; }

  Estimate support_direct(const Vec& theta) const;
  Estimate support_spherical(const Vec& theta) const;
  Estimate support_factored(const Vec& theta) const;

  SupportTable table(const std::vector<Vec>& grid, bool with_routes = false) const;

  RepresentationMeasure representation_measure() const;
  // max over the grid of |reconstruction - direct| / direct
  double representation_residual(const std::vector<Vec>& grid) const;

  Estimate vol_body() const { return vol_k_; }
  Estimate vol_radial_mean() const;  // vol(R^m_{nm+p} K)

 private:
  const RadialMomentCache& cache_b() const;  // spherical route + representation
  const RadialMomentCache& cache_c() const;  // factored route
  const RadialMomentCache& cache_c_vol() const;

  BodyPtr body_;
  QBody q_;
  double p_;
  int m_;
  RngPlan plan_;
  MeanZonoidBudget budget_;
  Estimate vol_k_;
  mutable std::once_flag once_b_, once_c_, once_cv_;
  mutable RadialMomentCache rb_, rc_, rcv_;
};

// Rejection volume of the convex body described by a support table, using the
// outer polytopal proxy x in Z iff <x, theta_g> <= h_g for every grid row.
Estimate zonoid_volume_from_table(const SupportTable& table, const RngPlan& plan,
                                  long long samples = 200000);

// Grid sup of |h_{Z(A.K)}(theta) - h_{Z(K)}(A^t theta)| relative to scale,
// paired with the acceptance band (3 * joint SE or rel_tol).
struct EquivarianceResult {
  double max_residual = 0.0;
  double band = 0.0;
};
EquivarianceResult mz_equivariance(const BodyPtr& body, const Mat& a, const QBody& q,
                                   double p, int m, const std::vector<Vec>& grid,
                                   const RngPlan& plan, const MeanZonoidBudget& budget,
                                   double rel_tol);

}  // namespace hozon
