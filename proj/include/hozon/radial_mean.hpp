#pragma once

#include "hozon/covariogram.hpp"
#include "hozon/star.hpp"

namespace hozon {

// q-th higher-order radial mean body R^m_q K evaluated through chord
// sampling: rho(u)^q = E_{x~U(K)}[ (min_i rho_{K-x}(-u_i))^q ] with u_i the
// columns of the unit direction u in R^{nm}.
class RadialMeanBody {
 public:
  RadialMeanBody(BodyPtr body, int m, double q);

  int ambient_dim() const { return body_->dim() * m_; }
  double q() const { return q_; }
  const Body& body() const { return *body_; }
  int m() const { return m_; }

  // Chord reach tau(x, u) = min_i sup{r : x - r u_i in K}.
  double chord_reach(const Vec& x, const Vec& u) const;

  // Unbiased estimate of E[tau^power]; power = q for the radial function.
  Estimate chord_moment(const Vec& u, double power, const RngPlan& plan,
                        long long samples, uint64_t context) const;

  // rho_{R_q^m K}(u) = chord_moment(u, q)^{1/q}.
  Estimate radial(const Vec& u, const RngPlan& plan, long long samples,
                  uint64_t context = 0) const;

 private:
  BodyPtr body_;
  int m_;
  double q_;
};

Estimate rmb_radial_mc(const BodyPtr& body, int m, double q, const Vec& u,
                       const RngPlan& plan, long long samples = 100000);

// Independent cross-check through the covariogram layer formula
// rho(u)^q = (q/vol K) ∫_0^{rho_D(u)} g_{K,m}(t u) t^{q-1} dt, q > 0,
// integrated by adaptive Simpson after the substitution s = t^q.
Estimate rmb_radial_layer(const BodyPtr& body, int m, double q, const Vec& u,
                          const RngPlan& plan, long long cov_samples = 20000);

// Per-direction chord moments E[tau^q] on a seeded direction set; the shared
// cache consumed by the spherical/factored mean-zonoid routes, star volumes
// and the representation measure.
struct RadialMomentCache {
  int d = 0;        // ambient nm
  double q = 0.0;   // moment order (nm + p for the mean-zonoid routes)
  std::vector<Vec> dirs;
  std::vector<Estimate> moment;  // E[tau^q] per direction
};

RadialMomentCache build_radial_cache(const BodyPtr& body, int m, double q,
                                     const RngPlan& plan, long long n_dirs,
                                     long long chord_samples, uint64_t context);

// vol(R^m_q K) from a cache: (S_{d-1}/d) * E_s[(E tau^q)_s^{d/q}].
Estimate star_volume_from_cache(const RadialMomentCache& cache);

}  // namespace hozon
