#include "hozon/projection.hpp"

#include <bit>
#include <cmath>

#include "hozon/measure.hpp"

namespace hozon {

SurfaceMeasure surface_measure(const Body& body, double p) {
  const std::vector<Facet>* fs = body.facets();
  if (!fs) throw unsupported_body("surface_measure: facet data required");
  SurfaceMeasure sm;
  sm.facets = *fs;
  sm.p = p;
  Vec closure = Vec::Zero(body.dim());
  for (const Facet& f : sm.facets) {
    if (!(f.area > 0.0)) throw invalid_argument("surface_measure: facet area <= 0");
    closure += f.area * f.normal;
  }
  if (closure.norm() > 1e-6 * body.outer_radius())
    throw invalid_argument("surface_measure: facet areas do not close up");
  return sm;
}

namespace {

double hq_row(const QBody& q, const Vec& u, const Mat& x) {
  Eigen::RowVectorXd w = u.transpose() * x;
  return q.h(w);
}

Estimate projection_polytope(const Body& body, const QBody& q, double p,
                             const Mat& x) {
  const SurfaceMeasure sm = surface_measure(body, p);
  double acc = 0.0;
  for (const Facet& f : sm.facets) {
    double weight = f.area;
    if (p != 1.0) {
      const double hk = body.support(f.normal);
      if (hk <= 0.0)
        throw domain_error("projection body: h_K <= 0 on a facet and p > 1");
      weight *= std::pow(hk, 1.0 - p);
    }
    const double hq = hq_row(q, f.normal, x);
    if (hq > 0.0) acc += weight * std::pow(hq, p);
  }
  return Estimate::exact(std::pow(acc, 1.0 / p));
}

// Smooth-boundary variant for n = 2 (ellipses/disks): arclength quadrature
// over the boundary parametrisation xi(phi) = c + A.(cos, sin).
Estimate projection_ellipse_2d(const Vec& c, const Mat& a, const QBody& q,
                               double p, const Mat& x) {
  constexpr int kNodes = 4096;
  const Mat ait = a.inverse().transpose();
  double acc = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double phi = 2.0 * M_PI * i / kNodes;
    Vec s(2);
    s << std::cos(phi), std::sin(phi);
    Vec tangent(2);
    tangent << -std::sin(phi), std::cos(phi);
    const double speed = (a * tangent).norm();
    Vec nrm = ait * s;
    nrm /= nrm.norm();
    double weight = speed;
    if (p != 1.0) {
      const double hk = c.dot(nrm) + (a.transpose() * nrm).norm();
      if (hk <= 0.0)
        throw domain_error("projection body: h_K <= 0 on the boundary and p > 1");
      weight *= std::pow(hk, 1.0 - p);
    }
    const double hq = hq_row(q, nrm, x);
    if (hq > 0.0) acc += weight * std::pow(hq, p);
  }
  acc *= 2.0 * M_PI / kNodes;
  Estimate e = Estimate::exact(std::pow(acc, 1.0 / p));
  e.std_err = 2e-6 * e.value;  // trapezoid error bound for the |.| kinks
  return e;
}

// Ball in n >= 3: pushforward of the boundary measure is r^{n-1} du.
Estimate projection_ball(const Vec& c, double r, int n, const QBody& q, double p,
                         const Mat& x, const RngPlan& plan) {
  uint64_t ctx = 0x5170;
  for (int i = 0; i < x.size(); ++i)
    ctx = splitmix64(ctx ^ std::bit_cast<uint64_t>(x.data()[i]));
  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    for (long long j = 0; j < count; ++j) {
      const Vec u = sphere_sample(n, rng);
      double weight = std::pow(r, n - 1.0);
      if (p != 1.0) weight *= std::pow(c.dot(u) + r, 1.0 - p);
      const double hq = hq_row(q, u, x);
      const double v = hq > 0.0 ? weight * std::pow(hq, p) : 0.0;
      mm.sum += v;
      mm.sumsq += v * v;
    }
    mm.n = count;
    return mm;
  };
  const Estimate integral =
      mc_mean(plan, StreamTag::kSphereDirs, ctx, 20000, worker, sphere_surface(n));
  return estimate_root(integral, p);
}

}  // namespace

Estimate projection_support(const Body& body, const QBody& q, double p,
                            const Mat& x, const RngPlan& plan) {
  if (p < 1.0) throw invalid_argument("projection body: p >= 1 required");
  if (x.rows() != body.dim() || x.cols() != q.m)
    throw invalid_argument("projection body: argument shape mismatch");
  if (body.facets()) return projection_polytope(body, q, p, x);
  if (auto ell = body.ellipsoid_data()) {
    if (body.dim() == 2) return projection_ellipse_2d(ell->first, ell->second, q, p, x);
    const Mat& a = ell->second;
    const double r = a(0, 0);
    if ((a - r * Mat::Identity(a.rows(), a.cols())).norm() > 1e-12 * std::fabs(r))
      throw unsupported_body(
          "projection body: non-ball ellipsoids supported only in n = 2");
    return projection_ball(ell->first, r, body.dim(), q, p, x, plan);
  }
  throw unsupported_body("projection body: facet data or ball/ellipse required");
}

Estimate polar_projection_radial(const Body& body, const QBody& q, double p,
                                 const Vec& u, const RngPlan& plan) {
  const Mat x = unflatten(u, body.dim(), q.m);
  const Estimate h = projection_support(body, q, p, x, plan);
  if (h.value <= 0.0) return Estimate{HUGE_VAL, HUGE_VAL, h.n_samples};
  return estimate_pow(h, -1.0);
}

}  // namespace hozon
