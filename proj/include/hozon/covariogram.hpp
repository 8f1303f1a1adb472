#pragma once

#include "hozon/body.hpp"
#include "hozon/estimate.hpp"
#include "hozon/measure.hpp"

namespace hozon {

// Higher-order covariogram g_{K,m}(x) = vol(K ∩ (K+x_1) ∩ ... ∩ (K+x_m)).
// Written as vol(K) * P_{y~U(K)}[y - x_i ∈ K for all i]; exact interval
// arithmetic in n = 1.
class Covariogram {
 public:
  Covariogram(BodyPtr body, int m);

  int n() const { return body_->dim(); }
  int m() const { return m_; }
  const Body& body() const { return *body_; }

  // x given as the n x m matrix of shifts.
  Estimate eval(const Mat& shifts, const RngPlan& plan,
                long long samples = 20000) const;

 private:
  BodyPtr body_;
  int m_;
};

// m-th higher-order difference body D^m(K) = supp(g_{K,m}) as a star-shaped
// radial oracle on S^{nm-1}. Exact: LP for polytopes/simplices/boxes-with-
// facets, interval algebra for axis boxes, minimum enclosing ball for balls
// and (via pullback) ellipsoids.
class DifferenceBody {
 public:
  DifferenceBody(BodyPtr body, int m);

  int ambient_dim() const { return body_->dim() * m_; }
  double radial(const Vec& u) const;

  const Body& body() const { return *body_; }
  int m() const { return m_; }

 private:
  enum class Mode { kBox, kEllipsoid, kPolytope };
  BodyPtr body_;
  int m_;
  Mode mode_;
  Mat shape_inv_;  // ellipsoid pullback
};

// Radius of the smallest enclosing ball of a point set (Welzl).
double min_enclosing_ball_radius(const std::vector<Vec>& points);

}  // namespace hozon
