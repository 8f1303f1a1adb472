#include "hozon/steiner.hpp"

#include <algorithm>
#include <cmath>

#include "hozon/lp.hpp"

namespace hozon {

namespace {

Vec perp_2d(const Vec& u) {
  Vec e(2);
  e << -u[1], u[0];
  return e;
}

}  // namespace

ChordInfo chord_bounds(const Body& body, const Vec& u, const Vec& y_prime) {
  ChordInfo info;
  info.direction = u;
  info.base = y_prime;
  const double hi = body.support(u);
  const double lo = -body.support(-u);
  if (hi < lo) return info;

  // scan for an anchor on the chord, then walk to the boundary
  constexpr int kScan = 128;
  double anchor = 0.0;
  bool found = false;
  for (int k = 0; k < kScan; ++k) {
    const double t = lo + (hi - lo) * (k + 0.5) / kScan;
    if (body.contains(y_prime + t * u)) {
      anchor = t;
      found = true;
      break;
    }
  }
  if (!found) return info;
  const Vec x0 = y_prime + anchor * u;
  double up, dn;
  if (auto e = body.ray_exit(x0, u))
    up = *e;
  else
    up = ray_exit_bisect(body, x0, u);
  if (auto e = body.ray_exit(x0, -u))
    dn = *e;
  else
    dn = ray_exit_bisect(body, x0, -u);
  info.empty = false;
  info.over = anchor + up;
  info.under = -(anchor - dn);
  return info;
}

double Polygon2::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Vec& p = verts[i];
    const Vec& q = verts[(i + 1) % verts.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

double Polygon2::support(const Vec& w) const {
  double h = -HUGE_VAL;
  for (const Vec& v : verts) h = std::max(h, v.dot(w));
  return h;
}

Polygon2 polygonalize(const Body& body, int n_angles) {
  if (body.dim() != 2) throw unsupported_body("polygonalize: n = 2 only");
  Polygon2 poly;
  if (const std::vector<Vec>* vs = body.vertex_list()) {
    poly.verts = convex_hull_2d(*vs);
    return poly;
  }
  const Vec c = body.witness();
  std::vector<Vec> pts;
  pts.reserve(n_angles);
  for (int i = 0; i < n_angles; ++i) {
    const double a = 2.0 * M_PI * i / n_angles;
    Vec d(2);
    d << std::cos(a), std::sin(a);
    double r;
    if (auto e = body.ray_exit(c, d))
      r = *e;
    else
      r = ray_exit_bisect(body, c, d);
    pts.push_back(c + r * d);
  }
  poly.verts = convex_hull_2d(pts);
  return poly;
}

bool polygon_chord(const Polygon2& poly, const Vec& u, double s, double* t_lo,
                   double* t_hi) {
  const Vec e = perp_2d(u);
  double lo = -HUGE_VAL, hi = HUGE_VAL;
  const std::size_t n = poly.verts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& p = poly.verts[i];
    const Vec& q = poly.verts[(i + 1) % n];
    // outward halfplane of the ccw edge p->q: <nrm, x> <= <nrm, p>
    Vec nrm(2);
    nrm << q[1] - p[1], p[0] - q[0];
    const double b = nrm.dot(p);
    const double a_t = nrm.dot(u);
    const double c = b - s * nrm.dot(e);
    if (std::fabs(a_t) < 1e-14 * (1.0 + nrm.norm())) {
      if (c < -1e-12 * (1.0 + std::fabs(b))) return false;
      continue;
    }
    if (a_t > 0.0)
      hi = std::min(hi, c / a_t);
    else
      lo = std::max(lo, c / a_t);
  }
  if (lo > hi) return false;
  *t_lo = lo;
  *t_hi = hi;
  return true;
}

Polygon2 polygon_symmetral(const Polygon2& poly, const Vec& u) {
  const Vec un = u / u.norm();
  const Vec e = perp_2d(un);
  std::vector<double> breaks;
  breaks.reserve(poly.verts.size());
  for (const Vec& v : poly.verts) breaks.push_back(v.dot(e));
  std::sort(breaks.begin(), breaks.end());
  const double span = breaks.back() - breaks.front();
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) {
                             return std::fabs(a - b) <= 1e-13 * (1.0 + span);
                           }),
               breaks.end());
  std::vector<Vec> pts;
  pts.reserve(2 * breaks.size());
  for (double s : breaks) {
    double lo, hi;
    if (!polygon_chord(poly, un, s, &lo, &hi)) continue;
    const double half = 0.5 * std::max(0.0, hi - lo);
    pts.push_back(s * e + half * un);
    pts.push_back(s * e - half * un);
  }
  Polygon2 out;
  out.verts = convex_hull_2d(pts);
  if (out.verts.size() < 3)
    throw precondition_error("polygon_symmetral: degenerate output");
  return out;
}

Polygon2 decimate(const Polygon2& poly, std::size_t max_verts) {
  if (poly.verts.size() <= max_verts) return poly;
  Vec c = Vec::Zero(2);
  for (const Vec& v : poly.verts) c += v;
  c /= static_cast<double>(poly.verts.size());
  const BodyPtr b = polygon_body(poly);
  std::vector<Vec> pts;
  pts.reserve(max_verts);
  for (std::size_t i = 0; i < max_verts; ++i) {
    const double a = 2.0 * M_PI * static_cast<double>(i) / max_verts;
    Vec d(2);
    d << std::cos(a), std::sin(a);
    const double r = *b->ray_exit(c, d);
    pts.push_back(c + r * d);
  }
  Polygon2 out;
  out.verts = convex_hull_2d(pts);
  return out;
}

BodyPtr polygon_body(const Polygon2& poly) { return make_polygon(poly.verts); }

Polygon2 polygon_from_support_table(const SupportTable& table) {
  if (table.rows.empty() || table.rows[0].theta.size() != 2)
    throw invalid_argument("polygon_from_support_table: 2-D tables only");
  Mat a(static_cast<int>(table.rows.size()), 2);
  Vec b(static_cast<int>(table.rows.size()));
  double bound = 0.0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    a(static_cast<int>(i), 0) = table.rows[i].theta[0];
    a(static_cast<int>(i), 1) = table.rows[i].theta[1];
    b[static_cast<int>(i)] = table.rows[i].direct.value;
    bound = std::max(bound, table.rows[i].direct.value);
  }
  std::vector<Vec> verts = halfplane_intersection_2d(a, b, 2.0 * bound + 1.0);
  Polygon2 out;
  out.verts = convex_hull_2d(verts);
  if (out.verts.size() < 3)
    throw precondition_error("polygon_from_support_table: degenerate body");
  return out;
}

namespace {

// Generic membership oracle: x = y' + t u lies in S_u K iff |t| <=
// sigma_{y'}/2; support via grid maximization of <y',w'> + |<u,w>| sigma/2.
class SymmetralOracle final : public Body {
 public:
  SymmetralOracle(BodyPtr base, Vec u) : base_(std::move(base)), u_(std::move(u)) {
    u_.normalize();
    const int d = base_->dim();
    basis_ = Mat::Zero(d, d - 1);
    int col = 0;
    for (int k = 0; k < d && col < d - 1; ++k) {
      Vec v = Vec::Zero(d);
      v[k] = 1.0;
      v -= v.dot(u_) * u_;
      for (int j = 0; j < col; ++j) v -= v.dot(basis_.col(j)) * basis_.col(j);
      const double nrm = v.norm();
      if (nrm > 1e-8) basis_.col(col++) = v / nrm;
    }
    if (col != d - 1) throw precondition_error("symmetral: basis construction failed");
    const Vec w = base_->witness();
    witness_ = w - w.dot(u_) * u_;
  }

  int dim() const override { return base_->dim(); }

  bool contains(const Vec& x) const override {
    const double t = x.dot(u_);
    const Vec y = x - t * u_;
    const ChordInfo c = chord_bounds(*base_, u_, y);
    if (c.empty) return false;
    return std::fabs(t) <= 0.5 * c.length() + 1e-12;
  }

  double support(const Vec& w) const override {
    const double wu = std::fabs(w.dot(u_));
    const Vec wp = w - w.dot(u_) * u_;
    double best = -HUGE_VAL;
    const int pdim = dim() - 1;
    std::vector<double> lo(pdim), hi(pdim);
    for (int j = 0; j < pdim; ++j) {
      hi[j] = base_->support(basis_.col(j));
      lo[j] = -base_->support(-basis_.col(j));
    }
    const int steps = pdim == 1 ? 129 : 33;
    std::vector<int> idx(pdim, 0);
    for (;;) {
      Vec y = Vec::Zero(dim());
      for (int j = 0; j < pdim; ++j) {
        const double fr = static_cast<double>(idx[j]) / (steps - 1);
        y += (lo[j] + (hi[j] - lo[j]) * fr) * basis_.col(j);
      }
      const ChordInfo c = chord_bounds(*base_, u_, y);
      if (!c.empty) best = std::max(best, y.dot(wp) + 0.5 * c.length() * wu);
      int j = 0;
      for (; j < pdim; ++j) {
        if (++idx[j] < steps) break;
        idx[j] = 0;
      }
      if (j == pdim) break;
    }
    return best;
  }

  Vec witness() const override { return witness_; }
  double inner_radius() const override { return base_->inner_radius(); }
  double outer_radius() const override {
    return std::sqrt(2.0) * base_->outer_radius();
  }

 private:
  BodyPtr base_;
  Vec u_;
  Mat basis_;
  Vec witness_;
};

}  // namespace

BodyPtr symmetral(const BodyPtr& body, const Vec& u) {
  if (u.norm() == 0.0) throw invalid_argument("symmetral: zero direction");
  if (body->dim() == 2) {
    const Vec un = u / u.norm();
    return polygon_body(polygon_symmetral(polygonalize(*body), un));
  }
  return std::make_shared<SymmetralOracle>(body, u);
}

std::vector<SteinerRound> symmetrize_to_ball(const BodyPtr& body, int rounds,
                                             const std::vector<Vec>& grid,
                                             const RngPlan& plan,
                                             long long volume_samples,
                                             std::vector<BodyPtr>* bodies_out) {
  if (body->dim() != 2) throw unsupported_body("symmetrize_to_ball: n = 2 only");
  if (rounds < 1) throw invalid_argument("symmetrize_to_ball: rounds >= 1");
  std::vector<SteinerRound> log;
  Polygon2 poly = polygonalize(*body);
  const double r_ball = std::sqrt(poly.area() / M_PI);
  Rng dir_rng(plan.stream(StreamTag::kSteinerDirs));

  auto emit = [&](int round, const Vec& dir, const Polygon2& p) {
    SteinerRound row;
    row.round = round;
    row.direction = dir;
    const BodyPtr b = polygon_body(p);
    row.vol = volume_mc(*b, plan, volume_samples, static_cast<uint64_t>(round));
    double dist = 0.0;
    for (const Vec& th : grid)
      dist = std::max(dist, std::fabs(p.support(th) - r_ball));
    row.sup_distance = dist;
    log.push_back(row);
    if (bodies_out) bodies_out->push_back(b);
  };

  emit(0, Vec::Zero(2), poly);
  for (int j = 1; j <= rounds; ++j) {
    const Vec u = sphere_sample(2, dir_rng);
    poly = decimate(polygon_symmetral(poly, u), 4096);
    emit(j, u, poly);
  }
  return log;
}

SteinerInclusionResult symmetral_inclusion_check(
    const MeanZonoid& z_base, const SupportTable& table_base,
    const MeanZonoid& z_symm, const SupportTable& table_symm, const Vec& u,
    const RngPlan& plan, double rel_tol, int n_graph_samples, int n_lemma_pairs) {
  const Vec un = u / u.norm();
  const Vec e = perp_2d(un);
  SteinerInclusionResult res;

  const Polygon2 outer_raw = polygon_from_support_table(table_base);
  const Polygon2 inner = polygon_from_support_table(table_symm);
  const Polygon2 outer = polygon_symmetral(outer_raw, un);

  double h_scale = 0.0, max_se = 0.0;
  for (const SupportEntry& r : table_base.rows) {
    h_scale = std::max(h_scale, r.direct.value);
    max_se = std::max(max_se, r.direct.std_err);
  }
  for (const SupportEntry& r : table_symm.rows)
    max_se = std::max(max_se, r.direct.std_err);
  res.graph_band = accept_band(std::sqrt(2.0) * max_se, rel_tol, h_scale);

  // relint samples of the shared projection, shrunk toward the midpoint
  double in_lo = HUGE_VAL, in_hi = -HUGE_VAL;
  for (const Vec& v : inner.verts) {
    in_lo = std::min(in_lo, v.dot(e));
    in_hi = std::max(in_hi, v.dot(e));
  }
  double out_lo = HUGE_VAL, out_hi = -HUGE_VAL;
  for (const Vec& v : outer.verts) {
    out_lo = std::min(out_lo, v.dot(e));
    out_hi = std::max(out_hi, v.dot(e));
  }
  const double lo = std::max(in_lo, out_lo);
  const double hi = std::min(in_hi, out_hi);
  if (lo < hi) {
    const double mid = 0.5 * (lo + hi);
    Rng rng(plan.stream(StreamTag::kRelint));
    for (int k = 0; k < n_graph_samples; ++k) {
      const double s = mid + 0.99 * (rng.uniform(lo, hi) - mid);
      double ilo, ihi, olo, ohi;
      if (!polygon_chord(inner, un, s, &ilo, &ihi)) continue;
      if (!polygon_chord(outer, un, s, &olo, &ohi)) {
        res.max_graph_excess = HUGE_VAL;
        continue;
      }
      res.max_graph_excess = std::max(res.max_graph_excess, ihi - ohi);
      res.max_graph_excess = std::max(res.max_graph_excess, olo - ilo);
    }
  }

  // chord-midpoint support inequality on sampled pairs:
  // h_{Z(S_uK)}((y1+y2)/2, ±1) <= [h_{Z(K)}(y1, 1) + h_{Z(K)}(y2, -1)] / 2
  Rng pair_rng(plan.stream(StreamTag::kRelint, 1));
  const double w = std::max(std::fabs(in_lo), std::fabs(in_hi));
  for (int k = 0; k < n_lemma_pairs; ++k) {
    const double s1 = pair_rng.uniform(-1.5 * w, 1.5 * w);
    const double s2 = pair_rng.uniform(-1.5 * w, 1.5 * w);
    const Estimate r1 = z_base.support_direct(s1 * e + un);
    const Estimate r2 = z_base.support_direct(s2 * e - un);
    const double rhs = 0.5 * (r1.value + r2.value);
    for (double sign : {1.0, -1.0}) {
      const Estimate lhs = z_symm.support_direct(0.5 * (s1 + s2) * e + sign * un);
      res.max_lemma_violation =
          std::max(res.max_lemma_violation, lhs.value - rhs);
      res.lemma_band = std::max(
          res.lemma_band,
          accept_band(std::hypot(lhs.std_err, 0.5 * joint_se(r1, r2)), rel_tol, rhs));
    }
  }
  return res;
}

}  // namespace hozon
