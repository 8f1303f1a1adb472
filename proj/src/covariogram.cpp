#include "hozon/covariogram.hpp"

#include <bit>
#include <cmath>

#include "hozon/kernels.hpp"
#include "hozon/lp.hpp"

namespace hozon {

Covariogram::Covariogram(BodyPtr body, int m) : body_(std::move(body)), m_(m) {
  if (m_ < 1) throw invalid_argument("covariogram: m >= 1");
  check_dims(Dims{body_->dim(), m_});
}

Estimate Covariogram::eval(const Mat& shifts, const RngPlan& plan,
                           long long samples) const {
  if (shifts.rows() != body_->dim() || shifts.cols() != m_)
    throw invalid_argument("covariogram: shift matrix shape mismatch");
  const int n = body_->dim();

  if (n == 1) {
    const double hi = body_->support(Vec::Ones(1));
    const double lo = -body_->support(-Vec::Ones(1));
    double left = lo, right = hi;
    for (int i = 0; i < m_; ++i) {
      left = std::max(left, lo + shifts(0, i));
      right = std::min(right, hi + shifts(0, i));
    }
    return Estimate::exact(std::max(0.0, right - left));
  }

  const Estimate vol = volume(*body_, plan);
  const std::vector<Facet>* fs = body_->facets();
  std::vector<double> normals, offsets;
  if (fs) {
    for (int i = 0; i < m_; ++i)
      for (const Facet& f : *fs) {
        for (int k = 0; k < n; ++k) normals.push_back(f.normal[k]);
        offsets.push_back(f.offset + f.normal.dot(shifts.col(i)));
      }
  }

  uint64_t ctx = 0;
  for (int i = 0; i < shifts.size(); ++i)
    ctx = splitmix64(ctx ^ std::bit_cast<uint64_t>(shifts(i / m_, i % m_)));

  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    constexpr std::size_t kBatch = 2048;
    std::vector<std::vector<double>> cols;
    std::vector<const double*> ptrs(n);
    std::vector<uint8_t> mask(kBatch);
    Vec y(n);
    long long done = 0;
    while (done < count) {
      const std::size_t batch =
          static_cast<std::size_t>(std::min<long long>(kBatch, count - done));
      uniform_sample_batch(*body_, rng, batch, cols);
      for (int k = 0; k < n; ++k) ptrs[k] = cols[k].data();
      if (fs) {
        kernels::active().halfspace_mask(ptrs.data(), n, normals.data(),
                                         offsets.data(), offsets.size(), batch,
                                         mask.data());
      } else {
        for (std::size_t j = 0; j < batch; ++j) {
          bool ok = true;
          for (int i = 0; i < m_ && ok; ++i) {
            for (int k = 0; k < n; ++k) y[k] = cols[k][j] - shifts(k, i);
            ok = body_->contains(y);
          }
          mask[j] = ok ? 1 : 0;
        }
      }
      for (std::size_t j = 0; j < batch; ++j) {
        const double v = mask[j] ? 1.0 : 0.0;
        mm.sum += v;
        mm.sumsq += v;
      }
      done += batch;
    }
    mm.n = count;
    return mm;
  };
  const Estimate frac = mc_mean(plan, StreamTag::kUniform, ctx, samples, worker);
  return estimate_mul(vol, frac);
}

DifferenceBody::DifferenceBody(BodyPtr body, int m)
    : body_(std::move(body)), m_(m) {
  if (m_ < 1) throw invalid_argument("difference body: m >= 1");
  check_dims(Dims{body_->dim(), m_});
  if (body_->axis_box_data()) {
    mode_ = Mode::kBox;
  } else if (auto ell = body_->ellipsoid_data()) {
    shape_inv_ = ell->second.inverse();
    mode_ = Mode::kEllipsoid;
  } else if (body_->facets()) {
    mode_ = Mode::kPolytope;
  } else {
    throw unsupported_body("difference body: needs polytope, box, ball or ellipsoid");
  }
}

double DifferenceBody::radial(const Vec& u) const {
  const int n = body_->dim();
  if (u.size() != n * m_) throw invalid_argument("difference body: direction dim");
  switch (mode_) {
    case Mode::kBox: {
      Vec lo, hi;
      body_->bounding_box(lo, hi);
      double r = HUGE_VAL;
      for (int k = 0; k < n; ++k) {
        double up = 0.0, dn = 0.0;
        for (int i = 0; i < m_; ++i) {
          up = std::max(up, u[i * n + k]);
          dn = std::min(dn, u[i * n + k]);
        }
        const double span = up - dn;
        if (span > 0.0) r = std::min(r, (hi[k] - lo[k]) / span);
      }
      return r;
    }
    case Mode::kEllipsoid: {
      std::vector<Vec> pts;
      pts.push_back(Vec::Zero(n));
      for (int i = 0; i < m_; ++i) pts.push_back(shape_inv_ * u.segment(i * n, n));
      const double meb = min_enclosing_ball_radius(pts);
      if (meb <= 0.0) return HUGE_VAL;
      return 1.0 / meb;
    }
    case Mode::kPolytope: {
      const std::vector<Facet>& fs = *body_->facets();
      const double outer = body_->outer_radius();
      const double big = 1.01 * outer + 1.0;
      const double tmax = 2.0 * outer * std::sqrt(static_cast<double>(m_)) * 1.05 + 1.0;
      LinearProgram lp;
      lp.a.resize(static_cast<int>(fs.size()), n + 1);
      lp.b.resize(static_cast<int>(fs.size()));
      for (std::size_t f = 0; f < fs.size(); ++f) {
        double w = 0.0;
        for (int i = 0; i < m_; ++i)
          w = std::min(w, fs[f].normal.dot(u.segment(i * n, n)));
        for (int k = 0; k < n; ++k) lp.a(static_cast<int>(f), k) = fs[f].normal[k];
        lp.a(static_cast<int>(f), n) = -w;
        lp.b[static_cast<int>(f)] = fs[f].offset;
      }
      lp.c = Vec::Zero(n + 1);
      lp.c[n] = -1.0;  // maximize t
      lp.lo = Vec::Constant(n + 1, -big);
      lp.hi = Vec::Constant(n + 1, big);
      lp.lo[n] = 0.0;
      lp.hi[n] = tmax;
      auto sol = lp_solve(lp);
      if (!sol) return 0.0;
      return (*sol)[n];
    }
  }
  return 0.0;
}

namespace {

struct Circumball {
  Vec center;
  double radius = -1.0;
};

Circumball circumball(const std::vector<Vec>& support, int d) {
  Circumball cb;
  if (support.empty()) {
    cb.center = Vec::Zero(d);
    cb.radius = -1.0;
    return cb;
  }
  const Vec& p0 = support[0];
  const int k = static_cast<int>(support.size()) - 1;
  if (k == 0) {
    cb.center = p0;
    cb.radius = 0.0;
    return cb;
  }
  Mat q(k, d);
  Vec rhs(k);
  for (int i = 0; i < k; ++i) {
    q.row(i) = (support[i + 1] - p0).transpose();
    rhs[i] = 0.5 * q.row(i).squaredNorm();
  }
  const Mat gram = q * q.transpose();
  const Vec lam = gram.fullPivLu().solve(rhs);
  cb.center = p0 + q.transpose() * lam;
  cb.radius = (cb.center - p0).norm();
  return cb;
}

Circumball welzl(std::vector<Vec>& pts, std::size_t count, std::vector<Vec>& support,
                 int d) {
  if (count == 0 || static_cast<int>(support.size()) == d + 1)
    return circumball(support, d);
  const Vec p = pts[count - 1];
  Circumball cb = welzl(pts, count - 1, support, d);
  if (cb.radius >= 0.0 &&
      (p - cb.center).norm() <= cb.radius + 1e-12 * (1.0 + cb.radius))
    return cb;
  support.push_back(p);
  cb = welzl(pts, count - 1, support, d);
  support.pop_back();
  return cb;
}

}  // namespace

double min_enclosing_ball_radius(const std::vector<Vec>& points) {
  if (points.empty()) throw invalid_argument("min_enclosing_ball: empty set");
  const int d = static_cast<int>(points[0].size());
  std::vector<Vec> pts = points;
  std::vector<Vec> support;
  const Circumball cb = welzl(pts, pts.size(), support, d);
  return std::max(cb.radius, 0.0);
}

}  // namespace hozon
