#include "hozon/zonoid.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "hozon/kernels.hpp"

namespace hozon {

namespace {

uint64_t theta_ctx(const Vec& theta) {
  uint64_t h = 0x20d01d;
  for (int i = 0; i < theta.size(); ++i)
    h = splitmix64(h ^ std::bit_cast<uint64_t>(theta[i]));
  return h;
}

bool p_is_small_int(double p, int* out) {
  const int ip = static_cast<int>(std::lround(p));
  if (std::fabs(p - ip) < 1e-12 && ip >= 1 && ip <= 32) {
    *out = ip;
    return true;
  }
  return false;
}

}  // namespace

MeanZonoid::MeanZonoid(BodyPtr body, QBody q, double p, int m, RngPlan plan,
                       MeanZonoidBudget budget)
    : body_(std::move(body)),
      q_(std::move(q)),
      p_(p),
      m_(m),
      plan_(plan),
      budget_(budget) {
  if (p_ < 1.0) throw invalid_argument("mean zonoid: p >= 1 required");
  if (q_.m != m_) throw invalid_argument("mean zonoid: Q slot count != m");
  check_dims(Dims{body_->dim(), m_});
  vol_k_ = volume(*body_, plan_);
}

Estimate MeanZonoid::support_direct(const Vec& theta) const {
  const int n = body_->dim();
  if (theta.size() != n) throw invalid_argument("mean zonoid: direction dimension");
  int p_int = 0;
  const bool integral_p = p_is_small_int(p_, &p_int);

  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    constexpr std::size_t kBatch = 2048;
    const int tuple = m_ + 1;
    std::vector<std::vector<double>> pts;
    std::vector<std::vector<double>> diffs(static_cast<std::size_t>(m_) * n);
    std::vector<const double*> ptrs(diffs.size());
    long long done = 0;
    while (done < count) {
      const std::size_t batch =
          static_cast<std::size_t>(std::min<long long>(kBatch, count - done));
      uniform_sample_batch(*body_, rng, batch * tuple, pts);
      for (int c = 0; c < m_; ++c)
        for (int k = 0; k < n; ++k) {
          auto& dst = diffs[static_cast<std::size_t>(c) * n + k];
          dst.resize(batch);
          const std::vector<double>& src = pts[k];
          for (std::size_t j = 0; j < batch; ++j)
            dst[j] = src[j * tuple] - src[j * tuple + c + 1];
        }
      for (std::size_t i = 0; i < diffs.size(); ++i) ptrs[i] = diffs[i].data();
      const kernels::SumPair s =
          integral_p ? kernels::active().hq_pow_sum(q_.kind, n, m_, p_int,
                                                    theta.data(), ptrs.data(), batch)
                     : kernels::hq_pow_sum_general(q_.kind, n, m_, p_,
                                                   theta.data(), ptrs.data(), batch);
      mm.sum += s.sum;
      mm.sumsq += s.sumsq;
      done += batch;
    }
    mm.n = count;
    return mm;
  };
  const Estimate mean = mc_mean(plan_, StreamTag::kDirect, theta_ctx(theta),
                                budget_.direct_samples, worker);
  return estimate_root(mean, p_);
}

const RadialMomentCache& MeanZonoid::cache_b() const {
  std::call_once(once_b_, [&] {
    rb_ = build_radial_cache(body_, m_, body_->dim() * m_ + p_, plan_,
                             budget_.sphere_dirs, budget_.chord_samples, 0xB);
  });
  return rb_;
}

const RadialMomentCache& MeanZonoid::cache_c() const {
  std::call_once(once_c_, [&] {
    rc_ = build_radial_cache(body_, m_, body_->dim() * m_ + p_, plan_,
                             budget_.sphere_dirs, budget_.chord_samples, 0xC);
  });
  return rc_;
}

const RadialMomentCache& MeanZonoid::cache_c_vol() const {
  std::call_once(once_cv_, [&] {
    rcv_ = build_radial_cache(body_, m_, body_->dim() * m_ + p_, plan_,
                              std::max<long long>(budget_.sphere_dirs / 2, 512),
                              budget_.chord_samples, 0xC7);
  });
  return rcv_;
}

namespace {

// Directional sums against a chord-moment cache: per-direction values
// h_Q(theta^t.u_s)^p * (E tau^{nm+p})_s are i.i.d. across directions, so the
// across-direction variance already carries the chord noise.
Estimate cache_pairing_mean(const RadialMomentCache& cache, const QBody& q,
                            double p, const Vec& theta) {
  const int n = static_cast<int>(theta.size());
  double sum = 0.0, sumsq = 0.0;
  Eigen::RowVectorXd w(q.m);
  for (std::size_t s = 0; s < cache.dirs.size(); ++s) {
    const Vec& u = cache.dirs[s];
    for (int c = 0; c < q.m; ++c) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += theta[k] * u[c * n + k];
      w[c] = acc;
    }
    const double hq = q.h(w);
    const double v = (hq > 0.0 ? std::pow(hq, p) : 0.0) * cache.moment[s].value;
    sum += v;
    sumsq += v * v;
  }
  return estimate_from_moments(sum, sumsq, static_cast<long long>(cache.dirs.size()),
                               sphere_surface(cache.d));
}

}  // namespace

Estimate MeanZonoid::support_spherical(const Vec& theta) const {
  const RadialMomentCache& cache = cache_b();
  const Estimate integral = cache_pairing_mean(cache, q_, p_, theta);
  const double volm = std::pow(vol_k_.value, m_);
  const Estimate hp = estimate_scale(integral, 1.0 / ((cache.d + p_) * volm));
  return estimate_root(hp, p_);
}

Estimate MeanZonoid::support_factored(const Vec& theta) const {
  const RadialMomentCache& cache = cache_c();
  const Estimate vol_gamma = star_volume_from_cache(cache_c_vol());
  const Estimate vol_factor = star_volume_from_cache(cache);
  const double volm = std::pow(vol_k_.value, m_);

  // centroid support of R^m_{nm+p} K via the polar route
  const Estimate integral = cache_pairing_mean(cache, q_, p_, theta);
  const Estimate hp =
      estimate_div(estimate_scale(integral, 1.0 / (cache.d + p_)), vol_gamma);
  const Estimate gamma = estimate_root(hp, p_);

  const Estimate factor = estimate_root(estimate_scale(vol_factor, 1.0 / volm), p_);
  return estimate_mul(factor, gamma);
}

SupportTable MeanZonoid::table(const std::vector<Vec>& grid, bool with_routes) const {
  if (grid.empty()) throw invalid_argument("mean zonoid: empty grid");
  if (with_routes) {
    cache_b();
    cache_c();
    cache_c_vol();
  }
  SupportTable t;
  t.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    SupportEntry& e = t.rows[i];
    e.theta = grid[i];
    e.direct = support_direct(grid[i]);
    if (with_routes) {
      e.spherical = support_spherical(grid[i]);
      e.factored = support_factored(grid[i]);
    }
  });
  return t;
}

RepresentationMeasure MeanZonoid::representation_measure() const {
  const RadialMomentCache& cache = cache_b();
  RepresentationMeasure nu;
  nu.dirs = cache.dirs;
  const double volm = std::pow(vol_k_.value, m_);
  nu.density.resize(cache.moment.size());
  for (std::size_t s = 0; s < cache.moment.size(); ++s)
    nu.density[s] = std::max(0.0, cache.moment[s].value) / ((cache.d + p_) * volm);
  nu.dir_weight = sphere_surface(cache.d) / static_cast<double>(cache.dirs.size());
  return nu;
}

double MeanZonoid::representation_residual(const std::vector<Vec>& grid) const {
  const RepresentationMeasure nu = representation_measure();
  const int n = body_->dim();
  double worst = 0.0;
  for (const Vec& theta : grid) {
    double acc = 0.0;
    Eigen::RowVectorXd w(q_.m);
    for (std::size_t s = 0; s < nu.dirs.size(); ++s) {
      const Vec& u = nu.dirs[s];
      for (int c = 0; c < q_.m; ++c) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += theta[k] * u[c * n + k];
        w[c] = dot;
      }
      const double hq = q_.h(w);
      if (hq > 0.0) acc += std::pow(hq, p_) * nu.density[s];
    }
    const double recon = std::pow(acc * nu.dir_weight, 1.0 / p_);
    const Estimate direct = support_direct(theta);
    if (direct.value > 0.0)
      worst = std::max(worst, std::fabs(recon - direct.value) / direct.value);
  }
  return worst;
}

Estimate MeanZonoid::vol_radial_mean() const {
  return star_volume_from_cache(cache_b());
}

double SupportTable::max_route_residual() const {
  double worst = 0.0;
  for (const SupportEntry& e : rows) {
    if (e.direct.value <= 0.0 || e.spherical.n_samples == 0) continue;
    worst = std::max(worst,
                     std::fabs(e.spherical.value - e.direct.value) / e.direct.value);
    worst = std::max(worst,
                     std::fabs(e.factored.value - e.direct.value) / e.direct.value);
  }
  return worst;
}

void SupportTable::write_csv(std::ostream& os) const {
  if (rows.empty()) return;
  const int n = static_cast<int>(rows[0].theta.size());
  for (int k = 0; k < n; ++k) os << "theta" << k << ",";
  os << "h,std_err,res_spherical,res_factored\n";
  for (const SupportEntry& e : rows) {
    for (int k = 0; k < n; ++k) os << fmt_g17(e.theta[k]) << ",";
    const double res_s = e.spherical.n_samples && e.direct.value > 0.0
                             ? (e.spherical.value - e.direct.value) / e.direct.value
                             : 0.0;
    const double res_f = e.factored.n_samples && e.direct.value > 0.0
                             ? (e.factored.value - e.direct.value) / e.direct.value
                             : 0.0;
    os << fmt_g17(e.direct.value) << "," << fmt_g17(e.direct.std_err) << ","
       << fmt_g17(res_s) << "," << fmt_g17(res_f) << "\n";
  }
}

Estimate zonoid_volume_from_table(const SupportTable& table, const RngPlan& plan,
                                  long long samples) {
  if (table.rows.empty()) throw invalid_argument("zonoid volume: empty table");
  const int n = static_cast<int>(table.rows[0].theta.size());
  std::vector<double> normals, offsets;
  double bound = 0.0;
  for (const SupportEntry& e : table.rows) {
    for (int k = 0; k < n; ++k) normals.push_back(e.theta[k]);
    offsets.push_back(e.direct.value);
    bound = std::max(bound, e.direct.value);
  }
  const double box_vol = std::pow(2.0 * bound, n);
  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    constexpr std::size_t kBatch = 4096;
    std::vector<std::vector<double>> cols(n, std::vector<double>(kBatch));
    std::vector<const double*> ptrs(n);
    for (int k = 0; k < n; ++k) ptrs[k] = cols[k].data();
    std::vector<uint8_t> mask(kBatch);
    long long done = 0;
    while (done < count) {
      const std::size_t batch =
          static_cast<std::size_t>(std::min<long long>(kBatch, count - done));
      for (std::size_t j = 0; j < batch; ++j)
        for (int k = 0; k < n; ++k) cols[k][j] = rng.uniform(-bound, bound);
      kernels::active().halfspace_mask(ptrs.data(), n, normals.data(),
                                       offsets.data(), offsets.size(), batch,
                                       mask.data());
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
  return mc_mean(plan, StreamTag::kVolume, 0x20d, samples, worker, box_vol);
}

EquivarianceResult mz_equivariance(const BodyPtr& body, const Mat& a, const QBody& q,
                                   double p, int m, const std::vector<Vec>& grid,
                                   const RngPlan& plan, const MeanZonoidBudget& budget,
                                   double rel_tol) {
  const BodyPtr image = affine_image(body, a, Vec::Zero(body->dim()));
  MeanZonoid z_base(body, q, p, m, plan, budget);
  MeanZonoid z_image(image, q, p, m, plan, budget);
  EquivarianceResult r;
  double scale = 0.0;
  std::vector<Estimate> lhs(grid.size()), rhs(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    lhs[i] = z_image.support_direct(grid[i]);
    rhs[i] = z_base.support_direct(a.transpose() * grid[i]);
  });
  double max_se = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.max_residual = std::max(r.max_residual, std::fabs(lhs[i].value - rhs[i].value));
    scale = std::max(scale, std::fabs(lhs[i].value));
    max_se = std::max(max_se, joint_se(lhs[i], rhs[i]));
  }
  r.band = accept_band(max_se, rel_tol, scale);
  return r;
}

}  // namespace hozon
