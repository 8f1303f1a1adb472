#include "hozon/centroid.hpp"

#include <bit>
#include <cmath>

#include "hozon/kernels.hpp"

namespace hozon {

namespace {

uint64_t dir_ctx(const Vec& v, uint64_t context) {
  uint64_t h = context;
  for (int i = 0; i < v.size(); ++i)
    h = splitmix64(h ^ std::bit_cast<uint64_t>(v[i]));
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

Estimate centroid_support_volume(const Body& l, const QBody& q, double p,
                                 const Vec& v, const RngPlan& plan,
                                 long long samples) {
  if (p < 1.0) throw invalid_argument("centroid body: p >= 1 required");
  const int d = l.dim();
  if (d % q.m != 0) throw invalid_argument("centroid body: dim(L) not divisible by m");
  const int n = d / q.m;
  if (v.size() != n) throw invalid_argument("centroid body: direction dimension");

  int p_int = 0;
  const bool integral_p = p_is_small_int(p, &p_int);
  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    constexpr std::size_t kBatch = 4096;
    std::vector<std::vector<double>> cols;
    std::vector<const double*> ptrs(d);
    long long done = 0;
    while (done < count) {
      const std::size_t batch =
          static_cast<std::size_t>(std::min<long long>(kBatch, count - done));
      uniform_sample_batch(l, rng, batch, cols);
      for (int k = 0; k < d; ++k) ptrs[k] = cols[k].data();
      // the flat coordinates of M[n,m] are already column-major, so the SoA
      // buffers feed the pairing kernel directly
      const kernels::SumPair s =
          integral_p
              ? kernels::active().hq_pow_sum(q.kind, n, q.m, p_int, v.data(),
                                             ptrs.data(), batch)
              : kernels::hq_pow_sum_general(q.kind, n, q.m, p, v.data(),
                                            ptrs.data(), batch);
      mm.sum += s.sum;
      mm.sumsq += s.sumsq;
      done += batch;
    }
    mm.n = count;
    return mm;
  };
  const Estimate mean =
      mc_mean(plan, StreamTag::kUniform, dir_ctx(v, 0xce7 /*centroid*/), samples, worker);
  return estimate_root(mean, p);
}

Estimate centroid_support_sphere(const StarOracle& star, const QBody& q, double p,
                                 const Vec& v, const RngPlan& plan,
                                 long long n_dirs, uint64_t context) {
  if (p < 1.0) throw invalid_argument("centroid body: p >= 1 required");
  const int d = star.d;
  const int n = d / q.m;
  const double surf = sphere_surface(d);

  // vol(L) and the directional integral use disjoint substreams.
  const Estimate vol = star_volume_mc(star, plan, n_dirs, context + 1);

  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    Eigen::RowVectorXd w(q.m);
    for (long long j = 0; j < count; ++j) {
      const Vec u = sphere_sample(d, rng);
      const double r = star.rho(u);
      for (int c = 0; c < q.m; ++c) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += v[k] * u[c * n + k];
        w[c] = acc;
      }
      const double hq = q.h(w);
      const double val = std::pow(r, d + p) * (hq > 0.0 ? std::pow(hq, p) : 0.0);
      mm.sum += val;
      mm.sumsq += val * val;
    }
    mm.n = count;
    return mm;
  };
  const Estimate integral = mc_mean(plan, StreamTag::kSphereDirs,
                                    dir_ctx(v, context), n_dirs, worker, surf);
  const Estimate hp = estimate_div(estimate_scale(integral, 1.0 / (d + p)), vol);
  return estimate_root(hp, p);
}

Estimate centroid_support_from_cache(const RadialMomentCache& cache,
                                     const Estimate& vol_l, const QBody& q,
                                     double p, const Vec& v) {
  if (p < 1.0) throw invalid_argument("centroid body: p >= 1 required");
  const int d = cache.d;
  const int n = d / q.m;
  if (std::fabs(cache.q - (d + p)) > 1e-9)
    throw invalid_argument("centroid cache: moment order must equal nm + p");
  double sum = 0.0, sumsq = 0.0;
  Eigen::RowVectorXd w(q.m);
  for (std::size_t s = 0; s < cache.dirs.size(); ++s) {
    const Vec& u = cache.dirs[s];
    for (int c = 0; c < q.m; ++c) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += v[k] * u[c * n + k];
      w[c] = acc;
    }
    const double hq = q.h(w);
    const double val = (hq > 0.0 ? std::pow(hq, p) : 0.0) * cache.moment[s].value;
    sum += val;
    sumsq += val * val;
  }
  const Estimate integral = estimate_from_moments(
      sum, sumsq, static_cast<long long>(cache.dirs.size()), sphere_surface(d));
  const Estimate hp = estimate_div(estimate_scale(integral, 1.0 / (d + p)), vol_l);
  return estimate_root(hp, p);
}

double centroid_inf_support_points(const std::vector<Vec>& points, const QBody& q,
                                   const Vec& v) {
  const int n = static_cast<int>(v.size());
  double best = 0.0;
  Eigen::RowVectorXd w(q.m);
  for (const Vec& x : points) {
    for (int c = 0; c < q.m; ++c) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += v[k] * x[c * n + k];
      w[c] = acc;
    }
    best = std::max(best, q.h(w));
  }
  return best;
}

double centroid_inf_support(const StarOracle& star, const QBody& q, const Vec& v,
                            const std::vector<Vec>& grid) {
  const int n = star.d / q.m;
  double best = 0.0;
  Eigen::RowVectorXd w(q.m);
  for (const Vec& u : grid) {
    const double r = star.rho(u);
    for (int c = 0; c < q.m; ++c) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += v[k] * u[c * n + k];
      w[c] = acc;
    }
    best = std::max(best, r * q.h(w));
  }
  return best;
}

Estimate star_volume_mc(const StarOracle& star, const RngPlan& plan,
                        long long n_dirs, uint64_t context) {
  const int d = star.d;
  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    for (long long j = 0; j < count; ++j) {
      const Vec u = sphere_sample(d, rng);
      const double r = star.rho(u);
      const double v = std::pow(r, d);
      mm.sum += v;
      mm.sumsq += v * v;
    }
    mm.n = count;
    return mm;
  };
  return mc_mean(plan, StreamTag::kSphereDirs, context, n_dirs, worker,
                 sphere_surface(d) / d);
}

StarGrid star_grid(const StarOracle& star, const std::vector<Vec>& dirs) {
  StarGrid g;
  g.dirs = dirs;
  g.rho.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { g.rho[i] = star.rho(dirs[i]); });
  return g;
}

}  // namespace hozon
