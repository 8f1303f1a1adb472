#include "hozon/radial_mean.hpp"

#include <bit>
#include <cmath>

namespace hozon {

RadialMeanBody::RadialMeanBody(BodyPtr body, int m, double q)
    : body_(std::move(body)), m_(m), q_(q) {
  if (m_ < 1) throw invalid_argument("radial mean body: m >= 1");
  if (q_ <= -1.0 || q_ == 0.0)
    throw invalid_argument("radial mean body: q in (-1,0) or (0,inf) required");
  check_dims(Dims{body_->dim(), m_});
}

double RadialMeanBody::chord_reach(const Vec& x, const Vec& u) const {
  const int n = body_->dim();
  double tau = HUGE_VAL;
  Vec d(n);
  for (int i = 0; i < m_; ++i) {
    d = -u.segment(i * n, n);
    if (d.norm() == 0.0) continue;  // zero column never binds
    double r;
    if (auto e = body_->ray_exit(x, d))
      r = *e;
    else
      r = ray_exit_bisect(*body_, x, d);
    tau = std::min(tau, r);
  }
  return tau;
}

Estimate RadialMeanBody::chord_moment(const Vec& u, double power,
                                      const RngPlan& plan, long long samples,
                                      uint64_t context) const {
  if (u.size() != ambient_dim())
    throw invalid_argument("radial mean body: direction dimension");
  uint64_t ctx = context;
  for (int i = 0; i < u.size(); ++i)
    ctx = splitmix64(ctx ^ std::bit_cast<uint64_t>(u[i]));
  auto worker = [&](Rng& rng, long long count) {
    McMoments mm;
    for (long long j = 0; j < count; ++j) {
      const Vec x = uniform_sample(*body_, rng);
      const double tau = chord_reach(x, u);
      const double v = power == 1.0 ? tau
                       : power == 2.0
                           ? tau * tau
                           : (tau > 0.0 ? std::pow(tau, power) : 0.0);
      mm.sum += v;
      mm.sumsq += v * v;
    }
    mm.n = count;
    return mm;
  };
  return mc_mean(plan, StreamTag::kChords, ctx, samples, worker);
}

Estimate RadialMeanBody::radial(const Vec& u, const RngPlan& plan,
                                long long samples, uint64_t context) const {
  return estimate_root(chord_moment(u, q_, plan, samples, context), q_);
}

Estimate rmb_radial_mc(const BodyPtr& body, int m, double q, const Vec& u,
                       const RngPlan& plan, long long samples) {
  return RadialMeanBody(body, m, q).radial(u, plan, samples);
}

Estimate rmb_radial_layer(const BodyPtr& body, int m, double q, const Vec& u,
                          const RngPlan& plan, long long cov_samples) {
  if (q <= 0.0)
    throw invalid_argument("rmb_radial_layer: layer formula needs q > 0");
  const Covariogram cov(body, m);
  const DifferenceBody dm(body, m);
  const int n = body->dim();
  const double rho_d = dm.radial(u);
  if (rho_d <= 0.0) return Estimate{};
  const Estimate vol = volume(*body, plan);

  // substitution s = t^q removes the t^{q-1} weight:
  // rho^q = (1/vol K) \int_0^{rho_D^q} g(s^{1/q} u) ds
  const double s_max = std::pow(rho_d, q);
  double se_node = 0.0;
  int n_nodes = 0;
  auto integrand = [&](double s) {
    const double t = s <= 0.0 ? 0.0 : std::pow(s, 1.0 / q);
    Mat shifts(n, m);
    for (int i = 0; i < m; ++i) shifts.col(i) = t * u.segment(i * n, n);
    const Estimate g = cov.eval(shifts, plan, cov_samples);
    se_node += g.std_err;
    ++n_nodes;
    return g.value;
  };
  const bool exact_g = n == 1;
  const double coarse = std::max(vol.value * s_max, 1e-30);
  const double tol = exact_g ? 1e-9 * coarse : 2e-3 * coarse;
  const double integral = quad_1d(integrand, 0.0, s_max, tol, exact_g ? 28 : 12);

  const double mean_node_se = n_nodes > 0 ? se_node / n_nodes : 0.0;
  Estimate moment;  // estimate of rho^q
  moment.value = integral / vol.value;
  const double quad_err = tol / vol.value;
  const double noise_err = mean_node_se * s_max / vol.value * 0.7;
  moment.std_err = std::hypot(quad_err, noise_err);
  moment.n_samples = static_cast<long long>(n_nodes) * (exact_g ? 1 : cov_samples);
  return estimate_root(moment, q);
}

RadialMomentCache build_radial_cache(const BodyPtr& body, int m, double q,
                                     const RngPlan& plan, long long n_dirs,
                                     long long chord_samples, uint64_t context) {
  RadialMeanBody rmb(body, m, q);
  RadialMomentCache cache;
  cache.d = rmb.ambient_dim();
  cache.q = q;
  Rng dir_rng(plan.stream(StreamTag::kSphereDirs, context));
  cache.dirs.reserve(n_dirs);
  for (long long s = 0; s < n_dirs; ++s)
    cache.dirs.push_back(sphere_sample(cache.d, dir_rng));
  cache.moment.resize(n_dirs);
  parallel_for(static_cast<std::size_t>(n_dirs), [&](std::size_t s) {
    cache.moment[s] = rmb.chord_moment(cache.dirs[s], q, plan, chord_samples,
                                       context + 0x517cc1b727220a95ull * (s + 1));
  });
  return cache;
}

Estimate star_volume_from_cache(const RadialMomentCache& cache) {
  // Per-direction values rho^d = (E tau^q)^{d/q} are i.i.d. across directions,
  // so the across-direction sample variance already carries the chord noise.
  double sum = 0.0, sumsq = 0.0;
  for (const Estimate& e : cache.moment) {
    const double v = e.value <= 0.0 ? 0.0 : std::pow(e.value, cache.d / cache.q);
    sum += v;
    sumsq += v * v;
  }
  const double scale = sphere_surface(cache.d) / cache.d;
  return estimate_from_moments(sum, sumsq,
                               static_cast<long long>(cache.moment.size()), scale);
}

}  // namespace hozon
