#include "hozon/measure.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "hozon/kernels.hpp"

namespace hozon {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

Estimate mc_mean(const RngPlan& plan, StreamTag tag, uint64_t context,
                 long long total_samples,
                 const std::function<McMoments(Rng&, long long)>& worker,
                 double scale) {
  const int shards = std::max(1, plan.shards);
  std::vector<McMoments> parts(shards);
  const long long base = total_samples / shards;
  const long long extra = total_samples % shards;
  parallel_for(shards, [&](std::size_t s) {
    const long long count = base + (static_cast<long long>(s) < extra ? 1 : 0);
    Rng rng(plan.shard_seed(tag, context, static_cast<int>(s)));
    parts[s] = worker(rng, count);
  });
  double sum = 0.0, sumsq = 0.0;
  long long n = 0;
  for (const McMoments& p : parts) {
    sum += p.sum;
    sumsq += p.sumsq;
    n += p.n;
  }
  return estimate_from_moments(sum, sumsq, n, scale);
}

namespace {

// Rejection counting with the halfspace kernel when facets exist.
Estimate rejection_volume(const Body& body, const RngPlan& plan, long long samples,
                          uint64_t context) {
  Vec lo, hi;
  body.bounding_box(lo, hi);
  const int d = body.dim();
  double box_vol = 1.0;
  for (int k = 0; k < d; ++k) box_vol *= hi[k] - lo[k];

  const std::vector<Facet>* fs = body.facets();
  std::vector<double> normals;
  std::vector<double> offsets;
  if (fs) {
    for (const Facet& f : *fs) {
      for (int k = 0; k < d; ++k) normals.push_back(f.normal[k]);
      offsets.push_back(f.offset);
    }
  }

  auto worker = [&](Rng& rng, long long count) {
    McMoments m;
    constexpr std::size_t kBatch = 4096;
    std::vector<std::vector<double>> cols(d, std::vector<double>(kBatch));
    std::vector<const double*> ptrs(d);
    for (int k = 0; k < d; ++k) ptrs[k] = cols[k].data();
    std::vector<uint8_t> mask(kBatch);
    Vec x(d);
    long long done = 0;
    while (done < count) {
      const std::size_t batch =
          static_cast<std::size_t>(std::min<long long>(kBatch, count - done));
      for (std::size_t j = 0; j < batch; ++j)
        for (int k = 0; k < d; ++k)
          cols[k][j] = lo[k] + (hi[k] - lo[k]) * rng.uniform();
      if (fs) {
        kernels::active().halfspace_mask(ptrs.data(), d, normals.data(),
                                         offsets.data(), offsets.size(), batch,
                                         mask.data());
      } else {
        for (std::size_t j = 0; j < batch; ++j) {
          for (int k = 0; k < d; ++k) x[k] = cols[k][j];
          mask[j] = body.contains(x) ? 1 : 0;
        }
      }
      for (std::size_t j = 0; j < batch; ++j) {
        const double v = mask[j] ? 1.0 : 0.0;
        m.sum += v;
        m.sumsq += v;
      }
      done += batch;
    }
    m.n = count;
    return m;
  };
  return mc_mean(plan, StreamTag::kVolume, context, samples, worker, box_vol);
}

}  // namespace

Estimate volume(const Body& body, const RngPlan& plan, long long samples) {
  if (auto v = body.exact_volume()) return Estimate::exact(*v);
  return rejection_volume(body, plan, samples, 0);
}

Estimate volume_mc(const Body& body, const RngPlan& plan, long long samples,
                   uint64_t context) {
  return rejection_volume(body, plan, samples, context);
}

Vec uniform_sample(const Body& body, Rng& rng) {
  Vec out;
  if (body.sample_direct(rng, out)) return out;
  Vec lo, hi;
  body.bounding_box(lo, hi);
  const int d = body.dim();
  out.resize(d);
  for (long long attempt = 1;; ++attempt) {
    for (int k = 0; k < d; ++k) out[k] = lo[k] + (hi[k] - lo[k]) * rng.uniform();
    if (body.contains(out)) return out;
    if (attempt >= 100000)
      throw efficiency_error(
          "uniform_sample: acceptance rate below floor; tighten the bounding box");
  }
}

void uniform_sample_batch(const Body& body, Rng& rng, std::size_t count,
                          std::vector<std::vector<double>>& cols) {
  const int d = body.dim();
  cols.assign(d, std::vector<double>(count));
  Vec x;
  if (body.sample_direct(rng, x)) {
    for (int k = 0; k < d; ++k) cols[k][0] = x[k];
    for (std::size_t j = 1; j < count; ++j) {
      body.sample_direct(rng, x);
      for (int k = 0; k < d; ++k) cols[k][j] = x[k];
    }
    return;
  }

  Vec lo, hi;
  body.bounding_box(lo, hi);
  const std::vector<Facet>* fs = body.facets();
  std::vector<double> normals, offsets;
  if (fs) {
    for (const Facet& f : *fs) {
      for (int k = 0; k < d; ++k) normals.push_back(f.normal[k]);
      offsets.push_back(f.offset);
    }
  }
  constexpr std::size_t kBatch = 4096;
  std::vector<std::vector<double>> cand(d, std::vector<double>(kBatch));
  std::vector<const double*> ptrs(d);
  for (int k = 0; k < d; ++k) ptrs[k] = cand[k].data();
  std::vector<uint8_t> mask(kBatch);
  std::size_t got = 0;
  long long tried = 0;
  x.resize(d);
  while (got < count) {
    for (std::size_t j = 0; j < kBatch; ++j)
      for (int k = 0; k < d; ++k)
        cand[k][j] = lo[k] + (hi[k] - lo[k]) * rng.uniform();
    if (fs) {
      kernels::active().halfspace_mask(ptrs.data(), d, normals.data(),
                                       offsets.data(), offsets.size(), kBatch,
                                       mask.data());
    } else {
      for (std::size_t j = 0; j < kBatch; ++j) {
        for (int k = 0; k < d; ++k) x[k] = cand[k][j];
        mask[j] = body.contains(x) ? 1 : 0;
      }
    }
    for (std::size_t j = 0; j < kBatch && got < count; ++j)
      if (mask[j]) {
        for (int k = 0; k < d; ++k) cols[k][got] = cand[k][j];
        ++got;
      }
    tried += kBatch;
    if (tried > 100000 && static_cast<double>(got) / tried < kAcceptanceFloor)
      throw efficiency_error(
          "uniform_sample_batch: acceptance rate below floor; tighten the bounding box");
  }
}

Vec sphere_sample(int d, Rng& rng) {
  if (d < 1) throw invalid_argument("sphere_sample: d >= 1");
  Vec u(d);
  if (d == 1) {
    u[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return u;
  }
  double nrm;
  do {
    for (int k = 0; k < d; ++k) u[k] = rng.normal();
    nrm = u.norm();
  } while (nrm < 1e-12);
  return u / nrm;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  if (!std::isfinite(flm) || !std::isfinite(frm))
    throw domain_error("quad_1d: non-finite integrand value");
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double quad_1d(const std::function<double(double)>& f, double a, double b,
               double abs_tol, int max_depth) {
  if (a > b) throw invalid_argument("quad_1d: a <= b required");
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
    throw domain_error("quad_1d: non-finite integrand value");
  if (abs_tol <= 0.0) {
    double fmax = std::max({std::fabs(fa), std::fabs(fm), std::fabs(fb)});
    for (int i = 1; i <= 7; ++i) {
      const double v = std::fabs(f(a + (b - a) * i / 8.0));
      if (std::isfinite(v)) fmax = std::max(fmax, v);
    }
    abs_tol = 1e-8 * (b - a) * std::max(fmax, 1e-30);
  }
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

std::vector<Vec> direction_grid(int d, int count, const RngPlan& plan) {
  std::vector<Vec> out;
  if (d == 1) {
    Vec p(1), n(1);
    p << 1.0;
    n << -1.0;
    out = {p, n};
    return out;
  }
  if (d == 2) {
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * M_PI * i / count;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      out.push_back(u);
    }
    return out;
  }
  Rng rng(plan.stream(StreamTag::kGrid, static_cast<uint64_t>(d)));
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sphere_sample(d, rng));
  return out;
}

}  // namespace hozon
