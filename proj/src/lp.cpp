#include "hozon/lp.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "hozon/rng.hpp"

namespace hozon {

namespace {

constexpr int kMaxDim = 5;

// Row layout: coefficients a[0..d) then the bound b at slot d.
using Row = std::array<double, kMaxDim + 1>;

struct Prob {
  int d = 0;
  std::vector<Row> rows;
  std::array<double, kMaxDim> c{}, lo{}, hi{};
};

double row_eps(const Prob& p, const Row& r) {
  double s = std::fabs(r[p.d]);
  for (int k = 0; k < p.d; ++k)
    s += std::fabs(r[k]) * std::max(std::fabs(p.lo[k]), std::fabs(p.hi[k]));
  return 1e-11 * (1.0 + s);
}

std::optional<std::array<double, kMaxDim>> seidel(const Prob& p) {
  std::array<double, kMaxDim> x{};
  if (p.d == 1) {
    double lo = p.lo[0], hi = p.hi[0];
    for (const Row& r : p.rows) {
      const double eps = row_eps(p, r);
      if (r[0] > 0.0)
        hi = std::min(hi, (r[1] + eps) / r[0]);
      else if (r[0] < 0.0)
        lo = std::max(lo, (r[1] + eps) / r[0]);
      else if (r[1] < -eps)
        return std::nullopt;
    }
    if (lo > hi) return std::nullopt;
    x[0] = p.c[0] > 0.0 ? lo : hi;
    return x;
  }

  for (int k = 0; k < p.d; ++k) x[k] = p.c[k] > 0.0 ? p.lo[k] : p.hi[k];

  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const Row& r = p.rows[i];
    double val = -r[p.d];
    for (int k = 0; k < p.d; ++k) val += r[k] * x[k];
    if (val <= row_eps(p, r)) continue;

    int piv = 0;
    for (int k = 1; k < p.d; ++k)
      if (std::fabs(r[k]) > std::fabs(r[piv])) piv = k;
    if (std::fabs(r[piv]) < 1e-14) return std::nullopt;
    const double inv = 1.0 / r[piv];

    // Project earlier rows and the pivot's box bounds onto a.x = b.
    Prob sub;
    sub.d = p.d - 1;
    auto project = [&](const Row& g) {
      Row out{};
      const double f = g[piv] * inv;
      int idx = 0;
      for (int k = 0; k < p.d; ++k) {
        if (k == piv) continue;
        out[idx++] = g[k] - f * r[k];
      }
      out[sub.d] = g[p.d] - f * r[p.d];
      sub.rows.push_back(out);
    };
    for (std::size_t jr = 0; jr < i; ++jr) project(p.rows[jr]);
    Row up{};
    up[piv] = 1.0;
    up[p.d] = p.hi[piv];
    project(up);
    Row dn{};
    dn[piv] = -1.0;
    dn[p.d] = -p.lo[piv];
    project(dn);

    {
      int idx = 0;
      const double f = p.c[piv] * inv;
      for (int k = 0; k < p.d; ++k) {
        if (k == piv) continue;
        sub.c[idx] = p.c[k] - f * r[k];
        sub.lo[idx] = p.lo[k];
        sub.hi[idx] = p.hi[k];
        ++idx;
      }
    }

    auto sol = seidel(sub);
    if (!sol) return std::nullopt;
    int idx = 0;
    double acc = r[p.d];
    for (int k = 0; k < p.d; ++k) {
      if (k == piv) continue;
      x[k] = (*sol)[idx++];
      acc -= r[k] * x[k];
    }
    x[piv] = acc * inv;
  }
  return x;
}

}  // namespace

std::optional<Vec> lp_solve(const LinearProgram& lp, uint64_t shuffle_seed) {
  const int d = static_cast<int>(lp.c.size());
  if (d < 1 || d > kMaxDim) throw invalid_argument("lp_solve: dimension out of range");
  Prob p;
  p.d = d;
  for (int k = 0; k < d; ++k) {
    p.c[k] = lp.c[k];
    p.lo[k] = lp.lo[k];
    p.hi[k] = lp.hi[k];
    if (!(p.lo[k] <= p.hi[k])) throw invalid_argument("lp_solve: empty box");
  }
  std::vector<int> order(lp.a.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  uint64_t h = shuffle_seed;
  for (int i = 0; i < lp.a.rows(); ++i) {
    h = splitmix64(h ^ std::bit_cast<uint64_t>(lp.b[i]));
    for (int k = 0; k < d; ++k) h = splitmix64(h ^ std::bit_cast<uint64_t>(lp.a(i, k)));
  }
  Rng rng(h);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);

  p.rows.reserve(order.size());
  for (int idx : order) {
    Row r{};
    for (int k = 0; k < d; ++k) r[k] = lp.a(idx, k);
    r[d] = lp.b[idx];
    p.rows.push_back(r);
  }
  auto sol = seidel(p);
  if (!sol) return std::nullopt;
  Vec out(d);
  for (int k = 0; k < d; ++k) out[k] = (*sol)[k];
  return out;
}

std::vector<Vec> halfplane_intersection_2d(const Mat& a, const Vec& b, double bound) {
  std::vector<Vec> poly;
  for (auto [x, y] : {std::pair{-bound, -bound}, {bound, -bound}, {bound, bound}, {-bound, bound}}) {
    Vec v(2);
    v << x, y;
    poly.push_back(v);
  }
  for (int i = 0; i < a.rows(); ++i) {
    const double ax = a(i, 0), ay = a(i, 1), off = b[i];
    std::vector<Vec> next;
    const std::size_t n = poly.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& p = poly[j];
      const Vec& q = poly[(j + 1) % n];
      const double dp = ax * p[0] + ay * p[1] - off;
      const double dq = ax * q[0] + ay * q[1] - off;
      if (dp <= 0.0) next.push_back(p);
      if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
        const double t = dp / (dp - dq);
        next.push_back(p + t * (q - p));
      }
    }
    poly = std::move(next);
    if (poly.empty()) break;
  }
  return poly;
}

}  // namespace hozon
