#include "hozon/body.hpp"

#include <algorithm>
#include <cmath>

#include "hozon/kernels.hpp"

namespace hozon {

namespace {

void check_finite(const Vec& v, const char* what) {
  for (int i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) throw invalid_argument(std::string(what) + ": non-finite entry");
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// SoA coordinate buffers shared by the kernel-backed polytope paths.
struct SoaPoints {
  std::vector<std::vector<double>> cols;
  std::vector<const double*> ptrs;

  void build(const std::vector<Vec>& pts, int d) {
    cols.assign(d, {});
    ptrs.assign(d, nullptr);
    for (int k = 0; k < d; ++k) {
      cols[k].resize(pts.size());
      for (std::size_t j = 0; j < pts.size(); ++j) cols[k][j] = pts[j][k];
      ptrs[k] = cols[k].data();
    }
  }
};

double polygon_area(const std::vector<Vec>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec& p = v[i];
    const Vec& q = v[(i + 1) % v.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

std::vector<Facet> polygon_facets(const std::vector<Vec>& ccw) {
  std::vector<Facet> fs;
  fs.reserve(ccw.size());
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vec& p = ccw[i];
    const Vec& q = ccw[(i + 1) % ccw.size()];
    Vec e = q - p;
    const double len = e.norm();
    if (len <= 0) throw invalid_argument("polygon: repeated vertex");
    Vec nrm(2);
    nrm << e[1] / len, -e[0] / len;  // outward for ccw order
    fs.push_back(Facet{nrm, nrm.dot(p), len});
  }
  return fs;
}

// Facets of a full-dimensional simplex in R^d: one per omitted vertex.
std::vector<Facet> simplex_facets(const std::vector<Vec>& v) {
  const int d = static_cast<int>(v[0].size());
  std::vector<Facet> fs;
  for (int skip = 0; skip <= d; ++skip) {
    std::vector<Vec> face;
    for (int i = 0; i <= d; ++i)
      if (i != skip) face.push_back(v[i]);
    Vec nrm(d);
    if (d == 1) {
      nrm << 1.0;
    } else {
      Mat edges(d - 1, d);
      for (int i = 1; i < d; ++i) edges.row(i - 1) = (face[i] - face[0]).transpose();
      Eigen::FullPivLU<Mat> lu(edges);
      Mat ker = lu.kernel();
      nrm = ker.col(0);
    }
    nrm.normalize();
    double off = nrm.dot(face[0]);
    if (nrm.dot(v[skip]) > off) {
      nrm = -nrm;
      off = -off;
    }
    double area = 1.0;
    if (d >= 2) {
      Mat edges(d - 1, d);
      for (int i = 1; i < d; ++i) edges.row(i - 1) = (face[i] - face[0]).transpose();
      Mat gram = edges * edges.transpose();
      double fact = 1.0;
      for (int i = 2; i <= d - 1; ++i) fact *= i;
      area = std::sqrt(std::max(0.0, gram.determinant())) / fact;
    }
    fs.push_back(Facet{nrm, off, area});
  }
  return fs;
}

std::vector<Facet> transform_facets(const std::vector<Facet>& fs, const Mat& a,
                                    const Vec& t, double abs_det) {
  const Mat aiT = a.inverse().transpose();
  std::vector<Facet> out;
  out.reserve(fs.size());
  for (const Facet& f : fs) {
    Vec g = aiT * f.normal;
    const double gn = g.norm();
    Vec nrm = g / gn;
    out.push_back(Facet{nrm, (f.offset + g.dot(t)) / gn, f.area * abs_det * gn});
  }
  return out;
}

void validate_full_dim(double inner, double outer, const char* kind) {
  if (!(inner > 1e-9 * std::max(outer, 1.0)))
    throw invalid_argument(std::string(kind) + ": degenerate (lower-dimensional) body rejected");
}

double ray_exit_facets(const std::vector<Facet>& fs, const Vec& x, const Vec& d) {
  double r = HUGE_VAL;
  for (const Facet& f : fs) {
    const double ad = f.normal.dot(d);
    if (ad > 0.0) r = std::min(r, (f.offset - f.normal.dot(x)) / ad);
  }
  return std::max(r, 0.0);
}

class BoxBody;
class EllipsoidBody;

}  // namespace

void Body::bounding_box(Vec& lo, Vec& hi) const {
  const int d = dim();
  lo.resize(d);
  hi.resize(d);
  Vec e = Vec::Zero(d);
  for (int k = 0; k < d; ++k) {
    e[k] = 1.0;
    hi[k] = support(e);
    e[k] = -1.0;
    lo[k] = -support(e);
    e[k] = 0.0;
  }
}

namespace {

class BoxBody final : public Body {
 public:
  BoxBody(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size() || lo_.size() == 0)
      throw invalid_argument("box: bad bounds");
    for (int k = 0; k < lo_.size(); ++k)
      if (!(hi_[k] > lo_[k])) throw invalid_argument("box: empty extent");
    const int d = dim();
    for (int k = 0; k < d; ++k) {
      Facet up{Vec::Zero(d), hi_[k], 1.0};
      up.normal[k] = 1.0;
      Facet dn{Vec::Zero(d), -lo_[k], 1.0};
      dn.normal[k] = -1.0;
      for (int j = 0; j < d; ++j)
        if (j != k) {
          up.area *= hi_[j] - lo_[j];
          dn.area *= hi_[j] - lo_[j];
        }
      facets_.push_back(up);
      facets_.push_back(dn);
    }
    if (d <= 6) {
      const int corners = 1 << d;
      for (int c = 0; c < corners; ++c) {
        Vec v(d);
        for (int k = 0; k < d; ++k) v[k] = (c >> k) & 1 ? hi_[k] : lo_[k];
        verts_.push_back(v);
      }
    }
  }

  int dim() const override { return static_cast<int>(lo_.size()); }

  double support(const Vec& u) const override {
    double h = 0.0;
    for (int k = 0; k < u.size(); ++k) h += std::max(lo_[k] * u[k], hi_[k] * u[k]);
    return h;
  }

  bool contains(const Vec& x) const override {
    for (int k = 0; k < x.size(); ++k)
      if (x[k] < lo_[k] || x[k] > hi_[k]) return false;
    return true;
  }

  Vec witness() const override { return 0.5 * (lo_ + hi_); }

  double inner_radius() const override { return 0.5 * (hi_ - lo_).minCoeff(); }

  double outer_radius() const override {
    double s = 0.0;
    for (int k = 0; k < lo_.size(); ++k)
      s += std::max(lo_[k] * lo_[k], hi_[k] * hi_[k]);
    return std::sqrt(s);
  }

  std::optional<double> exact_volume() const override {
    double v = 1.0;
    for (int k = 0; k < lo_.size(); ++k) v *= hi_[k] - lo_[k];
    return v;
  }

  std::optional<double> ray_exit(const Vec& x, const Vec& d) const override {
    double r = HUGE_VAL;
    for (int k = 0; k < d.size(); ++k) {
      if (d[k] > 0.0)
        r = std::min(r, (hi_[k] - x[k]) / d[k]);
      else if (d[k] < 0.0)
        r = std::min(r, (lo_[k] - x[k]) / d[k]);
    }
    return std::max(r, 0.0);
  }

  bool sample_direct(Rng& rng, Vec& out) const override {
    out.resize(dim());
    for (int k = 0; k < out.size(); ++k) out[k] = rng.uniform(lo_[k], hi_[k]);
    return true;
  }

  const std::vector<Facet>* facets() const override { return &facets_; }
  const std::vector<Vec>* vertex_list() const override {
    return verts_.empty() ? nullptr : &verts_;
  }
  std::optional<std::pair<Vec, Vec>> axis_box_data() const override {
    return std::make_pair(lo_, hi_);
  }

  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }

 private:
  Vec lo_, hi_;
  std::vector<Facet> facets_;
  std::vector<Vec> verts_;
};

class EllipsoidBody final : public Body {
 public:
  EllipsoidBody(Vec center, Mat shape) : c_(std::move(center)), a_(std::move(shape)) {
    if (a_.rows() != a_.cols() || a_.rows() != c_.size())
      throw invalid_argument("ellipsoid: shape mismatch");
    const double det = a_.determinant();
    if (std::fabs(det) <= kDetTol) throw invalid_argument("ellipsoid: singular shape");
    abs_det_ = std::fabs(det);
    ainv_ = a_.inverse();
    Eigen::JacobiSVD<Mat> svd(a_);
    sigma_min_ = svd.singularValues().minCoeff();
    sigma_max_ = svd.singularValues().maxCoeff();
  }

  int dim() const override { return static_cast<int>(c_.size()); }

  double support(const Vec& u) const override {
    return c_.dot(u) + (a_.transpose() * u).norm();
  }

  bool contains(const Vec& x) const override {
    return (ainv_ * (x - c_)).squaredNorm() <= 1.0;
  }

  Vec witness() const override { return c_; }
  double inner_radius() const override { return sigma_min_; }
  double outer_radius() const override { return c_.norm() + sigma_max_; }

  std::optional<double> exact_volume() const override {
    return ball_volume(dim()) * abs_det_;
  }

  std::optional<double> ray_exit(const Vec& x, const Vec& d) const override {
    const Vec y = ainv_ * (x - c_);
    const Vec e = ainv_ * d;
    const double alpha = e.squaredNorm();
    if (alpha == 0.0) return HUGE_VAL;
    const double beta = y.dot(e);
    const double gamma = y.squaredNorm() - 1.0;
    const double disc = beta * beta - alpha * gamma;
    if (disc <= 0.0) return 0.0;
    return std::max(0.0, (-beta + std::sqrt(disc)) / alpha);
  }

  bool sample_direct(Rng& rng, Vec& out) const override {
    const int d = dim();
    Vec g(d);
    double nrm;
    do {
      for (int k = 0; k < d; ++k) g[k] = rng.normal();
      nrm = g.norm();
    } while (nrm == 0.0);
    const double r = std::pow(rng.uniform(), 1.0 / d);
    out = c_ + a_ * (g * (r / nrm));
    return true;
  }

  std::optional<std::pair<Vec, Mat>> ellipsoid_data() const override {
    return std::make_pair(c_, a_);
  }

  const Mat& shape() const { return a_; }
  const Vec& center() const { return c_; }

 private:
  Vec c_;
  Mat a_;
  Mat ainv_;
  double abs_det_ = 1.0, sigma_min_ = 0.0, sigma_max_ = 0.0;
};

class SimplexBody final : public Body {
 public:
  explicit SimplexBody(std::vector<Vec> vertices) : verts_(std::move(vertices)) {
    const int d = static_cast<int>(verts_[0].size());
    if (static_cast<int>(verts_.size()) != d + 1)
      throw invalid_argument("simplex: needs d+1 vertices");
    basis_.resize(d, d);
    for (int i = 0; i < d; ++i) basis_.col(i) = verts_[i + 1] - verts_[0];
    const double det = basis_.determinant();
    if (std::fabs(det) <= kDetTol) throw invalid_argument("simplex: degenerate");
    abs_det_ = std::fabs(det);
    basis_inv_ = basis_.inverse();
    facets_ = simplex_facets(verts_);
    centroid_ = Vec::Zero(d);
    for (const Vec& v : verts_) centroid_ += v;
    centroid_ /= d + 1;
    inner_ = HUGE_VAL;
    for (const Facet& f : facets_)
      inner_ = std::min(inner_, f.offset - f.normal.dot(centroid_));
    outer_ = 0.0;
    for (const Vec& v : verts_) outer_ = std::max(outer_, v.norm());
    validate_full_dim(inner_, outer_, "simplex");
  }

  int dim() const override { return static_cast<int>(verts_[0].size()); }

  double support(const Vec& u) const override {
    double h = -HUGE_VAL;
    for (const Vec& v : verts_) h = std::max(h, v.dot(u));
    return h;
  }

  bool contains(const Vec& x) const override {
    const Vec lam = basis_inv_ * (x - verts_[0]);
    double s = 0.0;
    for (int i = 0; i < lam.size(); ++i) {
      if (lam[i] < 0.0) return false;
      s += lam[i];
    }
    return s <= 1.0;
  }

  Vec witness() const override { return centroid_; }
  double inner_radius() const override { return inner_; }
  double outer_radius() const override { return outer_; }

  std::optional<double> exact_volume() const override {
    double fact = 1.0;
    for (int i = 2; i <= dim(); ++i) fact *= i;
    return abs_det_ / fact;
  }

  std::optional<double> ray_exit(const Vec& x, const Vec& d) const override {
    return ray_exit_facets(facets_, x, d);
  }

  bool sample_direct(Rng& rng, Vec& out) const override {
    const int d = dim();
    double e[kMaxAmbientDim + 1];
    double tot = 0.0;
    for (int i = 0; i <= d; ++i) {
      e[i] = rng.exponential();
      tot += e[i];
    }
    out = Vec::Zero(d);
    for (int i = 0; i <= d; ++i) out += (e[i] / tot) * verts_[i];
    return true;
  }

  const std::vector<Facet>* facets() const override { return &facets_; }
  const std::vector<Vec>* vertex_list() const override { return &verts_; }

 private:
  std::vector<Vec> verts_;
  Mat basis_, basis_inv_;
  std::vector<Facet> facets_;
  Vec centroid_;
  double abs_det_ = 1.0, inner_ = 0.0, outer_ = 0.0;
};

class PolytopeBody final : public Body {
 public:
  PolytopeBody(std::vector<Vec> vertices, std::vector<Facet> facets, bool ordered_2d)
      : verts_(std::move(vertices)), facets_(std::move(facets)), ordered_2d_(ordered_2d) {
    const int d = static_cast<int>(verts_[0].size());
    if (facets_.empty()) throw unsupported_body("polytope: facet data required");
    centroid_ = Vec::Zero(d);
    for (const Vec& v : verts_) centroid_ += v;
    centroid_ /= static_cast<double>(verts_.size());
    outer_ = 0.0;
    for (const Vec& v : verts_) outer_ = std::max(outer_, v.norm());
    inner_ = HUGE_VAL;
    for (const Facet& f : facets_) {
      if (std::fabs(f.normal.norm() - 1.0) > 1e-8)
        throw invalid_argument("polytope: facet normals must be unit");
      inner_ = std::min(inner_, f.offset - f.normal.dot(centroid_));
    }
    validate_full_dim(inner_, outer_, "polytope");
    const double tol = 1e-7 * std::max(1.0, outer_);
    for (const Vec& v : verts_)
      for (const Facet& f : facets_)
        if (f.normal.dot(v) > f.offset + tol)
          throw invalid_argument("polytope: vertex violates facet inequality");
    Vec closure = Vec::Zero(d);
    double area_scale = 0.0;
    for (const Facet& f : facets_) {
      closure += f.area * f.normal;
      area_scale += f.area;
    }
    if (closure.norm() > 1e-6 * std::max(area_scale, 1.0))
      throw invalid_argument("polytope: facet areas do not close up");
    soa_.build(verts_, d);
    if (ordered_2d_ && d == 2) {
      tri_cum_.resize(verts_.size() - 2);
      double acc = 0.0;
      for (std::size_t i = 1; i + 1 < verts_.size(); ++i) {
        acc += 0.5 * std::fabs(cross2(verts_[0], verts_[i], verts_[i + 1]));
        tri_cum_[i - 1] = acc;
      }
    }
  }

  int dim() const override { return static_cast<int>(verts_[0].size()); }

  double support(const Vec& u) const override {
    return kernels::active().max_dot(soa_.ptrs.data(), dim(), u.data(), verts_.size());
  }

  bool contains(const Vec& x) const override {
    for (const Facet& f : facets_)
      if (f.normal.dot(x) > f.offset) return false;
    return true;
  }

  Vec witness() const override { return centroid_; }
  double inner_radius() const override { return inner_; }
  double outer_radius() const override { return outer_; }

  std::optional<double> exact_volume() const override {
    if (dim() == 2 && ordered_2d_) return polygon_area(verts_);
    // divergence theorem over exact facet data
    double v = 0.0;
    for (const Facet& f : facets_) v += f.area * f.offset;
    return v / dim();
  }

  std::optional<double> ray_exit(const Vec& x, const Vec& d) const override {
    return ray_exit_facets(facets_, x, d);
  }

  bool sample_direct(Rng& rng, Vec& out) const override {
    if (!(ordered_2d_ && dim() == 2)) return false;
    const double total = tri_cum_.back();
    const double pick = rng.uniform() * total;
    std::size_t t = std::lower_bound(tri_cum_.begin(), tri_cum_.end(), pick) -
                    tri_cum_.begin();
    t = std::min(t, tri_cum_.size() - 1);
    const Vec& a = verts_[0];
    const Vec& b = verts_[t + 1];
    const Vec& c = verts_[t + 2];
    double r1 = std::sqrt(rng.uniform());
    double r2 = rng.uniform();
    out = (1.0 - r1) * a + r1 * (1.0 - r2) * b + r1 * r2 * c;
    return true;
  }

  const std::vector<Facet>* facets() const override { return &facets_; }
  const std::vector<Vec>* vertex_list() const override { return &verts_; }

 private:
  std::vector<Vec> verts_;
  std::vector<Facet> facets_;
  bool ordered_2d_ = false;
  SoaPoints soa_;
  Vec centroid_;
  std::vector<double> tri_cum_;
  double inner_ = 0.0, outer_ = 0.0;
};

class AffineWrapBody final : public Body {
 public:
  AffineWrapBody(BodyPtr base, Mat a, Vec t)
      : base_(std::move(base)), a_(std::move(a)), t_(std::move(t)) {
    ainv_ = a_.inverse();
    abs_det_ = std::fabs(a_.determinant());
    Eigen::JacobiSVD<Mat> svd(a_);
    sigma_min_ = svd.singularValues().minCoeff();
    sigma_max_ = svd.singularValues().maxCoeff();
  }

  int dim() const override { return base_->dim(); }

  double support(const Vec& u) const override {
    return base_->support(a_.transpose() * u) + t_.dot(u);
  }

  bool contains(const Vec& x) const override {
    return base_->contains(ainv_ * (x - t_));
  }

  Vec witness() const override { return a_ * base_->witness() + t_; }
  double inner_radius() const override { return sigma_min_ * base_->inner_radius(); }
  double outer_radius() const override {
    return t_.norm() + sigma_max_ * base_->outer_radius();
  }

  std::optional<double> exact_volume() const override {
    if (auto v = base_->exact_volume()) return abs_det_ * *v;
    return std::nullopt;
  }

  std::optional<double> ray_exit(const Vec& x, const Vec& d) const override {
    return base_->ray_exit(ainv_ * (x - t_), ainv_ * d);
  }

  bool sample_direct(Rng& rng, Vec& out) const override {
    Vec y;
    if (!base_->sample_direct(rng, y)) return false;
    out = a_ * y + t_;
    return true;
  }

 private:
  BodyPtr base_;
  Mat a_, ainv_;
  Vec t_;
  double abs_det_ = 1.0, sigma_min_ = 0.0, sigma_max_ = 0.0;
};

}  // namespace

BodyPtr make_box(const Vec& lo, const Vec& hi) {
  return std::make_shared<BoxBody>(lo, hi);
}

BodyPtr make_cube(int d, double lo, double hi) {
  return make_box(Vec::Constant(d, lo), Vec::Constant(d, hi));
}

BodyPtr make_ball(int d, double radius, const Vec& center) {
  Vec c = center.size() == 0 ? Vec::Zero(d) : center;
  if (!(radius > 0.0)) throw invalid_argument("ball: radius must be positive");
  return std::make_shared<EllipsoidBody>(c, radius * Mat::Identity(d, d));
}

BodyPtr make_ellipsoid(const Vec& center, const Mat& shape) {
  return std::make_shared<EllipsoidBody>(center, shape);
}

BodyPtr make_simplex(const std::vector<Vec>& vertices) {
  return std::make_shared<SimplexBody>(vertices);
}

BodyPtr make_standard_simplex(int d) {
  std::vector<Vec> v;
  v.push_back(Vec::Zero(d));
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e[i] = 1.0;
    v.push_back(e);
  }
  return make_simplex(v);
}

BodyPtr make_polytope(const std::vector<Vec>& vertices, std::vector<Facet> facets) {
  if (vertices.empty()) throw invalid_argument("polytope: no vertices");
  const int d = static_cast<int>(vertices[0].size());
  if (d == 2) {
    std::vector<Vec> hull = convex_hull_2d(vertices);
    if (hull.size() != vertices.size())
      throw invalid_argument("polytope: 2-D vertices must be in convex position");
    if (facets.empty()) facets = polygon_facets(hull);
    return std::make_shared<PolytopeBody>(std::move(hull), std::move(facets), true);
  }
  return std::make_shared<PolytopeBody>(vertices, std::move(facets), false);
}

BodyPtr make_polygon(const std::vector<Vec>& points) {
  std::vector<Vec> hull = convex_hull_2d(points);
  if (hull.size() < 3) throw invalid_argument("polygon: fewer than 3 hull vertices");
  std::vector<Facet> fs = polygon_facets(hull);
  return std::make_shared<PolytopeBody>(std::move(hull), std::move(fs), true);
}

BodyPtr affine_image(const BodyPtr& body, const Mat& a, const Vec& t) {
  if (a.rows() != a.cols() || a.rows() != body->dim() || t.size() != body->dim())
    throw invalid_argument("affine_image: shape mismatch");
  const double det = a.determinant();
  if (std::fabs(det) <= kDetTol) throw invalid_argument("affine_image: singular matrix");

  if (auto* ell = dynamic_cast<const EllipsoidBody*>(body.get()))
    return make_ellipsoid(a * ell->center() + t, a * ell->shape());
  if (auto* sx = dynamic_cast<const SimplexBody*>(body.get())) {
    std::vector<Vec> v;
    for (const Vec& p : *sx->vertex_list()) v.push_back(a * p + t);
    return make_simplex(v);
  }
  const bool is_box = dynamic_cast<const BoxBody*>(body.get()) != nullptr;
  const bool is_poly = dynamic_cast<const PolytopeBody*>(body.get()) != nullptr;
  if ((is_poly || (is_box && body->dim() <= 3)) && body->vertex_list()) {
    std::vector<Vec> v;
    for (const Vec& p : *body->vertex_list()) v.push_back(a * p + t);
    std::vector<Facet> fs = transform_facets(*body->facets(), a, t, std::fabs(det));
    if (body->dim() == 2) return make_polytope(v, {});
    return make_polytope(v, std::move(fs));
  }
  return std::make_shared<AffineWrapBody>(body, a, t);
}

double support_eval(const Body& body, const Vec& u) {
  check_finite(u, "support_eval");
  if (u.norm() == 0.0) throw invalid_argument("support_eval: zero direction");
  return body.support(u);
}

bool membership(const Body& body, const Vec& x) {
  check_finite(x, "membership");
  return body.contains(x);
}

double ray_exit_bisect(const Body& body, const Vec& x, const Vec& d) {
  const double dn = d.norm();
  if (dn == 0.0) return HUGE_VAL;
  double lo = 0.0;
  double hi = (body.outer_radius() + x.norm()) / dn * (1.0 + 1e-9) + 1e-12;
  const double tol = 1e-9 * std::max(body.outer_radius(), 1e-30) / dn;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (body.contains(x + mid * d))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double radial_eval(const Body& body, const Vec& u) {
  check_finite(u, "radial_eval");
  if (u.norm() == 0.0) throw invalid_argument("radial_eval: zero direction");
  const Vec origin = Vec::Zero(body.dim());
  if (!body.contains(origin))
    throw precondition_error("radial_eval: origin not in body");
  if (auto r = body.ray_exit(origin, u)) return *r;
  return ray_exit_bisect(body, origin, u);
}

double polar_radial(const Body& body, const Vec& u) {
  const double h = support_eval(body, u);
  if (h <= 0.0) throw domain_error("polar_radial: support not positive (origin not interior)");
  return 1.0 / h;
}

std::vector<Vec> convex_hull_2d(std::vector<Vec> points) {
  std::sort(points.begin(), points.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec& a, const Vec& b) {
                             return a[0] == b[0] && a[1] == b[1];
                           }),
               points.end());
  const std::size_t n = points.size();
  if (n < 3) return points;
  std::vector<Vec> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

BodyPtr random_polygon(Rng& rng, int k, double scale) {
  if (k < 3) throw invalid_argument("random_polygon: k >= 3");
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> ang(k);
    for (double& a : ang) a = rng.uniform(0.0, 2.0 * M_PI);
    std::sort(ang.begin(), ang.end());
    std::vector<Vec> pts;
    for (double a : ang) {
      const double r = scale * rng.uniform(0.55, 1.25);
      Vec p(2);
      p << r * std::cos(a), r * std::sin(a);
      pts.push_back(p);
    }
    std::vector<Vec> hull = convex_hull_2d(pts);
    if (hull.size() < 3) continue;
    Vec c = Vec::Zero(2);
    for (const Vec& p : hull) c += p;
    c /= static_cast<double>(hull.size());
    for (Vec& p : hull) p -= c;
    try {
      return make_polygon(hull);
    } catch (const std::exception&) {
      continue;
    }
  }
  throw precondition_error("random_polygon: failed to generate");
}

}  // namespace hozon
