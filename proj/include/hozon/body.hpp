#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hozon/common.hpp"
#include "hozon/rng.hpp"

namespace hozon {

// Facet of a polytope: outer unit normal, offset (<normal,x> <= offset on the
// body) and its (d-1)-dimensional measure.
struct Facet {
  Vec normal;
  double offset = 0.0;
  double area = 0.0;
};

inline constexpr double kDetTol = 1e-12;

// Immutable convex-body oracle. All evaluations are pure; implementations are
// exact for the built-in constructors.
class Body {
 public:
  virtual ~Body() = default;

  virtual int dim() const = 0;
  virtual double support(const Vec& u) const = 0;
  virtual bool contains(const Vec& x) const = 0;
  virtual Vec witness() const = 0;
  virtual double inner_radius() const = 0;   // ball about witness inside body
  virtual double outer_radius() const = 0;   // body inside ball about origin

  virtual std::optional<double> exact_volume() const { return std::nullopt; }

  // sup{r >= 0 : x + r d in body} for x inside the body; nullopt when only the
  // generic membership bisection applies.
  virtual std::optional<double> ray_exit(const Vec& x, const Vec& d) const {
    (void)x;
    (void)d;
    return std::nullopt;
  }

  // Draws a uniform point without rejection; false when unavailable.
  virtual bool sample_direct(Rng& rng, Vec& out) const {
    (void)rng;
    (void)out;
    return false;
  }

  virtual const std::vector<Facet>* facets() const { return nullptr; }
  virtual const std::vector<Vec>* vertex_list() const { return nullptr; }

  // Closed-form payloads for kind-specific dispatch.
  virtual std::optional<std::pair<Vec, Mat>> ellipsoid_data() const {
    return std::nullopt;  // (center, shape)
  }
  virtual std::optional<std::pair<Vec, Vec>> axis_box_data() const {
    return std::nullopt;  // (lo, hi)
  }

  // Tight axis-aligned bounding box recovered from the support oracle.
  void bounding_box(Vec& lo, Vec& hi) const;
};

using BodyPtr = std::shared_ptr<const Body>;

BodyPtr make_box(const Vec& lo, const Vec& hi);
BodyPtr make_cube(int d, double lo = -1.0, double hi = 1.0);
BodyPtr make_ball(int d, double radius = 1.0, const Vec& center = Vec());
BodyPtr make_ellipsoid(const Vec& center, const Mat& shape);
// Simplex from d+1 affinely independent vertices; default is conv{0, e_1..e_d}.
BodyPtr make_simplex(const std::vector<Vec>& vertices);
BodyPtr make_standard_simplex(int d);
// Full-dimensional polytope from vertices plus exact facet data.
BodyPtr make_polytope(const std::vector<Vec>& vertices, std::vector<Facet> facets);
// Convex polygon in R^2 from points in arbitrary order (hull is taken).
BodyPtr make_polygon(const std::vector<Vec>& points);

// A.body + t with exact support/membership pullbacks; polytopes, simplices and
// ellipsoids map to their own kind so closed forms survive the transform.
BodyPtr affine_image(const BodyPtr& body, const Mat& a, const Vec& t);

// --- bodies-core operations -------------------------------------------------

double support_eval(const Body& body, const Vec& u);
bool membership(const Body& body, const Vec& x);

// rho_body(u) for a body with the origin interior. Uses the closed-form ray
// exit when the body provides one, otherwise membership bisection to
// tol_radial = 1e-9 * outer_radius.
double radial_eval(const Body& body, const Vec& u);

// rho of the polar body: 1 / h_body(u); requires h > 0.
double polar_radial(const Body& body, const Vec& u);

// Generic membership-bisection ray exit (exposed for tests and for bodies
// without a closed form). x must satisfy contains(x).
double ray_exit_bisect(const Body& body, const Vec& x, const Vec& d);

// Seeded generator of a random convex polygon with k vertices, used by the
// verification suites.
BodyPtr random_polygon(Rng& rng, int k, double scale = 1.0);

// 2-D convex hull (Andrew monotone chain), counter-clockwise.
std::vector<Vec> convex_hull_2d(std::vector<Vec> points);

}  // namespace hozon
