#pragma once

#include "hozon/zonoid.hpp"

namespace hozon {

// Chord of K along direction u through y' in u-perp, in the convention
// K ∩ (y' + R u) = {y' + t u : -under <= t <= over}.
struct ChordInfo {
  Vec direction;
  Vec base;
  double over = 0.0;
  double under = 0.0;
  bool empty = true;
  double midpoint() const { return 0.5 * (over - under); }
  double length() const { return over + under; }
};

ChordInfo chord_bounds(const Body& body, const Vec& u, const Vec& y_prime);

// Convex polygon in R^2 (counter-clockwise vertices). The Steiner symmetral
// of a polygon is again a polygon, computed exactly from projected vertices.
struct Polygon2 {
  std::vector<Vec> verts;
  double area() const;
  double support(const Vec& w) const;
};

// Exact for 2-D polytope bodies; radial polygonalization about the witness
// otherwise (inner approximation on n_angles rays).
Polygon2 polygonalize(const Body& body, int n_angles = 2048);

Polygon2 polygon_symmetral(const Polygon2& poly, const Vec& u);

// Chord [t_lo, t_hi] of the polygon along u at abscissa s on u-perp; empty
// chords return false.
bool polygon_chord(const Polygon2& poly, const Vec& u, double s, double* t_lo,
                   double* t_hi);

// Resamples the boundary on max_verts rays when the vertex count exceeds it.
Polygon2 decimate(const Polygon2& poly, std::size_t max_verts);

BodyPtr polygon_body(const Polygon2& poly);

// Outer polytopal approximation from a support table (n = 2).
Polygon2 polygon_from_support_table(const SupportTable& table);

// Steiner symmetral as a Body: exact polygon route in n = 2, generic
// chord-midpoint membership oracle otherwise.
BodyPtr symmetral(const BodyPtr& body, const Vec& u);

struct SteinerRound {
  int round = 0;
  Vec direction;
  Estimate vol;
  double sup_distance = 0.0;
};

// Iterated symmetrization along seeded uniform directions; reports the
// grid-sup distance of the support function to the volume-equivalent centered
// ball each round. n = 2 only.
std::vector<SteinerRound> symmetrize_to_ball(const BodyPtr& body, int rounds,
                                             const std::vector<Vec>& grid,
                                             const RngPlan& plan,
                                             long long volume_samples = 200000,
                                             std::vector<BodyPtr>* bodies_out = nullptr);

struct SteinerInclusionResult {
  double max_graph_excess = -HUGE_VAL;  // inner graph minus outer graph
  double graph_band = 0.0;
  double max_lemma_violation = -HUGE_VAL;  // chord-midpoint support inequality
  double lemma_band = 0.0;
};

// Z^m_p(S_u K, Q) ⊆ S_u Z^m_p(K, Q), checked through over/undergraphs of the
// outer polytopal approximations at seeded relint samples, plus the
// chord-midpoint support inequality on sampled pairs. Tables for both sides
// can be supplied to avoid recomputation across rounds.
SteinerInclusionResult symmetral_inclusion_check(
    const MeanZonoid& z_base, const SupportTable& table_base,
    const MeanZonoid& z_symm, const SupportTable& table_symm, const Vec& u,
    const RngPlan& plan, double rel_tol, int n_graph_samples = 33,
    int n_lemma_pairs = 4);

}  // namespace hozon
