#pragma once

#include <optional>

#include "hozon/common.hpp"

namespace hozon {

// Dense low-dimensional linear program: minimize c.x subject to a.x <= b
// row-wise inside the box [lo, hi]. Dimension is capped at 5 (enough for the
// (y, t) feasibility programs in n <= 3 with one extra ray variable).
struct LinearProgram {
  Mat a;
  Vec b;
  Vec c;
  Vec lo, hi;
};

// Seidel-type randomized incremental solve; the constraint shuffle is seeded,
// so identical inputs give identical outputs. Returns nullopt when infeasible.
std::optional<Vec> lp_solve(const LinearProgram& lp, uint64_t shuffle_seed = 0);

// Vertices of the intersection of halfplanes a.x <= b with the box [-bound,
// bound]^2, via successive polygon clipping. Used as the exact n = 2 oracle
// for the LP path.
std::vector<Vec> halfplane_intersection_2d(const Mat& a, const Vec& b, double bound);

}  // namespace hozon
