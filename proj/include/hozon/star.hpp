#pragma once

#include <functional>

#include "hozon/estimate.hpp"
#include "hozon/measure.hpp"
#include "hozon/rng.hpp"

namespace hozon {

// Star body in M[n,m] ~= R^d given by a radial oracle on S^{d-1}.
struct StarOracle {
  int d = 0;
  std::function<double(const Vec&)> rho;
};

// Polar-coordinates volume (S_{d-1}/d) * E_u[rho(u)^d] over uniform sphere
// directions.
Estimate star_volume_mc(const StarOracle& star, const RngPlan& plan,
                        long long n_dirs, uint64_t context);

// Cached radial values on a fixed grid (CSV-exportable).
struct StarGrid {
  std::vector<Vec> dirs;
  std::vector<double> rho;
};

StarGrid star_grid(const StarOracle& star, const std::vector<Vec>& dirs);

}  // namespace hozon
