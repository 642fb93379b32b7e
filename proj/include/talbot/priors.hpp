#pragma once

#include <string>
#include <vector>

#include "talbot/likelihood.hpp"
#include "talbot/theta_grid.hpp"

namespace talbot {

/// Maximal-data-information prior: density proportional to
/// exp[int p(x|theta) ln p(x|theta) dx], normalised on the grid. Flat when
/// the likelihood does not depend on theta; favours low-entropy
/// (high-visibility) parameter points otherwise.
GridDensity mdip_prior(const LikelihoodSet& lik);

/// Empirical upper-bound boundary lambda_c^max(r_c), sorted by r_c.
struct ExclusionBoundary {
    std::vector<double> rc;          // m
    std::vector<double> lambda_max;  // 1/s
};

/// Reads a CSV with header `r_c_m,lambda_c_max_per_s`.
ExclusionBoundary read_boundary_csv(const std::string& path);

/// Boundary value at rc: log-log linear interpolation between rows, flat
/// continuation beyond the first/last row.
double boundary_lambda_max(const ExclusionBoundary& b, double rc);

/// Uniform prior on the not-yet-excluded region lambda_c < lambda_c^max(r_c).
/// Throws ConfigError when no grid node is allowed.
GridDensity experimental_prior(const ThetaGrid& grid,
                               const ExclusionBoundary& boundary);

} // namespace talbot
