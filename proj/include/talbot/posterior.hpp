#pragma once

#include <span>

#include "talbot/geometry.hpp"
#include "talbot/likelihood.hpp"
#include "talbot/particle.hpp"
#include "talbot/theta_grid.hpp"

namespace talbot {

/// Grid posterior from i.i.d. arrival positions: log-posterior is
/// sum_k ln p(x_k|theta) + ln prior(theta), renormalised on the grid.
/// An empty sample returns the prior unchanged.
GridDensity posterior(std::span<const double> xs, const GridDensity& prior,
                      const LikelihoodSource& lik);

/// ln p(x) = ln sum_j prior-mass_j * prod_k p(x_k|theta_j), by weighted
/// log-sum-exp over the grid.
double log_evidence(std::span<const double> xs, const GridDensity& prior,
                    const LikelihoodSource& lik);

/// Information carried by a posterior relative to its prior: the
/// Kullback-Leibler divergence in bits. Zero-mass posterior nodes contribute
/// nothing; a zero-mass prior node under positive posterior mass is an
/// infinite divergence and raises NumericalError.
double info_gain(const GridDensity& posterior, const GridDensity& prior);

/// Constant-decoherence-strength exclusion boundary: the locus
/// lambda_c(Lambda, r_c) below which the requested fraction of posterior
/// mass lies. Lambda is an opaque positive strength scalar.
struct ExclusionCurve {
    double Lambda = 0.0;
    double confidence = 0.95;
    double achieved_mass = 0.0;
    std::vector<double> rc;        // m, the posterior grid's r_c nodes
    std::vector<double> lambda_c;  // 1/s, curve values at those nodes
};

/// Posterior mass strictly below the per-column cut lambda_cut[ir], with the
/// straddled lambda-cell counted by its linear fractional overlap, so the
/// mass is continuous and non-decreasing in the cut. Exposed for tests.
double below_curve_mass(const GridDensity& posterior,
                        std::span<const double> lambda_cut);

/// Find Lambda such that the mass below lambda_c(Lambda, r_c) equals the
/// confidence within +-tolerance: geometric bracketing, then bisection in
/// ln Lambda. The curve follows the first-order visibility comparison with
/// the collapse channel, evaluated at the n = 1 superposition separation.
ExclusionCurve exclusion_line(const GridDensity& posterior, double confidence,
                              const DerivedGeometry& geo,
                              const Particle& particle,
                              double tolerance = 0.005);

/// The 95%-curve value at a given r_c, by log-log interpolation between the
/// bracketing curve nodes. Throws ConfigError outside the curve's range.
double lambda_at_rc(const ExclusionCurve& curve, double rc);

} // namespace talbot
