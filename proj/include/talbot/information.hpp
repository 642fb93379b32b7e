#pragma once

#include <cstdint>

#include "talbot/likelihood.hpp"
#include "talbot/posterior.hpp"
#include "talbot/theta_grid.hpp"

namespace talbot {

enum class InfoMode {
    /// theta drawn from the prior, data from p(x|theta); averages
    /// ln p(x|theta) - ln p(x) (the joint-integral estimator).
    prior_predictive,
    /// data drawn from the null model p(x|theta=0); averages the posterior
    /// information gain of each realisation.
    conditioned_on_null,
};

struct InfoResult {
    double H = 0.0;      // bits
    double delta = 0.0;  // bits, sqrt((<H^2>-<H>^2)/M)
    long N = 0;          // data points per realisation
    long M = 0;          // Monte-Carlo realisations
    InfoMode mode = InfoMode::conditioned_on_null;
};

/// Monte-Carlo expected information gain over M realisations of N arrival
/// positions. null_model is the data-generating distribution of the
/// conditioned mode (ignored in prior-predictive mode, where each
/// realisation draws its own theta from the prior). Realisation i always
/// consumes the RNG substream (seed, "information", i), so the result is
/// independent of scheduling; grid work inside each realisation runs
/// through the parallel kernel.
InfoResult expected_information(const GridDensity& prior,
                                const LikelihoodSource& lik,
                                const LikelihoodTable& null_model, long N,
                                long M, std::uint64_t seed, InfoMode mode);

} // namespace talbot
