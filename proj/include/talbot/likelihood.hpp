#pragma once

#include <span>
#include <vector>

#include "talbot/config.hpp"
#include "talbot/decoherence.hpp"
#include "talbot/geometry.hpp"
#include "talbot/pattern.hpp"
#include "talbot/rng.hpp"
#include "talbot/theta_grid.hpp"

namespace talbot {

/// Arrival-position distribution on the detection window: density values on
/// a uniform x-grid, trapezoid-normalised to unit integral, with the
/// cumulative distribution used by the inverse-CDF sampler.
struct LikelihoodTable {
    std::vector<double> x;     // m, uniform grid
    std::vector<double> p;     // 1/m, >= 0, trapezoid integral = 1
    std::vector<double> ln_p;  // ln p, -inf where p = 0
    std::vector<double> cdf;   // cdf.front() = 0, cdf.back() = 1, monotone
    double dx = 0.0;           // m

    /// Linearly interpolated density; 0 outside the window.
    double pdf(double xi) const;
    /// Interpolated ln p; -inf outside the window.
    double log_pdf(double xi) const;
    /// Inverse CDF with linear interpolation, u in [0, 1).
    double quantile(double u) const;
    /// Interpolated CDF value at xi (0 left of the window, 1 right of it).
    double cdf_at(double xi) const;
};

/// Build a table from raw density samples on a uniform grid (clamps dips
/// within the negativity tolerance to zero, normalises, fills the CDF).
LikelihoodTable make_table(std::vector<double> x, std::vector<double> p);

/// The collapse-parameter-independent pieces of the likelihood, assembled
/// once per experiment configuration: geometry, fringe spectrum, the
/// environmental reduction factors (blackbody, collisions, detector blur),
/// and the window sample positions.
struct LikelihoodContext {
    ExperimentConfig cfg;
    DerivedGeometry geo;
    TalbotSpectrum spectrum;
    std::vector<double> R_oth;  // index 0..n_max, R_oth[0] = 1
    std::vector<double> xs;     // window grid, cfg.window_samples points
};

LikelihoodContext make_likelihood_context(const ExperimentConfig& cfg);

/// Arrival density for one collapse-parameter point.
LikelihoodTable likelihood(const CslParams& theta, const LikelihoodContext& ctx);

/// n i.i.d. draws by inverse-CDF sampling; deterministic given the stream.
std::vector<double> sample_positions(const LikelihoodTable& table, long n,
                                     RngStream& stream);

/// Anything that can supply per-node likelihoods over a ThetaGrid. The
/// physics-backed implementation is LikelihoodSet; TableLikelihood wraps
/// explicit tables for toy models and estimator cross-checks.
class LikelihoodSource {
public:
    virtual ~LikelihoodSource() = default;
    virtual const ThetaGrid& grid() const = 0;
    virtual LikelihoodTable table(int il, int ir) const = 0;
    /// sum_k ln p(x_k | theta_j) for every node j, in grid index order.
    virtual std::vector<double> log_likelihood(std::span<const double> xs) const = 0;
};

/// Grid-wide likelihood machinery. The collapse channel is cached per r_c
/// column (rate and per-order resolution deficits are lambda-independent),
/// so a full node table costs one fringe-pattern evaluation. Node loops run
/// through the parallel kernel; per-node work is independent and summation
/// orders are fixed, so results do not depend on the execution mode.
class LikelihoodSet : public LikelihoodSource {
public:
    LikelihoodSet(ThetaGrid grid, const LikelihoodContext& ctx);  // ctx must outlive

    const ThetaGrid& grid() const override { return grid_; }
    const LikelihoodContext& context() const { return *ctx_; }

    LikelihoodTable table(int il, int ir) const override;
    std::vector<double> log_likelihood(std::span<const double> xs) const override;

    /// The differential-entropy exponent int p ln p dx per node (trapezoid
    /// on the window grid), feeding the maximal-data-information prior.
    std::vector<double> entropy_exponent() const;

private:
    ThetaGrid grid_;
    const LikelihoodContext* ctx_;
    std::vector<CslColumn> columns_;  // one per r_c node

    std::vector<double> density_values(int il, int ir) const;
};

/// Explicit per-node tables (toy models, cross-checks).
class TableLikelihood : public LikelihoodSource {
public:
    TableLikelihood(ThetaGrid grid, std::vector<LikelihoodTable> tables);

    const ThetaGrid& grid() const override { return grid_; }
    LikelihoodTable table(int il, int ir) const override;
    std::vector<double> log_likelihood(std::span<const double> xs) const override;

private:
    ThetaGrid grid_;
    std::vector<LikelihoodTable> tables_;
};

} // namespace talbot
