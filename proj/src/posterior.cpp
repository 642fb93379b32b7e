#include "talbot/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "talbot/errors.hpp"

namespace talbot {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void check_same_grid(const GridDensity& a, const GridDensity& b)
{
    if (a.grid.lambda.value != b.grid.lambda.value ||
        a.grid.rc.value != b.grid.rc.value)
        throw ConfigError("grid densities live on different grids");
}
} // namespace

GridDensity posterior(std::span<const double> xs, const GridDensity& prior,
                      const LikelihoodSource& lik)
{
    if (prior.log_density.size() != lik.grid().size())
        throw ConfigError("prior does not match the likelihood grid");
    if (xs.empty())
        return prior;

    auto logv = lik.log_likelihood(xs);
    for (std::size_t j = 0; j < logv.size(); ++j) {
        if (std::isnan(logv[j]))
            throw NumericalError("NaN log-likelihood at a grid node");
        logv[j] += prior.log_density[j];
    }
    return normalized_density(prior.grid, std::move(logv));
}

double log_evidence(std::span<const double> xs, const GridDensity& prior,
                    const LikelihoodSource& lik)
{
    if (prior.log_density.size() != lik.grid().size())
        throw ConfigError("prior does not match the likelihood grid");

    const auto& grid = prior.grid;
    const int n_rc = grid.rc.size();
    auto logv = lik.log_likelihood(xs);
    double top = neg_inf;
    for (std::size_t j = 0; j < logv.size(); ++j) {
        if (std::isnan(logv[j]))
            throw NumericalError("NaN log-likelihood at a grid node");
        const int il = static_cast<int>(j) / n_rc;
        const int ir = static_cast<int>(j) % n_rc;
        logv[j] += prior.log_density[j] + std::log(grid.weight(il, ir));
        top = std::max(top, logv[j]);
    }
    if (top == neg_inf)
        throw NumericalError("evidence underflows to zero everywhere");
    double acc = 0.0;
    for (const double v : logv)
        acc += std::exp(v - top);
    return top + std::log(acc);
}

double info_gain(const GridDensity& post, const GridDensity& prior)
{
    check_same_grid(post, prior);
    const auto& grid = post.grid;
    double h = 0.0;
    for (int il = 0; il < grid.lambda.size(); ++il) {
        for (int ir = 0; ir < grid.rc.size(); ++ir) {
            const double mp = post.mass(il, ir);
            if (mp == 0.0)
                continue;
            const std::size_t j = grid.index(il, ir);
            if (prior.density[j] == 0.0)
                throw NumericalError(
                    "infinite divergence: posterior mass where the prior "
                    "vanishes");
            h += mp * (post.log_density[j] - prior.log_density[j]);
        }
    }
    h /= std::numbers::ln2;
    if (std::isnan(h))
        throw NumericalError("NaN information gain");
    // Gibbs' inequality guarantees h >= 0; allow rounding slack only.
    if (h < 0.0) {
        if (h < -1e-9)
            throw ConsistencyError("information gain negative beyond rounding");
        h = 0.0;
    }
    return h;
}

double below_curve_mass(const GridDensity& post,
                        std::span<const double> lambda_cut)
{
    const auto& grid = post.grid;
    if (lambda_cut.size() != static_cast<std::size_t>(grid.rc.size()))
        throw ConfigError("one lambda cut per r_c column required");

    double mass = 0.0;
    for (int ir = 0; ir < grid.rc.size(); ++ir) {
        const double cut = lambda_cut[ir];
        for (int il = 0; il < grid.lambda.size(); ++il) {
            const double lo = grid.lambda.edge[il];
            const double hi = grid.lambda.edge[il + 1];
            if (cut <= lo)
                break;  // edges increase with il
            const double covered = std::min(cut, hi) - lo;
            mass += post.density[grid.index(il, ir)] * grid.rc.weight[ir] *
                    covered;
        }
    }
    return mass;
}

ExclusionCurve exclusion_line(const GridDensity& post, double confidence,
                              const DerivedGeometry& geo,
                              const Particle& particle, double tolerance)
{
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw ConfigError("confidence must lie in (0, 1)");
    if (!(tolerance > 0.0))
        throw ConfigError("mass tolerance must be positive");

    const auto& grid = post.grid;
    const int n_rc = grid.rc.size();

    // lambda_c(Lambda, r_c) = Lambda (kappa d)^2 / (3 Gamma_1(r_c)
    // (1 - f(x_1, r_c))): the collapse rate at unit lambda_c and the
    // first-order resolution deficit, both lambda-independent per column.
    const double kd2 = (geo.kappa * geo.d) * (geo.kappa * geo.d);
    std::vector<double> slope(n_rc);  // lambda_c per unit Lambda
    for (int ir = 0; ir < n_rc; ++ir) {
        const CslColumn col(grid.rc.value[ir], particle, geo, 1);
        const double denom = 3.0 * col.rate_at_unit_lambda() * col.one_minus_f(1);
        if (!(denom > 0.0))
            throw NumericalError("degenerate collapse column in the "
                                 "exclusion curve");
        slope[ir] = kd2 / denom;
    }

    std::vector<double> cut(n_rc);
    const auto mass_at = [&](double Lambda) {
        for (int ir = 0; ir < n_rc; ++ir)
            cut[ir] = Lambda * slope[ir];
        return below_curve_mass(post, cut);
    };

    // Start where the curve crosses the middle of the grid, then bracket by
    // geometric scaling (mass is continuous and non-decreasing in Lambda).
    const double lambda_mid = std::sqrt(grid.lambda.value.front() *
                                        grid.lambda.value.back());
    double lo = lambda_mid / slope[n_rc / 2];
    double hi = lo;
    double mass_lo = mass_at(lo);
    double mass_hi = mass_lo;
    for (int i = 0; mass_lo > confidence && i < 600; ++i)
        mass_lo = mass_at(lo /= 10.0);
    for (int i = 0; mass_hi < confidence && i < 600; ++i)
        mass_hi = mass_at(hi *= 10.0);
    if (mass_lo > confidence || mass_hi < confidence)
        throw NumericalError(
            "exclusion bracketing failed: below-curve mass spans [" +
            std::to_string(mass_lo) + ", " + std::to_string(mass_hi) +
            "] and never straddles the confidence target");

    double Lambda = std::sqrt(lo * hi);
    double mass = mass_at(Lambda);
    for (int i = 0; std::abs(mass - confidence) > tolerance && i < 200; ++i) {
        (mass < confidence ? lo : hi) = Lambda;
        Lambda = std::sqrt(lo * hi);
        mass = mass_at(Lambda);
    }
    if (std::abs(mass - confidence) > tolerance)
        throw NumericalError("exclusion bisection did not reach the target "
                             "mass; achieved " + std::to_string(mass));

    ExclusionCurve curve;
    curve.Lambda = Lambda;
    curve.confidence = confidence;
    curve.achieved_mass = mass;
    curve.rc = grid.rc.value;
    curve.lambda_c.resize(n_rc);
    for (int ir = 0; ir < n_rc; ++ir)
        curve.lambda_c[ir] = Lambda * slope[ir];
    return curve;
}

double lambda_at_rc(const ExclusionCurve& curve, double rc)
{
    if (curve.rc.empty())
        throw ConfigError("empty exclusion curve");
    if (rc < curve.rc.front() || rc > curve.rc.back())
        throw ConfigError("r_c outside the exclusion curve range");
    const auto it = std::lower_bound(curve.rc.begin(), curve.rc.end(), rc);
    const auto i = static_cast<std::size_t>(it - curve.rc.begin());
    if (curve.rc[i] == rc)
        return curve.lambda_c[i];
    const double t = std::log(rc / curve.rc[i - 1]) /
                     std::log(curve.rc[i] / curve.rc[i - 1]);
    return curve.lambda_c[i - 1] *
           std::exp(t * std::log(curve.lambda_c[i] / curve.lambda_c[i - 1]));
}

} // namespace talbot
