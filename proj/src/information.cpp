#include "talbot/information.hpp"

#include <cmath>
#include <numbers>

#include "talbot/errors.hpp"
#include "talbot/rng.hpp"

namespace talbot {

namespace {

/// Grid-weighted categorical draw in fixed node order.
std::size_t draw_node(const GridDensity& prior, double u)
{
    const auto& grid = prior.grid;
    const std::size_t n = grid.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const int il = static_cast<int>(j) / grid.rc.size();
        const int ir = static_cast<int>(j) % grid.rc.size();
        acc += prior.mass(il, ir);
        if (u < acc)
            return j;
    }
    return n - 1;
}

} // namespace

InfoResult expected_information(const GridDensity& prior,
                                const LikelihoodSource& lik,
                                const LikelihoodTable& null_model, long N,
                                long M, std::uint64_t seed, InfoMode mode)
{
    if (M < 2)
        throw ConfigError("expected information needs at least 2 realisations");
    if (N < 0)
        throw ConfigError("sample count must be non-negative");
    if (prior.log_density.size() != lik.grid().size())
        throw ConfigError("prior does not match the likelihood grid");

    const auto& grid = lik.grid();
    double sum = 0.0;
    double sum_sq = 0.0;

    for (long i = 0; i < M; ++i) {
        RngStream stream(seed, "information", static_cast<std::uint64_t>(i));
        double h = 0.0;
        if (mode == InfoMode::conditioned_on_null) {
            const auto xs = sample_positions(null_model, N, stream);
            h = info_gain(posterior(xs, prior, lik), prior);
        } else {
            const std::size_t j = draw_node(prior, stream.uniform());
            const auto t = lik.table(static_cast<int>(j) / grid.rc.size(),
                                     static_cast<int>(j) % grid.rc.size());
            const auto xs = sample_positions(t, N, stream);
            double log_lik = 0.0;
            for (const double xi : xs)
                log_lik += t.log_pdf(xi);
            h = xs.empty()
                    ? 0.0
                    : (log_lik - log_evidence(xs, prior, lik)) /
                          std::numbers::ln2;
        }
        if (std::isnan(h))
            throw NumericalError("NaN information realisation");
        sum += h;
        sum_sq += h * h;
    }

    InfoResult r;
    r.N = N;
    r.M = M;
    r.mode = mode;
    r.H = sum / M;
    r.delta = std::sqrt(std::max(0.0, sum_sq / M - r.H * r.H) / M);
    return r;
}

} // namespace talbot
