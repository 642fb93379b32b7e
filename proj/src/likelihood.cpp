#include "talbot/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "talbot/errors.hpp"
#include "talbot/parallel.hpp"

namespace talbot {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();
} // namespace

double LikelihoodTable::pdf(double xi) const
{
    if (xi < x.front() || xi > x.back())
        return 0.0;
    const auto n = x.size();
    auto i = static_cast<std::size_t>((xi - x.front()) / dx);
    i = std::min(i, n - 2);
    const double t = (xi - x[i]) / dx;
    return p[i] + t * (p[i + 1] - p[i]);
}

double LikelihoodTable::log_pdf(double xi) const
{
    if (xi < x.front() || xi > x.back())
        return neg_inf;
    const auto n = x.size();
    auto i = static_cast<std::size_t>((xi - x.front()) / dx);
    i = std::min(i, n - 2);
    if (ln_p[i] == neg_inf || ln_p[i + 1] == neg_inf)
        return neg_inf;
    const double t = (xi - x[i]) / dx;
    return ln_p[i] + t * (ln_p[i + 1] - ln_p[i]);
}

double LikelihoodTable::quantile(double u) const
{
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.begin())
        return x.front();
    if (it == cdf.end())
        return x.back();
    const auto i = static_cast<std::size_t>(it - cdf.begin()) - 1;
    const double run = cdf[i + 1] - cdf[i];
    const double t = run > 0.0 ? (u - cdf[i]) / run : 0.0;
    return x[i] + t * dx;
}

double LikelihoodTable::cdf_at(double xi) const
{
    if (xi <= x.front())
        return 0.0;
    if (xi >= x.back())
        return 1.0;
    const auto n = x.size();
    auto i = static_cast<std::size_t>((xi - x.front()) / dx);
    i = std::min(i, n - 2);
    const double t = (xi - x[i]) / dx;
    return cdf[i] + t * (cdf[i + 1] - cdf[i]);
}

LikelihoodTable make_table(std::vector<double> x, std::vector<double> p)
{
    if (x.size() < 2 || x.size() != p.size())
        throw ConfigError("likelihood table needs matching x/p grids");

    LikelihoodTable t;
    t.dx = x[1] - x[0];
    t.x = std::move(x);

    // A fringe sum truncated at n_max may dip a hair below zero between
    // samples; dips within the density diagnostic tolerance are clamped.
    const double peak = *std::max_element(p.begin(), p.end());
    if (!(peak > 0.0) || !std::isfinite(peak))
        throw ConfigError("likelihood density vanishes on the whole window");
    for (double& v : p)
        v = std::max(v, 0.0);

    t.cdf.resize(p.size());
    t.cdf[0] = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i)
        t.cdf[i] = t.cdf[i - 1] + 0.5 * t.dx * (p[i - 1] + p[i]);
    const double norm = t.cdf.back();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw ConfigError("likelihood density vanishes on the whole window");

    t.p = std::move(p);
    t.ln_p.resize(t.p.size());
    for (std::size_t i = 0; i < t.p.size(); ++i) {
        t.p[i] /= norm;
        t.cdf[i] /= norm;
        t.ln_p[i] = t.p[i] > 0.0 ? std::log(t.p[i]) : neg_inf;
    }
    t.cdf.back() = 1.0;
    return t;
}

LikelihoodContext make_likelihood_context(const ExperimentConfig& cfg)
{
    LikelihoodContext ctx;
    ctx.cfg = cfg;
    ctx.geo = derive_geometry(cfg);
    ctx.spectrum = fringe_amplitudes(cfg, ctx.geo);

    std::vector<DecoherenceChannel> env;
    env.push_back(blackbody_channel(ChannelKind::blackbody_absorption, cfg));
    env.push_back(blackbody_channel(ChannelKind::blackbody_emission, cfg));
    env.push_back(blackbody_channel(ChannelKind::blackbody_scattering, cfg));
    env.push_back(collision_channel(cfg));
    env.push_back(measurement_channel(cfg, ctx.geo));
    ctx.R_oth = combine(env, cfg.n_max, ctx.geo).R_total;

    ctx.xs.resize(cfg.window_samples);
    for (int i = 0; i < cfg.window_samples; ++i)
        ctx.xs[i] = -cfg.window_half_width +
                    2.0 * cfg.window_half_width * i / (cfg.window_samples - 1);
    return ctx;
}

namespace {

LikelihoodTable table_from_modulation(const LikelihoodContext& ctx,
                                      std::span<const double> R_mod)
{
    auto dens = pattern_density(ctx.xs, ctx.spectrum, R_mod, ctx.R_oth, ctx.geo);
    return make_table(ctx.xs, std::move(dens));
}

} // namespace

LikelihoodTable likelihood(const CslParams& theta, const LikelihoodContext& ctx)
{
    std::vector<double> R_mod(ctx.cfg.n_max + 1, 1.0);
    if (theta.lambda_c != 0.0) {
        const auto channel = csl_channel(theta, ctx.cfg.particle);
        for (int n = 1; n <= ctx.cfg.n_max; ++n)
            R_mod[n] = channel.reduction(n, ctx.geo);
    }
    return table_from_modulation(ctx, R_mod);
}

std::vector<double> sample_positions(const LikelihoodTable& table, long n,
                                     RngStream& stream)
{
    if (n < 0)
        throw ConfigError("sample count must be non-negative");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& v : xs)
        v = table.quantile(stream.uniform());
    return xs;
}

LikelihoodSet::LikelihoodSet(ThetaGrid grid, const LikelihoodContext& ctx)
    : grid_(std::move(grid)), ctx_(&ctx)
{
    columns_.reserve(grid_.rc.value.size());
    for (const double rc : grid_.rc.value)
        columns_.emplace_back(rc, ctx.cfg.particle, ctx.geo, ctx.cfg.n_max);
}

std::vector<double> LikelihoodSet::density_values(int il, int ir) const
{
    const double lambda = grid_.lambda.value[il];
    const auto& col = columns_[ir];
    std::vector<double> R_mod(ctx_->cfg.n_max + 1, 1.0);
    for (int n = 1; n <= ctx_->cfg.n_max; ++n)
        R_mod[n] = std::exp(col.log_reduction(lambda, n));
    return pattern_density(ctx_->xs, ctx_->spectrum, R_mod, ctx_->R_oth,
                           ctx_->geo);
}

LikelihoodTable LikelihoodSet::table(int il, int ir) const
{
    return make_table(ctx_->xs, density_values(il, ir));
}

std::vector<double> LikelihoodSet::log_likelihood(std::span<const double> xs) const
{
    const int n_rc = grid_.rc.size();
    std::vector<double> out(grid_.size(), 0.0);
    if (xs.empty())
        return out;
    parallel_for(grid_.size(), [&](std::size_t j) {
        const auto t = table(static_cast<int>(j) / n_rc,
                             static_cast<int>(j) % n_rc);
        double acc = 0.0;
        for (const double xi : xs)
            acc += t.log_pdf(xi);
        out[j] = acc;
    });
    return out;
}

std::vector<double> LikelihoodSet::entropy_exponent() const
{
    const int n_rc = grid_.rc.size();
    std::vector<double> out(grid_.size(), 0.0);
    parallel_for(grid_.size(), [&](std::size_t j) {
        const auto t = table(static_cast<int>(j) / n_rc,
                             static_cast<int>(j) % n_rc);
        double acc = 0.0;
        for (std::size_t i = 0; i < t.p.size(); ++i) {
            if (t.p[i] <= 0.0)
                continue;
            const double w =
                (i == 0 || i + 1 == t.p.size()) ? 0.5 * t.dx : t.dx;
            acc += w * t.p[i] * std::log(t.p[i]);
        }
        out[j] = acc;
    });
    return out;
}

TableLikelihood::TableLikelihood(ThetaGrid grid,
                                 std::vector<LikelihoodTable> tables)
    : grid_(std::move(grid)), tables_(std::move(tables))
{
    if (tables_.size() != grid_.size())
        throw ConfigError("one likelihood table per grid node required");
}

LikelihoodTable TableLikelihood::table(int il, int ir) const
{
    return tables_[grid_.index(il, ir)];
}

std::vector<double> TableLikelihood::log_likelihood(std::span<const double> xs) const
{
    std::vector<double> out(grid_.size(), 0.0);
    for (std::size_t j = 0; j < tables_.size(); ++j) {
        double acc = 0.0;
        for (const double xi : xs)
            acc += tables_[j].log_pdf(xi);
        out[j] = acc;
    }
    return out;
}

} // namespace talbot
