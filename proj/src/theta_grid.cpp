#include "talbot/theta_grid.hpp"

#include <algorithm>
#include <cmath>

#include "talbot/errors.hpp"

namespace talbot {

LogAxis log_axis(double lo, double hi, int n)
{
    if (!(lo > 0.0) || !(hi > lo))
        throw ConfigError("log axis needs 0 < lo < hi");
    if (n < 1)
        throw ConfigError("log axis needs at least one node");

    LogAxis ax;
    ax.value.resize(n);
    ax.edge.resize(n + 1);
    ax.weight.resize(n);

    if (n == 1) {
        ax.value[0] = std::sqrt(lo * hi);
    } else {
        const double step = std::log(hi / lo) / (n - 1);
        for (int i = 0; i < n; ++i)
            ax.value[i] = lo * std::exp(step * i);
        ax.value.front() = lo;
        ax.value.back() = hi;
    }
    ax.edge.front() = lo;
    ax.edge.back() = hi;
    for (int i = 1; i < n; ++i)
        ax.edge[i] = std::sqrt(ax.value[i - 1] * ax.value[i]);
    for (int i = 0; i < n; ++i)
        ax.weight[i] = ax.edge[i + 1] - ax.edge[i];
    return ax;
}

ThetaGrid make_theta_grid(double lambda_lo, double lambda_hi, int n_lambda,
                          double rc_lo, double rc_hi, int n_rc)
{
    ThetaGrid g;
    g.lambda = log_axis(lambda_lo, lambda_hi, n_lambda);
    g.rc = log_axis(rc_lo, rc_hi, n_rc);
    return g;
}

GridDensity normalized_density(const ThetaGrid& grid,
                               std::vector<double> log_values)
{
    if (log_values.size() != grid.size())
        throw ConfigError("density size does not match the grid");

    const std::size_t n = log_values.size();
    std::vector<double> log_mass(n);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isnan(log_values[j]))
            throw NumericalError("NaN grid density");
        const int il = static_cast<int>(j / grid.rc.value.size());
        const int ir = static_cast<int>(j % grid.rc.value.size());
        log_mass[j] = log_values[j] + std::log(grid.weight(il, ir));
        top = std::max(top, log_mass[j]);
    }
    if (!(top > -std::numeric_limits<double>::infinity()))
        throw ConfigError("grid density carries no mass anywhere");

    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        acc += std::exp(log_mass[j] - top);
    const double log_norm = top + std::log(acc);

    GridDensity out;
    out.grid = grid;
    out.log_density.resize(n);
    out.density.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.log_density[j] = log_values[j] - log_norm;
        out.density[j] = std::exp(out.log_density[j]);
    }
    return out;
}

GridDensity uniform_density(const ThetaGrid& grid)
{
    return normalized_density(grid, std::vector<double>(grid.size(), 0.0));
}

} // namespace talbot
