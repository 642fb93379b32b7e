#include "talbot/priors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "talbot/errors.hpp"

namespace talbot {

GridDensity mdip_prior(const LikelihoodSet& lik)
{
    return normalized_density(lik.grid(), lik.entropy_exponent());
}

ExclusionBoundary read_boundary_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open boundary file: " + path);

    auto strip = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };

    std::string line;
    if (!std::getline(in, line) ||
        strip(line) != "r_c_m,lambda_c_max_per_s")
        throw ConfigError("boundary file must start with header "
                          "r_c_m,lambda_c_max_per_s: " + path);

    std::vector<std::pair<double, double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty())
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double rc = 0.0, lam = 0.0;
        std::string extra;
        if (!(row >> rc >> lam) || (row >> extra))
            throw ConfigError("boundary file: malformed row " +
                              std::to_string(lineno) + " in " + path);
        if (!(rc > 0.0) || !(lam > 0.0))
            throw ConfigError("boundary file: values must be positive, row " +
                              std::to_string(lineno) + " in " + path);
        rows.emplace_back(rc, lam);
    }
    if (rows.empty())
        throw ConfigError("boundary file has no data rows: " + path);

    std::sort(rows.begin(), rows.end());
    ExclusionBoundary b;
    for (const auto& [rc, lam] : rows) {
        if (!b.rc.empty() && rc == b.rc.back())
            throw ConfigError("boundary file: duplicate r_c " +
                              std::to_string(rc) + " in " + path);
        b.rc.push_back(rc);
        b.lambda_max.push_back(lam);
    }
    return b;
}

double boundary_lambda_max(const ExclusionBoundary& b, double rc)
{
    if (b.rc.empty())
        throw ConfigError("empty exclusion boundary");
    if (rc <= b.rc.front())
        return b.lambda_max.front();
    if (rc >= b.rc.back())
        return b.lambda_max.back();
    const auto it = std::upper_bound(b.rc.begin(), b.rc.end(), rc);
    const auto i = static_cast<std::size_t>(it - b.rc.begin()) - 1;
    const double t = std::log(rc / b.rc[i]) / std::log(b.rc[i + 1] / b.rc[i]);
    return b.lambda_max[i] *
           std::exp(t * std::log(b.lambda_max[i + 1] / b.lambda_max[i]));
}

GridDensity experimental_prior(const ThetaGrid& grid,
                               const ExclusionBoundary& boundary)
{
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> logv(grid.size(), neg_inf);
    bool any = false;
    for (int ir = 0; ir < grid.rc.size(); ++ir) {
        const double cap = boundary_lambda_max(boundary, grid.rc.value[ir]);
        for (int il = 0; il < grid.lambda.size(); ++il) {
            if (grid.lambda.value[il] < cap) {
                logv[grid.index(il, ir)] = 0.0;
                any = true;
            }
        }
    }
    if (!any)
        throw ConfigError("experimental prior: boundary excludes the whole grid");
    return normalized_density(grid, std::move(logv));
}

} // namespace talbot
