#pragma once

#include <cstddef>
#include <vector>

#include "talbot/decoherence.hpp"

namespace talbot {

/// One log-spaced parameter axis with its linear-measure quadrature. Node i
/// sits at lo * ratio^i; cell edges are the geometric midpoints of adjacent
/// nodes (half-cells at the two ends), so the weights are exact cell widths:
/// they sum to hi - lo to machine precision, and sums against them are
/// integrals with respect to the LINEAR parameter, not its logarithm.
struct LogAxis {
    std::vector<double> value;
    std::vector<double> edge;    // value.size() + 1 entries, edge.front() = lo
    std::vector<double> weight;  // edge[i+1] - edge[i], m or 1/s

    int size() const { return static_cast<int>(value.size()); }
};

LogAxis log_axis(double lo, double hi, int n);

/// Rectangular inference grid over the collapse parameters (lambda_c, r_c).
/// Densities on the grid are with respect to the linear parameters;
/// sum(density * weight) approximates the linear-measure integral.
struct ThetaGrid {
    LogAxis lambda;  // collapse rate axis, 1/s
    LogAxis rc;      // collapse length axis, m

    std::size_t size() const { return lambda.value.size() * rc.value.size(); }
    std::size_t index(int il, int ir) const
    {
        return static_cast<std::size_t>(il) * rc.value.size() +
               static_cast<std::size_t>(ir);
    }
    double weight(int il, int ir) const
    {
        return lambda.weight[il] * rc.weight[ir];
    }
    CslParams theta(int il, int ir) const
    {
        return {lambda.value[il], rc.value[ir]};
    }
};

ThetaGrid make_theta_grid(double lambda_lo, double lambda_hi, int n_lambda,
                          double rc_lo, double rc_hi, int n_rc);

/// A normalised density on a ThetaGrid: sum(density * weight) = 1.
/// log_density is the natural log (-inf where the density vanishes).
struct GridDensity {
    ThetaGrid grid;
    std::vector<double> log_density;
    std::vector<double> density;

    double mass(int il, int ir) const
    {
        return density[grid.index(il, ir)] * grid.weight(il, ir);
    }
};

/// Normalise unnormalised log-values against the grid measure (max-guarded
/// log-sum-exp, fixed summation order). Throws NumericalError on NaN input
/// and ConfigError when every node carries zero mass.
GridDensity normalized_density(const ThetaGrid& grid,
                               std::vector<double> log_values);

/// Flat density 1 / ((lambda_hi-lambda_lo)(rc_hi-rc_lo)) on every node.
GridDensity uniform_density(const ThetaGrid& grid);

} // namespace talbot
