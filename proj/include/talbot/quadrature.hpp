#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "talbot/errors.hpp"

namespace talbot {

/// Adaptive Gauss-Kronrod integration on [a, b] to a relative tolerance.
/// Throws NumericalError if the error estimate does not reach ~tol.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12)
{
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(f, a, b, 12, rel_tol, &err);
    const double scale = std::max(std::abs(v), 1e-300);
    if (!std::isfinite(v) || err / scale > 1e3 * rel_tol)
        throw NumericalError("adaptive quadrature failed to converge");
    return v;
}

/// Adaptive integration over [a, b] split at the given interior breakpoints
/// (used to tame oscillatory integrands by integrating period by period).
/// Convergence is judged on the summed error against the whole integral, not
/// piece by piece: far-tail pieces can sit at the double-precision noise
/// floor without mattering. Cancellation between pieces is guarded by also
/// scaling against the largest piece magnitude.
template <class F>
double integrate_piecewise(F&& f, std::span<const double> edges, double rel_tol = 1e-12)
{
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0, err_sum = 0.0, max_piece = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double err = 0.0;
        const double v =
            gauss_kronrod<double, 31>::integrate(f, edges[i], edges[i + 1], 12, rel_tol, &err);
        if (!std::isfinite(v))
            throw NumericalError("adaptive quadrature failed to converge");
        total += v;
        err_sum += err;
        max_piece = std::max(max_piece, std::abs(v));
    }
    const double scale = std::max({std::abs(total), max_piece, 1e-300});
    if (err_sum / scale > 1e3 * rel_tol)
        throw NumericalError("adaptive quadrature failed to converge");
    return total;
}

/// Trapezoid rule over uniformly spaced samples.
double trapezoid(std::span<const double> y, double dx);

/// Integral over the unit sphere of g(u, phi), u = cos(theta):
///   I = int_{-1}^{1} du int_0^{2pi} dphi g(u, phi).
/// Product rule: Gauss-Legendre in u times trapezoid in phi (spectrally
/// accurate for periodic integrands), refined by doubling both node counts
/// until the result changes by less than tol. The g(u) evaluations for a
/// whole u-row share their azimuthal sweep, so callers may cache per-u state.
class SolidAngleRule {
public:
    explicit SolidAngleRule(double tol = 1e-8) : tol_(tol) {}

    template <class G>
    double integrate(G&& g) const
    {
        double prev = evaluate(g, 32);
        for (int n = 64; n <= 512; n *= 2) {
            const double cur = evaluate(g, n);
            if (std::abs(cur - prev) < tol_ * std::max(1.0, std::abs(cur)))
                return cur;
            prev = cur;
        }
        throw NumericalError("solid-angle quadrature did not stabilise");
    }

    /// Vector-valued variant: g(u, phi) returns std::array<double, N>; all
    /// components share one refinement sweep.
    template <std::size_t N, class G>
    std::array<double, N> integrate_array(G&& g) const
    {
        auto prev = evaluate_array<N>(g, 32);
        for (int n = 64; n <= 512; n *= 2) {
            const auto cur = evaluate_array<N>(g, n);
            double delta = 0.0, scale = 1.0;
            for (std::size_t i = 0; i < N; ++i) {
                delta = std::max(delta, std::abs(cur[i] - prev[i]));
                scale = std::max(scale, std::abs(cur[i]));
            }
            if (delta < tol_ * scale)
                return cur;
            prev = cur;
        }
        throw NumericalError("solid-angle quadrature did not stabilise");
    }

    template <std::size_t N, class G>
    std::array<double, N> evaluate_array(G&& g, int n) const
    {
        const auto& [u, w] = legendre_nodes(n);
        const double dphi = two_pi / n;
        std::array<double, N> total{};
        for (int i = 0; i < n; ++i) {
            std::array<double, N> row{};
            for (int j = 0; j < n; ++j) {
                const auto v = g(u[i], dphi * j);
                for (std::size_t m = 0; m < N; ++m)
                    row[m] += v[m];
            }
            for (std::size_t m = 0; m < N; ++m)
                total[m] += w[i] * row[m] * dphi;
        }
        return total;
    }

    /// Fixed node count, no refinement (used by oracles at forced resolution).
    template <class G>
    double evaluate(G&& g, int n) const
    {
        const auto& [u, w] = legendre_nodes(n);
        const double dphi = two_pi / n;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j)
                row += g(u[i], dphi * j);
            total += w[i] * row * dphi;
        }
        return total;
    }

private:
    static constexpr double two_pi = 2.0 * 3.141592653589793238462643383279502884;
    static const std::pair<std::vector<double>, std::vector<double>>& legendre_nodes(int n);
    double tol_;
};

} // namespace talbot
