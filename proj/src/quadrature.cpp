#include "talbot/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace talbot {

double trapezoid(std::span<const double> y, double dx)
{
    if (y.size() < 2)
        return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        s += y[i];
    return s * dx;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n
// (classic gauleg), cached per order.
const std::pair<std::vector<double>, std::vector<double>>&
SolidAngleRule::legendre_nodes(int n)
{
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    constexpr double pi = 3.141592653589793238462643383279502884;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

} // namespace talbot
