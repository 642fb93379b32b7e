#include "talbot/pattern.hpp"

#include <algorithm>
#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/grating.hpp"

namespace talbot {

namespace {
// Exponent root of the initial-position washout factor exp[-2 (n w)^2].
double washout_root(const ExperimentConfig& cfg, const DerivedGeometry& geo)
{
    return consts::pi * geo.sigma_x * cfg.t2 / (geo.D * cfg.t1);
}
} // namespace

TalbotSpectrum fringe_amplitudes(const ExperimentConfig& cfg,
                                 const DerivedGeometry& geo)
{
    TalbotSpectrum sp;
    sp.n_max = cfg.n_max;
    sp.A.resize(cfg.n_max + 1);
    sp.B.resize(cfg.n_max + 1);
    sp.A[0] = 1.0;
    sp.B[0] = 1.0;
    const double w = washout_root(cfg, geo);
    for (int n = 1; n <= cfg.n_max; ++n) {
        sp.B[n] = talbot_coefficient(n, geo.shear(n), cfg);
        sp.A[n] = sp.B[n] * std::exp(-2.0 * (n * w) * (n * w));
    }
    return sp;
}

std::vector<double> pattern_density(std::span<const double> x,
                                    const TalbotSpectrum& spectrum,
                                    std::span<const double> R_mod,
                                    std::span<const double> R_oth,
                                    const DerivedGeometry& geo)
{
    const int n_max = spectrum.n_max;
    const double amp0 = geo.mass / geo.Z;
    std::vector<double> p(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        double acc = 1.0;
        for (int n = 1; n <= n_max; ++n)
            acc += 2.0 * R_mod[n] * R_oth[n] * spectrum.A[n] * std::cos(n * geo.k * x[j]);
        p[j] = amp0 * acc;
    }
    const double peak = *std::max_element(p.begin(), p.end());
    for (const double v : p)
        if (v < -1e-9 * peak)
            throw ConsistencyError("fringe density negative beyond tolerance");
    return p;
}

} // namespace talbot
