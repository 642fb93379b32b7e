#include "talbot/decoherence.hpp"

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/quadrature.hpp"
#include "talbot/special.hpp"

namespace talbot {

namespace {

// Upper integration limit in alpha = r_c q units: exp(-alpha^2) is below
// 3e-63 there, far under any tolerance in play.
constexpr double alpha_max = 12.0;

// First zeros of the spherical Bessel j1; later ones approach a pi period.
constexpr double j1_zeros[] = {4.493409457909064, 7.725251836937708,
                               10.904121659428899, 14.066193912831473,
                               17.220755271930768};

// Integration edges for integrands containing j1(alpha b)^2: subdivide at
// the j1 zeros once the oscillation becomes fast (b > 5).
std::vector<double> csl_edges(double b)
{
    std::vector<double> edges{0.0};
    if (b > 5.0) {
        double z = 0.0;
        for (int i = 0; z < alpha_max * b; ++i) {
            z = i < 5 ? j1_zeros[i] : z + consts::pi;
            const double a = z / b;
            if (a >= alpha_max)
                break;
            edges.push_back(a);
        }
    }
    edges.push_back(alpha_max);
    return edges;
}

double csl_shape_integral(double b)
{
    const auto edges = csl_edges(b);
    return integrate_piecewise(
        [b](double a) {
            const double j = sph_j1(a * b);
            return std::exp(-a * a) * j * j;
        },
        edges, 1e-12);
}

double csl_saturation_integral(double b, double x_over_rc)
{
    const auto edges = csl_edges(b);
    return integrate_piecewise(
        [b, x_over_rc](double a) {
            const double j = sph_j1(a * b);
            // j1(ab)^2 / a ~ a b^2 / 9 near zero: no singularity.
            return std::exp(-a * a) * j * j / a * sine_integral(a * x_over_rc);
        },
        edges, 1e-12);
}

double csl_prefactor(double r_c, const Particle& particle)
{
    const double mass_ratio = particle.mass / consts::m0;
    const double size_ratio = r_c / particle.radius;
    return 36.0 / std::sqrt(consts::pi) * mass_ratio * mass_ratio * size_ratio
           * size_ratio;
}

// Planck occupation, zero below numerical floor.
double occupation(double k, double T)
{
    if (T <= 0.0)
        return 0.0;
    const double x = consts::hbar * consts::c * k / (consts::k_B * T);
    if (x > 700.0)
        return 0.0;
    return 1.0 / (std::expm1(x));
}

struct BlackbodyBand {
    double k_min, k_max;
};

BlackbodyBand thermal_band(double T)
{
    // Peak of the k^3 occupation integrand; the factor-500 margins cover the
    // k^6 scattering weight as well.
    const double k_peak = 2.821439372122079 * consts::k_B * T / (consts::hbar * consts::c);
    return {k_peak / 500.0, k_peak * 500.0};
}

// c * int_{k0}^{k1} (k/pi)^2 sigma(k) n(k,T) w(k) dk in log-k variables.
template <class Sigma, class Weight>
double thermal_integral(double k0, double k1, double T, Sigma&& sigma, Weight&& w)
{
    return consts::c
           * integrate_adaptive(
                 [&](double t) {
                     const double k = std::exp(t);
                     const double g = k * k / (consts::pi * consts::pi) * sigma(k)
                                      * occupation(k, T);
                     return g * w(k) * k;  // dk = k dt
                 },
                 std::log(k0), std::log(k1), 1e-10);
}

struct BlackbodyParts {
    double T = 0.0;
    std::function<double(double)> sigma;           // cross section, m^2
    std::function<double(double, double)> shape;   // resolution weight w(k, x)
};

DecoherenceChannel make_blackbody(ChannelKind kind, const BlackbodyParts& parts)
{
    DecoherenceChannel ch;
    ch.kind = kind;
    const auto [k0, k1] = thermal_band(parts.T);
    if (parts.T <= 0.0) {
        ch.rate = 0.0;
        ch.resolution = [](double x) { return x == 0.0 ? 1.0 : 0.0; };
        return ch;
    }
    const double gamma = thermal_integral(k0, k1, parts.T, parts.sigma,
                                          [](double) { return 1.0; });
    // Tail convergence: widening the band must not move the rate.
    const double low = thermal_integral(k0 / 4.0, k0, parts.T, parts.sigma,
                                        [](double) { return 1.0; });
    const double high = thermal_integral(k1, k1 * 4.0, parts.T, parts.sigma,
                                         [](double) { return 1.0; });
    if (gamma > 0.0 && (low + high) > 1e-8 * gamma)
        throw ConsistencyError("blackbody spectral band not converged");
    ch.rate = gamma;
    if (gamma <= 0.0) {
        ch.resolution = [](double x) { return x == 0.0 ? 1.0 : 0.0; };
        return ch;
    }
    auto sigma = parts.sigma;
    auto shape = parts.shape;
    const double T = parts.T;
    ch.resolution = [=](double x) {
        if (x == 0.0)
            return 1.0;
        const double num = thermal_integral(k0, k1, T, sigma,
                                            [&](double k) { return shape(k, x); });
        return num / gamma;
    };
    return ch;
}

} // namespace

double csl_rate(const CslParams& theta, const Particle& particle)
{
    if (theta.lambda_c == 0.0)
        return 0.0;
    if (!(theta.lambda_c >= 0.0) || !(theta.r_c > 0.0))
        throw ConfigError("collapse parameters must satisfy lambda_c >= 0, r_c > 0");
    const double b = particle.radius / theta.r_c;
    return csl_prefactor(theta.r_c, particle) * theta.lambda_c * csl_shape_integral(b);
}

double csl_resolution(double x, double r_c, const Particle& particle)
{
    if (!(r_c > 0.0))
        throw ConfigError("r_c must be positive");
    if (x == 0.0)
        return 1.0;
    x = std::abs(x);
    const double b = particle.radius / r_c;
    const double shape = csl_shape_integral(b);
    return csl_saturation_integral(b, x / r_c) / shape * (r_c / x);
}

DecoherenceChannel csl_channel(const CslParams& theta, const Particle& particle)
{
    DecoherenceChannel ch;
    ch.kind = ChannelKind::csl;
    ch.rate = csl_rate(theta, particle);
    const double r_c = theta.r_c;
    ch.resolution = [r_c, particle](double x) {
        return csl_resolution(x, r_c, particle);
    };
    return ch;
}

DecoherenceChannel blackbody_channel(ChannelKind which, const ExperimentConfig& cfg)
{
    const Particle& p = cfg.particle;
    const std::complex<double> chi = p.chi_blackbody();
    BlackbodyParts parts;
    switch (which) {
    case ChannelKind::blackbody_absorption:
    case ChannelKind::blackbody_emission: {
        parts.T = which == ChannelKind::blackbody_absorption ? cfg.T_env : cfg.T_int;
        if (parts.T > 0.0 && chi.imag() < 0.0)
            throw MaterialError("blackbody permittivity implies negative absorption");
        parts.sigma = [chi](double k) { return k * chi.imag(); };
        // single-photon momentum kick: f = <Si(kx)/(kx)>
        parts.shape = [](double k, double x) { return si_over_x(k * x); };
        break;
    }
    case ChannelKind::blackbody_scattering: {
        parts.T = cfg.T_env;
        const double chi2 = std::norm(chi);
        parts.sigma = [chi2](double k) {
            return k * k * k * k * chi2 / (6.0 * consts::pi);
        };
        // Rayleigh-scattered photon: elastic momentum transfer up to 2k.
        parts.shape = [](double k, double x) {
            const double u = k * x;
            return 2.0 * si_over_x(2.0 * u) - sinc(u) * sinc(u);
        };
        break;
    }
    default:
        throw Error("blackbody_channel: not a blackbody channel kind");
    }
    return make_blackbody(which, parts);
}

DecoherenceChannel collision_channel(const ExperimentConfig& cfg)
{
    DecoherenceChannel ch;
    ch.kind = ChannelKind::collision;
    if (cfg.pressure > 0.0) {
        const double n_g = cfg.pressure / (consts::k_B * cfg.T_env);
        const double v_bar = std::sqrt(8.0 * consts::k_B * cfg.T_env
                                       / (consts::pi * cfg.gas_mass));
        const double sigma_geo = consts::pi * cfg.particle.radius * cfg.particle.radius;
        ch.rate = n_g * v_bar * sigma_geo * cfg.sigma_geo_scale;
    }
    // A single gas collision resolves any superposition separation.
    ch.resolution = [](double x) { return x == 0.0 ? 1.0 : 0.0; };
    return ch;
}

double measurement_Rn(int n, double sigma_m, double D)
{
    const double arg = 2.0 * consts::pi * n * sigma_m / D;
    return std::exp(-0.5 * arg * arg);
}

DecoherenceChannel measurement_channel(const ExperimentConfig& cfg,
                                       const DerivedGeometry& geo)
{
    DecoherenceChannel ch;
    ch.kind = ChannelKind::measurement;
    ch.blur_sigma = geo.sigma_m_at_detection(cfg.sigma_m0, cfg.sigma_m_drift);
    return ch;
}

double DecoherenceChannel::reduction(int n, const DerivedGeometry& geo) const
{
    if (n == 0)
        return 1.0;
    if (kind == ChannelKind::measurement)
        return measurement_Rn(n, blur_sigma, geo.D);
    if (rate == 0.0)
        return 1.0;
    const double f = resolution(geo.separation(n));
    return std::exp(-rate * (1.0 - f) * geo.t_total);
}

ReductionFactors combine(std::span<const DecoherenceChannel> channels, int n_max,
                         const DerivedGeometry& geo)
{
    ReductionFactors r;
    r.R_mod.assign(n_max + 1, 1.0);
    r.R_oth.assign(n_max + 1, 1.0);
    r.R_total.assign(n_max + 1, 1.0);
    for (const auto& ch : channels) {
        auto& dst = ch.kind == ChannelKind::csl ? r.R_mod : r.R_oth;
        for (int n = 1; n <= n_max; ++n)
            dst[n] *= ch.reduction(n, geo);
    }
    for (int n = 1; n <= n_max; ++n)
        r.R_total[n] = r.R_mod[n] * r.R_oth[n];
    return r;
}

CslColumn::CslColumn(double r_c, const Particle& particle,
                     const DerivedGeometry& geo, int n_max)
    : t_total_(geo.t_total), one_minus_f_(n_max + 1, 0.0)
{
    if (!(r_c > 0.0))
        throw ConfigError("r_c must be positive");
    const double b = particle.radius / r_c;
    const double shape = csl_shape_integral(b);
    rate1_ = csl_prefactor(r_c, particle) * shape;
    for (int n = 1; n <= n_max; ++n) {
        const double x = geo.separation(n);
        const double f = csl_saturation_integral(b, x / r_c) / shape * (r_c / x);
        one_minus_f_[n] = 1.0 - f;
    }
}

} // namespace talbot
