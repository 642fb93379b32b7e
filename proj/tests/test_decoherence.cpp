#include <doctest.h>

#include <cmath>
#include <vector>

#include "talbot/constants.hpp"
#include "talbot/decoherence.hpp"
#include "talbot/errors.hpp"
#include "talbot/geometry.hpp"
#include "talbot/special.hpp"
#include "test_support.hpp"

using namespace talbot;
using talbot::testing::baseline_config;

namespace {

Particle sphere_of_radius(double radius, const Permittivity& eps)
{
    const double rho = 2329.0;
    const double mass = 4.0 / 3.0 * consts::pi * radius * radius * radius * rho;
    return Particle::from_mass(mass, rho, eps);
}

// Brute-force trapezoid reference for the collapse-model saturation
// function: f = (1/x') int e^{-a^2} j1(ab)^2 Si(a x')/a da / shape integral,
// with x' = x/r_c, evaluated on a uniform grid (no adaptive machinery).
double csl_resolution_oracle(double b, double x_over_rc)
{
    const int n = 800000;
    const double h = 12.0 / n;
    double num = 0.0, den = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double a = i * h;
        const double j = sph_j1(a * b);
        const double g = std::exp(-a * a) * j * j;
        const double wt = (i == n) ? 0.5 : 1.0;
        den += wt * g;
        num += wt * g / a * sine_integral(a * x_over_rc);
    }
    return num / den / x_over_rc;
}

} // namespace

TEST_CASE("collapse rate: zero lambda, point limit, frozen extended values")
{
    const auto cfg = baseline_config();
    const Particle& p = cfg.particle;

    CHECK(csl_rate({0.0, 0.0}, p) == 0.0);
    CHECK(csl_rate({0.0, 1e-7}, p) == 0.0);
    CHECK_THROWS_AS(csl_rate({1e-16, -1.0}, p), ConfigError);

    // point-particle limit R << r_c: Gamma -> (m/m0)^2 lambda_c
    const auto tiny = sphere_of_radius(1e-10, cfg.particle.eps);
    const double mass_sq = (tiny.mass / consts::m0) * (tiny.mass / consts::m0);
    CHECK(csl_rate({1e-16, 1e-7}, tiny)
          == doctest::Approx(mass_sq * 1e-16).epsilon(1e-3));

    // extended sphere at b = R/r_c = 1: shape integral frozen at
    // 0.03715323953771824 (40-digit quadrature)
    const double r_c = p.radius;
    const double pref = 36.0 / std::sqrt(consts::pi)
                        * (p.mass / consts::m0) * (p.mass / consts::m0);
    CHECK(csl_rate({1e-16, r_c}, p)
          == doctest::Approx(pref * 1e-16 * 0.03715323953771824).epsilon(1e-10));

    // frozen full-geometry value at the conventional (1e-16 /s, 100 nm) point
    CHECK(csl_rate({1e-16, 1e-7}, p)
          == doctest::Approx(0.9804273055206344).epsilon(1e-10));
}

TEST_CASE("collapse saturation function: limits, frozen values, monotonicity")
{
    const auto cfg = baseline_config();
    const Particle& p = cfg.particle;

    CHECK(csl_resolution(0.0, 1e-7, p) == 1.0);

    // point limit: f -> sqrt(pi) (r_c/x) erf(x/2r_c); at x = 2 r_c the limit
    // is (sqrt(pi)/2) erf(1) = 0.7468241328124270
    const auto tiny = sphere_of_radius(1e-10, cfg.particle.eps);
    CHECK(csl_resolution(2e-7, 1e-7, tiny)
          == doctest::Approx(0.7468241328124270).epsilon(1e-5));

    // frozen extended-sphere value at the order-1 separation of the baseline
    const auto geo = derive_geometry(cfg);
    CHECK(geo.separation(1) == doctest::Approx(cfg.d / 1.5).epsilon(1e-12));
    CHECK(csl_resolution(geo.separation(1), 1e-7, p)
          == doctest::Approx(0.8963861963150028).epsilon(1e-10));

    // brute-force quadrature cross-check, including the oscillatory b > 5
    // path with its zero-subdivided integration cells
    for (const double b : {0.3, 3.0, 8.0}) {
        const auto probe = sphere_of_radius(b * 1e-7, cfg.particle.eps);
        for (const double xr : {0.5, 2.0, 7.0}) {
            CHECK(csl_resolution(xr * 1e-7, 1e-7, probe)
                  == doctest::Approx(csl_resolution_oracle(b, xr)).epsilon(1e-6));
        }
    }

    // f decreases from 1 toward 0 and stays within [0, 1]
    double prev = 1.0;
    for (const double x : {1e-9, 1e-8, 1e-7, 3e-7, 1e-6, 1e-5}) {
        const double f = csl_resolution(x, 1e-7, p);
        CHECK(f >= 0.0);
        CHECK(f <= prev + 1e-15);
        prev = f;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("collapse channel: frozen reduction and order monotonicity")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);
    const auto ch = csl_channel({1e-16, 1e-7}, cfg.particle);

    CHECK(ch.rate == doctest::Approx(0.9804273055206344).epsilon(1e-10));
    CHECK(ch.reduction(0, geo) == 1.0);
    CHECK(ch.reduction(1, geo) == doctest::Approx(0.09137978745635379).epsilon(1e-9));

    double prev = 1.0;
    for (int n = 1; n <= 6; ++n) {
        const double r = ch.reduction(n, geo);
        CHECK(r <= prev + 1e-15);
        CHECK(r > 0.0);
        prev = r;
    }

    // lambda_c = 0 is the exact no-collapse hypothesis
    const auto off = csl_channel({0.0, 1e-7}, cfg.particle);
    CHECK(off.reduction(3, geo) == 1.0);
}

TEST_CASE("CslColumn reproduces the channel in log space")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);
    const CslColumn col(1.3e-7, cfg.particle, geo, cfg.n_max);
    const double lambda = 3.7e-15;
    const auto ch = csl_channel({lambda, 1.3e-7}, cfg.particle);
    CHECK(col.rate_at_unit_lambda() * lambda == doctest::Approx(ch.rate).epsilon(1e-12));
    for (int n = 1; n <= cfg.n_max; ++n)
        CHECK(col.log_reduction(lambda, n)
              == doctest::Approx(std::log(ch.reduction(n, geo))).epsilon(1e-10));
}

TEST_CASE("blackbody channels: zero temperature, rates, resolution limits")
{
    auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);

    auto cold = cfg;
    cold.T_env = 0.0;
    CHECK(blackbody_channel(ChannelKind::blackbody_absorption, cold).rate == 0.0);
    CHECK(blackbody_channel(ChannelKind::blackbody_absorption, cold).reduction(2, geo)
          == 1.0);
    auto cool = cfg;
    cool.T_int = 0.0;
    CHECK(blackbody_channel(ChannelKind::blackbody_emission, cool).rate == 0.0);

    const auto abs_ch = blackbody_channel(ChannelKind::blackbody_absorption, cfg);
    const auto emi_ch = blackbody_channel(ChannelKind::blackbody_emission, cfg);
    const auto sca_ch = blackbody_channel(ChannelKind::blackbody_scattering, cfg);

    // emission runs at the (hotter) internal temperature: same cross section,
    // larger thermal occupation at every k
    CHECK(cfg.T_int > cfg.T_env);
    CHECK(emi_ch.rate > abs_ch.rate);

    // log-grid trapezoid oracle for the photon-event rate
    const std::complex<double> chi = cfg.particle.chi_blackbody();
    auto rate_oracle = [&](double T, auto sigma) {
        const double k_peak = 2.821439372122079 * consts::k_B * T
                              / (consts::hbar * consts::c);
        const int n = 200000;
        const double t0 = std::log(k_peak / 500.0), t1 = std::log(k_peak * 500.0);
        const double h = (t1 - t0) / n;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double k = std::exp(t0 + i * h);
            const double x = consts::hbar * consts::c * k / (consts::k_B * T);
            const double occ = x > 700.0 ? 0.0 : 1.0 / std::expm1(x);
            const double g = k * k / (consts::pi * consts::pi) * sigma(k) * occ * k;
            acc += (i == 0 || i == n) ? 0.5 * g : g;
        }
        return consts::c * acc * h;
    };
    CHECK(abs_ch.rate
          == doctest::Approx(rate_oracle(cfg.T_env, [&](double k) {
                 return k * chi.imag();
             })).epsilon(1e-7));
    CHECK(sca_ch.rate
          == doctest::Approx(rate_oracle(cfg.T_env, [&](double k) {
                 const double k4 = k * k * k * k;
                 return k4 * std::norm(chi) / (6.0 * consts::pi);
             })).epsilon(1e-7));

    // resolution functions: exact 1 at x = 0, ~1 for separations far below
    // the thermal wavelength, decreasing toward 0 beyond it
    for (const auto* ch : {&abs_ch, &emi_ch, &sca_ch}) {
        CHECK(ch->resolution(0.0) == 1.0);
        CHECK(ch->resolution(1e-12) == doctest::Approx(1.0).epsilon(1e-6));
        double prev = 1.0;
        for (const double x : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
            const double f = ch->resolution(x);
            CHECK(f >= -1e-12);
            CHECK(f <= prev + 1e-9);
            prev = f;
        }
        CHECK(prev < 0.01);  // f ~ <Si(kx)>/(kx) decays only like 1/x
    }
}

TEST_CASE("gas collisions: frozen rate, pressure scaling")
{
    auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);

    const auto ch = collision_channel(cfg);
    // hard-sphere kinetic rate at 1e-15 hPa of H2 at 20 K
    CHECK(ch.rate == doctest::Approx(3.450278440798959e-4).epsilon(1e-12));

    // independent re-evaluation of the kinetic formula
    const double n_g = cfg.pressure / (consts::k_B * cfg.T_env);
    const double v_bar = std::sqrt(8.0 * consts::k_B * cfg.T_env
                                   / (consts::pi * cfg.gas_mass));
    const double expected = n_g * v_bar * consts::pi * cfg.particle.radius
                            * cfg.particle.radius;
    CHECK(ch.rate == doctest::Approx(expected).epsilon(1e-14));

    // every order is suppressed equally (fully resolving channel)
    CHECK(ch.reduction(1, geo) == doctest::Approx(ch.reduction(5, geo)).epsilon(1e-15));
    CHECK(ch.reduction(1, geo)
          == doctest::Approx(std::exp(-ch.rate * geo.t_total)).epsilon(1e-14));

    auto vacuum = cfg;
    vacuum.pressure = 0.0;
    CHECK(collision_channel(vacuum).rate == 0.0);
    CHECK(collision_channel(vacuum).reduction(1, geo) == 1.0);

    // R is exponential in pressure: doubling P squares the factor
    auto doubled = cfg;
    doubled.pressure *= 2.0;
    const double r1 = ch.reduction(1, geo);
    CHECK(collision_channel(doubled).reduction(1, geo)
          == doctest::Approx(r1 * r1).epsilon(1e-12));
}

TEST_CASE("measurement blur: exact zero limit, frozen value, n scaling")
{
    CHECK(measurement_Rn(1, 0.0, 2.655e-7) == 1.0);
    CHECK(measurement_Rn(0, 5e-9, 2.655e-7) == 1.0);
    // sigma_m = 10 nm on the 265.5 nm magnified period
    CHECK(measurement_Rn(1, 1e-8, 1.5 * 177e-9)
          == doctest::Approx(0.9723856922950685).epsilon(1e-13));
    // Gaussian order scaling: R_n = R_1^{n^2}
    const double r1 = measurement_Rn(1, 1e-8, 2.655e-7);
    const double r3 = measurement_Rn(3, 1e-8, 2.655e-7);
    CHECK(r3 == doctest::Approx(std::pow(r1, 9.0)).epsilon(1e-12));

    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);
    const auto ch = measurement_channel(cfg, geo);
    CHECK(ch.blur_sigma
          == doctest::Approx(cfg.sigma_m0 + cfg.sigma_m_drift * geo.t_total)
                 .epsilon(1e-15));
    CHECK(ch.reduction(2, geo)
          == doctest::Approx(measurement_Rn(2, ch.blur_sigma, geo.D)).epsilon(1e-15));
}

TEST_CASE("measurement factors equal a real-space Gaussian convolution")
{
    // blur a single-harmonic fringe numerically and compare against the
    // closed-form reduction of the cosine amplitude
    const double D = 2.655e-7;
    const double k = 2.0 * consts::pi / D;
    const double sigma = 8e-9;
    const double a1 = 0.37;
    auto density = [&](double x) { return 1.0 + 2.0 * a1 * std::cos(k * x); };

    const double r1 = measurement_Rn(1, sigma, D);
    for (const double x : {0.0, 0.3 * D, 0.71 * D}) {
        double acc = 0.0;
        const int n = 4000;
        const double half = 7.0 * sigma;
        const double h = 2.0 * half / n;
        for (int i = 0; i <= n; ++i) {
            const double y = -half + i * h;
            const double w = std::exp(-0.5 * y * y / (sigma * sigma));
            acc += ((i == 0 || i == n) ? 0.5 : 1.0) * w * density(x - y);
        }
        acc *= h / (sigma * std::sqrt(2.0 * consts::pi));
        const double expected = 1.0 + 2.0 * a1 * r1 * std::cos(k * x);
        CHECK(acc == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("combining channels: identity, split, product")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);

    const auto none = combine({}, cfg.n_max, geo);
    for (int n = 0; n <= cfg.n_max; ++n) {
        CHECK(none.R_mod[n] == 1.0);
        CHECK(none.R_oth[n] == 1.0);
        CHECK(none.R_total[n] == 1.0);
    }

    std::vector<DecoherenceChannel> chans;
    chans.push_back(csl_channel({1e-16, 1e-7}, cfg.particle));
    chans.push_back(collision_channel(cfg));
    chans.push_back(measurement_channel(cfg, geo));
    const auto r = combine(chans, cfg.n_max, geo);

    CHECK(r.R_mod[0] == 1.0);
    CHECK(r.R_oth[0] == 1.0);
    for (int n = 1; n <= cfg.n_max; ++n) {
        CHECK(r.R_mod[n] == doctest::Approx(chans[0].reduction(n, geo)).epsilon(1e-15));
        CHECK(r.R_oth[n]
              == doctest::Approx(chans[1].reduction(n, geo)
                                 * chans[2].reduction(n, geo))
                     .epsilon(1e-15));
        CHECK(r.R_total[n] == doctest::Approx(r.R_mod[n] * r.R_oth[n]).epsilon(1e-15));
        CHECK(r.R_total[n] <= 1.0);
        CHECK(r.R_total[n] > 0.0);
    }
}
