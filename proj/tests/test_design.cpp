#include <doctest.h>

#include <cmath>
#include <numbers>

#include "talbot/design.hpp"
#include "talbot/errors.hpp"
#include "talbot/geometry.hpp"
#include "talbot/grating.hpp"
#include "test_support.hpp"

using namespace talbot;
using talbot::testing::baseline_config;

namespace {
const CslParams grw{1e-16, 1e-7};
}

TEST_CASE("visibility: no pulse means no fringes, no reference means no drop")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);
    const ControlVector C{0.0, geo.t_talbot};
    CHECK(visibility_sin(C, cfg) == 0.0);

    const ControlVector C2{2.0, geo.t_talbot};
    const double nu = visibility_sin(C2, cfg);
    CHECK(nu > 0.0);
    CHECK(visibility_reduced(C2, {0.0, 0.0}, cfg) == nu);
    CHECK(visibility_reduced(C2, grw, cfg) < nu);

    CHECK_THROWS_AS(visibility_sin({-1.0, geo.t_talbot}, cfg), ConfigError);
    CHECK_THROWS_AS(visibility_sin({2.0, 0.0}, cfg), ConfigError);
}

TEST_CASE("visibility: first-harmonic identity against the coefficient stack")
{
    const auto base = baseline_config();
    const auto geo0 = derive_geometry(base);
    const ControlVector C{1.7, 1.3 * geo0.t_talbot};

    auto cfg = base;
    cfg.phi0 = C.phi0;
    cfg.t2 = C.t2;
    cfg.E_G = pulse_energy_for_phase(C.phi0, cfg.a_G, cfg);
    const auto geo = derive_geometry(cfg);
    const double B1 = std::abs(talbot_coefficient(1, geo.shear(1), cfg));
    const double arg =
        std::numbers::pi * geo.sigma_x * cfg.t2 / (geo.D * cfg.t1);
    const double expect = 2.0 * B1 * std::exp(-2.0 * arg * arg);
    CHECK(visibility_sin(C, base) == doctest::Approx(expect).epsilon(1e-12));

    // the reduced visibility carries exactly the order-1 collapse factor
    const auto channel = csl_channel(grw, cfg.particle);
    CHECK(visibility_reduced(C, grw, base)
          == doctest::Approx(expect * channel.reduction(1, geo))
                 .epsilon(1e-12));
}

TEST_CASE("optimizer: degenerate objective is reported, not returned")
{
    const auto cfg = baseline_config();
    CHECK_THROWS_AS(optimize_controls(cfg, {0.0, 0.0}), DegenerateObjectiveError);
    CHECK_THROWS_AS(optimize_controls(cfg, grw, {0.5, 0.25, 0.0, 1.0}),
                    ConfigError);  // inverted t2 bounds
    CHECK_THROWS_AS(optimize_controls(cfg, grw, {}, 2), ConfigError);
}

TEST_CASE("optimizer: objective is non-negative across the control rectangle")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);
    for (const double phi0 : {0.3, 1.0, 2.0, 4.0, 7.0})
        for (const double t2_f : {0.25, 0.6, 1.0, 1.5, 2.0}) {
            const ControlVector C{phi0, t2_f * geo.t_talbot};
            const double drop =
                visibility_sin(C, cfg) - visibility_reduced(C, grw, cfg);
            CHECK(drop >= 0.0);
        }
}

TEST_CASE("optimizer: returns an in-bounds local maximum")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);
    const ControlBounds bounds{};
    const auto C = optimize_controls(cfg, grw);

    CHECK(C.phi0 >= bounds.phi0_lo);
    CHECK(C.phi0 <= bounds.phi0_hi);
    CHECK(C.t2 >= bounds.t2_lo_talbot * geo.t_talbot);
    CHECK(C.t2 <= bounds.t2_hi_talbot * geo.t_talbot);

    auto drop = [&](const ControlVector& v) {
        return visibility_sin(v, cfg) - visibility_reduced(v, grw, cfg);
    };
    const double best = drop(C);
    CHECK(best > 0.0);
    const double dphi = 1e-3 * (bounds.phi0_hi - bounds.phi0_lo);
    const double dt2 =
        1e-3 * (bounds.t2_hi_talbot - bounds.t2_lo_talbot) * geo.t_talbot;
    const double slack = 1e-9 * best;
    CHECK(drop({C.phi0 + dphi, C.t2}) <= best + slack);
    CHECK(drop({C.phi0 - dphi, C.t2}) <= best + slack);
    CHECK(drop({C.phi0, C.t2 + dt2}) <= best + slack);
    CHECK(drop({C.phi0, C.t2 - dt2}) <= best + slack);
}

TEST_CASE("optimizer: refinement is self-consistent under a denser coarse scan")
{
    const auto cfg = baseline_config();
    const auto a = optimize_controls(cfg, grw);
    const auto b = optimize_controls(cfg, grw, {}, 81);
    CHECK(std::abs(a.phi0 - b.phi0) / b.phi0 < 0.01);
    CHECK(std::abs(a.t2 - b.t2) / b.t2 < 0.01);
}

TEST_CASE("grating pulse: spot covers the expanded cloud, energy is linear")
{
    const auto cfg = baseline_config();

    const auto none = grating_pulse(0.0, cfg, cfg.t1);
    CHECK(none.E_G == 0.0);
    CHECK(none.a_G > 0.0);

    const auto P = grating_pulse(2.0, cfg, cfg.t1);
    // spot area: pi (3 (sigma_x + sigma_p t1 / m))^2 of the released state
    const auto geo = derive_geometry(cfg);
    const double spread =
        3.0 * (geo.sigma_x + geo.sigma_p * cfg.t1 / cfg.particle.mass);
    CHECK(P.a_G
          == doctest::Approx(std::numbers::pi * spread * spread).epsilon(1e-12));

    // doubling the spot doubles the energy at fixed phase
    CHECK(pulse_energy_for_phase(2.0, 2.0 * P.a_G, cfg)
          == doctest::Approx(2.0 * P.E_G).epsilon(1e-12));

    // round trip: the phase reconstructed from (E_G, a_G) is the target
    for (const double target : {0.5, 2.0, 7.5}) {
        const auto pulse = grating_pulse(target, cfg, cfg.t1);
        const double unit = pulse_energy_for_phase(1.0, pulse.a_G, cfg);
        CHECK(pulse.E_G / unit == doctest::Approx(target).epsilon(1e-12));
    }

    CHECK_THROWS_AS(grating_pulse(-1.0, cfg, cfg.t1), ConfigError);
    CHECK_THROWS_AS(grating_pulse(1.0, cfg, 0.0), ConfigError);

    // a material with negative optical response cannot realise the pulse
    auto bad = cfg;
    Permittivity eps;
    eps.grating = {-1.5, 0.0};
    eps.blackbody = cfg.particle.eps.blackbody;
    bad.particle = Particle::from_mass(cfg.particle.mass,
                                       cfg.particle.density, eps);
    CHECK_THROWS_AS(grating_pulse(1.0, bad, bad.t1), MaterialError);
}

TEST_CASE("optimizer output at the flight scenario sits near the Talbot time")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);
    const auto C = optimize_controls(cfg, grw);
    // measured once: phi0* ~ 2.14, t2* ~ 1.19 t_T; assert the broad shape
    CHECK(C.phi0 > 0.5);
    CHECK(C.phi0 < 3.5);
    CHECK(C.t2 / geo.t_talbot > 0.8);
    CHECK(C.t2 / geo.t_talbot < 1.6);
}
