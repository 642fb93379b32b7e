#include <doctest.h>

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/geometry.hpp"
#include "test_support.hpp"

using namespace talbot;
using talbot::testing::baseline_config;

TEST_CASE("Talbot time and fringe geometry for the flight baseline")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);

    // 1e8 amu sphere behind a 177 nm grating (40-digit reference values)
    CHECK(geo.t_talbot == doctest::Approx(7.851264360295280).epsilon(1e-14));
    // t1 = 2 t_T: magnification D = 1.5 d, kappa = 2/3 exactly
    CHECK(geo.D == doctest::Approx(1.5 * cfg.d).epsilon(1e-15));
    CHECK(geo.kappa == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(geo.k == doctest::Approx(2.0 * consts::pi / geo.D).epsilon(1e-15));

    // released 20 mK, 200 kHz thermal state
    CHECK(geo.sigma_x == doctest::Approx(1.026176881751133e-9).epsilon(1e-13));
    CHECK(geo.sigma_p == doctest::Approx(2.141318099564949e-22).epsilon(1e-13));
    CHECK(geo.Z == doctest::Approx(std::sqrt(2.0 * consts::pi) * geo.sigma_p * geo.t_total)
                       .epsilon(1e-15));
}

TEST_CASE("shear and separation arguments")
{
    const auto cfg = baseline_config();
    const auto geo = derive_geometry(cfg);

    // t2 = t_T, D = 1.5 d makes the order-n separation n d / 1.5 exactly
    CHECK(geo.separation(1) == doctest::Approx(cfg.d / 1.5).epsilon(1e-14));
    CHECK(geo.separation(3) == doctest::Approx(3.0 * cfg.d / 1.5).epsilon(1e-14));
    // s_n = (n d t2 / (t_T D)) d
    CHECK(geo.shear(1) == doctest::Approx(cfg.d / 1.5).epsilon(1e-14));
    CHECK(geo.shear(2) == doctest::Approx(2.0 * geo.shear(1)).epsilon(1e-14));
    CHECK(geo.separation(0) == 0.0);

    CHECK(geo.sigma_m_at_detection(1e-9, 1e-10)
          == doctest::Approx(1e-9 + 1e-10 * geo.t_total).epsilon(1e-15));
}

TEST_CASE("particle radius from mass and density")
{
    const auto cfg = baseline_config();
    CHECK(cfg.particle.radius == doctest::Approx(2.572351621771294e-8).epsilon(1e-13));
    const double volume = 4.0 / 3.0 * consts::pi * std::pow(cfg.particle.radius, 3);
    CHECK(volume * cfg.particle.density
          == doctest::Approx(cfg.particle.mass).epsilon(1e-13));
}

TEST_CASE("configuration validation rejects bad inputs")
{
    auto cfg = baseline_config();
    CHECK_NOTHROW(validate(cfg));

    auto bad = cfg;
    bad.window_half_width = 0.5e-6;  // < 10 fringe periods
    CHECK_THROWS_AS(validate(bad), ConfigError);

    bad = cfg;
    bad.t1 = -1.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);

    bad = cfg;
    bad.particle.radius *= 1.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);

    bad = cfg;
    bad.pressure = 1e-13;
    bad.gas_mass = 0.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);

    bad = cfg;
    bad.n_max = 0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
}
