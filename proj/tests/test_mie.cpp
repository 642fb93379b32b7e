#include <doctest.h>

#include <cmath>
#include <complex>

#include "talbot/constants.hpp"
#include "talbot/mie.hpp"
#include "test_support.hpp"

using namespace talbot;
using std::complex;

namespace {
// 40-digit Lorenz-Mie reference values, x = 0.5, m = 1.5 (dielectric)
struct Ref {
    double mu;
    complex<double> S1, S2;
};
const Ref refs[] = {
    {1.0,
     {9.104142647246597e-4, -3.908445674592613e-2},
     {9.104142647246597e-4, -3.908445674592613e-2}},
    {0.5,
     {9.097083942502996e-4, -3.798056774928907e-2},
     {4.554807877325551e-4, -1.933154660436765e-2}},
    {0.0,
     {9.090026284788100e-4, -3.689719821993944e-2},
     {8.353828425554775e-7, -4.495636849423521e-4}},
    {-1.0,
     {9.075914110195310e-4, -3.479085578328801e-2},
     {-9.075914110195310e-4, 3.479085578328801e-2}},
};
} // namespace

TEST_CASE("Mie amplitudes against high-precision reference")
{
    const MieEvaluator mie(0.5, {1.5, 0.0});
    for (const auto& r : refs) {
        const auto s = mie.at(r.mu);
        CHECK(s.S1.real() == doctest::Approx(r.S1.real()).epsilon(1e-12));
        CHECK(s.S1.imag() == doctest::Approx(r.S1.imag()).epsilon(1e-12));
        CHECK(s.S2.real() == doctest::Approx(r.S2.real()).epsilon(1e-12));
        CHECK(s.S2.imag() == doctest::Approx(r.S2.imag()).epsilon(1e-12));
    }
}

TEST_CASE("forward scattering has S1 = S2")
{
    for (const double x : {0.01, 0.3, 2.0, 8.0}) {
        const auto s = mie_amplitudes(x, {1.45, 0.05}, 1.0);
        CHECK(s.S1.real() == doctest::Approx(s.S2.real()).epsilon(1e-13));
        CHECK(s.S1.imag() == doctest::Approx(s.S2.imag()).epsilon(1e-13));
    }
}

TEST_CASE("point limit: S2/S1 -> cos(theta)")
{
    const MieEvaluator mie(1e-3, {1.5, 0.0});
    const auto perp = mie.at(0.0);
    CHECK(std::abs(perp.S2) / std::abs(perp.S1) < 1e-6);

    const complex<double> cm = (complex<double>(2.25, 0.0) - 1.0)
                               / (complex<double>(2.25, 0.0) + 2.0);
    for (const double mu : {1.0, 0.5, -0.7}) {
        const auto s = mie.at(mu);
        const complex<double> s1_ray = complex<double>(0.0, -1.0) * 1e-9 * cm;
        CHECK(std::abs(s.S1 - s1_ray) / std::abs(s1_ray) < 1e-4);
        CHECK(std::abs(s.S2 - s1_ray * mu) / std::abs(s1_ray * mu) < 1e-4);
    }
}

TEST_CASE("sphere amplitudes: Rayleigh path and cross sections")
{
    auto cfg = talbot::testing::baseline_config();
    const double k = consts::pi / cfg.d;

    const SphereAmplitudes ray(cfg.particle, k);
    const auto chi = cfg.particle.chi_grating();
    CHECK(ray.sigma_abs() == doctest::Approx(k * chi.imag()).epsilon(1e-14));
    CHECK(ray.sigma_sca()
          == doctest::Approx(std::pow(k, 4) * std::norm(chi) / (6.0 * consts::pi))
                 .epsilon(1e-14));
    const auto s = ray.at(0.25);
    CHECK(s.S2.real() == doctest::Approx(0.25 * s.S1.real()).epsilon(1e-15));
    CHECK(s.S2.imag() == doctest::Approx(0.25 * s.S1.imag()).epsilon(1e-15));

    // full Mie on the same sphere agrees with the point limit to O(x^2)
    auto mie_cfg = cfg;
    mie_cfg.particle.use_mie = true;
    const SphereAmplitudes mie(mie_cfg.particle, k);
    const double x = k * cfg.particle.radius;  // ~0.46: O(x^2) ~ 20% agreement
    const auto sm = mie.at(0.25);
    CHECK(std::abs(sm.S1 - s.S1) / std::abs(s.S1) < 0.25);
    CHECK(mie.sigma_abs() == doctest::Approx(ray.sigma_abs()).epsilon(0.3));
    CHECK(x < 1.0);
}
