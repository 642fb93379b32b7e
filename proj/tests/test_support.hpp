#pragma once

// Shared fixtures: the flight-scenario baseline used across the test suite.

#include <cmath>

#include "talbot/config.hpp"
#include "talbot/constants.hpp"
#include "talbot/geometry.hpp"
#include "talbot/grating.hpp"

namespace talbot::testing {

/// Silicon sphere, 1e8 amu, in the space-mission interferometer baseline:
/// 177 nm grating, t1 = 2 Talbot times, 20 mK centre-of-mass temperature.
/// phi0/t2 are free controls; callers set them (defaults: phi0 = 2, t2 = t_T).
inline ExperimentConfig baseline_config(double phi0 = 2.0,
                                        double t2_in_talbot = 1.0)
{
    ExperimentConfig cfg;
    Permittivity eps;
    eps.grating = {22.39, 33.82};   // crystalline Si at the 354 nm pulse
    eps.blackbody = {11.7, 0.1};    // band-averaged thermal response
    cfg.particle = Particle::from_mass(1e8 * consts::m_u, 2329.0, eps);
    cfg.omega = 200e3;
    cfg.T_com = 20e-3;
    cfg.T_int = 25.0;
    cfg.T_env = 20.0;
    cfg.pressure = 1e-15 * 100.0;  // 1e-15 hPa
    cfg.gas_mass = 2.016 * consts::m_u;
    cfg.d = 177e-9;

    const double t_talbot = cfg.particle.mass * cfg.d * cfg.d / consts::h;
    cfg.t1 = 2.0 * t_talbot;
    cfg.t2 = t2_in_talbot * t_talbot;
    cfg.phi0 = phi0;

    // spot area ~ pi (3 sigma of the ballistically expanded cloud)^2
    const double omega_sq = 4.0 * consts::pi * consts::pi * cfg.omega * cfg.omega;
    const double sigma_x = std::sqrt(consts::k_B * cfg.T_com / (cfg.particle.mass * omega_sq));
    const double sigma_p = std::sqrt(cfg.particle.mass * consts::k_B * cfg.T_com);
    const double spread = sigma_x + sigma_p * cfg.t1 / cfg.particle.mass;
    cfg.a_G = consts::pi * 9.0 * spread * spread;
    cfg.E_G = pulse_energy_for_phase(cfg.phi0, cfg.a_G, cfg);

    cfg.sigma_m0 = sigma_x;
    cfg.sigma_m_drift = 10e-9 / 100.0;  // 10 nm per 100 s
    cfg.window_half_width = 5e-6;
    cfg.window_samples = 1000;
    cfg.n_max = 6;
    return cfg;
}

} // namespace talbot::testing
