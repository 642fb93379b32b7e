#pragma once

#include "talbot/particle.hpp"

namespace talbot {

/// Complete physical description of one interferometer run, SI units
/// throughout. Control parameters (phi0, t2) may come from the optimiser;
/// everything else is experimental input.
struct ExperimentConfig {
    Particle particle;

    // Harmonic pre-trap defining the initial thermal state.
    double omega = 0.0;   // trap frequency, Hz
    double T_com = 0.0;   // centre-of-mass temperature, K

    // Environment.
    double T_int = 0.0;       // internal (emission) temperature, K
    double T_env = 0.0;       // environmental (absorption/scattering) temperature, K
    double pressure = 0.0;    // residual gas pressure, Pa
    double gas_mass = 0.0;    // residual gas molecular mass, kg
    double sigma_geo_scale = 1.0;  // collision cross-section scale (1 = hard sphere)

    // Grating pulse and free evolution.
    double d = 0.0;       // grating period (half the optical wavelength), m
    double t1 = 0.0;      // pre-grating free fall, s
    double t2 = 0.0;      // post-grating free fall, s
    double phi0 = 0.0;    // peak coherent phase of the pulse, rad
    double E_G = 0.0;     // pulse energy, J
    double a_G = 0.0;     // pulse spot area, m^2

    // Position measurement blur sigma_m(t) = sigma_m0 + drift * t.
    double sigma_m0 = 0.0;       // m
    double sigma_m_drift = 0.0;  // m / s

    // Detection window sampling.
    double window_half_width = 5e-6;  // m
    int window_samples = 1000;
    int n_max = 6;  // highest retained fringe order
};

/// Validate physical ranges and cross-constraints; throws ConfigError.
void validate(const ExperimentConfig& cfg);

} // namespace talbot
