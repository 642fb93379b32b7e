#include "talbot/geometry.hpp"

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

void validate(const ExperimentConfig& cfg)
{
    if (!(cfg.particle.mass > 0.0) || !(cfg.particle.density > 0.0))
        throw ConfigError("particle mass and density must be positive");
    const double r_expected =
        std::cbrt(3.0 * cfg.particle.mass / (4.0 * consts::pi * cfg.particle.density));
    if (std::abs(cfg.particle.radius - r_expected) > 1e-12 * r_expected)
        throw ConfigError("particle radius inconsistent with mass and density");
    if (!(cfg.omega > 0.0))
        throw ConfigError("trap frequency must be positive");
    if (!(cfg.T_com > 0.0))
        throw ConfigError("centre-of-mass temperature must be positive");
    if (cfg.T_int < 0.0 || cfg.T_env < 0.0)
        throw ConfigError("temperatures must be non-negative");
    if (cfg.pressure < 0.0)
        throw ConfigError("pressure must be non-negative");
    if (cfg.pressure > 0.0 && !(cfg.gas_mass > 0.0))
        throw ConfigError("gas mass must be positive when pressure is non-zero");
    if (!(cfg.sigma_geo_scale >= 0.0))
        throw ConfigError("collision cross-section scale must be non-negative");
    if (!(cfg.d > 0.0))
        throw ConfigError("grating period must be positive");
    if (!(cfg.t1 > 0.0) || !(cfg.t2 > 0.0))
        throw ConfigError("free-fall times must be positive");
    if (cfg.phi0 < 0.0)
        throw ConfigError("phi0 must be non-negative");
    if (cfg.E_G < 0.0 || !(cfg.a_G > 0.0))
        throw ConfigError("pulse energy must be non-negative and spot area positive");
    if (cfg.sigma_m0 < 0.0 || cfg.sigma_m_drift < 0.0)
        throw ConfigError("measurement blur parameters must be non-negative");
    if (!(cfg.window_half_width > 0.0))
        throw ConfigError("window half-width must be positive");
    if (cfg.window_samples < 16)
        throw ConfigError("window must have at least 16 samples");
    if (cfg.n_max < 1)
        throw ConfigError("n_max must be at least 1");

    // The detection window has to span enough fringes for the normalised
    // density windows used downstream to make sense.
    const double D = cfg.d * (cfg.t1 + cfg.t2) / cfg.t1;
    if (2.0 * cfg.window_half_width < 10.0 * D)
        throw ConfigError("detection window must cover at least 10 fringe periods");
}

DerivedGeometry derive_geometry(const ExperimentConfig& cfg)
{
    validate(cfg);
    DerivedGeometry g;
    g.mass = cfg.particle.mass;
    g.d = cfg.d;
    g.t1 = cfg.t1;
    g.t2 = cfg.t2;
    g.t_total = cfg.t1 + cfg.t2;
    g.t_talbot = cfg.particle.mass * cfg.d * cfg.d / consts::h;
    g.D = cfg.d * g.t_total / cfg.t1;
    g.k = 2.0 * consts::pi / g.D;
    g.kappa = cfg.t1 * cfg.t2 / (g.t_total * g.t_talbot);
    // Thermal harmonic-oscillator widths of the released state; omega in Hz.
    const double omega_sq = 4.0 * consts::pi * consts::pi * cfg.omega * cfg.omega;
    g.sigma_x = std::sqrt(consts::k_B * cfg.T_com / (cfg.particle.mass * omega_sq));
    g.sigma_p = std::sqrt(cfg.particle.mass * consts::k_B * cfg.T_com);
    g.Z = std::sqrt(2.0 * consts::pi) * g.sigma_p * g.t_total;
    return g;
}

double DerivedGeometry::shear(int n) const
{
    return n * d * t2 / (t_talbot * D) * d;
}

double DerivedGeometry::separation(int n) const
{
    return n * consts::h * t2 / (mass * D);
}

double DerivedGeometry::sigma_m_at_detection(double sigma_m0, double drift) const
{
    return sigma_m0 + drift * t_total;
}

} // namespace talbot
