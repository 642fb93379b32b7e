#include "talbot/particle.hpp"

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

Particle Particle::from_mass(double mass_kg, double density_kg_m3,
                             Permittivity eps, bool use_mie)
{
    if (!(mass_kg > 0.0))
        throw ConfigError("particle mass must be positive");
    if (!(density_kg_m3 > 0.0))
        throw ConfigError("particle density must be positive");
    Particle p;
    p.mass = mass_kg;
    p.density = density_kg_m3;
    p.radius = std::cbrt(3.0 * mass_kg / (4.0 * consts::pi * density_kg_m3));
    p.eps = eps;
    p.use_mie = use_mie;
    return p;
}

std::complex<double> Particle::chi(std::complex<double> eps_band) const
{
    const double r3 = radius * radius * radius;
    return 4.0 * consts::pi * r3 * (eps_band - 1.0) / (eps_band + 2.0);
}

} // namespace talbot
