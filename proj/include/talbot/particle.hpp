#pragma once

#include <complex>

namespace talbot {

/// Relative permittivities of the sphere material in the two optical bands
/// that matter here: at the grating wavelength, and (band-averaged constant)
/// across the thermal spectrum.
struct Permittivity {
    std::complex<double> grating{1.0, 0.0};
    std::complex<double> blackbody{1.0, 0.0};
};

/// A homogeneous dielectric nanosphere.
struct Particle {
    double mass = 0.0;     // kg
    double density = 0.0;  // kg m^-3
    double radius = 0.0;   // m, always (3m / 4 pi rho)^{1/3}
    Permittivity eps;
    bool use_mie = false;  // full Mie amplitudes instead of the Rayleigh point limit

    static Particle from_mass(double mass_kg, double density_kg_m3,
                              Permittivity eps, bool use_mie = false);

    /// Clausius-Mossotti volume susceptibility chi = 3V (eps-1)/(eps+2), m^3.
    std::complex<double> chi(std::complex<double> eps_band) const;
    std::complex<double> chi_grating() const { return chi(eps.grating); }
    std::complex<double> chi_blackbody() const { return chi(eps.blackbody); }
};

} // namespace talbot
