#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "talbot/particle.hpp"

namespace talbot {

/// Lorenz-Mie scattering amplitudes for one direction, Bohren-Huffman
/// convention: far field E ~ E0 e^{ikr}/(-ikr) S(theta), S dimensionless.
/// S1 couples to polarisation perpendicular to the scattering plane,
/// S2 to polarisation in the plane; S2 -> S1 cos(theta) in the point limit.
struct ScatterAmplitude {
    std::complex<double> S1;
    std::complex<double> S2;
};

/// Mie coefficients a_n, b_n for a homogeneous sphere, computed once by the
/// logarithmic-derivative downward recurrence; amplitudes per angle after.
class MieEvaluator {
public:
    /// x_size = k R; m_rel = complex refractive index relative to vacuum.
    MieEvaluator(double x_size, std::complex<double> m_rel);

    ScatterAmplitude at(double cos_theta) const;

    int terms() const { return static_cast<int>(a_.size()); }

    /// Cross sections in m^2 for wavenumber k consistent with x_size = k R.
    double sigma_ext(double k) const;
    double sigma_sca(double k) const;
    double sigma_abs(double k) const { return sigma_ext(k) - sigma_sca(k); }

private:
    std::vector<std::complex<double>> a_, b_;
};

ScatterAmplitude mie_amplitudes(double x_size, std::complex<double> m_rel,
                                double cos_theta);

/// Scattering amplitudes of the sphere at wavenumber k: full Mie series when
/// particle.use_mie, otherwise the Rayleigh point limit
/// S1 = -i (kR)^3 (eps-1)/(eps+2), S2 = S1 cos(theta).
class SphereAmplitudes {
public:
    SphereAmplitudes(const Particle& particle, double k);

    ScatterAmplitude at(double cos_theta) const;

    double sigma_abs() const { return sigma_abs_; }  // m^2
    double sigma_sca() const { return sigma_sca_; }  // m^2

private:
    bool mie_ = false;
    std::complex<double> s_ray_{0.0, 0.0};   // Rayleigh S1 prefactor
    std::optional<MieEvaluator> mie_eval_;
    double sigma_abs_ = 0.0;
    double sigma_sca_ = 0.0;
};

} // namespace talbot
