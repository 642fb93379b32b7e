#pragma once

#include "talbot/config.hpp"

namespace talbot {

/// Photon-exchange masks of the optical grating for one Talbot-Lau shear s:
/// solid-angle integrals of Mie/Rayleigh amplitude products, split by the
/// polarisation of the scattered mode (theta = in the plane spanned by the
/// grating axis and the outgoing direction, phi = perpendicular to it).
/// a: symmetric (real) scattering mask, b: antisymmetric (imaginary) part,
/// F: decoherence mask from photons scattered out of either running wave
/// (always <= 0). zeta_coh/zeta_abs are the coherent-phase and absorption
/// modulation depths at the same shear.
struct MaskTerms {
    double a_theta = 0.0, a_phi = 0.0;
    double b_theta = 0.0, b_phi = 0.0;
    double F_theta = 0.0, F_phi = 0.0;
    double zeta_coh = 0.0;
    double zeta_abs = 0.0;

    double a() const { return a_theta + a_phi; }
    double b() const { return b_theta + b_phi; }
    double F() const { return F_theta + F_phi; }
};

/// Mean number of photons absorbed at a standing-wave antinode, fixed by the
/// imaginary part of the same light-sphere coupling that produces phi0.
double absorbed_photon_number(const ExperimentConfig& cfg);

/// Pulse energy that realises a peak coherent phase phi0 for the given spot
/// area and sphere material: E_G = phi0 hbar c k^3 a_G / (4 F0) with optical
/// force constant F0 = k^3 Re(chi)/2. Throws MaterialError when Re(chi) <= 0.
double pulse_energy_for_phase(double phi0, double a_G, const ExperimentConfig& cfg);

/// Evaluate the grating masks at sphere separation s (m).
MaskTerms grating_mask_terms(double s, const ExperimentConfig& cfg);

/// Same, at forced angular resolution without refinement (test oracle hook).
MaskTerms grating_mask_terms_fixed(double s, const ExperimentConfig& cfg, int nodes);

/// Generalised Talbot coefficient B~_n at shear s: the n-th Fourier
/// coefficient of the grating transmission kernel including coherent phase,
/// absorption, and scattering masks. Reduces to J_n(phi0 sin(pi s/d)) for a
/// pure phase grating. The coefficient only depends on the masks through
/// w = zeta_coh - b and v = a + zeta_abs (plus the overall damping factor);
/// it is defined and real for every mask value and evaluated on the branch
/// the masks select: a Bessel J form for |w| > |v| (phase modulation
/// dominates), its modified-Bessel continuation I for |v| > |w| (damping
/// modulation dominates, e.g. the even orders near the Talbot resonance
/// where zeta_coh vanishes), and the defining Fourier integral in a narrow
/// strip around the branch point |w| = |v|.
double talbot_coefficient(int n, const MaskTerms& m);
double talbot_coefficient(int n, double s, const ExperimentConfig& cfg);

/// The same coefficient from the closed-form Bessel k-sum over
/// rho^{(n+k)/2} J_k(b) J_{n+k}(z), rho = (zeta_coh+a+zeta_abs)/(zeta_coh-
/// a-zeta_abs), z = sign(zeta_coh-a-zeta_abs) sqrt(zeta_coh^2-(a+zeta_abs)^2).
/// Valid only while zeta_coh^2 > (a+zeta_abs)^2: outside, the half-integer
/// power has a negative base and the form throws FormulaDomainError rather
/// than silently taking magnitudes (use talbot_coefficient there, which
/// continues through the branch point). force_terms > 0 bypasses the
/// adaptive truncation with a fixed summation range |k| <= force_terms
/// (tests use it to multiply the range).
double talbot_coefficient_closed(int n, const MaskTerms& m, int force_terms = -1);

} // namespace talbot
