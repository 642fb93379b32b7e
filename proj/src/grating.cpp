#include "talbot/grating.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/mie.hpp"
#include "talbot/quadrature.hpp"
#include "talbot/special.hpp"

namespace talbot {

namespace {

// Photon wavenumber of the two running waves forming the standing-wave
// grating of period d (wavelength 2d).
double grating_wavenumber(const ExperimentConfig& cfg)
{
    return consts::pi / cfg.d;
}

// Common prefactor of the photon-exchange masks. Normalisation: with the
// dimensionless Mie amplitudes S (differential cross-section |S|^2/k^2), the
// fully-resolving limit of -F equals the pulse- and position-averaged number
// of scattered photons, 2 sigma_sca E_G/(hbar c k a_G) -- the exact analogue
// of how zeta_abs counts absorbed photons via n_0.
double mask_prefactor(const ExperimentConfig& cfg)
{
    const double k = grating_wavenumber(cfg);
    return 2.0 * (cfg.E_G / cfg.a_G) / (consts::hbar * consts::c * k * k * k);
}

// Angular integrands of the six mask components at direction
// (u = cos(theta), phi), theta measured from the grating axis, phi from the
// polarisation plane. Incidence +x gives S(theta), incidence -x gives
// S(pi - theta) with both basis vectors flipped, hence the minus sign on the
// in-plane (S2) cross products.
struct MaskIntegrand {
    const SphereAmplitudes& amp;
    double ks;  // photon k times separation s

    // caches the per-u amplitudes across the azimuthal sweep
    mutable double u_cached = std::numeric_limits<double>::quiet_NaN();
    mutable ScatterAmplitude sp{}, sm{};

    std::array<double, 6> operator()(double u, double phi) const
    {
        if (u != u_cached) {
            sp = amp.at(u);
            sm = amp.at(-u);
            u_cached = u;
        }
        const double c2 = std::cos(phi) * std::cos(phi);
        const double s2 = 1.0 - c2;
        const std::complex<double> cross2 = std::conj(sp.S2) * sm.S2;
        const std::complex<double> cross1 = std::conj(sp.S1) * sm.S1;

        const double wa = std::cos(ks * u) - std::cos(ks);
        const double wb = std::sin(ks * u);
        const double wF = std::cos(ks * (1.0 - u)) - 1.0;

        return {
            -cross2.real() * c2 * wa,          // a_theta
            cross1.real() * s2 * wa,           // a_phi
            -cross2.imag() * c2 * wb,          // b_theta
            cross1.imag() * s2 * wb,           // b_phi
            std::norm(sp.S2) * c2 * wF,        // F_theta
            std::norm(sp.S1) * s2 * wF,        // F_phi
        };
    }
};

MaskTerms assemble(double s, const ExperimentConfig& cfg,
                   const std::array<double, 6>& integrals)
{
    const double pref = mask_prefactor(cfg);
    MaskTerms m;
    m.a_theta = pref * integrals[0];
    m.a_phi = pref * integrals[1];
    m.b_theta = pref * integrals[2];
    m.b_phi = pref * integrals[3];
    m.F_theta = pref * integrals[4];
    m.F_phi = pref * integrals[5];
    m.zeta_coh = cfg.phi0 * std::sin(consts::pi * s / cfg.d);
    m.zeta_abs = 0.5 * absorbed_photon_number(cfg)
                 * (1.0 - std::cos(consts::pi * s / cfg.d));
    return m;
}

} // namespace

double absorbed_photon_number(const ExperimentConfig& cfg)
{
    const double k = grating_wavenumber(cfg);
    const SphereAmplitudes amp(cfg.particle, k);
    // Antinode mean photon number: 4 x running-wave fluence x sigma_abs.
    return 4.0 * amp.sigma_abs() * (cfg.E_G / cfg.a_G) / (consts::hbar * consts::c * k);
}

double pulse_energy_for_phase(double phi0, double a_G, const ExperimentConfig& cfg)
{
    if (phi0 < 0.0)
        throw ConfigError("phi0 must be non-negative");
    if (!(a_G > 0.0))
        throw ConfigError("spot area must be positive");
    if (phi0 == 0.0)
        return 0.0;
    const double k = grating_wavenumber(cfg);
    const double re_chi = cfg.particle.chi_grating().real();
    if (!(re_chi > 0.0))
        throw MaterialError("optical force constant requires Re(chi) > 0");
    const double f0 = 0.5 * k * k * k * re_chi;
    return phi0 * consts::hbar * consts::c * k * k * k * a_G / (4.0 * f0);
}

MaskTerms grating_mask_terms(double s, const ExperimentConfig& cfg)
{
    if (cfg.E_G == 0.0) {
        MaskTerms m;
        m.zeta_coh = cfg.phi0 * std::sin(consts::pi * s / cfg.d);
        return m;
    }
    const double k = grating_wavenumber(cfg);
    const SphereAmplitudes amp(cfg.particle, k);
    MaskIntegrand g{amp, k * s};
    const auto integrals = SolidAngleRule(1e-10).integrate_array<6>(g);
    return assemble(s, cfg, integrals);
}

MaskTerms grating_mask_terms_fixed(double s, const ExperimentConfig& cfg, int nodes)
{
    const double k = grating_wavenumber(cfg);
    const SphereAmplitudes amp(cfg.particle, k);
    MaskIntegrand g{amp, k * s};
    const auto integrals = SolidAngleRule().evaluate_array<6>(g, nodes);
    return assemble(s, cfg, integrals);
}

namespace {

// Half-width of the strip around the branch point |w| = |v| where both
// Bessel forms lose accuracy to cancellation in sqrt(w^2 - v^2).
constexpr double branch_strip = 1e-3;

// n-th Fourier cosine coefficient of exp[v(cos psi - 1)] about the kernel
// peak, i.e. e^{-v} c_n(w, v): periodic trapezoid, geometrically convergent.
double scaled_fourier_coefficient(int n, double w, double v)
{
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int pts = 64; pts <= (1 << 17); pts *= 2) {
        double acc = 0.0;
        for (int j = 0; j < pts; ++j) {
            const double psi = 2.0 * consts::pi * j / pts;
            acc += std::exp(v * (std::cos(psi) - 1.0))
                   * std::cos(w * std::sin(psi) - n * psi);
        }
        const double val = acc / pts;
        if (prev == prev && std::abs(val - prev) <= 1e-14 * std::max(1.0, std::abs(val)))
            return val;
        prev = val;
    }
    throw NumericalError("Talbot coefficient: Fourier integral did not converge");
}

} // namespace

double talbot_coefficient(int n, const MaskTerms& m)
{
    if (n < 0)
        throw Error("talbot_coefficient: order must be non-negative");

    double w = m.zeta_coh - m.b();
    double v = m.a() + m.zeta_abs;
    double sign = 1.0;
    if (v < 0.0) {  // c_n(w, -v) = (-1)^n c_n(-w, v)
        v = -v;
        w = -w;
        if (n % 2 != 0)
            sign = -sign;
    }

    const double damping = m.F() - m.zeta_abs;
    const double scale = std::abs(w) + v;
    double result;
    if (std::abs(w) - v > branch_strip * scale) {
        // phase modulation dominates: rho^{n/2} J_n(z)
        const double z = std::copysign(std::sqrt(w * w - v * v), w);
        result = std::exp(damping) * sign
                 * std::pow((w + v) / (w - v), 0.5 * n) * bessel_J(n, z);
    } else if (v - std::abs(w) > branch_strip * scale) {
        // damping modulation dominates: the I_n continuation
        const double y = std::sqrt(v * v - w * w);
        result = std::exp(damping) * sign
                 * std::pow((v + w) / (v - w), 0.5 * n) * bessel_I(n, y);
    } else if (scale == 0.0) {
        result = std::exp(damping) * (n == 0 ? 1.0 : 0.0);
    } else {
        // branch-point strip: defining integral, e^v folded into the damping
        result = std::exp(damping + v) * sign * scaled_fourier_coefficient(n, w, v);
    }
    if (!std::isfinite(result))
        throw ConsistencyError("Talbot coefficient evaluation overflowed");
    return result;
}

double talbot_coefficient(int n, double s, const ExperimentConfig& cfg)
{
    return talbot_coefficient(n, grating_mask_terms(s, cfg));
}

double talbot_coefficient_closed(int n, const MaskTerms& m, int force_terms)
{
    if (n < 0)
        throw Error("talbot_coefficient_closed: order must be non-negative");

    const double u = m.zeta_coh;
    const double v = m.a() + m.zeta_abs;
    const double b = m.b();
    const double pref = std::exp(m.F() - m.zeta_abs);

    if (v == 0.0 && b == 0.0)
        return pref * bessel_J(n, u);  // pure phase grating
    if (u == 0.0 && v == 0.0)
        return pref * bessel_J(n, -b);
    if (!((u - v) * (u + v) > 0.0))
        throw FormulaDomainError(
            "Talbot coefficient closed form outside its domain: requires "
            "zeta_coh^2 > (a + zeta_abs)^2");

    const double z = std::copysign(std::sqrt(u * u - v * v), u - v);
    const double rho = (u + v) / (u - v);
    const double log_rho = std::log(rho);

    auto term = [&](int kk) {
        const double half_pow = 0.5 * (n + kk);
        const double jb = bessel_J(kk, b);
        const double jz = bessel_J(n + kk, z);
        if (jb == 0.0 || jz == 0.0)
            return 0.0;
        const double log_scale = half_pow * log_rho;
        if (std::abs(log_scale) < 400.0)
            return std::pow(rho, half_pow) * jb * jz;
        const double lt = log_scale + std::log(std::abs(jb)) + std::log(std::abs(jz));
        if (lt < -745.0)
            return 0.0;
        if (lt > 709.0)
            throw ConsistencyError("Talbot coefficient term overflow");
        return std::copysign(std::exp(lt), jb * jz);
    };

    double sum = term(0);
    const int k_cap = force_terms > 0 ? force_terms : 250;
    int quiet = 0;
    for (int kk = 1; kk <= k_cap; ++kk) {
        const double tp = term(kk);
        const double tm = term(-kk);
        sum += tp + tm;
        if (force_terms > 0)
            continue;
        if (std::abs(tp) + std::abs(tm) < 1e-17 * (1.0 + std::abs(sum))) {
            if (++quiet >= 3)
                break;
        } else {
            quiet = 0;
        }
        if (kk == k_cap)
            throw ConsistencyError("Talbot coefficient Bessel sum did not converge");
    }
    return pref * sum;
}

} // namespace talbot
