#include "talbot/mie.hpp"

#include <cmath>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

MieEvaluator::MieEvaluator(double x, std::complex<double> m_rel)
{
    if (!(x > 0.0))
        throw ConfigError("Mie size parameter must be positive");
    const std::complex<double> y = m_rel * x;

    // Series length per Wiscombe's criterion; the logarithmic derivative is
    // started further down and recurred towards n = 1 for stability.
    const int n_stop = static_cast<int>(std::lround(x + 4.0 * std::cbrt(x) + 2.0));
    const int nmx = std::max(n_stop, static_cast<int>(std::abs(y))) + 16;

    std::vector<std::complex<double>> dlog(nmx + 1, {0.0, 0.0});
    for (int n = nmx; n >= 1; --n) {
        const std::complex<double> an = static_cast<double>(n) / y;
        dlog[n - 1] = an - 1.0 / (dlog[n] + an);
    }

    a_.resize(n_stop);
    b_.resize(n_stop);

    // Riccati-Bessel psi_n, chi_n by upward recurrence; xi_n = psi_n - i chi_n.
    double psi_prev2 = std::cos(x);   // psi_{-1}
    double psi_prev = std::sin(x);    // psi_0
    double chi_prev2 = -std::sin(x);  // chi_{-1}
    double chi_prev = std::cos(x);    // chi_0
    std::complex<double> xi_prev(psi_prev, -chi_prev);

    for (int n = 1; n <= n_stop; ++n) {
        const double psi = (2.0 * n - 1.0) / x * psi_prev - psi_prev2;
        const double chi = (2.0 * n - 1.0) / x * chi_prev - chi_prev2;
        const std::complex<double> xi(psi, -chi);

        const std::complex<double> da = dlog[n] / m_rel + static_cast<double>(n) / x;
        const std::complex<double> db = dlog[n] * m_rel + static_cast<double>(n) / x;
        a_[n - 1] = (da * psi - psi_prev) / (da * xi - xi_prev);
        b_[n - 1] = (db * psi - psi_prev) / (db * xi - xi_prev);

        psi_prev2 = psi_prev;
        psi_prev = psi;
        chi_prev2 = chi_prev;
        chi_prev = chi;
        xi_prev = xi;
    }
}

ScatterAmplitude MieEvaluator::at(double mu) const
{
    ScatterAmplitude s{{0.0, 0.0}, {0.0, 0.0}};
    double pi_prev = 0.0;  // pi_0
    double pi_n = 1.0;     // pi_1
    const int n_stop = terms();
    for (int n = 1; n <= n_stop; ++n) {
        const double tau_n = n * mu * pi_n - (n + 1.0) * pi_prev;
        const double fn = (2.0 * n + 1.0) / (n * (n + 1.0));
        s.S1 += fn * (a_[n - 1] * pi_n + b_[n - 1] * tau_n);
        s.S2 += fn * (a_[n - 1] * tau_n + b_[n - 1] * pi_n);
        const double pi_next = ((2.0 * n + 1.0) * mu * pi_n - (n + 1.0) * pi_prev) / n;
        pi_prev = pi_n;
        pi_n = pi_next;
    }
    return s;
}

double MieEvaluator::sigma_ext(double k) const
{
    double acc = 0.0;
    for (int n = 1; n <= terms(); ++n)
        acc += (2.0 * n + 1.0) * (a_[n - 1] + b_[n - 1]).real();
    return 2.0 * consts::pi / (k * k) * acc;
}

double MieEvaluator::sigma_sca(double k) const
{
    double acc = 0.0;
    for (int n = 1; n <= terms(); ++n)
        acc += (2.0 * n + 1.0) * (std::norm(a_[n - 1]) + std::norm(b_[n - 1]));
    return 2.0 * consts::pi / (k * k) * acc;
}

ScatterAmplitude mie_amplitudes(double x_size, std::complex<double> m_rel,
                                double cos_theta)
{
    return MieEvaluator(x_size, m_rel).at(cos_theta);
}

SphereAmplitudes::SphereAmplitudes(const Particle& particle, double k)
{
    const std::complex<double> chi = particle.chi_grating();
    if (particle.use_mie) {
        mie_ = true;
        const std::complex<double> m_rel = std::sqrt(particle.eps.grating);
        mie_eval_.emplace(k * particle.radius, m_rel);
        sigma_abs_ = mie_eval_->sigma_abs(k);
        sigma_sca_ = mie_eval_->sigma_sca(k);
    } else {
        const double x = k * particle.radius;
        const std::complex<double> cm =
            (particle.eps.grating - 1.0) / (particle.eps.grating + 2.0);
        s_ray_ = std::complex<double>(0.0, -1.0) * x * x * x * cm;
        sigma_abs_ = k * chi.imag();
        sigma_sca_ = std::pow(k, 4) * std::norm(chi) / (6.0 * consts::pi);
    }
}

ScatterAmplitude SphereAmplitudes::at(double cos_theta) const
{
    if (mie_)
        return mie_eval_->at(cos_theta);
    return {s_ray_, s_ray_ * cos_theta};
}

} // namespace talbot
