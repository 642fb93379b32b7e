#pragma once

#include <functional>
#include <span>
#include <vector>

#include "talbot/config.hpp"
#include "talbot/geometry.hpp"

namespace talbot {

/// Continuous-collapse model parameters: rate lambda_c (1/s) at the reference
/// mass and correlation length r_c (m). lambda_c = 0 means no collapse.
struct CslParams {
    double lambda_c = 0.0;
    double r_c = 0.0;
};

enum class ChannelKind {
    csl,
    blackbody_absorption,
    blackbody_emission,
    blackbody_scattering,
    collision,
    measurement,
};

/// One decoherence channel. Rate channels reduce fringe order n by
/// exp[-Gamma (1 - f(x_n)) (t1+t2)] with x_n the order-n superposition
/// separation; the measurement channel is a Gaussian blur of width
/// blur_sigma instead.
struct DecoherenceChannel {
    ChannelKind kind = ChannelKind::collision;
    double rate = 0.0;                           // s^-1
    std::function<double(double)> resolution;    // f(x): 1 at x=0, -> 0
    double blur_sigma = 0.0;                     // m, measurement only

    double reduction(int n, const DerivedGeometry& geo) const;
};

/// Collapse-model localisation rate for an extended homogeneous sphere;
/// reduces to (m/m0)^2 lambda_c for R << r_c.
double csl_rate(const CslParams& theta, const Particle& particle);

/// Collapse-model saturation function f(x) for the same sphere; f(0) = 1,
/// f -> 0 for x >> r_c. Independent of lambda_c.
double csl_resolution(double x, double r_c, const Particle& particle);

DecoherenceChannel csl_channel(const CslParams& theta, const Particle& particle);

/// Blackbody photon channels (absorption and scattering at T_env, emission
/// at T_int). Rates are total photon-event rates over the thermal band; the
/// saturation functions carry the spatial resolution of each process.
DecoherenceChannel blackbody_channel(ChannelKind which, const ExperimentConfig& cfg);

/// Residual-gas collisions: hard-sphere event rate, fully resolving
/// (f(x) = 0 for any x > 0).
DecoherenceChannel collision_channel(const ExperimentConfig& cfg);

/// Finite detector resolution sigma_m(t) = sigma_m0 + drift t, evaluated at
/// the detection time.
DecoherenceChannel measurement_channel(const ExperimentConfig& cfg,
                                       const DerivedGeometry& geo);
double measurement_Rn(int n, double sigma_m, double D);

/// Order-resolved reduction factors, split into the collapse-model part
/// (R_mod) and everything else (R_oth). Index 0..n_max, R[0] = 1.
struct ReductionFactors {
    std::vector<double> R_mod;
    std::vector<double> R_oth;
    std::vector<double> R_total;
};

ReductionFactors combine(std::span<const DecoherenceChannel> channels, int n_max,
                         const DerivedGeometry& geo);

/// Everything the likelihood grid needs from one r_c column: the
/// lambda-independent pieces of the collapse channel, precomputed once.
class CslColumn {
public:
    CslColumn(double r_c, const Particle& particle, const DerivedGeometry& geo,
              int n_max);

    double rate_at_unit_lambda() const { return rate1_; }
    double one_minus_f(int n) const { return one_minus_f_[n]; }

    /// log R_n^mod for a given collapse rate.
    double log_reduction(double lambda_c, int n) const
    {
        return -lambda_c * rate1_ * one_minus_f_[n] * t_total_;
    }

private:
    double rate1_ = 0.0;  // Gamma at lambda_c = 1
    double t_total_ = 0.0;
    std::vector<double> one_minus_f_;
};

} // namespace talbot
