#pragma once

#include "talbot/config.hpp"

namespace talbot {

/// Quantities derived from an ExperimentConfig that every downstream module
/// needs: Talbot time, magnified fringe period, and the initial-state widths.
struct DerivedGeometry {
    double t_talbot = 0.0;  // m d^2 / h, s
    double D = 0.0;         // magnified fringe period d (t1+t2)/t1, m
    double k = 0.0;         // fringe wavenumber 2 pi / D, 1/m
    double kappa = 0.0;     // t1 t2 / ((t1+t2) t_talbot)
    double sigma_x = 0.0;   // initial position width, m
    double sigma_p = 0.0;   // initial momentum width, kg m/s
    double Z = 0.0;         // sqrt(2 pi) sigma_p (t1+t2), kg m
    double t_total = 0.0;   // t1 + t2, s

    // carried along for separation-argument evaluations
    double mass = 0.0;  // kg
    double d = 0.0;     // m
    double t1 = 0.0;    // s
    double t2 = 0.0;    // s

    /// Talbot-Lau shear of fringe order n: s_n = (n d t2 / (t_talbot D)) d, m.
    double shear(int n) const;

    /// Superposition separation probed by order n: x_n = n h t2 / (m D), m.
    double separation(int n) const;

    /// sigma_m at the detection time t1 + t2 for a given blur model.
    double sigma_m_at_detection(double sigma_m0, double drift) const;
};

DerivedGeometry derive_geometry(const ExperimentConfig& cfg);

} // namespace talbot
