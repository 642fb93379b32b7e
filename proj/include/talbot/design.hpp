#pragma once

#include "talbot/config.hpp"
#include "talbot/decoherence.hpp"

namespace talbot {

/// The two free control parameters of a run; mass and t1 are fixed inputs.
struct ControlVector {
    double phi0 = 0.0;  // rad, peak coherent phase of the grating pulse
    double t2 = 0.0;    // s, post-grating free fall
};

struct ControlBounds {
    double t2_lo_talbot = 0.25;  // in units of the Talbot time
    double t2_hi_talbot = 2.0;
    double phi0_lo = 0.0;
    double phi0_hi = 3.0 * 3.141592653589793;
};

/// First-harmonic fringe visibility before any decoherence:
/// 2 |B~_1| exp[-2 (pi sigma_x t2 / (D t1))^2] at the given controls.
double visibility_sin(const ControlVector& C, const ExperimentConfig& cfg);

/// The same visibility after the collapse channel at theta_ref.
double visibility_reduced(const ControlVector& C, const CslParams& theta_ref,
                          const ExperimentConfig& cfg);

/// Maximise the visibility drop nu_sin - nu_red over the control rectangle:
/// coarse x coarse scan (parallel, fixed tie-break order), then three rounds
/// of alternating golden-section refinement per axis. Control points where
/// the objective cannot be evaluated are excluded from the argmax. Throws
/// DegenerateObjectiveError when the objective is identically zero (most
/// commonly theta_ref = 0).
ControlVector optimize_controls(const ExperimentConfig& cfg,
                                const CslParams& theta_ref,
                                const ControlBounds& bounds = {},
                                int coarse = 41);

/// Pulse spot-size/energy pair realising a target peak phase: the spot
/// covers the 3-sigma ballistically expanded thermal cloud at the grating
/// time, and the energy follows from the linear phase-energy relation.
struct GratingPulse {
    double a_G = 0.0;  // m^2
    double E_G = 0.0;  // J
};

GratingPulse grating_pulse(double phi0_target, const ExperimentConfig& cfg,
                           double t1);

} // namespace talbot
