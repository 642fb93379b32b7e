#pragma once

#include <span>
#include <vector>

#include "talbot/config.hpp"
#include "talbot/geometry.hpp"

namespace talbot {

/// Decoherence-free fringe spectrum of the interferometer: Talbot
/// coefficients at the order-n shear together with the initial-state washout
/// factor. A[0] = 1 by the density convention (the DC term carries no
/// modulation).
struct TalbotSpectrum {
    std::vector<double> A;  // A_n, n = 0..n_max
    std::vector<double> B;  // B~_n at shear s_n (diagnostic)
    int n_max = 0;
};

TalbotSpectrum fringe_amplitudes(const ExperimentConfig& cfg,
                                 const DerivedGeometry& geo);

/// Unnormalised arrival-position density on the detection screen,
///   p(x) = (m/Z) [1 + 2 sum_{n>=1} R^mod_n R^oth_n A_n cos(n k x)],
/// evaluated at the given positions (window function = 1 inside the window).
/// R_mod / R_oth are reduction factors indexed by order, R[0] = 1. Raises
/// ConsistencyError if the result dips below -1e-9 of its maximum (a real
/// density cannot be negative; larger dips indicate inconsistent inputs).
std::vector<double> pattern_density(std::span<const double> x,
                                    const TalbotSpectrum& spectrum,
                                    std::span<const double> R_mod,
                                    std::span<const double> R_oth,
                                    const DerivedGeometry& geo);

} // namespace talbot
