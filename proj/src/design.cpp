#include "talbot/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/geometry.hpp"
#include "talbot/grating.hpp"
#include "talbot/parallel.hpp"

namespace talbot {

namespace {

// Rebuild the config at the trial controls.  E_G is recomputed so the peak
// phase tracks C.phi0 exactly; everything else is inherited.
ExperimentConfig at_controls(const ControlVector& C, const ExperimentConfig& base) {
    ExperimentConfig cfg = base;
    cfg.phi0 = C.phi0;
    cfg.t2 = C.t2;
    cfg.E_G = (C.phi0 > 0.0) ? pulse_energy_for_phase(C.phi0, cfg.a_G, cfg) : 0.0;
    return cfg;
}

} // namespace

double visibility_sin(const ControlVector& C, const ExperimentConfig& base) {
    if (!(C.phi0 >= 0.0)) throw ConfigError("visibility: phi0 must be >= 0");
    if (!(C.t2 > 0.0)) throw ConfigError("visibility: t2 must be > 0");
    ExperimentConfig cfg = at_controls(C, base);
    DerivedGeometry geo = derive_geometry(cfg);
    double B1 = std::abs(talbot_coefficient(1, geo.shear(1), cfg));
    double arg = std::numbers::pi * geo.sigma_x * cfg.t2 / (geo.D * cfg.t1);
    return 2.0 * B1 * std::exp(-2.0 * arg * arg);
}

double visibility_reduced(const ControlVector& C, const CslParams& theta_ref,
                          const ExperimentConfig& base) {
    double nu = visibility_sin(C, base);
    if (theta_ref.lambda_c == 0.0) return nu;
    ExperimentConfig cfg = at_controls(C, base);
    DerivedGeometry geo = derive_geometry(cfg);
    DecoherenceChannel col = csl_channel(theta_ref, cfg.particle);
    return nu * col.reduction(1, geo);
}

ControlVector optimize_controls(const ExperimentConfig& base,
                                const CslParams& theta_ref,
                                const ControlBounds& bounds, int coarse) {
    if (theta_ref.lambda_c == 0.0)
        throw DegenerateObjectiveError(
            "optimize_controls: reference collapse rate is zero, the visibility "
            "drop vanishes for every control setting");
    if (!(bounds.t2_lo_talbot > 0.0) || !(bounds.t2_hi_talbot > bounds.t2_lo_talbot))
        throw ConfigError("optimize_controls: invalid t2 bounds");
    if (!(bounds.phi0_lo >= 0.0) || !(bounds.phi0_hi > bounds.phi0_lo))
        throw ConfigError("optimize_controls: invalid phi0 bounds");
    if (coarse < 3)
        throw ConfigError("optimize_controls: coarse grid needs >= 3 nodes");

    DerivedGeometry geo0 = derive_geometry(base);
    const double t2_lo = bounds.t2_lo_talbot * geo0.t_talbot;
    const double t2_hi = bounds.t2_hi_talbot * geo0.t_talbot;

    // The reference channel's rate is control-independent; only the order-1
    // reduction depends on the trial geometry. nu_red = nu_sin R_1, so the
    // drop is nu_sin (1 - R_1) per objective evaluation.
    const DecoherenceChannel ref = csl_channel(theta_ref, base.particle);
    auto objective = [&](double phi0, double t2) -> double {
        if (phi0 <= 0.0) return 0.0;  // no grating, no fringes, no drop
        try {
            ControlVector C{phi0, t2};
            double nu = visibility_sin(C, base);
            DerivedGeometry geo = derive_geometry(at_controls(C, base));
            return nu * (1.0 - ref.reduction(1, geo));
        } catch (const Error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    const int n_coarse = coarse;
    std::vector<double> score(static_cast<std::size_t>(n_coarse) * n_coarse);
    auto phi_at = [&](int i) {
        return bounds.phi0_lo + (bounds.phi0_hi - bounds.phi0_lo) * i / (n_coarse - 1);
    };
    auto t2_at = [&](int j) {
        return t2_lo + (t2_hi - t2_lo) * j / (n_coarse - 1);
    };
    parallel_for(static_cast<std::size_t>(n_coarse) * n_coarse, [&](std::size_t idx) {
        int i = static_cast<int>(idx) / n_coarse;
        int j = static_cast<int>(idx) % n_coarse;
        score[idx] = objective(phi_at(i), t2_at(j));
    });

    // Fixed-order argmax so the result does not depend on thread count.
    int best_i = -1, best_j = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_coarse; ++i)
        for (int j = 0; j < n_coarse; ++j) {
            double s = score[static_cast<std::size_t>(i) * n_coarse + j];
            if (std::isfinite(s) && s > best) {
                best = s;
                best_i = i;
                best_j = j;
            }
        }
    if (best_i < 0 || !(best > 1e-12))
        throw DegenerateObjectiveError(
            "optimize_controls: objective is flat over the whole control rectangle");

    // Golden-section refinement on each axis in turn, restricted to one
    // coarse cell either side of the incumbent.
    constexpr double gr = 0.6180339887498949;  // 1/golden ratio
    double phi = phi_at(best_i);
    double t2 = t2_at(best_j);
    double phi_a = phi_at(std::max(0, best_i - 1));
    double phi_b = phi_at(std::min(n_coarse - 1, best_i + 1));
    double t2_a = t2_at(std::max(0, best_j - 1));
    double t2_b = t2_at(std::min(n_coarse - 1, best_j + 1));

    auto golden = [&](double lo, double hi, auto f) {
        double x1 = hi - gr * (hi - lo);
        double x2 = lo + gr * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = f(x2);
            } else {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = f(x1);
            }
            if (hi - lo < 1e-12 * (std::abs(hi) + std::abs(lo))) break;
        }
        return 0.5 * (lo + hi);
    };

    for (int round = 0; round < 3; ++round) {
        phi = golden(phi_a, phi_b, [&](double p) { return objective(p, t2); });
        t2 = golden(t2_a, t2_b, [&](double t) { return objective(phi, t); });
    }

    double cur = objective(phi, t2);
    if (!(cur >= best)) {
        phi = phi_at(best_i);
        t2 = t2_at(best_j);
        cur = best;
    }

    // Compass pattern search polishes away the cross-coupling the alternating
    // 1-D passes leave behind: both axes shrink together, so at return no
    // single-axis step down to ~1e-8 of either range improves the objective.
    // Fixed trial order keeps the result independent of thread count.
    const double range_phi = bounds.phi0_hi - bounds.phi0_lo;
    const double range_t2 = t2_hi - t2_lo;
    double h = 1.0 / (n_coarse - 1);
    for (int evals = 0; h > 1e-8 && evals < 20000; ) {
        const double trial[4][2] = {
            {std::min(bounds.phi0_hi, phi + h * range_phi), t2},
            {std::max(bounds.phi0_lo, phi - h * range_phi), t2},
            {phi, std::min(t2_hi, t2 + h * range_t2)},
            {phi, std::max(t2_lo, t2 - h * range_t2)},
        };
        bool moved = false;
        for (const auto& c : trial) {
            const double s = objective(c[0], c[1]);
            ++evals;
            if (s > cur) {
                phi = c[0];
                t2 = c[1];
                cur = s;
                moved = true;
                break;
            }
        }
        if (!moved) h *= 0.5;
    }
    return ControlVector{phi, t2};
}

GratingPulse grating_pulse(double phi0_target, const ExperimentConfig& cfg,
                           double t1) {
    if (!(phi0_target >= 0.0))
        throw ConfigError("grating_pulse: target phase must be >= 0");
    if (!(t1 > 0.0)) throw ConfigError("grating_pulse: t1 must be > 0");
    double kB = consts::k_B;
    double m = cfg.particle.mass;
    // omega is an ordinary frequency in Hz, matching derive_geometry.
    double omega_sq = 4.0 * consts::pi * consts::pi * cfg.omega * cfg.omega;
    double sigma_x = std::sqrt(kB * cfg.T_com / (m * omega_sq));
    double sigma_p = std::sqrt(kB * cfg.T_com * m);
    double spread = 3.0 * (sigma_x + sigma_p * t1 / m);
    GratingPulse P;
    P.a_G = std::numbers::pi * spread * spread;
    P.E_G = (phi0_target > 0.0)
                ? pulse_energy_for_phase(phi0_target, P.a_G, cfg)
                : 0.0;
    return P;
}

} // namespace talbot
