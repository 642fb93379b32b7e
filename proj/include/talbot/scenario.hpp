#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "talbot/config.hpp"
#include "talbot/decoherence.hpp"
#include "talbot/design.hpp"
#include "talbot/information.hpp"
#include "talbot/theta_grid.hpp"

namespace talbot {

/// Collapse-parameter grid specification (log-spaced on both axes).
struct GridSpec {
    double lambda_min = 1e-20;  // 1/s
    double lambda_max = 1e-6;
    int n_lambda = 80;
    double rc_min = 1e-9;  // m
    double rc_max = 1e-4;
    int n_rc = 80;
};

enum class PriorKind { mdip, experimental };

struct PriorChoice {
    PriorKind kind = PriorKind::mdip;
    std::string boundary_path;  // CSV of empirical upper bounds (experimental)
};

/// One swept scenario field with its value list. With auto controls the
/// default re-optimizes (phi0, t2) for each point; reoptimize = false
/// resolves the base scenario once and carries those controls (phi0 in rad,
/// t2 in Talbot units) to every point. Explicit controls are used as-is
/// either way.
struct SweepSpec {
    bool present = false;
    std::string variable;  // mass_u | pressure_hpa | drift_m_per_s | n_points
    std::vector<double> values;
    bool reoptimize = true;
};

/// A complete run description as read from a config file: experiment,
/// inference grid, prior, and run parameters. Fields that default to the
/// optimiser or to derived quantities carry an *_auto flag; their numeric
/// twin is meaningful only when the flag is false.
struct Scenario {
    std::string name;
    std::string description;

    // [particle]
    double mass_u = 0.0;
    double density_kg_m3 = 0.0;
    std::complex<double> eps_grating{1.0, 0.0};
    std::complex<double> eps_blackbody{1.0, 0.0};
    bool use_mie = false;

    // [trap]
    double omega_hz = 0.0;
    double t_com_k = 0.0;

    // [environment]
    double t_int_k = 0.0;
    double t_env_k = 0.0;
    double pressure_hpa = 0.0;
    double gas_mass_u = 0.0;
    double sigma_geo_scale = 1.0;

    // [beamline]
    double grating_period_nm = 0.0;
    double t1_in_talbot_times = 0.0;
    bool t2_auto = true;
    double t2_in_talbot_times = 0.0;
    bool phi0_auto = true;
    double phi0_rad = 0.0;
    bool spot_auto = true;
    double spot_area_m2 = 0.0;

    // [detector]
    bool sigma_m0_auto = true;
    double sigma_m0_m = 0.0;
    double drift_m_per_s = 0.0;
    double window_half_width_um = 5.0;
    int window_samples = 1000;
    int n_max = 6;

    // [grid]
    GridSpec grid;

    // [inference]
    PriorChoice prior;
    double theta_true_lambda_per_s = 0.0;
    double theta_true_rc_m = 1e-7;
    double theta_ref_lambda_per_s = 1e-16;
    double theta_ref_rc_m = 1e-7;
    double confidence = 0.95;

    // [run]
    long n_points = 0;
    long mc_iters = 0;
    InfoMode mode = InfoMode::conditioned_on_null;
    std::uint64_t seed = 0;

    // [sweep] (optional)
    SweepSpec sweep;
};

/// Parse the sectioned key-value format. Keys carry their unit in the name
/// (pressure_hpa, t1_in_talbot_times); unknown sections or keys, duplicate
/// keys, malformed numbers, and "auto" on a non-auto field all throw
/// ConfigError naming the offending line.
Scenario parse_scenario(const std::string& text);

/// Canonical text form: fixed section and key order, 17-significant-digit
/// numbers, so parse(serialize(s)) == s and equal scenarios serialise to
/// identical bytes.
std::string serialize_scenario(const Scenario& s);

/// FNV-1a 64-bit hash of the canonical serialisation, as "fnv1a64:<hex>".
std::string config_hash(const Scenario& s);

/// Space-mission baseline at the given particle mass: silicon sphere,
/// 354 nm grating pulse (period 177 nm), 200 kHz trap at 20 mK, residual
/// gas at 1e-15 hPa, detector drift 10 nm per 100 s, controls optimised.
Scenario maqro_preset(double mass_u);

/// A scenario with every auto field replaced by its resolved value.
struct ResolvedScenario {
    Scenario scenario;     // effective inputs (auto flags preserved)
    ExperimentConfig cfg;  // fully numeric, validated
    double t_talbot = 0.0; // s
    ControlVector controls;
    bool optimized = false;  // controls came from the optimiser
    CslParams theta_true;
    CslParams theta_ref;

    ThetaGrid make_grid() const;
};

/// Fill in the physics: particle from (mass, density), times from Talbot
/// units, spot area from the thermal spread, sigma_m0 from the trap width,
/// and the controls either as given or from the visibility-drop optimiser
/// (phi0_rad and t2_in_talbot_times must be both auto or both explicit).
/// Validates the final configuration.
ResolvedScenario resolve(const Scenario& s);

} // namespace talbot
