#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "talbot/information.hpp"
#include "talbot/posterior.hpp"
#include "talbot/scenario.hpp"
#include "talbot/theta_grid.hpp"

namespace talbot {

/// %.17g — exact double round-trip, the precision every CSV column uses.
std::string format_full(double v);

/// Header `x_m`, one arrival position per row.
void write_positions_csv(const std::string& path, std::span<const double> xs);

/// Header `log10_rc,log10_lambda,density`; r_c outer loop, lambda inner.
/// Density is with respect to the linear parameters (lambda_c, r_c).
void write_density_csv(const std::string& path, const GridDensity& g);

/// Header `r_c_m,lambda_c_max_per_s` — same shape the experimental-prior
/// boundary reader consumes, so an exclusion output can seed a later prior.
void write_exclusion_csv(const std::string& path, const ExclusionCurve& curve);

/// Header `N,M,mode,H_bits,delta_bits,seed`.
void write_info_csv(const std::string& path, std::span<const InfoResult> rows,
                    std::uint64_t seed);

/// Plot annotations only, never inference input: historic collapse-rate
/// proposals as points, and the macroscopicity lower-bound curve from a
/// rigid graphene disk (radius 10 um) required to collapse within 10 ms.
void write_landmarks_json(const std::string& path);

/// Collapse rate per unit lambda_c of a thin rigid disk at full separation:
/// (m/m0)^2 (2 rc^2/R^2) I, with I = 2[1 - e^-x (I0(x)+I1(x))], x = R^2/(2 rc^2)
/// (the Gaussian-correlation overlap integral of a sharp-edged disk).
/// Exposed so tests can pin it against direct quadrature.
double disk_rate_at_unit_lambda(double rc, double disk_radius, double disk_mass);

/// Provenance sidecar shared by every artifact: tool name/version, command,
/// seed, config hash, and the full canonical config text (so the run can be
/// reproduced byte-identically from the artifact alone).
nlohmann::json provenance_json(const std::string& command, const Scenario& s);

/// Serialise with a stable layout and a trailing newline.
void write_json(const std::string& path, const nlohmann::json& j);

} // namespace talbot
