#include "talbot/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <gsl/gsl_sf_bessel.h>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/version.hpp"

namespace talbot {

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);  // no newline translation
    if (!out)
        throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

const char* mode_word(InfoMode m)
{
    return m == InfoMode::conditioned_on_null ? "conditioned" : "prior_predictive";
}

} // namespace

std::string format_full(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_positions_csv(const std::string& path, std::span<const double> xs)
{
    auto out = open_out(path);
    out << "x_m\n";
    for (double x : xs) out << format_full(x) << '\n';
}

void write_density_csv(const std::string& path, const GridDensity& g)
{
    auto out = open_out(path);
    out << "log10_rc,log10_lambda,density\n";
    for (int ir = 0; ir < g.grid.rc.size(); ++ir)
        for (int il = 0; il < g.grid.lambda.size(); ++il)
            out << format_full(std::log10(g.grid.rc.value[ir])) << ','
                << format_full(std::log10(g.grid.lambda.value[il])) << ','
                << format_full(g.density[g.grid.index(il, ir)]) << '\n';
}

void write_exclusion_csv(const std::string& path, const ExclusionCurve& curve)
{
    auto out = open_out(path);
    out << "r_c_m,lambda_c_max_per_s\n";
    for (std::size_t i = 0; i < curve.rc.size(); ++i)
        out << format_full(curve.rc[i]) << ',' << format_full(curve.lambda_c[i])
            << '\n';
}

void write_info_csv(const std::string& path, std::span<const InfoResult> rows,
                    std::uint64_t seed)
{
    auto out = open_out(path);
    out << "N,M,mode,H_bits,delta_bits,seed\n";
    for (const InfoResult& r : rows)
        out << r.N << ',' << r.M << ',' << mode_word(r.mode) << ','
            << format_full(r.H) << ',' << format_full(r.delta) << ',' << seed
            << '\n';
}

double disk_rate_at_unit_lambda(double rc, double disk_radius, double disk_mass)
{
    if (!(rc > 0.0) || !(disk_radius > 0.0) || !(disk_mass > 0.0))
        throw ConfigError("disk_rate_at_unit_lambda: arguments must be positive");
    const double x = disk_radius * disk_radius / (2.0 * rc * rc);
    const double bracket =
        1.0 - (gsl_sf_bessel_I0_scaled(x) + gsl_sf_bessel_I1_scaled(x));
    const double n = disk_mass / consts::m_u;  // nucleon count
    return n * n * (2.0 * rc * rc / (disk_radius * disk_radius)) * 2.0 * bracket;
}

void write_landmarks_json(const std::string& path)
{
    nlohmann::json j;
    j["role"] = "plot annotations only; never used in inference";
    j["points"] = nlohmann::json::array();
    j["points"].push_back({{"label", "GRW"},
                           {"rc_m", 1e-7},
                           {"lambda_per_s", 1e-16},
                           {"note", "historic collapse-rate proposal"}});
    j["points"].push_back(
        {{"label", "Adler"},
         {"rc_m", 1e-7},
         {"lambda_per_s", 4e-8},
         {"band_decades", 2},
         {"note", "order-of-magnitude estimate from latent-image formation"}});
    j["points"].push_back(
        {{"label", "Adler"},
         {"rc_m", 1e-6},
         {"lambda_per_s", 4e-6},
         {"band_decades", 2},
         {"note", "order-of-magnitude estimate from latent-image formation"}});

    // Macroscopicity floor: a sharp-edged rigid graphene disk (areal density
    // 7.61e-7 kg/m^2, radius 10 um) must collapse within the eye's ~10 ms
    // resolution; the locus rate(lambda, rc) = 100/s is linear in lambda.
    const double radius = 1e-5;                           // m
    const double mass = 7.61e-7 * consts::pi * radius * radius;  // kg
    const double target_rate = 100.0;                     // 1/s
    nlohmann::json lb;
    lb["label"] = "macroscopicity lower bound";
    lb["model"] = "rigid disk, radius 1e-5 m, areal density 7.61e-7 kg/m^2, "
                  "collapse time 0.01 s";
    const int n = 41;
    std::vector<double> rcs(n), lams(n);
    for (int i = 0; i < n; ++i) {
        const double rc = 1e-9 * std::pow(1e5, static_cast<double>(i) / (n - 1));
        rcs[i] = rc;
        lams[i] = target_rate / disk_rate_at_unit_lambda(rc, radius, mass);
    }
    lb["rc_m"] = rcs;
    lb["lambda_per_s"] = lams;
    j["lower_bound"] = lb;

    write_json(path, j);
}

nlohmann::json provenance_json(const std::string& command, const Scenario& s)
{
    nlohmann::json j;
    j["tool"] = k_tool_name;
    j["version"] = k_tool_version;
    j["command"] = command;
    j["seed"] = s.seed;
    j["config_hash"] = config_hash(s);
    j["config"] = serialize_scenario(s);
    return j;
}

void write_json(const std::string& path, const nlohmann::json& j)
{
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace talbot
