#include "talbot/scenario.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/grating.hpp"

namespace talbot {

namespace {

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

/// The flat key-value view of a config file: "section.key" -> value.
/// Comments are whole lines starting with '#'; values run to end of line.
class Fields {
public:
    explicit Fields(const std::string& text)
    {
        std::istringstream in(text);
        std::string raw, section;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = trim(raw);
            if (s.empty() || s.front() == '#') continue;
            if (s.front() == '[') {
                if (s.back() != ']' || s.size() < 3)
                    throw ConfigError("config line " + std::to_string(line) +
                                      ": malformed section header '" + s + "'");
                section = s.substr(1, s.size() - 2);
                continue;
            }
            std::size_t sp = s.find_first_of(" \t");
            if (sp == std::string::npos)
                throw ConfigError("config line " + std::to_string(line) +
                                  ": key '" + s + "' has no value");
            std::string key = s.substr(0, sp);
            std::string value = trim(s.substr(sp + 1));
            std::string full = section.empty() ? key : section + "." + key;
            if (!entries_.emplace(full, Entry{value, line}).second)
                throw ConfigError("config line " + std::to_string(line) +
                                  ": duplicate key '" + full + "'");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string require(const std::string& key)
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("config: missing required key '" + key + "'");
        it->second.used = true;
        return it->second.value;
    }

    std::string get_or(const std::string& key, const std::string& fallback)
    {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        it->second.used = true;
        return it->second.value;
    }

    /// Every key must have been consumed; leftovers are typos.
    void finish() const
    {
        for (const auto& [k, e] : entries_)
            if (!e.used)
                throw ConfigError("config line " + std::to_string(e.line) +
                                  ": unknown key '" + k + "'");
    }

private:
    std::map<std::string, Entry> entries_;
};

double to_num(const std::string& v, const std::string& key)
{
    const char* s = v.c_str();
    char* end = nullptr;
    double x = std::strtod(s, &end);
    if (end == s || *end != '\0' || !std::isfinite(x))
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + v + "'");
    return x;
}

long to_long(const std::string& v, const std::string& key)
{
    const char* s = v.c_str();
    char* end = nullptr;
    long x = std::strtol(s, &end, 10);
    if (end == s || *end != '\0')
        throw ConfigError("config: key '" + key + "' has non-integer value '" + v + "'");
    return x;
}

std::uint64_t to_u64(const std::string& v, const std::string& key)
{
    const char* s = v.c_str();
    char* end = nullptr;
    unsigned long long x = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v.find('-') != std::string::npos)
        throw ConfigError("config: key '" + key + "' has non-unsigned value '" + v + "'");
    return x;
}

bool to_bool(const std::string& v, const std::string& key)
{
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("config: key '" + key + "' must be true or false, got '" + v + "'");
}

/// "auto" sets the flag; anything else must parse as a number.
double num_or_auto(Fields& f, const std::string& key, bool& auto_flag)
{
    std::string v = f.require(key);
    if (v == "auto") {
        auto_flag = true;
        return 0.0;
    }
    auto_flag = false;
    return to_num(v, key);
}

} // namespace

Scenario parse_scenario(const std::string& text)
{
    Fields f(text);
    Scenario s;

    s.name = f.require("name");
    s.description = f.get_or("description", "");

    s.mass_u = to_num(f.require("particle.mass_u"), "particle.mass_u");
    s.density_kg_m3 =
        to_num(f.require("particle.density_kg_m3"), "particle.density_kg_m3");
    s.eps_grating = {to_num(f.require("particle.eps_grating_re"), "particle.eps_grating_re"),
                     to_num(f.require("particle.eps_grating_im"), "particle.eps_grating_im")};
    s.eps_blackbody = {
        to_num(f.require("particle.eps_blackbody_re"), "particle.eps_blackbody_re"),
        to_num(f.require("particle.eps_blackbody_im"), "particle.eps_blackbody_im")};
    s.use_mie = to_bool(f.get_or("particle.use_mie", "false"), "particle.use_mie");

    s.omega_hz = to_num(f.require("trap.omega_hz"), "trap.omega_hz");
    s.t_com_k = to_num(f.require("trap.t_com_k"), "trap.t_com_k");

    s.t_int_k = to_num(f.require("environment.t_int_k"), "environment.t_int_k");
    s.t_env_k = to_num(f.require("environment.t_env_k"), "environment.t_env_k");
    s.pressure_hpa =
        to_num(f.require("environment.pressure_hpa"), "environment.pressure_hpa");
    s.gas_mass_u = to_num(f.require("environment.gas_mass_u"), "environment.gas_mass_u");
    s.sigma_geo_scale = to_num(f.get_or("environment.sigma_geo_scale", "1"),
                               "environment.sigma_geo_scale");

    s.grating_period_nm =
        to_num(f.require("beamline.grating_period_nm"), "beamline.grating_period_nm");
    s.t1_in_talbot_times =
        to_num(f.require("beamline.t1_in_talbot_times"), "beamline.t1_in_talbot_times");
    s.t2_in_talbot_times = num_or_auto(f, "beamline.t2_in_talbot_times", s.t2_auto);
    s.phi0_rad = num_or_auto(f, "beamline.phi0_rad", s.phi0_auto);
    s.spot_area_m2 = num_or_auto(f, "beamline.spot_area_m2", s.spot_auto);

    s.sigma_m0_m = num_or_auto(f, "detector.sigma_m0_m", s.sigma_m0_auto);
    s.drift_m_per_s = to_num(f.require("detector.drift_m_per_s"), "detector.drift_m_per_s");
    s.window_half_width_um = to_num(f.get_or("detector.window_half_width_um", "5"),
                                    "detector.window_half_width_um");
    s.window_samples = static_cast<int>(
        to_long(f.get_or("detector.window_samples", "1000"), "detector.window_samples"));
    s.n_max = static_cast<int>(to_long(f.get_or("detector.n_max", "6"), "detector.n_max"));

    GridSpec g;
    s.grid.lambda_min = to_num(f.get_or("grid.lambda_min_per_s", fmt17(g.lambda_min)),
                               "grid.lambda_min_per_s");
    s.grid.lambda_max = to_num(f.get_or("grid.lambda_max_per_s", fmt17(g.lambda_max)),
                               "grid.lambda_max_per_s");
    s.grid.n_lambda = static_cast<int>(
        to_long(f.get_or("grid.n_lambda", std::to_string(g.n_lambda)), "grid.n_lambda"));
    s.grid.rc_min = to_num(f.get_or("grid.rc_min_m", fmt17(g.rc_min)), "grid.rc_min_m");
    s.grid.rc_max = to_num(f.get_or("grid.rc_max_m", fmt17(g.rc_max)), "grid.rc_max_m");
    s.grid.n_rc = static_cast<int>(
        to_long(f.get_or("grid.n_rc", std::to_string(g.n_rc)), "grid.n_rc"));

    std::string prior = f.get_or("inference.prior", "mdip");
    if (prior == "mdip") {
        s.prior.kind = PriorKind::mdip;
    } else if (prior.rfind("experimental:", 0) == 0) {
        s.prior.kind = PriorKind::experimental;
        s.prior.boundary_path = prior.substr(13);
        if (s.prior.boundary_path.empty())
            throw ConfigError("config: inference.prior experimental needs a path, "
                              "'experimental:PATH'");
    } else {
        throw ConfigError("config: inference.prior must be 'mdip' or "
                          "'experimental:PATH', got '" + prior + "'");
    }
    s.theta_true_lambda_per_s = to_num(f.get_or("inference.theta_true_lambda_per_s", "0"),
                                       "inference.theta_true_lambda_per_s");
    s.theta_true_rc_m =
        to_num(f.get_or("inference.theta_true_rc_m", "1e-07"), "inference.theta_true_rc_m");
    s.theta_ref_lambda_per_s = to_num(f.get_or("inference.theta_ref_lambda_per_s", "1e-16"),
                                      "inference.theta_ref_lambda_per_s");
    s.theta_ref_rc_m =
        to_num(f.get_or("inference.theta_ref_rc_m", "1e-07"), "inference.theta_ref_rc_m");
    s.confidence =
        to_num(f.get_or("inference.confidence", "0.95"), "inference.confidence");

    s.n_points = to_long(f.get_or("run.n_points", "10000"), "run.n_points");
    s.mc_iters = to_long(f.get_or("run.mc_iters", "100"), "run.mc_iters");
    if (s.n_points < 0) throw ConfigError("config: run.n_points must be >= 0");
    if (s.mc_iters < 0) throw ConfigError("config: run.mc_iters must be >= 0");
    std::string mode = f.get_or("run.mode", "conditioned");
    if (mode == "conditioned")
        s.mode = InfoMode::conditioned_on_null;
    else if (mode == "prior_predictive")
        s.mode = InfoMode::prior_predictive;
    else
        throw ConfigError("config: run.mode must be 'conditioned' or "
                          "'prior_predictive', got '" + mode + "'");
    s.seed = to_u64(f.get_or("run.seed", "1"), "run.seed");

    if (f.has("sweep.variable") || f.has("sweep.values") || f.has("sweep.reoptimize")) {
        s.sweep.present = true;
        s.sweep.variable = f.require("sweep.variable");
        if (s.sweep.variable != "mass_u" && s.sweep.variable != "pressure_hpa" &&
            s.sweep.variable != "drift_m_per_s" && s.sweep.variable != "n_points")
            throw ConfigError("config: sweep.variable must be one of mass_u, "
                              "pressure_hpa, drift_m_per_s, n_points");
        std::istringstream vs(f.require("sweep.values"));
        std::string tok;
        while (vs >> tok) {
            double v = to_num(tok, "sweep.values");
            if (!(v > 0.0))
                throw ConfigError("config: sweep.values must be finite and positive");
            s.sweep.values.push_back(v);
        }
        if (s.sweep.values.empty())
            throw ConfigError("config: sweep.values is empty");
        s.sweep.reoptimize =
            to_bool(f.get_or("sweep.reoptimize", "true"), "sweep.reoptimize");
    }

    f.finish();
    return s;
}

std::string serialize_scenario(const Scenario& s)
{
    std::ostringstream o;
    auto num = [&](const char* key, double v) { o << key << ' ' << fmt17(v) << '\n'; };

    o << "name " << s.name << '\n';
    if (!s.description.empty()) o << "description " << s.description << '\n';

    o << "\n[particle]\n";
    num("mass_u", s.mass_u);
    num("density_kg_m3", s.density_kg_m3);
    num("eps_grating_re", s.eps_grating.real());
    num("eps_grating_im", s.eps_grating.imag());
    num("eps_blackbody_re", s.eps_blackbody.real());
    num("eps_blackbody_im", s.eps_blackbody.imag());
    o << "use_mie " << (s.use_mie ? "true" : "false") << '\n';

    o << "\n[trap]\n";
    num("omega_hz", s.omega_hz);
    num("t_com_k", s.t_com_k);

    o << "\n[environment]\n";
    num("t_int_k", s.t_int_k);
    num("t_env_k", s.t_env_k);
    num("pressure_hpa", s.pressure_hpa);
    num("gas_mass_u", s.gas_mass_u);
    num("sigma_geo_scale", s.sigma_geo_scale);

    o << "\n[beamline]\n";
    num("grating_period_nm", s.grating_period_nm);
    num("t1_in_talbot_times", s.t1_in_talbot_times);
    if (s.t2_auto)
        o << "t2_in_talbot_times auto\n";
    else
        num("t2_in_talbot_times", s.t2_in_talbot_times);
    if (s.phi0_auto)
        o << "phi0_rad auto\n";
    else
        num("phi0_rad", s.phi0_rad);
    if (s.spot_auto)
        o << "spot_area_m2 auto\n";
    else
        num("spot_area_m2", s.spot_area_m2);

    o << "\n[detector]\n";
    if (s.sigma_m0_auto)
        o << "sigma_m0_m auto\n";
    else
        num("sigma_m0_m", s.sigma_m0_m);
    num("drift_m_per_s", s.drift_m_per_s);
    num("window_half_width_um", s.window_half_width_um);
    o << "window_samples " << s.window_samples << '\n';
    o << "n_max " << s.n_max << '\n';

    o << "\n[grid]\n";
    num("lambda_min_per_s", s.grid.lambda_min);
    num("lambda_max_per_s", s.grid.lambda_max);
    o << "n_lambda " << s.grid.n_lambda << '\n';
    num("rc_min_m", s.grid.rc_min);
    num("rc_max_m", s.grid.rc_max);
    o << "n_rc " << s.grid.n_rc << '\n';

    o << "\n[inference]\n";
    if (s.prior.kind == PriorKind::mdip)
        o << "prior mdip\n";
    else
        o << "prior experimental:" << s.prior.boundary_path << '\n';
    num("theta_true_lambda_per_s", s.theta_true_lambda_per_s);
    num("theta_true_rc_m", s.theta_true_rc_m);
    num("theta_ref_lambda_per_s", s.theta_ref_lambda_per_s);
    num("theta_ref_rc_m", s.theta_ref_rc_m);
    num("confidence", s.confidence);

    o << "\n[run]\n";
    o << "n_points " << s.n_points << '\n';
    o << "mc_iters " << s.mc_iters << '\n';
    o << "mode "
      << (s.mode == InfoMode::conditioned_on_null ? "conditioned" : "prior_predictive")
      << '\n';
    o << "seed " << s.seed << '\n';

    if (s.sweep.present) {
        o << "\n[sweep]\n";
        o << "variable " << s.sweep.variable << '\n';
        o << "values";
        for (double v : s.sweep.values) o << ' ' << fmt17(v);
        o << '\n';
        o << "reoptimize " << (s.sweep.reoptimize ? "true" : "false") << '\n';
    }
    return o.str();
}

std::string config_hash(const Scenario& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : serialize_scenario(s)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
    return buf;
}

Scenario maqro_preset(double mass_u)
{
    Scenario s;
    s.name = "maqro";
    s.description =
        "Space-mission interferometer baseline. Grating period 177 nm, half the "
        "354 nm pulse wavelength; mission documents also quote a 100 nm pitch for "
        "the same instrument - the optical relation d = lambda/2 wins here.";
    s.mass_u = mass_u;
    s.density_kg_m3 = 2329.0;        // silicon
    s.eps_grating = {22.39, 33.82};  // crystalline Si at 354 nm
    s.eps_blackbody = {11.7, 0.1};   // band-averaged thermal response
    s.use_mie = false;
    s.omega_hz = 200e3;
    s.t_com_k = 20e-3;
    s.t_int_k = 25.0;
    s.t_env_k = 20.0;
    s.pressure_hpa = 1e-15;
    s.gas_mass_u = 2.016;  // residual H2
    s.sigma_geo_scale = 1.0;
    s.grating_period_nm = 177.0;
    s.t1_in_talbot_times = 2.0;
    s.t2_auto = true;
    s.phi0_auto = true;
    s.spot_auto = true;
    s.sigma_m0_auto = true;
    s.drift_m_per_s = 10e-9 / 100.0;  // 10 nm per 100 s
    s.window_half_width_um = 5.0;
    s.window_samples = 1000;
    s.n_max = 6;
    s.n_points = 10000;
    s.mc_iters = 100;
    s.mode = InfoMode::conditioned_on_null;
    s.seed = 1;
    return s;
}

ThetaGrid ResolvedScenario::make_grid() const
{
    const GridSpec& g = scenario.grid;
    return make_theta_grid(g.lambda_min, g.lambda_max, g.n_lambda, g.rc_min,
                           g.rc_max, g.n_rc);
}

ResolvedScenario resolve(const Scenario& s)
{
    ResolvedScenario r;
    r.scenario = s;

    ExperimentConfig cfg;
    Permittivity eps;
    eps.grating = s.eps_grating;
    eps.blackbody = s.eps_blackbody;
    if (!(s.mass_u > 0.0) || !(s.density_kg_m3 > 0.0))
        throw ConfigError("scenario: particle mass and density must be positive");
    cfg.particle =
        Particle::from_mass(s.mass_u * consts::m_u, s.density_kg_m3, eps, s.use_mie);
    cfg.omega = s.omega_hz;
    cfg.T_com = s.t_com_k;
    cfg.T_int = s.t_int_k;
    cfg.T_env = s.t_env_k;
    cfg.pressure = s.pressure_hpa * 100.0;  // hPa -> Pa
    cfg.gas_mass = s.gas_mass_u * consts::m_u;
    cfg.sigma_geo_scale = s.sigma_geo_scale;
    cfg.d = s.grating_period_nm * 1e-9;
    cfg.sigma_m_drift = s.drift_m_per_s;
    cfg.window_half_width = s.window_half_width_um * 1e-6;
    cfg.window_samples = s.window_samples;
    cfg.n_max = s.n_max;

    if (!(cfg.omega > 0.0) || !(cfg.T_com > 0.0))
        throw ConfigError("scenario: trap.omega_hz and trap.t_com_k must be positive");
    if (cfg.T_int < 0.0 || cfg.T_env < 0.0 || cfg.pressure < 0.0 ||
        !(cfg.gas_mass > 0.0))
        throw ConfigError("scenario: environment temperatures and pressure must be "
                          "non-negative and the gas mass positive");
    if (!(s.confidence > 0.0) || !(s.confidence < 1.0))
        throw ConfigError("scenario: inference.confidence must lie in (0, 1)");
    if (s.theta_true_lambda_per_s < 0.0 || !(s.theta_true_rc_m > 0.0) ||
        s.theta_ref_lambda_per_s < 0.0 || !(s.theta_ref_rc_m > 0.0))
        throw ConfigError("scenario: collapse parameters need lambda >= 0 and r_c > 0");
    if (!(s.t1_in_talbot_times > 0.0))
        throw ConfigError("scenario: t1_in_talbot_times must be positive");
    r.t_talbot = cfg.particle.mass * cfg.d * cfg.d / consts::h;
    cfg.t1 = s.t1_in_talbot_times * r.t_talbot;

    // Trap ground-state width; omega is an ordinary frequency in Hz.
    const double omega_sq = 4.0 * consts::pi * consts::pi * cfg.omega * cfg.omega;
    const double sigma_x =
        std::sqrt(consts::k_B * cfg.T_com / (cfg.particle.mass * omega_sq));
    cfg.sigma_m0 = s.sigma_m0_auto ? sigma_x : s.sigma_m0_m;

    cfg.a_G = s.spot_auto ? grating_pulse(0.0, cfg, cfg.t1).a_G : s.spot_area_m2;

    r.theta_true = {s.theta_true_lambda_per_s, s.theta_true_rc_m};
    r.theta_ref = {s.theta_ref_lambda_per_s, s.theta_ref_rc_m};

    if (s.phi0_auto != s.t2_auto)
        throw ConfigError("scenario: phi0_rad and t2_in_talbot_times must be both "
                          "auto (optimiser) or both explicit");
    if (s.phi0_auto) {
        // Placeholder controls so the optimiser's trial geometries start sane.
        cfg.phi0 = 1.0;
        cfg.t2 = r.t_talbot;
        cfg.E_G = pulse_energy_for_phase(cfg.phi0, cfg.a_G, cfg);
        r.controls = optimize_controls(cfg, r.theta_ref);
        r.optimized = true;
    } else {
        r.controls = {s.phi0_rad, s.t2_in_talbot_times * r.t_talbot};
        r.optimized = false;
    }
    cfg.phi0 = r.controls.phi0;
    cfg.t2 = r.controls.t2;
    cfg.E_G =
        cfg.phi0 > 0.0 ? pulse_energy_for_phase(cfg.phi0, cfg.a_G, cfg) : 0.0;

    validate(cfg);
    r.cfg = cfg;
    return r;
}

} // namespace talbot
