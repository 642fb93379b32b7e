#include "talbot/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "talbot/artifacts.hpp"
#include "talbot/design.hpp"
#include "talbot/errors.hpp"
#include "talbot/likelihood.hpp"
#include "talbot/posterior.hpp"
#include "talbot/priors.hpp"
#include "talbot/rng.hpp"

namespace talbot {

namespace {

const char* mode_word(InfoMode m)
{
    return m == InfoMode::conditioned_on_null ? "conditioned" : "prior_predictive";
}

/// Output directory with a record of what has been written, so a failure
/// mid-run can flag the partial artifacts it leaves behind.
struct OutDir {
    std::filesystem::path dir;
    std::vector<std::string> written;

    explicit OutDir(const std::string& d) : dir(d)
    {
        if (d.empty()) throw ConfigError("output directory must be given");
        std::filesystem::create_directories(dir);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    void note(const std::string& name) { written.push_back(name); }
};

template <class Body>
void guarded(const std::string& command, OutDir& out, Body&& body)
{
    try {
        body();
    } catch (const std::exception& e) {
        nlohmann::json j;
        j["command"] = command;
        j["error"] = e.what();
        j["partial_outputs"] = out.written;
        try {
            write_json(out.path("FAILED.json"), j);
        } catch (...) {
            // the failure itself is what gets reported
        }
        throw;
    }
}

GridDensity build_prior(const Scenario& s, const LikelihoodSet& set)
{
    if (s.prior.kind == PriorKind::mdip) return mdip_prior(set);
    return experimental_prior(set.grid(), read_boundary_csv(s.prior.boundary_path));
}

nlohmann::json controls_json(const ResolvedScenario& R)
{
    return {{"phi0_rad", R.controls.phi0},
            {"t2_s", R.controls.t2},
            {"t2_in_talbot_times", R.controls.t2 / R.t_talbot},
            {"spot_area_m2", R.cfg.a_G},
            {"pulse_energy_j", R.cfg.E_G},
            {"optimized", R.optimized}};
}

nlohmann::json theta_json(const CslParams& t)
{
    return {{"lambda_per_s", t.lambda_c}, {"rc_m", t.r_c}};
}

/// The shared simulate -> prior -> posterior -> exclusion pipeline.
struct InferenceRun {
    ResolvedScenario R;
    LikelihoodContext ctx;
    std::vector<double> xs;
    ThetaGrid grid;
    LikelihoodSet set;
    GridDensity prior;
    GridDensity post;
    ExclusionCurve curve;

    explicit InferenceRun(const Scenario& s)
        : R(resolve(s)),
          ctx(make_likelihood_context(R.cfg)),
          xs(draw(s, R, ctx)),
          grid(R.make_grid()),
          set(grid, ctx),
          prior(build_prior(s, set)),
          post(posterior(xs, prior, set)),
          curve(exclusion_line(post, s.confidence, ctx.geo, R.cfg.particle))
    {
    }

    static std::vector<double> draw(const Scenario& s, const ResolvedScenario& R,
                                    const LikelihoodContext& ctx)
    {
        const LikelihoodTable table = likelihood(R.theta_true, ctx);
        RngStream stream(s.seed, "positions");
        return sample_positions(table, s.n_points, stream);
    }

    nlohmann::json exclusion_json(const Scenario& s) const
    {
        nlohmann::json e = {{"Lambda", curve.Lambda},
                            {"confidence", curve.confidence},
                            {"achieved_mass", curve.achieved_mass}};
        if (s.grid.rc_min <= 1e-7 && 1e-7 <= s.grid.rc_max)
            e["lambda_c_max_at_rc_1e-7_per_s"] = lambda_at_rc(curve, 1e-7);
        return e;
    }
};

} // namespace

Scenario apply_overrides(Scenario s, const RunOptions& opt)
{
    if (opt.seed_set) s.seed = opt.seed;
    if (opt.n_points >= 0) s.n_points = opt.n_points;
    if (opt.mc_iters >= 0) s.mc_iters = opt.mc_iters;
    if (!opt.prior.empty()) {
        if (opt.prior == "mdip") {
            s.prior.kind = PriorKind::mdip;
            s.prior.boundary_path.clear();
        } else if (opt.prior.rfind("experimental:", 0) == 0 &&
                   opt.prior.size() > 13) {
            s.prior.kind = PriorKind::experimental;
            s.prior.boundary_path = opt.prior.substr(13);
        } else {
            throw ConfigError("--prior must be 'mdip' or 'experimental:PATH', got '" +
                              opt.prior + "'");
        }
    }
    return s;
}

void run_simulate(const Scenario& s0, const RunOptions& opt)
{
    const Scenario s = apply_overrides(s0, opt);
    OutDir out(opt.out_dir);
    guarded("simulate", out, [&] {
        const ResolvedScenario R = resolve(s);
        const auto ctx = make_likelihood_context(R.cfg);
        const auto xs = InferenceRun::draw(s, R, ctx);

        write_positions_csv(out.path("positions.csv"), xs);
        out.note("positions.csv");

        nlohmann::json j = provenance_json("simulate", s);
        j["extended"] = opt.extended;
        j["n_points"] = s.n_points;
        j["theta_true"] = theta_json(R.theta_true);
        j["controls"] = controls_json(R);
        j["outputs"] = out.written;
        write_json(out.path("positions.json"), j);
    });
}

void run_posterior(const Scenario& s0, const RunOptions& opt)
{
    const Scenario s = apply_overrides(s0, opt);
    OutDir out(opt.out_dir);
    guarded("posterior", out, [&] {
        InferenceRun run(s);

        write_positions_csv(out.path("positions.csv"), run.xs);
        out.note("positions.csv");
        write_density_csv(out.path("prior.csv"), run.prior);
        out.note("prior.csv");
        write_density_csv(out.path("posterior.csv"), run.post);
        out.note("posterior.csv");
        write_exclusion_csv(out.path("exclusion.csv"), run.curve);
        out.note("exclusion.csv");
        write_landmarks_json(out.path("landmarks.json"));
        out.note("landmarks.json");

        nlohmann::json j = provenance_json("posterior", s);
        j["extended"] = opt.extended;
        j["n_points"] = s.n_points;
        j["theta_true"] = theta_json(run.R.theta_true);
        j["controls"] = controls_json(run.R);
        j["log_evidence"] = log_evidence(run.xs, run.prior, run.set);
        j["info_gain_bits"] = info_gain(run.post, run.prior);
        j["exclusion"] = run.exclusion_json(s);
        j["outputs"] = out.written;
        write_json(out.path("posterior.json"), j);
    });
}

void run_exclusion(const Scenario& s0, const RunOptions& opt)
{
    const Scenario s = apply_overrides(s0, opt);
    OutDir out(opt.out_dir);
    guarded("exclusion", out, [&] {
        InferenceRun run(s);

        write_exclusion_csv(out.path("exclusion.csv"), run.curve);
        out.note("exclusion.csv");
        write_landmarks_json(out.path("landmarks.json"));
        out.note("landmarks.json");

        nlohmann::json j = provenance_json("exclusion", s);
        j["extended"] = opt.extended;
        j["n_points"] = s.n_points;
        j["theta_true"] = theta_json(run.R.theta_true);
        j["controls"] = controls_json(run.R);
        j["exclusion"] = run.exclusion_json(s);
        j["outputs"] = out.written;
        write_json(out.path("exclusion.json"), j);
    });
}

void run_info(const Scenario& s0, const RunOptions& opt)
{
    const Scenario s = apply_overrides(s0, opt);
    OutDir out(opt.out_dir);
    guarded("info", out, [&] {
        const ResolvedScenario R = resolve(s);
        const auto ctx = make_likelihood_context(R.cfg);
        const ThetaGrid grid = R.make_grid();
        const LikelihoodSet set(grid, ctx);
        const GridDensity prior = build_prior(s, set);
        const LikelihoodTable null_model = likelihood(R.theta_true, ctx);

        const InfoResult r = expected_information(prior, set, null_model,
                                                  s.n_points, s.mc_iters, s.seed,
                                                  s.mode);
        write_info_csv(out.path("info.csv"), {&r, 1}, s.seed);
        out.note("info.csv");

        nlohmann::json j = provenance_json("info", s);
        j["extended"] = opt.extended;
        j["result"] = {{"H_bits", r.H},
                       {"delta_bits", r.delta},
                       {"N", r.N},
                       {"M", r.M},
                       {"mode", mode_word(r.mode)}};
        j["controls"] = controls_json(R);
        j["outputs"] = out.written;
        write_json(out.path("info.json"), j);
    });
}

void run_sweep(const Scenario& s0, const RunOptions& opt)
{
    const Scenario s = apply_overrides(s0, opt);
    OutDir out(opt.out_dir);
    guarded("sweep", out, [&] {
        if (!s.sweep.present)
            throw ConfigError("sweep: the config has no [sweep] section");

        // With auto controls and reoptimize off, pin the base optimum (phi0
        // in rad, t2 in Talbot units so it transfers across masses).
        Scenario base = s;
        if (!s.sweep.reoptimize && s.phi0_auto) {
            const ResolvedScenario R0 = resolve(s);
            base.phi0_auto = false;
            base.t2_auto = false;
            base.phi0_rad = R0.controls.phi0;
            base.t2_in_talbot_times = R0.controls.t2 / R0.t_talbot;
        }

        struct Row {
            double value = 0.0;
            InfoResult r;
            double phi0 = 0.0, t2 = 0.0;
            bool optimized = false;
            std::string status;
        };
        std::vector<Row> rows;

        for (double v : s.sweep.values) {
            Scenario pt = base;
            if (s.sweep.variable == "mass_u")
                pt.mass_u = v;
            else if (s.sweep.variable == "pressure_hpa")
                pt.pressure_hpa = v;
            else if (s.sweep.variable == "drift_m_per_s")
                pt.drift_m_per_s = v;
            else
                pt.n_points = static_cast<long>(std::llround(v));

            Row row;
            row.value = v;
            try {
                const ResolvedScenario R = resolve(pt);
                const auto ctx = make_likelihood_context(R.cfg);
                const ThetaGrid grid = R.make_grid();
                const LikelihoodSet set(grid, ctx);
                const GridDensity prior = build_prior(pt, set);
                const LikelihoodTable null_model = likelihood(R.theta_true, ctx);
                row.r = expected_information(prior, set, null_model, pt.n_points,
                                             pt.mc_iters, pt.seed, pt.mode);
                row.phi0 = R.controls.phi0;
                row.t2 = R.controls.t2;
                row.optimized = R.optimized;
                row.status = "ok";
            } catch (const Error& e) {
                row.status = std::string("error: ") + e.what();
                for (char& c : row.status)
                    if (c == ',' || c == '\n') c = ';';
            }
            rows.push_back(std::move(row));
        }

        {
            std::ofstream csv(out.path("sweep.csv"), std::ios::binary);
            if (!csv) throw ConfigError("cannot open output file 'sweep.csv'");
            csv << "variable,value,N,M,mode,H_bits,delta_bits,phi0_rad,t2_s,"
                   "optimized,status\n";
            for (const Row& row : rows) {
                csv << s.sweep.variable << ',' << format_full(row.value) << ','
                    << row.r.N << ',' << row.r.M << ',' << mode_word(row.r.mode)
                    << ',' << format_full(row.r.H) << ','
                    << format_full(row.r.delta) << ',' << format_full(row.phi0)
                    << ',' << format_full(row.t2) << ','
                    << (row.optimized ? "true" : "false") << ',' << row.status
                    << '\n';
            }
        }
        out.note("sweep.csv");

        nlohmann::json j = provenance_json("sweep", s);
        j["extended"] = opt.extended;
        j["variable"] = s.sweep.variable;
        j["reoptimize"] = s.sweep.reoptimize;
        j["common_random_numbers"] = true;
        int failures = 0;
        for (const Row& row : rows)
            if (row.status != "ok") ++failures;
        j["points"] = rows.size();
        j["failed_points"] = failures;
        j["outputs"] = out.written;
        write_json(out.path("sweep.json"), j);
    });
}

void run_design(const Scenario& s0, const RunOptions& opt)
{
    const Scenario s = apply_overrides(s0, opt);
    OutDir out(opt.out_dir);
    guarded("design", out, [&] {
        Scenario d = s;  // the optimiser runs even if controls were explicit
        d.phi0_auto = true;
        d.t2_auto = true;
        const ResolvedScenario R = resolve(d);
        const double nu_sin = visibility_sin(R.controls, R.cfg);
        const double nu_red = visibility_reduced(R.controls, R.theta_ref, R.cfg);

        nlohmann::json j = provenance_json("design", s);
        j["extended"] = opt.extended;
        j["theta_ref"] = theta_json(R.theta_ref);
        j["controls"] = controls_json(R);
        j["visibility"] = {{"nu_sin", nu_sin},
                           {"nu_red", nu_red},
                           {"drop", nu_sin - nu_red}};
        j["outputs"] = out.written;
        write_json(out.path("design.json"), j);
    });
}

} // namespace talbot
