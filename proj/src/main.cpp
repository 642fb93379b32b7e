#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "talbot/errors.hpp"
#include "talbot/parallel.hpp"
#include "talbot/runner.hpp"
#include "talbot/version.hpp"

namespace {

struct Cli {
    std::string config;
    talbot::RunOptions opt;
    bool serial = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw talbot::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void add_common(CLI::App* cmd, Cli& cli)
{
    cmd->add_option("--config", cli.config, "scenario config file")
        ->required();
    cmd->add_option("--out", cli.opt.out_dir, "output directory")->required();
    auto* seed = cmd->add_option("--seed", cli.opt.seed, "override rng seed");
    cmd->callback([&cli, seed] { cli.opt.seed_set = seed->count() > 0; });
    cmd->add_option("--n-points", cli.opt.n_points,
                    "override number of arrival positions");
    cmd->add_option("--mc-iters", cli.opt.mc_iters,
                    "override Monte-Carlo realisations");
    cmd->add_option("--prior", cli.opt.prior,
                    "prior choice: mdip or experimental:PATH");
    cmd->add_flag("--extended", cli.opt.extended,
                  "run the long variants (recorded in provenance)");
    cmd->add_flag("--serial", cli.serial,
                  "force the serial reference kernels");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Talbot-Lau matter-wave simulation and collapse-model "
                 "inference"};
    app.set_version_flag("--version", std::string(talbot::k_tool_name) + " " +
                                          talbot::k_tool_version);
    app.require_subcommand(1);

    Cli cli;
    auto* simulate = app.add_subcommand(
        "simulate", "draw arrival positions from the true-parameter pattern");
    auto* posterior = app.add_subcommand(
        "posterior", "full inference pass: positions, posterior, exclusion");
    auto* exclusion = app.add_subcommand(
        "exclusion", "exclusion line only (plus plot landmarks)");
    auto* info = app.add_subcommand(
        "info", "Monte-Carlo expected information gain");
    auto* sweep = app.add_subcommand(
        "sweep", "information gain along the config's sweep axis");
    auto* design = app.add_subcommand(
        "design", "optimise the grating phase and the second free flight");
    for (auto* cmd : {simulate, posterior, exclusion, info, sweep, design})
        add_common(cmd, cli);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cli.serial) talbot::execution_mode() = talbot::ExecMode::serial;
        const talbot::Scenario s = talbot::parse_scenario(read_file(cli.config));
        if (simulate->parsed()) talbot::run_simulate(s, cli.opt);
        else if (posterior->parsed()) talbot::run_posterior(s, cli.opt);
        else if (exclusion->parsed()) talbot::run_exclusion(s, cli.opt);
        else if (info->parsed()) talbot::run_info(s, cli.opt);
        else if (sweep->parsed()) talbot::run_sweep(s, cli.opt);
        else talbot::run_design(s, cli.opt);
        return 0;
    } catch (const talbot::Error& e) {
        std::fprintf(stderr, "talbot: %s\n", e.what());
        return talbot::exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "talbot: %s\n", e.what());
        return 3;
    }
}
