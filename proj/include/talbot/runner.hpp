#pragma once

#include <cstdint>
#include <string>

#include "talbot/scenario.hpp"

namespace talbot {

/// Command-line overrides applied on top of the scenario file. Every
/// override is folded into the effective scenario BEFORE anything runs, so
/// the config text embedded in each artifact reproduces the run verbatim.
struct RunOptions {
    std::string out_dir;
    bool seed_set = false;
    std::uint64_t seed = 0;
    long n_points = -1;          // < 0: keep scenario value
    long mc_iters = -1;          // < 0: keep scenario value
    std::string prior;           // "": keep; else "mdip" / "experimental:PATH"
    bool extended = false;       // recorded in provenance only
};

Scenario apply_overrides(Scenario s, const RunOptions& opt);

/// Emit N arrival positions drawn from p(x|theta_true):
/// positions.csv + positions.json.
void run_simulate(const Scenario& s, const RunOptions& opt);

/// Full inference pass: simulate positions, build the prior, update, find
/// the exclusion line. Writes positions/prior/posterior/exclusion CSVs,
/// landmarks.json, and posterior.json.
void run_posterior(const Scenario& s, const RunOptions& opt);

/// Same pipeline, exclusion outputs only: exclusion.csv, landmarks.json,
/// exclusion.json.
void run_exclusion(const Scenario& s, const RunOptions& opt);

/// Expected information gain of the scenario: info.csv + info.json.
void run_info(const Scenario& s, const RunOptions& opt);

/// Information gain along the scenario's [sweep] axis; per-point failures
/// are recorded in the status column and the sweep continues. Every point
/// reuses the same RNG substreams (common random numbers), so differences
/// along the sweep are not inflated by sampling noise.
/// Writes sweep.csv + sweep.json.
void run_sweep(const Scenario& s, const RunOptions& opt);

/// Control optimisation only: phi0*, t2*, the matching pulse spot/energy,
/// and the visibilities at the optimum. Writes design.json.
void run_design(const Scenario& s, const RunOptions& opt);

} // namespace talbot
