// Times the grid kernels in both execution modes and checks that the
// parallel results match the serial reference.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "talbot/information.hpp"
#include "talbot/likelihood.hpp"
#include "talbot/parallel.hpp"
#include "talbot/posterior.hpp"
#include "talbot/priors.hpp"
#include "talbot/rng.hpp"
#include "talbot/scenario.hpp"

namespace {

using talbot::ExecMode;

template <class Fn>
double time_ms(ExecMode mode, Fn&& fn)
{
    talbot::execution_mode() = mode;
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    talbot::execution_mode() = ExecMode::parallel;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* label, double serial_ms, double parallel_ms,
            double max_diff)
{
    std::printf("%-34s %9.1f ms %9.1f ms %7.2fx   %.3g\n", label, serial_ms,
                parallel_ms, serial_ms / parallel_ms, max_diff);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

int main()
{
    talbot::Scenario s = talbot::maqro_preset(1e8);
    s.phi0_auto = false;
    s.phi0_rad = 2.0;
    s.t2_auto = false;
    s.t2_in_talbot_times = 1.0;
    s.grid.n_lambda = 24;
    s.grid.n_rc = 24;

    const talbot::ResolvedScenario R = talbot::resolve(s);
    const auto ctx = talbot::make_likelihood_context(R.cfg);
    const talbot::ThetaGrid grid = R.make_grid();

    std::printf("grid %dx%d, window %d samples\n\n", s.grid.n_lambda,
                s.grid.n_rc, R.cfg.window_samples);
    std::printf("%-34s %12s %12s %8s   %s\n", "kernel", "serial", "parallel",
                "speedup", "max |diff|");

    // Per-column collapse cache + one table per node.
    std::vector<double> ent_s, ent_p;
    const double t_build_s = time_ms(ExecMode::serial, [&] {
        talbot::LikelihoodSet set(grid, ctx);
        ent_s = set.entropy_exponent();
    });
    const double t_build_p = time_ms(ExecMode::parallel, [&] {
        talbot::LikelihoodSet set(grid, ctx);
        ent_p = set.entropy_exponent();
    });
    report("likelihood grid + entropy", t_build_s, t_build_p,
           max_abs_diff(ent_s, ent_p));

    const talbot::LikelihoodSet set(grid, ctx);
    const auto null_table = talbot::likelihood(R.theta_true, ctx);
    talbot::RngStream stream(1, "positions");
    const auto xs = talbot::sample_positions(null_table, 40000, stream);

    std::vector<double> ll_s, ll_p;
    const double t_ll_s =
        time_ms(ExecMode::serial, [&] { ll_s = set.log_likelihood(xs); });
    const double t_ll_p =
        time_ms(ExecMode::parallel, [&] { ll_p = set.log_likelihood(xs); });
    report("log-likelihood, 40k positions", t_ll_s, t_ll_p,
           max_abs_diff(ll_s, ll_p));

    const talbot::GridDensity prior = talbot::mdip_prior(set);
    talbot::GridDensity post_s, post_p;
    const double t_post_s = time_ms(
        ExecMode::serial, [&] { post_s = talbot::posterior(xs, prior, set); });
    const double t_post_p = time_ms(
        ExecMode::parallel, [&] { post_p = talbot::posterior(xs, prior, set); });
    report("posterior update", t_post_s, t_post_p,
           max_abs_diff(post_s.density, post_p.density));

    talbot::InfoResult info_s, info_p;
    const double t_info_s = time_ms(ExecMode::serial, [&] {
        info_s = talbot::expected_information(prior, set, null_table, 500, 8, 7,
                                              talbot::InfoMode::conditioned_on_null);
    });
    const double t_info_p = time_ms(ExecMode::parallel, [&] {
        info_p = talbot::expected_information(prior, set, null_table, 500, 8, 7,
                                              talbot::InfoMode::conditioned_on_null);
    });
    report("expected information, N=500 M=8", t_info_s, t_info_p,
           std::abs(info_s.H - info_p.H));

    return 0;
}
