#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "talbot/errors.hpp"
#include "talbot/information.hpp"
#include "talbot/likelihood.hpp"
#include "talbot/posterior.hpp"
#include "talbot/priors.hpp"
#include "talbot/theta_grid.hpp"
#include "test_support.hpp"

using namespace talbot;
using talbot::testing::baseline_config;

namespace {

// Two-node toy: smooth unit-mass densities 1 +- a cos(2 pi x) on [0, 1],
// equal prior masses. Everything about it is computable by direct
// quadrature, which makes it the cross-check for the Monte-Carlo estimator.
struct TwoNodeToy {
    ThetaGrid grid;
    std::vector<LikelihoodTable> tables;
    GridDensity prior;

    explicit TwoNodeToy(double contrast = 0.6, int samples = 401)
        : grid(make_theta_grid(1e-10, 1e-9, 2, 1e-7, 1.0001e-7, 1))
    {
        for (const double sign : {+1.0, -1.0}) {
            std::vector<double> x(samples), p(samples);
            for (int i = 0; i < samples; ++i) {
                x[i] = static_cast<double>(i) / (samples - 1);
                p[i] = 1.0 + sign * contrast *
                                  std::cos(2.0 * std::numbers::pi * x[i]);
            }
            tables.push_back(make_table(std::move(x), std::move(p)));
        }
        std::vector<double> logv(2);
        logv[0] = -std::log(grid.weight(0, 0));
        logv[1] = -std::log(grid.weight(1, 0));
        prior = normalized_density(grid, logv);
    }
};

// Direct mutual information for N = 2 draws of the toy:
//   <H> = sum_j m_j int int p_j(x1) p_j(x2)
//            log2[ p_j(x1) p_j(x2) / sum_k m_k p_k(x1) p_k(x2) ] dx1 dx2
// by 2-D trapezoid on the table grid (the estimator's continuum target).
double direct_two_point_information(const TwoNodeToy& toy)
{
    const auto& t0 = toy.tables[0];
    const auto& t1 = toy.tables[1];
    const double m0 = toy.prior.mass(0, 0);
    const double m1 = toy.prior.mass(1, 0);
    const std::size_t n = t0.p.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double wj = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
            const double a = t0.p[i] * t0.p[j];
            const double b = t1.p[i] * t1.p[j];
            const double mix = m0 * a + m1 * b;
            double g = 0.0;
            if (a > 0.0)
                g += m0 * a * std::log(a / mix);
            if (b > 0.0)
                g += m1 * b * std::log(b / mix);
            acc += wi * wj * g;
        }
    }
    return acc * t0.dx * t1.dx / std::numbers::ln2;
}

} // namespace

TEST_CASE("expected information: argument validation")
{
    const TwoNodeToy toy;
    const TableLikelihood lik(toy.grid, toy.tables);
    CHECK_THROWS_AS(expected_information(toy.prior, lik, toy.tables[0], 10, 1,
                                         1, InfoMode::conditioned_on_null),
                    ConfigError);
    CHECK_THROWS_AS(expected_information(toy.prior, lik, toy.tables[0], -1, 8,
                                         1, InfoMode::conditioned_on_null),
                    ConfigError);
    const auto other = make_theta_grid(1e-12, 1e-9, 3, 1e-8, 1e-6, 3);
    CHECK_THROWS_AS(expected_information(uniform_density(other), lik,
                                         toy.tables[0], 10, 8, 1,
                                         InfoMode::conditioned_on_null),
                    ConfigError);
}

TEST_CASE("expected information: theta-independent data teach nothing")
{
    auto cfg = baseline_config(0.0);  // no pulse: every node looks the same
    const auto ctx = make_likelihood_context(cfg);
    const auto grid = make_theta_grid(1e-20, 1e-6, 6, 1e-9, 1e-4, 5);
    const LikelihoodSet set(grid, ctx);
    const auto prior = mdip_prior(set);
    const auto null_model = likelihood({0.0, 1e-7}, ctx);

    for (const auto mode :
         {InfoMode::prior_predictive, InfoMode::conditioned_on_null}) {
        const auto r =
            expected_information(prior, set, null_model, 200, 8, 31, mode);
        CHECK(std::abs(r.H) < 1e-10);
        CHECK(r.delta < 1e-10);
    }
}

TEST_CASE("expected information: zero data points give zero bits exactly")
{
    const TwoNodeToy toy;
    const TableLikelihood lik(toy.grid, toy.tables);
    for (const auto mode :
         {InfoMode::prior_predictive, InfoMode::conditioned_on_null}) {
        const auto r =
            expected_information(toy.prior, lik, toy.tables[0], 0, 4, 7, mode);
        CHECK(r.H == 0.0);
        CHECK(r.delta == 0.0);
    }
}

TEST_CASE("expected information: deterministic given the seed")
{
    const TwoNodeToy toy;
    const TableLikelihood lik(toy.grid, toy.tables);
    const auto a = expected_information(toy.prior, lik, toy.tables[0], 16, 12,
                                        99, InfoMode::conditioned_on_null);
    const auto b = expected_information(toy.prior, lik, toy.tables[0], 16, 12,
                                        99, InfoMode::conditioned_on_null);
    CHECK(a.H == b.H);
    CHECK(a.delta == b.delta);
    const auto c = expected_information(toy.prior, lik, toy.tables[0], 16, 12,
                                        100, InfoMode::conditioned_on_null);
    CHECK(a.H != c.H);
}

TEST_CASE("expected information: conditioned mode is non-negative and grows with N")
{
    const auto ctx = make_likelihood_context(baseline_config());
    const auto grid = make_theta_grid(1e-20, 1e-6, 24, 1e-9, 1e-4, 20);
    const LikelihoodSet set(grid, ctx);
    const auto prior = mdip_prior(set);
    const auto null_model = likelihood({0.0, 1e-7}, ctx);

    const auto small = expected_information(prior, set, null_model, 30, 16, 99,
                                            InfoMode::conditioned_on_null);
    const auto large = expected_information(prior, set, null_model, 300, 16, 99,
                                            InfoMode::conditioned_on_null);
    CHECK(small.H >= 0.0);
    CHECK(large.H >= 0.0);
    // statistical monotonicity in N
    CHECK(large.H >= small.H - 2.0 * (small.delta + large.delta));

    // the error bar follows the 1/sqrt(M) law (same variance estimated
    // at M and 4M; generous bracket around the ideal factor 2)
    const auto m1 = expected_information(prior, set, null_model, 30, 16, 5,
                                         InfoMode::conditioned_on_null);
    const auto m4 = expected_information(prior, set, null_model, 30, 64, 5,
                                         InfoMode::conditioned_on_null);
    CHECK(m1.delta / m4.delta > 0.7);
    CHECK(m1.delta / m4.delta < 5.0);
}

TEST_CASE("expected information: estimator matches the direct integral on the toy")
{
    const TwoNodeToy toy;
    const TableLikelihood lik(toy.grid, toy.tables);
    const double direct = direct_two_point_information(toy);
    CHECK(direct > 0.0);

    // 50 independent estimator runs; each should straddle the direct value
    // within 3 error bars (99.7% each), and the pool must agree tightly.
    int hits = 0;
    double pooled = 0.0, pooled_sq = 0.0;
    const long M = 40;
    for (int rep = 0; rep < 50; ++rep) {
        const auto r =
            expected_information(toy.prior, lik, toy.tables[0], 2, M,
                                 1000 + rep, InfoMode::prior_predictive);
        if (std::abs(r.H - direct) <= 3.0 * r.delta)
            ++hits;
        pooled += r.H;
        pooled_sq += r.H * r.H;
    }
    CHECK(hits >= 46);
    const double mean = pooled / 50.0;
    const double sd = std::sqrt(std::max(0.0, pooled_sq / 50.0 - mean * mean));
    CHECK(std::abs(mean - direct) <= 3.0 * sd / std::sqrt(50.0));
}

TEST_CASE("expected information: conditioned realisations average posterior gains")
{
    // cross-check one conditioned run against externally replayed streams
    const TwoNodeToy toy;
    const TableLikelihood lik(toy.grid, toy.tables);
    const long N = 8, M = 6;
    const std::uint64_t seed = 2024;
    const auto r = expected_information(toy.prior, lik, toy.tables[0], N, M,
                                        seed, InfoMode::conditioned_on_null);
    double sum = 0.0;
    for (long i = 0; i < M; ++i) {
        RngStream stream(seed, "information", static_cast<std::uint64_t>(i));
        const auto xs = sample_positions(toy.tables[0], N, stream);
        sum += info_gain(posterior(xs, toy.prior, lik), toy.prior);
    }
    CHECK(r.H == doctest::Approx(sum / M).epsilon(1e-14));
}
