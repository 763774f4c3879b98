#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "pnoma/simulate.hpp"

using namespace pnoma;

namespace {

double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double f = cdf(xs[k]);
        d = std::max(d, std::abs(f - static_cast<double>(k) / n));
        d = std::max(d, std::abs(f - static_cast<double>(k + 1) / n));
    }
    return d;
}

} // namespace

TEST_CASE("simulation window radius")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    // max(5/sqrt(lambda), 4 * 0.5/sqrt(lambda)) = 5/sqrt(10)
    CHECK(default_sim_radius(p) == doctest::Approx(5.0 / std::sqrt(10.0)).epsilon(1e-12));
    const NetworkParams p1(1.0, 4.0, 1e-9);
    CHECK(default_sim_radius(p1) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("realization geometry invariants")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const double r_sim = default_sim_radius(p);
    double count_sum = 0.0;
    const int n = 2000;
    for (int t = 0; t < n; ++t) {
        const NetworkRealization nr = sample_realization(7, t, p, r_sim);
        CHECK(nr.rho > 0.0);
        CHECK(nr.rho <= r_sim);
        CHECK(nr.r1 <= nr.r2);
        CHECK(nr.r2 <= nr.rho / 2.0 + 1e-12);
        CHECK(nr.h1 >= 0.0);
        CHECK(nr.h2 >= 0.0);
        CHECK(!nr.interferers.empty());
        for (const Interferer& it : nr.interferers) {
            // every BS is at least rho from the origin, the UEs at most
            // rho/2, so UE-to-interferer distances exceed rho/2
            CHECK(it.d1 >= nr.rho / 2.0 - 1e-9);
            CHECK(it.d2 >= nr.rho / 2.0 - 1e-9);
        }
        count_sum += static_cast<double>(nr.interferers.size());
    }
    // Poisson(lambda pi r_sim^2) mean, up to the zero-count rejection
    const double mean = p.lambda * M_PI * r_sim * r_sim;
    CHECK(count_sum / n == doctest::Approx(mean).epsilon(0.01));
}

TEST_CASE("nearest-interferer distance matches the Rayleigh law")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const double r_sim = default_sim_radius(p);
    std::vector<double> rhos;
    const int n = 100000;
    rhos.reserve(n);
    for (int t = 0; t < n; ++t) {
        rhos.push_back(sample_realization(11, t, p, r_sim).rho);
    }
    const double d = ks_distance(
        rhos, [&](double x) { return 1.0 - std::exp(-M_PI * p.lambda * x * x); });
    CHECK(d < 0.01);
}

TEST_CASE("ordered link distances match the in-disk order statistics")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const double r_sim = default_sim_radius(p);
    std::vector<double> v1, v2;
    const int n = 100000;
    v1.reserve(n);
    v2.reserve(n);
    for (int t = 0; t < n; ++t) {
        const NetworkRealization nr = sample_realization(13, t, p, r_sim);
        v1.push_back(2.0 * nr.r1 / nr.rho);
        v2.push_back(2.0 * nr.r2 / nr.rho);
    }
    // with v = 2r/rho: CDF of the near user 2v^2 - v^4, far user v^4
    CHECK(ks_distance(v1, [](double v) { return 2.0 * v * v - std::pow(v, 4); }) < 0.01);
    CHECK(ks_distance(v2, [](double v) { return std::pow(v, 4); }) < 0.01);
}

TEST_CASE("raw SINR events equal the fading-threshold rewriting")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const double r_sim = default_sim_radius(p);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        const double alpha = u(rng);
        const double beta = (1.0 - alpha) * u(rng);
        const OverlapConfig cfg(alpha, beta);
        const Allocation a = Allocation::from_p1(u(rng), 4.0 * u(rng), 4.0 * u(rng));
        for (int t = 0; t < 50; ++t) {
            const NetworkRealization nr = sample_realization(17, 50 * k + t, p, r_sim);
            const TrialOutcome raw = evaluate_trial(nr, cfg, a, p);
            const TrialOutcome lemma = evaluate_trial_via_thresholds(nr, cfg, a, p);
            CHECK(raw.c1 == lemma.c1);
            CHECK(raw.c2 == lemma.c2);
            ++checked;
        }
    }
    CHECK(checked == 10000);
}

TEST_CASE("simulation is deterministic for a fixed seed")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const OverlapConfig cfg(0.5, 0.25);
    const Allocation a = Allocation::from_p1(1.0 / 3.0, 1.0, 1.0);
    const CoverageEstimate e1 = simulate_coverage(cfg, a, p, 20000, 5);
    const CoverageEstimate e2 = simulate_coverage(cfg, a, p, 20000, 5);
    CHECK(e1.p_cov1 == e2.p_cov1);
    CHECK(e1.p_cov2 == e2.p_cov2);
    const CoverageEstimate e3 = simulate_coverage(cfg, a, p, 20000, 6);
    CHECK(e1.p_cov1 != e3.p_cov1);
}

TEST_CASE("zero threshold is always covered")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const OverlapConfig cfg(0.5, 0.25);
    const Allocation a = Allocation::from_p1(1.0 / 3.0, 0.0, 0.0);
    const CoverageEstimate e = simulate_coverage(cfg, a, p, 5000, 3);
    CHECK(e.p_cov1 == 1.0);
    CHECK(e.p_cov2 == 1.0);
}

TEST_CASE("sweep shares realizations across allocations")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const OverlapConfig cfg(0.5, 0.25);
    std::vector<Allocation> allocs;
    for (const double th : {0.5, 1.0, 2.0}) {
        allocs.push_back(Allocation::from_p1(1.0 / 3.0, th, th));
    }
    const auto sweep = simulate_coverage_sweep(cfg, allocs, p, 20000, 21);
    REQUIRE(sweep.size() == 3);
    // common random numbers make the estimates exactly monotone
    CHECK(sweep[0].p_cov1 >= sweep[1].p_cov1);
    CHECK(sweep[1].p_cov1 >= sweep[2].p_cov1);
    CHECK(sweep[0].p_cov2 >= sweep[1].p_cov2);
    CHECK(sweep[1].p_cov2 >= sweep[2].p_cov2);
    // and each matches the single-allocation route bit for bit
    const CoverageEstimate solo = simulate_coverage(cfg, allocs[1], p, 20000, 21);
    CHECK(solo.p_cov1 == sweep[1].p_cov1);
    CHECK(solo.p_cov2 == sweep[1].p_cov2);

    CHECK(solo.ci_half_width1 > 0.0);
    CHECK(solo.trials == 20000);
    CHECK(solo.seed == 21);
}

TEST_CASE("empirical coverage approaches the analytic value")
{
    const NetworkParams p(10.0, 4.0, 1e-9);
    const OverlapConfig cfg(0.5, 0.25);
    const Allocation a = Allocation::from_p1(1.0 / 3.0, 1.0, 1.0);
    const CoverageEstimate e = simulate_coverage(cfg, a, p, 100000, 8);
    const CoverageResult r = coverage(cfg, a, p);
    CHECK(std::abs(e.p_cov1 - r.p_cov1) < 0.03);
    CHECK(std::abs(e.p_cov2 - r.p_cov2) < 0.05);
}
