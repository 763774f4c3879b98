#include "pnoma/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

namespace pnoma {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial)
{
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

int thread_count()
{
    if (const char* env = std::getenv("PNOMA_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double wald_half_width(double phat, long n)
{
    return 1.959963984540054 * std::sqrt(phat * (1.0 - phat) / static_cast<double>(n));
}

} // namespace

double default_sim_radius(const NetworkParams& p)
{
    const double mean_rho = 0.5 / std::sqrt(p.lambda);
    return std::max(5.0 / std::sqrt(p.lambda), 4.0 * mean_rho);
}

NetworkRealization sample_realization(std::uint64_t seed, std::uint64_t trial,
                                      const NetworkParams& p, double r_sim)
{
    std::mt19937_64 rng = trial_engine(seed, trial);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::poisson_distribution<int> count(p.lambda * M_PI * r_sim * r_sim);

    int n = 0;
    do {
        n = count(rng);
    } while (n == 0);

    std::vector<double> xs(n), ys(n);
    double rho = r_sim;
    for (int k = 0; k < n; ++k) {
        const double r = r_sim * std::sqrt(uni(rng));
        const double ang = 2.0 * M_PI * uni(rng);
        xs[k] = r * std::cos(ang);
        ys[k] = r * std::sin(ang);
        rho = std::min(rho, r);
    }

    // two UEs uniform in the in-disk b(o, rho/2), ordered by distance
    double ux[2], uy[2], d[2];
    for (int k = 0; k < 2; ++k) {
        const double r = (rho / 2.0) * std::sqrt(uni(rng));
        const double ang = 2.0 * M_PI * uni(rng);
        ux[k] = r * std::cos(ang);
        uy[k] = r * std::sin(ang);
        d[k] = r;
    }
    const int near = d[0] <= d[1] ? 0 : 1;
    const int far = 1 - near;

    NetworkRealization nr;
    nr.rho = rho;
    nr.r1 = d[near];
    nr.r2 = d[far];
    nr.h1 = expo(rng);
    nr.h2 = expo(rng);
    nr.interferers.resize(n);
    for (int k = 0; k < n; ++k) {
        Interferer& it = nr.interferers[k];
        it.d1 = std::hypot(xs[k] - ux[near], ys[k] - uy[near]);
        it.d2 = std::hypot(xs[k] - ux[far], ys[k] - uy[far]);
        it.g1 = expo(rng);
        it.g2 = expo(rng);
    }
    return nr;
}

namespace {

/// Unit-power intercell interference sums at the two UEs.
void intercell_sums(const NetworkRealization& nr, double eta, double& io1, double& io2)
{
    io1 = 0.0;
    io2 = 0.0;
    for (const Interferer& it : nr.interferers) {
        io1 += it.g1 * std::pow(it.d1, -eta);
        io2 += it.g2 * std::pow(it.d2, -eta);
    }
}

} // namespace

TrialOutcome evaluate_trial(const NetworkRealization& nr, const OverlapConfig& cfg,
                            const Allocation& a, const NetworkParams& p)
{
    const double ifac = cfg.i_factor;
    double io1 = 0.0, io2 = 0.0;
    intercell_sums(nr, p.eta, io1, io2);
    const double it1 = (a.p1 + (1.0 - a.p1) * ifac) * io1;
    const double it2 = (a.p2 + (1.0 - a.p2) * ifac) * io2;

    const double sig1 = nr.h1 * std::pow(nr.r1, -p.eta);
    const double sig2 = nr.h2 * std::pow(nr.r2, -p.eta);

    const double sinr22 = sig2 * a.p2 / (sig2 * a.p1 * ifac + it2 + p.sigma2);
    const double sinr21 = sig1 * a.p2 * ifac / (sig1 * a.p1 + it1 + p.sigma2);
    const double sinr11 = sig1 * a.p1 / (it1 + p.sigma2);
    const double sinr11_direct = sig1 * a.p1 / (sig1 * a.p2 * ifac + it1 + p.sigma2);

    const bool sic_ok = sinr21 > a.theta2 && sinr11 > a.theta1;
    const bool direct_ok = sinr11_direct > a.theta1;

    TrialOutcome out;
    out.c2 = sinr22 > a.theta2;
    out.c1 = sic_ok || direct_ok;
    out.branch_used = sic_ok ? Branch::Sic : (direct_ok ? Branch::TreatAsNoise : Branch::Outage);
    return out;
}

TrialOutcome evaluate_trial_via_thresholds(const NetworkRealization& nr, const OverlapConfig& cfg,
                                           const Allocation& a, const NetworkParams& p)
{
    const DecodingThresholds t = thresholds(a, cfg.i_factor);
    double io1 = 0.0, io2 = 0.0;
    intercell_sums(nr, p.eta, io1, io2);
    const double it1 = (a.p1 + (1.0 - a.p1) * cfg.i_factor) * io1;
    const double it2 = (a.p2 + (1.0 - a.p2) * cfg.i_factor) * io2;

    TrialOutcome out;
    out.c1 = t.mbar1 && nr.h1 > std::pow(nr.r1, p.eta) * (it1 + p.sigma2) * (*t.mbar1);
    out.c2 = t.mbar2 && nr.h2 > std::pow(nr.r2, p.eta) * (it2 + p.sigma2) * (*t.mbar2);
    out.branch_used = out.c1 ? t.branch : Branch::Outage;
    return out;
}

std::vector<CoverageEstimate> simulate_coverage_sweep(const OverlapConfig& cfg,
                                                      const std::vector<Allocation>& allocs,
                                                      const NetworkParams& p, long n_trials,
                                                      std::uint64_t seed)
{
    if (n_trials <= 0) {
        throw std::invalid_argument("simulate_coverage: n_trials must be positive");
    }
    const double r_sim = default_sim_radius(p);
    const std::size_t m = allocs.size();

    const int n_threads = std::min<long>(thread_count(), n_trials);
    std::vector<std::vector<long>> counts1(n_threads, std::vector<long>(m, 0));
    std::vector<std::vector<long>> counts2(n_threads, std::vector<long>(m, 0));

    auto work = [&](int tid) {
        for (long t = tid; t < n_trials; t += n_threads) {
            const NetworkRealization nr =
                sample_realization(seed, static_cast<std::uint64_t>(t), p, r_sim);
            for (std::size_t j = 0; j < m; ++j) {
                const TrialOutcome out = evaluate_trial(nr, cfg, allocs[j], p);
                counts1[tid][j] += out.c1;
                counts2[tid][j] += out.c2;
            }
        }
    };

    if (n_threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int tid = 0; tid < n_threads; ++tid) {
            pool.emplace_back(work, tid);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::vector<CoverageEstimate> res(m);
    for (std::size_t j = 0; j < m; ++j) {
        long c1 = 0, c2 = 0;
        for (int tid = 0; tid < n_threads; ++tid) {
            c1 += counts1[tid][j];
            c2 += counts2[tid][j];
        }
        const double p1 = static_cast<double>(c1) / static_cast<double>(n_trials);
        const double p2 = static_cast<double>(c2) / static_cast<double>(n_trials);
        res[j] = CoverageEstimate{p1, p2, wald_half_width(p1, n_trials),
                                  wald_half_width(p2, n_trials), n_trials, seed};
    }
    return res;
}

CoverageEstimate simulate_coverage(const OverlapConfig& cfg, const Allocation& a,
                                   const NetworkParams& p, long n_trials, std::uint64_t seed)
{
    return simulate_coverage_sweep(cfg, {a}, p, n_trials, seed).front();
}

} // namespace pnoma
