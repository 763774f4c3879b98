#ifndef PNOMA_SIMULATE_HPP
#define PNOMA_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "pnoma/analytic.hpp"
#include "pnoma/fsic.hpp"
#include "pnoma/spectral.hpp"

namespace pnoma {

/// One interfering BS as seen by the two users: distances to each UE
/// and the independent fading coefficient on each link.
struct Interferer {
    double d1;
    double d2;
    double g1;
    double g2;
};

/// One sampled network: nearest-interferer distance rho, ordered UE
/// link distances r1 <= r2 <= rho/2 with fading h1, h2, and the
/// interferer field.
struct NetworkRealization {
    double rho;
    double r1;
    double r2;
    double h1;
    double h2;
    std::vector<Interferer> interferers;
};

struct TrialOutcome {
    bool c1;
    bool c2;
    Branch branch_used; ///< which disjunct of C1 held (Outage if neither)
};

/// Default simulation window radius, max(5/sqrt(lambda), 4 E[rho]).
double default_sim_radius(const NetworkParams& p);

/// Samples one realization from the per-trial stream (seed, trial).
/// Trials are independent of evaluation order and parallelism degree.
NetworkRealization sample_realization(std::uint64_t seed, std::uint64_t trial,
                                      const NetworkParams& p, double r_sim);

/// Evaluates the raw SINR decoding events directly.
TrialOutcome evaluate_trial(const NetworkRealization& nr, const OverlapConfig& cfg,
                            const Allocation& a, const NetworkParams& p);

/// Evaluates the same events through the fading-threshold rewriting
/// (h_i > R_i^eta (intercell + noise) mbar_i).  Must agree with
/// evaluate_trial on every trial.
TrialOutcome evaluate_trial_via_thresholds(const NetworkRealization& nr, const OverlapConfig& cfg,
                                           const Allocation& a, const NetworkParams& p);

struct CoverageEstimate {
    double p_cov1;
    double p_cov2;
    double ci_half_width1; ///< 95% Wald half-width
    double ci_half_width2;
    long trials;
    std::uint64_t seed;
};

/// Empirical coverage over n_trials realizations.  Deterministic for a
/// given seed; thread count comes from PNOMA_THREADS when set.
CoverageEstimate simulate_coverage(const OverlapConfig& cfg, const Allocation& a,
                                   const NetworkParams& p, long n_trials, std::uint64_t seed);

/// Same, sharing realizations across a list of allocations (common
/// random numbers): one network sample serves every grid point.
std::vector<CoverageEstimate> simulate_coverage_sweep(const OverlapConfig& cfg,
                                                      const std::vector<Allocation>& allocs,
                                                      const NetworkParams& p, long n_trials,
                                                      std::uint64_t seed);

} // namespace pnoma

#endif
