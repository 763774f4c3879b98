#ifndef PNOMA_ALLOCATE_HPP
#define PNOMA_ALLOCATE_HPP

#include <vector>

#include "pnoma/analytic.hpp"

namespace pnoma {

/// Search grids shared by the feasible search and the exhaustive oracle.
/// Thresholds are uniform in dB and converted to linear for all math;
/// beta spans [0, 1-alpha] in beta_divisions equal steps (one value
/// when alpha = 1).
struct SearchGrids {
    double theta_db_lo = -20.0;
    double theta_db_hi = 21.0;
    double theta_db_step = 0.5;
    double p_step = 0.01;
    int beta_divisions = 10;

    long theta_count() const;
    long p_count() const;
    long beta_count(double alpha) const;

    std::vector<double> theta_grid() const; ///< ascending, linear scale
    std::vector<double> p2_grid() const;    ///< ascending, 0..1
    std::vector<double> beta_grid(double alpha) const; ///< ascending

    /// Exhaustive-search complexity 2 * beta_count * p_count * theta_count^2.
    long exhaustive_eval_count(double alpha) const;

    static SearchGrids defaults() { return SearchGrids{}; }
    static SearchGrids reduced() { return SearchGrids{-20.0, 21.0, 2.0, 0.05, 5}; }
};

enum class InfeasibilityReason { None, TmtUnreachableUe2, TmtUnreachableUe1 };

const char* to_string(InfeasibilityReason r);

struct AllocationOutcome {
    bool feasible = false;
    double beta = 0.0;
    double p1 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double r_tot = 0.0;
    Branch branch = Branch::Outage;
    long eval_count = 0;       ///< number of throughput evaluations
    int beta_iterations = 0;
    InfeasibilityReason reason = InfeasibilityReason::None;
};

/// Counts throughput evaluations on top of a memoizing coverage engine;
/// this is the complexity measure both searches report.
class ThroughputEvaluator {
public:
    explicit ThroughputEvaluator(const NetworkParams& p) : engine_(p) {}

    double rate(int user, const OverlapConfig& cfg, const Allocation& a)
    {
        ++evals_;
        return throughput(user, cfg, a, engine_);
    }

    long evals() const { return evals_; }
    const CoverageEngine& engine() const { return engine_; }

private:
    CoverageEngine engine_;
    long evals_ = 0;
};

/// Full grid product argmax of R_tot subject to R_1 >= T and R_2 >= T.
/// Ties break toward lower P2, then lower theta2, then higher beta.
AllocationOutcome exhaustive_search(double alpha, double tmt, const SearchGrids& grids,
                                    const NetworkParams& p);

/// Feasible resource allocation: descending beta scan that finds the
/// minimal P2 (and first theta2) meeting the UE2 throughput target,
/// classifies UE1's decoding state, and optimizes theta1; stops once
/// the per-beta best R1 starts decreasing.
AllocationOutcome algorithm1(double alpha, double tmt, const SearchGrids& grids,
                             const NetworkParams& p);

struct RateRegionPoint {
    double p1;
    double beta;
    double theta1;
    double theta2;
    double r1;
    double r2;
    double r_tot;
    Branch branch;
};

/// For each P1, maximizes R_tot over (beta, theta1, theta2).
std::vector<RateRegionPoint> rate_region_sweep(double alpha, const std::vector<double>& p1_grid,
                                               const SearchGrids& grids, const NetworkParams& p);

struct OmaPoint {
    double bw1;
    double theta1;
    double theta2;
    double r1;
    double r2;
    double r_tot;
};

/// OMA baseline: disjoint bands, each message at full unit power, no
/// intracell interference; thresholds optimized per bandwidth split.
std::vector<OmaPoint> oma_sweep(const std::vector<double>& bw1_grid, const SearchGrids& grids,
                                const NetworkParams& p);

} // namespace pnoma

#endif
