#include "pnoma/allocate.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace pnoma {

namespace {

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace

long SearchGrids::theta_count() const
{
    return static_cast<long>(std::floor((theta_db_hi - theta_db_lo) / theta_db_step + 1e-9)) + 1;
}

long SearchGrids::p_count() const
{
    return static_cast<long>(std::floor(1.0 / p_step + 1e-9)) + 1;
}

long SearchGrids::beta_count(double alpha) const
{
    return alpha >= 1.0 ? 1 : beta_divisions + 1;
}

std::vector<double> SearchGrids::theta_grid() const
{
    std::vector<double> g;
    const long n = theta_count();
    g.reserve(n);
    for (long k = 0; k < n; ++k) {
        g.push_back(db_to_linear(theta_db_lo + static_cast<double>(k) * theta_db_step));
    }
    return g;
}

std::vector<double> SearchGrids::p2_grid() const
{
    std::vector<double> g;
    const long n = p_count();
    g.reserve(n);
    for (long k = 0; k < n; ++k) {
        g.push_back(std::min(static_cast<double>(k) * p_step, 1.0));
    }
    return g;
}

std::vector<double> SearchGrids::beta_grid(double alpha) const
{
    if (alpha >= 1.0) {
        return {0.0};
    }
    const double beta_max = 1.0 - alpha;
    const double step = beta_max / static_cast<double>(beta_divisions);
    std::vector<double> g;
    g.reserve(beta_divisions + 1);
    for (int k = 0; k < beta_divisions; ++k) {
        g.push_back(static_cast<double>(k) * step);
    }
    g.push_back(beta_max);
    return g;
}

long SearchGrids::exhaustive_eval_count(double alpha) const
{
    const long t = theta_count();
    return 2 * beta_count(alpha) * p_count() * t * t;
}

const char* to_string(InfeasibilityReason r)
{
    switch (r) {
    case InfeasibilityReason::None: return "none";
    case InfeasibilityReason::TmtUnreachableUe2: return "tmt_unreachable_ue2";
    case InfeasibilityReason::TmtUnreachableUe1: return "tmt_unreachable_ue1";
    }
    return "?";
}

namespace {

Branch branch_at(const OverlapConfig& cfg, const Allocation& a)
{
    return thresholds(a, cfg.i_factor).branch;
}

struct Candidate {
    double r_tot, r1, r2, beta, p2, theta1, theta2;
};

/// Deterministic preference: higher R_tot, then lower P2, then lower
/// theta2, then higher beta, then lower theta1.
bool better(const Candidate& c, const Candidate& b)
{
    if (c.r_tot != b.r_tot) return c.r_tot > b.r_tot;
    if (c.p2 != b.p2) return c.p2 < b.p2;
    if (c.theta2 != b.theta2) return c.theta2 < b.theta2;
    if (c.beta != b.beta) return c.beta > b.beta;
    return c.theta1 < b.theta1;
}

} // namespace

AllocationOutcome exhaustive_search(double alpha, double tmt, const SearchGrids& grids,
                                    const NetworkParams& p)
{
    if (tmt < 0.0) {
        throw std::invalid_argument("exhaustive_search: TMT must be nonnegative");
    }
    ThroughputEvaluator ev(p);
    const auto thetas = grids.theta_grid();
    const auto p2s = grids.p2_grid();
    const auto betas = grids.beta_grid(alpha);

    std::optional<Candidate> best;
    bool ue2_ever_met = false;

    for (const double beta : betas) {
        const OverlapConfig cfg(alpha, beta);
        for (const double p2 : p2s) {
            for (const double th1 : thetas) {
                for (const double th2 : thetas) {
                    const Allocation a(1.0 - p2, p2, th1, th2);
                    const double r1 = ev.rate(1, cfg, a);
                    const double r2 = ev.rate(2, cfg, a);
                    if (r2 >= tmt) {
                        ue2_ever_met = true;
                    }
                    if (r1 < tmt || r2 < tmt) {
                        continue;
                    }
                    const Candidate c{r1 + r2, r1, r2, beta, p2, th1, th2};
                    if (!best || better(c, *best)) {
                        best = c;
                    }
                }
            }
        }
    }

    AllocationOutcome out;
    out.eval_count = ev.evals();
    out.beta_iterations = static_cast<int>(betas.size());
    if (!best) {
        out.reason = ue2_ever_met ? InfeasibilityReason::TmtUnreachableUe1
                                  : InfeasibilityReason::TmtUnreachableUe2;
        return out;
    }
    out.feasible = true;
    out.beta = best->beta;
    out.p1 = 1.0 - best->p2;
    out.theta1 = best->theta1;
    out.theta2 = best->theta2;
    out.r1 = best->r1;
    out.r2 = best->r2;
    out.r_tot = best->r_tot;
    out.branch = branch_at(OverlapConfig(alpha, best->beta),
                           Allocation(out.p1, best->p2, best->theta1, best->theta2));
    return out;
}

namespace {

/// Best feasible point found for one beta during the descending scan.
struct BetaRecord {
    double r1 = 0.0;
    double r2 = 0.0;
    double beta = 0.0;
    double p2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
};

} // namespace

AllocationOutcome algorithm1(double alpha, double tmt, const SearchGrids& grids,
                             const NetworkParams& p)
{
    if (tmt < 0.0) {
        throw std::invalid_argument("algorithm1: TMT must be nonnegative");
    }
    ThroughputEvaluator ev(p);
    const auto thetas = grids.theta_grid();
    const auto p2s = grids.p2_grid();
    auto betas = grids.beta_grid(alpha); // scan descending
    std::vector<BetaRecord> records;
    int beta_iterations = 0;
    bool stopped = false;

    for (auto it = betas.rbegin(); it != betas.rend() && !stopped; ++it) {
        const double beta = *it;
        ++beta_iterations;
        const OverlapConfig cfg(alpha, beta);
        const double ifac = cfg.i_factor;

        bool have_record = false;
        BetaRecord rec;
        rec.beta = beta;

        std::optional<BetaRecord> noise_route; // State II result, kept while raising P2
        std::optional<BetaRecord> crossing;    // last (P2, theta2) meeting the UE2 target

        for (const double p2 : p2s) {
            // minimal theta2 whose UE2 throughput reaches the target
            double th2_found = 0.0, r2_found = 0.0;
            bool met = false;
            for (const double th2 : thetas) {
                const Allocation probe(1.0 - p2, p2, thetas.front(), th2);
                const double r2 = ev.rate(2, cfg, probe);
                if (r2 >= tmt) {
                    th2_found = th2;
                    r2_found = r2;
                    met = true;
                    break;
                }
            }
            if (!met) {
                continue; // raise P2; exhausting the budget fails this beta
            }
            crossing = BetaRecord{0.0, r2_found, beta, p2, thetas.front(), th2_found};

            const double pt21 = p2 * ifac - th2_found * (1.0 - p2);
            if (pt21 > 0.0) {
                // State I: decoding UE2's message is possible; optimize
                // theta1 and finish this beta.
                BetaRecord sic{0.0, r2_found, beta, p2, thetas.front(), th2_found};
                for (const double th1 : thetas) {
                    const Allocation a(1.0 - p2, p2, th1, th2_found);
                    const double r1 = ev.rate(1, cfg, a);
                    if (r1 > sic.r1) {
                        sic.r1 = r1;
                        sic.theta1 = th1;
                    }
                }
                rec = (noise_route && noise_route->r1 > sic.r1) ? *noise_route : sic;
                have_record = true;
                break;
            }

            if (!noise_route) {
                // Possibly State II: UE1 treats UE2's message as noise
                // wherever its effective power stays positive.
                BetaRecord noise{0.0, r2_found, beta, p2, thetas.front(), th2_found};
                for (const double th1 : thetas) {
                    const double pt1 = (1.0 - p2) - th1 * p2 * ifac;
                    if (pt1 <= 0.0) {
                        continue;
                    }
                    const Allocation a(1.0 - p2, p2, th1, th2_found);
                    const double r1 = ev.rate(1, cfg, a);
                    if (r1 > noise.r1) {
                        noise.r1 = r1;
                        noise.theta1 = th1;
                    }
                }
                if (noise.r1 > 0.0) {
                    noise_route = noise;
                }
                // State III (no admissible theta1): keep raising P2.
            }
            // With a State II result in hand, keep raising P2 in search
            // of State I; the loop ends when the budget is spent.
        }

        if (!have_record && noise_route) {
            rec = *noise_route;
            have_record = true;
        }
        if (!have_record && crossing) {
            // UE2 met the target but UE1 stayed in outage at every P2.
            rec = *crossing;
            have_record = true;
        }
        if (!have_record) {
            continue; // UE2 cannot reach the target at this beta
        }

        records.push_back(rec);
        const std::size_t n = records.size();
        if (n >= 2 && records[n - 1].r1 < records[n - 2].r1) {
            stopped = true; // per-beta best started decreasing
        }
    }

    AllocationOutcome out;
    out.eval_count = ev.evals();
    out.beta_iterations = beta_iterations;
    if (records.empty()) {
        out.reason = InfeasibilityReason::TmtUnreachableUe2;
        return out;
    }
    const BetaRecord* best = &records.front();
    for (const BetaRecord& r : records) {
        if (r.r1 > best->r1) {
            best = &r;
        }
    }
    out.beta = best->beta;
    out.p1 = 1.0 - best->p2;
    out.theta1 = best->theta1;
    out.theta2 = best->theta2;
    out.r1 = best->r1;
    out.r2 = best->r2;
    out.r_tot = best->r1 + best->r2;
    out.branch = branch_at(OverlapConfig(alpha, best->beta),
                           Allocation(out.p1, best->p2, best->theta1, best->theta2));
    out.feasible = best->r1 >= tmt;
    if (!out.feasible) {
        out.reason = InfeasibilityReason::TmtUnreachableUe1;
    }
    return out;
}

std::vector<RateRegionPoint> rate_region_sweep(double alpha, const std::vector<double>& p1_grid,
                                               const SearchGrids& grids, const NetworkParams& p)
{
    ThroughputEvaluator ev(p);
    const auto thetas = grids.theta_grid();
    const auto betas = grids.beta_grid(alpha);
    std::vector<RateRegionPoint> out;
    out.reserve(p1_grid.size());

    for (const double p1 : p1_grid) {
        std::optional<Candidate> best;
        for (const double beta : betas) {
            const OverlapConfig cfg(alpha, beta);
            for (const double th1 : thetas) {
                for (const double th2 : thetas) {
                    const Allocation a(p1, 1.0 - p1, th1, th2);
                    const double r1 = ev.rate(1, cfg, a);
                    const double r2 = ev.rate(2, cfg, a);
                    const Candidate c{r1 + r2, r1, r2, beta, 1.0 - p1, th1, th2};
                    if (!best || better(c, *best)) {
                        best = c;
                    }
                }
            }
        }
        const OverlapConfig cfg(alpha, best->beta);
        const Allocation a(p1, 1.0 - p1, best->theta1, best->theta2);
        out.push_back(RateRegionPoint{p1, best->beta, best->theta1, best->theta2, best->r1,
                                      best->r2, best->r_tot, branch_at(cfg, a)});
    }
    return out;
}

std::vector<OmaPoint> oma_sweep(const std::vector<double>& bw1_grid, const SearchGrids& grids,
                                const NetworkParams& p)
{
    CoverageEngine eng(p);
    const auto thetas = grids.theta_grid();
    std::vector<OmaPoint> out;
    out.reserve(bw1_grid.size());

    for (const double bw1 : bw1_grid) {
        if (!(bw1 > 0.0 && bw1 < 1.0)) {
            throw std::invalid_argument("oma_sweep: bw1 must lie in (0,1)");
        }
        OmaPoint pt{bw1, thetas.front(), thetas.front(), 0.0, 0.0, 0.0};
        // disjoint bands, full unit power per message: mbar_i = theta_i
        // and the intercell scaling factor collapses to 1
        for (const double th : thetas) {
            const double r1 = bw1 * eng.probability(1, th, 1.0) * std::log1p(th);
            if (r1 > pt.r1) {
                pt.r1 = r1;
                pt.theta1 = th;
            }
            const double r2 = (1.0 - bw1) * eng.probability(2, th, 1.0) * std::log1p(th);
            if (r2 > pt.r2) {
                pt.r2 = r2;
                pt.theta2 = th;
            }
        }
        pt.r_tot = pt.r1 + pt.r2;
        out.push_back(pt);
    }
    return out;
}

} // namespace pnoma
