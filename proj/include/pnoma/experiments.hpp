#ifndef PNOMA_EXPERIMENTS_HPP
#define PNOMA_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pnoma/allocate.hpp"

namespace pnoma::cli {

/// Inclusive lo:step:hi grid specification, e.g. "-10:1:10".
struct Range {
    double lo = 0.0;
    double step = 1.0;
    double hi = 0.0;

    std::vector<double> values() const;
    static Range parse(const std::string& spec);
};

struct CommonOptions {
    NetworkParams net;         ///< defaults lambda=10, eta=4, sigma2=1e-9
    SearchGrids grids;         ///< default search grids
    long trials = 200000;
    std::uint64_t seed = 1;
    std::string output;        ///< CSV path; written atomically
};

// Exit codes: 0 ok, 1 config validation failure, 2 quadrature failure.

struct IfactorOptions {
    CommonOptions common;
    Range alpha_grid{0.0, 0.05, 1.0};
    std::string beta_grid = "auto"; ///< "auto" or lo:step:hi
};

struct CoverageOptions {
    CommonOptions common;
    std::vector<double> alphas{0.25};
    std::vector<std::string> beta_rules{"zero"}; ///< zero | half | max | fixed:<value>
    double p1 = 1.0 / 3.0;
    Range theta_db{-10.0, 1.0, 10.0};
    bool with_mc = false;
};

struct RateRegionOptions {
    CommonOptions common;
    double alpha = 1.0;
    Range p1_grid{0.0, 0.05, 1.0};
    bool oma = false; ///< sweep BW1 instead of P1
};

struct AllocateOptions {
    CommonOptions common;
    double alpha = 0.5;
    double tmt = 0.05;
    std::string method = "algorithm1"; ///< algorithm1 | exhaustive | both
};

struct SweepAlphaOptions {
    CommonOptions common;
    Range alpha_grid{0.05, 0.05, 1.0};
    std::vector<double> tmts{0.05, 0.25};
};

int run_ifactor(const IfactorOptions& opt);
int run_coverage(const CoverageOptions& opt);
int run_rate_region(const RateRegionOptions& opt);
int run_allocate(const AllocateOptions& opt);
int run_sweep_alpha(const SweepAlphaOptions& opt);

/// Desk-scale reproduction presets fig2, fig3, fig5 .. fig10.
int run_figure(const std::string& name, const CommonOptions& common);

} // namespace pnoma::cli

#endif
