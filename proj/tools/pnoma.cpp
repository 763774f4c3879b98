// Batch front-end for the partial-NOMA library: interference-factor
// tables, analytic and Monte Carlo coverage sweeps, rate-region and OMA
// sweeps, and TMT-constrained allocation, all emitted as CSV.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pnoma/experiments.hpp"

using namespace pnoma::cli;

namespace {

std::string g_config_path;

void add_common(CLI::App* cmd, CommonOptions& c, double& sigma2_db)
{
    cmd->add_option("--config", g_config_path,
                    "flat key=value config file; flags override");
    cmd->add_option("--lambda", c.net.lambda, "base-station intensity")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eta", c.net.eta, "path-loss exponent (> 2)");
    cmd->add_option("--sigma2-db", sigma2_db, "noise power in dB (default -90)");
    cmd->add_option("--theta-db-step", c.grids.theta_db_step, "threshold grid step (dB)");
    cmd->add_option("--theta-db-lo", c.grids.theta_db_lo, "threshold grid lower bound (dB)");
    cmd->add_option("--theta-db-hi", c.grids.theta_db_hi, "threshold grid upper bound (dB)");
    cmd->add_option("--p-step", c.grids.p_step, "power grid step");
    cmd->add_option("--beta-divisions", c.grids.beta_divisions, "beta grid divisions");
    cmd->add_option("--trials", c.trials, "Monte Carlo trials");
    cmd->add_option("--seed", c.seed, "RNG seed (recorded in output)");
    cmd->add_option("-o,--output", c.output, "output CSV path (default stdout)");
}

std::string trimmed(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    const auto b = s.find_last_not_of(" \t\r");
    std::string t = s.substr(a, b - a + 1);
    if (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') ||
                          (t.front() == '\'' && t.back() == '\''))) {
        t = t.substr(1, t.size() - 2);
    }
    return t;
}

/// Expands `--config FILE` into trailing `--key=value` arguments so a
/// flat key=value file feeds the active subcommand, with explicit
/// command-line flags taking precedence.
std::vector<std::string> args_with_config(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file " + path);
    }
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trimmed(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line is not key=value: " + t);
        }
        const std::string key = trimmed(t.substr(0, eq));
        const std::string value = trimmed(t.substr(eq + 1));
        const std::string flag = "--" + key;
        bool given = false;
        for (const std::string& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                given = true;
                break;
            }
        }
        if (!given) {
            args.push_back(flag + "=" + value);
        }
    }
    return args;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"partial-NOMA downlink model: analysis, simulation, allocation"};
    app.require_subcommand(0, 1);

    double sigma2_db = -90.0;

    IfactorOptions ifc;
    std::string ifc_alpha = "0:0.05:1";
    auto* c_if = app.add_subcommand("ifactor", "effective interference factor table");
    add_common(c_if, ifc.common, sigma2_db);
    c_if->add_option("--alpha-grid", ifc_alpha, "alpha grid lo:step:hi");
    c_if->add_option("--beta-grid", ifc.beta_grid, "beta grid lo:step:hi or 'auto'");

    CoverageOptions cov;
    std::string cov_theta = "-10:1:10";
    auto* c_ca = app.add_subcommand("coverage-analytic", "analytic coverage vs threshold");
    add_common(c_ca, cov.common, sigma2_db);
    c_ca->add_option("--alpha", cov.alphas, "overlap value(s)");
    c_ca->add_option("--beta", cov.beta_rules, "beta rule(s): zero|half|max|fixed:<v>");
    c_ca->add_option("--p1", cov.p1, "power fraction of the near user");
    c_ca->add_option("--theta-db", cov_theta, "threshold sweep lo:step:hi (dB)");

    CoverageOptions cov_mc;
    cov_mc.with_mc = true;
    std::string cm_theta = "-10:1:10";
    auto* c_cm = app.add_subcommand("coverage-mc", "analytic and Monte Carlo coverage");
    add_common(c_cm, cov_mc.common, sigma2_db);
    c_cm->add_option("--alpha", cov_mc.alphas, "overlap value(s)");
    c_cm->add_option("--beta", cov_mc.beta_rules, "beta rule(s): zero|half|max|fixed:<v>");
    c_cm->add_option("--p1", cov_mc.p1, "power fraction of the near user");
    c_cm->add_option("--theta-db", cm_theta, "threshold sweep lo:step:hi (dB)");

    RateRegionOptions rr;
    std::string rr_p1 = "0:0.05:1";
    auto* c_rr = app.add_subcommand("rate-region", "rate-region abstraction sweep");
    add_common(c_rr, rr.common, sigma2_db);
    c_rr->add_option("--alpha", rr.alpha, "overlap");
    c_rr->add_option("--p1-grid", rr_p1, "P1 (or BW1 with --oma) grid lo:step:hi");
    c_rr->add_flag("--oma", rr.oma, "sweep OMA bandwidth split instead");

    AllocateOptions al;
    auto* c_al = app.add_subcommand("allocate", "TMT-constrained cell-sum-rate maximization");
    add_common(c_al, al.common, sigma2_db);
    c_al->add_option("--alpha", al.alpha, "overlap");
    c_al->add_option("--tmt", al.tmt, "threshold minimum throughput");
    c_al->add_option("--method", al.method, "algorithm1 | exhaustive | both");

    SweepAlphaOptions sw;
    std::string sw_alpha = "0.05:0.05:1";
    auto* c_sw = app.add_subcommand("sweep-alpha", "per-alpha feasible allocation");
    add_common(c_sw, sw.common, sigma2_db);
    c_sw->add_option("--alpha-grid", sw_alpha, "alpha grid lo:step:hi");
    c_sw->add_option("--tmt", sw.tmts, "throughput target value(s)");

    std::string figure;
    app.add_option("--figure", figure, "preset: fig2 fig3 fig5 fig6 fig7 fig8 fig9 fig10");
    CommonOptions fig_common;
    app.add_option("--output", fig_common.output, "output CSV path for --figure presets");
    app.add_option("--trials", fig_common.trials, "Monte Carlo trials for --figure presets");
    app.add_option("--seed", fig_common.seed, "RNG seed for --figure presets");

    try {
        std::vector<std::string> args = args_with_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "pnoma: " << e.what() << "\n";
        return 1;
    }

    const double sigma2 = std::pow(10.0, sigma2_db / 10.0);
    for (CommonOptions* c : {&ifc.common, &cov.common, &cov_mc.common, &rr.common,
                             &al.common, &sw.common}) {
        c->net.sigma2 = sigma2;
    }

    try {
        if (!figure.empty()) {
            return run_figure(figure, fig_common);
        }
        if (c_if->parsed()) {
            ifc.alpha_grid = Range::parse(ifc_alpha);
            return run_ifactor(ifc);
        }
        if (c_ca->parsed()) {
            cov.theta_db = Range::parse(cov_theta);
            return run_coverage(cov);
        }
        if (c_cm->parsed()) {
            cov_mc.theta_db = Range::parse(cm_theta);
            return run_coverage(cov_mc);
        }
        if (c_rr->parsed()) {
            rr.p1_grid = Range::parse(rr_p1);
            return run_rate_region(rr);
        }
        if (c_al->parsed()) {
            return run_allocate(al);
        }
        if (c_sw->parsed()) {
            sw.alpha_grid = Range::parse(sw_alpha);
            return run_sweep_alpha(sw);
        }
    } catch (const std::exception& e) {
        std::cerr << "pnoma: " << e.what() << "\n";
        return 1;
    }

    std::cout << app.help();
    return 0;
}
