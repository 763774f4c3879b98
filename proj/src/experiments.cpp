#include "pnoma/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "pnoma/simulate.hpp"

namespace pnoma::cli {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double linear_to_db(double v)
{
    return 10.0 * std::log10(v);
}

/// Accumulates rows and writes the file atomically: the output never
/// holds a partial result.
class CsvWriter {
public:
    explicit CsvWriter(std::string path) : path_(std::move(path)) {}

    void header(const std::string& columns) { body_ << columns << '\n'; }

    template <typename... Ts>
    void row(const Ts&... cells)
    {
        bool first = true;
        ((body_ << (first ? "" : ","), first = false, append(cells)), ...);
        body_ << '\n';
    }

    void commit(const std::string& command)
    {
        const auto now = std::chrono::system_clock::now();
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                              now.time_since_epoch())
                              .count();
        if (path_.empty() || path_ == "-") {
            std::cout << "# pnoma " << command << " generated=" << secs << "\n"
                      << body_.str();
            return;
        }
        const std::filesystem::path target(path_);
        std::filesystem::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) {
                throw std::runtime_error("cannot open output file " + tmp.string());
            }
            out << "# pnoma " << command << " generated=" << secs << "\n" << body_.str();
        }
        std::filesystem::rename(tmp, target);
    }

private:
    void append(double v) { body_ << fmt(v); }
    void append(long v) { body_ << v; }
    void append(int v) { body_ << v; }
    void append(std::uint64_t v) { body_ << v; }
    void append(const char* v) { body_ << v; }
    void append(const std::string& v) { body_ << v; }

    std::string path_;
    std::ostringstream body_;
};

double beta_from_rule(const std::string& rule, double alpha)
{
    if (rule == "zero") {
        return 0.0;
    }
    if (rule == "half") {
        return (1.0 - alpha) / 2.0;
    }
    if (rule == "max") {
        return 1.0 - alpha;
    }
    if (rule.rfind("fixed:", 0) == 0) {
        return std::stod(rule.substr(6));
    }
    throw std::invalid_argument("unknown beta rule '" + rule + "'");
}

int guarded(const std::string& what, const std::function<void()>& body)
{
    try {
        body();
        return 0;
    } catch (const QuadratureError& e) {
        std::cerr << "pnoma " << what << ": quadrature failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pnoma " << what << ": " << e.what() << "\n";
        return 1;
    }
}

} // namespace

std::vector<double> Range::values() const
{
    if (step <= 0.0 || hi < lo) {
        throw std::invalid_argument("range requires step > 0 and hi >= lo");
    }
    std::vector<double> v;
    const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    v.reserve(n);
    for (long k = 0; k < n; ++k) {
        v.push_back(lo + static_cast<double>(k) * step);
    }
    return v;
}

Range Range::parse(const std::string& spec)
{
    Range r;
    const auto a = spec.find(':');
    const auto b = spec.rfind(':');
    if (a == std::string::npos || a == b) {
        throw std::invalid_argument("range must be lo:step:hi, got '" + spec + "'");
    }
    r.lo = std::stod(spec.substr(0, a));
    r.step = std::stod(spec.substr(a + 1, b - a - 1));
    r.hi = std::stod(spec.substr(b + 1));
    return r;
}

int run_ifactor(const IfactorOptions& opt)
{
    return guarded("ifactor", [&] {
        CsvWriter csv(opt.common.output);
        csv.header("alpha,beta,bw1,bw2,ifactor");
        for (const double alpha : opt.alpha_grid.values()) {
            std::vector<double> betas;
            if (opt.beta_grid == "auto") {
                const double bmax = 1.0 - alpha;
                for (int k = 0; k <= 10; ++k) {
                    betas.push_back(bmax * static_cast<double>(k) / 10.0);
                }
            } else {
                betas = Range::parse(opt.beta_grid).values();
            }
            for (const double beta : betas) {
                if (beta > 1.0 - alpha + 1e-12) {
                    continue;
                }
                const OverlapConfig cfg(alpha, beta);
                csv.row(alpha, beta, cfg.bw1, cfg.bw2, cfg.i_factor);
            }
        }
        csv.commit("ifactor");
    });
}

int run_coverage(const CoverageOptions& opt)
{
    return guarded(opt.with_mc ? "coverage-mc" : "coverage-analytic", [&] {
        const NetworkParams& net = opt.common.net;
        CsvWriter csv(opt.common.output);
        std::string cols =
            "lambda,eta,sigma2,alpha,beta,ifactor,p1,theta_db,pcov1,pcov2,branch";
        if (opt.with_mc) {
            cols += ",mc_pcov1,mc_pcov2,mc_ci1,mc_ci2,trials,seed";
        }
        csv.header(cols);

        const auto theta_dbs = opt.theta_db.values();
        CoverageEngine eng(net);
        for (const double alpha : opt.alphas) {
            for (const auto& rule : opt.beta_rules) {
                const double beta = beta_from_rule(rule, alpha);
                const OverlapConfig cfg(alpha, beta);

                std::vector<Allocation> allocs;
                allocs.reserve(theta_dbs.size());
                for (const double db : theta_dbs) {
                    const double th = std::pow(10.0, db / 10.0);
                    allocs.push_back(Allocation::from_p1(opt.p1, th, th));
                }
                std::vector<CoverageEstimate> mc;
                if (opt.with_mc) {
                    mc = simulate_coverage_sweep(cfg, allocs, net, opt.common.trials,
                                                 opt.common.seed);
                }
                for (std::size_t k = 0; k < allocs.size(); ++k) {
                    const CoverageResult res = coverage(cfg, allocs[k], eng);
                    if (opt.with_mc) {
                        csv.row(net.lambda, net.eta, net.sigma2, alpha, beta, cfg.i_factor,
                                opt.p1, theta_dbs[k], res.p_cov1, res.p_cov2,
                                to_string(res.branch), mc[k].p_cov1, mc[k].p_cov2,
                                mc[k].ci_half_width1, mc[k].ci_half_width2, mc[k].trials,
                                mc[k].seed);
                    } else {
                        csv.row(net.lambda, net.eta, net.sigma2, alpha, beta, cfg.i_factor,
                                opt.p1, theta_dbs[k], res.p_cov1, res.p_cov2,
                                to_string(res.branch));
                    }
                }
            }
        }
        csv.commit(opt.with_mc ? "coverage-mc" : "coverage-analytic");
    });
}

int run_rate_region(const RateRegionOptions& opt)
{
    return guarded("rate-region", [&] {
        const NetworkParams& net = opt.common.net;
        CsvWriter csv(opt.common.output);
        if (opt.oma) {
            csv.header("lambda,eta,sigma2,bw1,theta1_db,theta2_db,r1,r2,rtot");
            const auto pts = oma_sweep(opt.p1_grid.values(), opt.common.grids, net);
            for (const OmaPoint& pt : pts) {
                csv.row(net.lambda, net.eta, net.sigma2, pt.bw1, linear_to_db(pt.theta1),
                        linear_to_db(pt.theta2), pt.r1, pt.r2, pt.r_tot);
            }
        } else {
            csv.header("lambda,eta,sigma2,alpha,p1,beta,theta1_db,theta2_db,r1,r2,rtot,branch");
            const auto pts =
                rate_region_sweep(opt.alpha, opt.p1_grid.values(), opt.common.grids, net);
            for (const RateRegionPoint& pt : pts) {
                csv.row(net.lambda, net.eta, net.sigma2, opt.alpha, pt.p1, pt.beta,
                        linear_to_db(pt.theta1), linear_to_db(pt.theta2), pt.r1, pt.r2,
                        pt.r_tot, to_string(pt.branch));
            }
        }
        csv.commit("rate-region");
    });
}

namespace {

void allocate_row(CsvWriter& csv, const char* method, double alpha, double tmt,
                  const NetworkParams& net, const SearchGrids& grids,
                  const AllocationOutcome& out)
{
    csv.row(net.lambda, net.eta, net.sigma2, method, alpha, tmt,
            out.feasible ? "yes" : "no", to_string(out.reason), out.beta, out.p1,
            out.theta1 > 0.0 ? linear_to_db(out.theta1) : 0.0,
            out.theta2 > 0.0 ? linear_to_db(out.theta2) : 0.0, out.r1, out.r2, out.r_tot,
            to_string(out.branch), out.eval_count, out.beta_iterations,
            grids.exhaustive_eval_count(alpha));
}

constexpr const char* kAllocateCols =
    "lambda,eta,sigma2,method,alpha,tmt,feasible,reason,beta,p1,theta1_db,theta2_db,"
    "r1,r2,rtot,branch,eval_count,beta_iterations,exhaustive_evals";

} // namespace

int run_allocate(const AllocateOptions& opt)
{
    return guarded("allocate", [&] {
        if (opt.method != "algorithm1" && opt.method != "exhaustive" && opt.method != "both") {
            throw std::invalid_argument("method must be algorithm1, exhaustive, or both");
        }
        const NetworkParams& net = opt.common.net;
        CsvWriter csv(opt.common.output);
        csv.header(kAllocateCols);
        if (opt.method == "algorithm1" || opt.method == "both") {
            allocate_row(csv, "algorithm1", opt.alpha, opt.tmt, net, opt.common.grids,
                         algorithm1(opt.alpha, opt.tmt, opt.common.grids, net));
        }
        if (opt.method == "exhaustive" || opt.method == "both") {
            allocate_row(csv, "exhaustive", opt.alpha, opt.tmt, net, opt.common.grids,
                         exhaustive_search(opt.alpha, opt.tmt, opt.common.grids, net));
        }
        csv.commit("allocate");
    });
}

int run_sweep_alpha(const SweepAlphaOptions& opt)
{
    return guarded("sweep-alpha", [&] {
        const NetworkParams& net = opt.common.net;
        CsvWriter csv(opt.common.output);
        csv.header(kAllocateCols);
        for (const double tmt : opt.tmts) {
            for (const double alpha : opt.alpha_grid.values()) {
                allocate_row(csv, "algorithm1", alpha, tmt, net, opt.common.grids,
                             algorithm1(alpha, tmt, opt.common.grids, net));
            }
        }
        csv.commit("sweep-alpha");
    });
}

namespace {

/// Coverage of both users as a function of P1 at a fixed threshold.
int figure_coverage_vs_p1(const CommonOptions& common, const std::vector<double>& alphas,
                          const std::vector<std::string>& beta_rules, double theta_db)
{
    return guarded("figure", [&] {
        const NetworkParams& net = common.net;
        const double theta = std::pow(10.0, theta_db / 10.0);
        CoverageEngine eng(net);
        CsvWriter csv(common.output);
        csv.header("lambda,eta,sigma2,alpha,beta,ifactor,theta_db,p1,pcov1,pcov2,branch");
        for (const double alpha : alphas) {
            for (const auto& rule : beta_rules) {
                const double beta = beta_from_rule(rule, alpha);
                const OverlapConfig cfg(alpha, beta);
                for (int k = 1; k < 100; ++k) {
                    const double p1 = static_cast<double>(k) / 100.0;
                    const Allocation a = Allocation::from_p1(p1, theta, theta);
                    const CoverageResult res = coverage(cfg, a, eng);
                    csv.row(net.lambda, net.eta, net.sigma2, alpha, beta, cfg.i_factor,
                            theta_db, p1, res.p_cov1, res.p_cov2, to_string(res.branch));
                }
            }
        }
        csv.commit("figure");
    });
}

/// Per-user throughputs and the cell sum rate over an alpha x beta-rule
/// x threshold product at fixed P1.
int figure_rates(const CommonOptions& common, const std::vector<double>& alphas,
                 const std::vector<std::string>& beta_rules,
                 const std::vector<double>& theta_dbs, double p1)
{
    return guarded("figure", [&] {
        const NetworkParams& net = common.net;
        CoverageEngine eng(net);
        CsvWriter csv(common.output);
        csv.header("lambda,eta,sigma2,alpha,beta,ifactor,p1,theta_db,r1,r2,rtot");
        for (const double alpha : alphas) {
            for (const auto& rule : beta_rules) {
                const double beta = beta_from_rule(rule, alpha);
                const OverlapConfig cfg(alpha, beta);
                for (const double db : theta_dbs) {
                    const double theta = std::pow(10.0, db / 10.0);
                    const Allocation a = Allocation::from_p1(p1, theta, theta);
                    const double r1 = throughput(1, cfg, a, eng);
                    const double r2 = throughput(2, cfg, a, eng);
                    csv.row(net.lambda, net.eta, net.sigma2, alpha, beta, cfg.i_factor, p1,
                            db, r1, r2, r1 + r2);
                }
            }
        }
        csv.commit("figure");
    });
}

} // namespace

int run_figure(const std::string& name, const CommonOptions& common)
{
    if (name == "fig2") {
        IfactorOptions o;
        o.common = common;
        return run_ifactor(o);
    }
    if (name == "fig3") {
        CoverageOptions o;
        o.common = common;
        o.alphas = {0.25, 0.75};
        o.beta_rules = {"zero", "half"};
        o.p1 = 1.0 / 3.0;
        o.theta_db = Range{-10.0, 1.0, 10.0};
        o.with_mc = true;
        return run_coverage(o);
    }
    if (name == "fig5") {
        return figure_coverage_vs_p1(common, {0.35, 0.75}, {"zero", "half"}, 0.0);
    }
    if (name == "fig6") {
        CoverageOptions o;
        o.common = common;
        o.beta_rules = {"half"};
        o.p1 = 1.0 / 3.0;
        o.theta_db = Range{0.0, 1.0, 0.0};
        for (int k = 0; k <= 100; ++k) {
            o.alphas.push_back(static_cast<double>(k) / 100.0);
        }
        return run_coverage(o);
    }
    if (name == "fig7") {
        std::vector<double> theta_dbs;
        for (int db = -10; db <= 10; ++db) {
            theta_dbs.push_back(db);
        }
        return figure_rates(common, {0.25, 0.5, 0.75, 1.0}, {"half"}, theta_dbs, 1.0 / 3.0);
    }
    if (name == "fig8") {
        std::vector<double> alphas;
        for (int k = 0; k <= 100; ++k) {
            alphas.push_back(static_cast<double>(k) / 100.0);
        }
        return figure_rates(common, alphas, {"half"}, {-5.0, 0.0, 5.0}, 1.0 / 3.0);
    }
    if (name == "fig9") {
        SweepAlphaOptions o;
        o.common = common;
        o.common.grids = SearchGrids::reduced();
        o.alpha_grid = Range{0.1, 0.1, 1.0};
        o.tmts = {0.05, 0.25};
        return run_sweep_alpha(o);
    }
    if (name == "fig10") {
        std::vector<double> alphas;
        for (int k = 0; k <= 20; ++k) {
            alphas.push_back(static_cast<double>(k) / 20.0);
        }
        return figure_rates(common, alphas, {"zero", "half", "max"}, {0.0}, 1.0 / 3.0);
    }
    std::cerr << "pnoma: unknown figure preset '" << name << "'\n";
    return 1;
}

} // namespace pnoma::cli
