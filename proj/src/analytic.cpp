#include "pnoma/analytic.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pnoma {

namespace {
using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr double kInnerTol = 1e-9;
constexpr double kOuterTol = 1e-8;
constexpr double kMaxOuterError = 1e-6;
} // namespace

NetworkParams::NetworkParams(double lambda_, double eta_, double sigma2_)
    : lambda(lambda_), eta(eta_), sigma2(sigma2_)
{
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("NetworkParams: lambda must be positive");
    }
    if (!(eta > 2.0)) {
        throw std::invalid_argument("NetworkParams: eta must exceed 2");
    }
    if (sigma2 < 0.0) {
        throw std::invalid_argument("NetworkParams: sigma2 must be nonnegative");
    }
}

double nearest_neighbor_pdf(double x, const NetworkParams& p)
{
    if (x < 0.0) {
        return 0.0;
    }
    return 2.0 * M_PI * p.lambda * x * std::exp(-M_PI * p.lambda * x * x);
}

double ordered_link_pdf(double r, double rho, int user)
{
    if (user != 1 && user != 2) {
        throw std::invalid_argument("ordered_link_pdf: user must be 1 or 2");
    }
    if (r < 0.0 || r > rho / 2.0) {
        std::ostringstream msg;
        msg << "ordered_link_pdf: r=" << r << " outside [0, rho/2] with rho=" << rho;
        throw std::domain_error(msg.str());
    }
    const double q = 4.0 * r * r / (rho * rho);
    const double base = 16.0 * r / (rho * rho);
    return user == 1 ? base * (1.0 - q) : base * q;
}

double hyp2f1_interference(double delta, double z)
{
    if (z > 0.0) {
        throw std::domain_error("hyp2f1_interference: argument must be <= 0");
    }
    if (z == 0.0) {
        return 1.0;
    }
    // Euler integral (1-delta) * int_0^1 t^-delta / (1 - z t) dt with
    // t = v^(1/(1-delta)), which flattens the endpoint singularity.
    const double q = 1.0 / (1.0 - delta);
    return gk::integrate(
        [&](double v) { return 1.0 / (1.0 - z * std::pow(v, q)); },
        0.0, 1.0, 12, 1e-12);
}

double laplace_intercell_general(double s, double u, double rho, const NetworkParams& p)
{
    if (!(u > 0.0) || u > rho) {
        throw std::domain_error("laplace_intercell: require 0 < u <= rho");
    }
    if (s < 0.0) {
        throw std::domain_error("laplace_intercell: s must be nonnegative");
    }
    if (s == 0.0) {
        return 1.0;
    }
    const double delta = p.delta();
    const double f21 = hyp2f1_interference(delta, -s / std::pow(u, p.eta));
    const double expo =
        -2.0 * M_PI * p.lambda * s / ((p.eta - 2.0) * std::pow(u, p.eta - 2.0)) * f21;
    return std::exp(expo) / (1.0 + s * std::pow(rho, -p.eta));
}

double laplace_intercell_eta4(double s, double u, double rho, const NetworkParams& p)
{
    if (!(u > 0.0) || u > rho) {
        throw std::domain_error("laplace_intercell: require 0 < u <= rho");
    }
    if (s == 0.0) {
        return 1.0;
    }
    const double rs = std::sqrt(s);
    return std::exp(-M_PI * p.lambda * rs * std::atan(rs / (u * u))) /
           (1.0 + s / (rho * rho * rho * rho));
}

double laplace_intercell(double s, double u, double rho, const NetworkParams& p)
{
    if (std::abs(p.eta - 4.0) < 1e-12) {
        return laplace_intercell_eta4(s, u, rho, p);
    }
    return laplace_intercell_general(s, u, rho, p);
}

std::size_t CoverageEngine::KeyHash::operator()(const Key& k) const
{
    std::size_t h = std::hash<std::uint64_t>{}(k.mbar_bits);
    h ^= std::hash<std::uint64_t>{}(k.scale_bits) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>{}(k.user) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

double CoverageEngine::integrate(int user, double mbar, double scale) const
{
    const NetworkParams& p = params_;
    // truncate where the f_rho tail mass drops below 1e-10
    const double x_max = std::sqrt(std::log(1e10) / (M_PI * p.lambda));
    const bool eta4 = std::abs(p.eta - 4.0) < 1e-12;

    auto outer = [&](double x) {
        auto inner = [&](double r) {
            const double re = std::pow(r, p.eta);
            const double s = re * mbar * scale;
            const double lt = eta4 ? laplace_intercell_eta4(s, x - r, x, p)
                                   : laplace_intercell_general(s, x - r, x, p);
            return std::exp(-re * p.sigma2 * mbar) * lt * ordered_link_pdf(r, x, user);
        };
        const double v = gk::integrate(inner, 0.0, x / 2.0, 10, kInnerTol);
        return v * nearest_neighbor_pdf(x, p);
    };

    double err = 0.0;
    const double cov = gk::integrate(outer, 0.0, x_max, 12, kOuterTol, &err);
    last_error_ = err;
    if (err > kMaxOuterError) {
        std::ostringstream msg;
        msg << "coverage quadrature error estimate " << err << " exceeds " << kMaxOuterError;
        throw QuadratureError(msg.str());
    }
    return std::min(std::max(cov, 0.0), 1.0);
}

double CoverageEngine::probability(int user, double mbar, double scale) const
{
    if (user != 1 && user != 2) {
        throw std::invalid_argument("coverage: user must be 1 or 2");
    }
    if (mbar == 0.0) {
        return 1.0;
    }
    const Key key{user, std::bit_cast<std::uint64_t>(mbar), std::bit_cast<std::uint64_t>(scale)};
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    const double v = integrate(user, mbar, scale);
    cache_.emplace(key, v);
    return v;
}

namespace {

double scaling_factor(int user, const OverlapConfig& cfg, const Allocation& a)
{
    const double pi = user == 1 ? a.p1 : a.p2;
    return pi + (1.0 - pi) * cfg.i_factor;
}

} // namespace

double coverage(int user, const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng)
{
    const DecodingThresholds t = thresholds(a, cfg.i_factor);
    const auto& mbar = user == 1 ? t.mbar1 : t.mbar2;
    if (!mbar) {
        return 0.0;
    }
    return eng.probability(user, *mbar, scaling_factor(user, cfg, a));
}

CoverageResult coverage(const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng)
{
    const DecodingThresholds t = thresholds(a, cfg.i_factor);
    CoverageResult res{0.0, 0.0, t.branch, 0.0};
    if (t.mbar1) {
        res.p_cov1 = eng.probability(1, *t.mbar1, scaling_factor(1, cfg, a));
        res.quadrature_error = eng.last_error();
    }
    if (t.mbar2) {
        res.p_cov2 = eng.probability(2, *t.mbar2, scaling_factor(2, cfg, a));
        res.quadrature_error = std::max(res.quadrature_error, eng.last_error());
    }
    return res;
}

double throughput(int user, const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng)
{
    const double bw = user == 1 ? cfg.bw1 : cfg.bw2;
    const double theta = user == 1 ? a.theta1 : a.theta2;
    if (bw == 0.0 || theta == 0.0) {
        return 0.0;
    }
    return bw * coverage(user, cfg, a, eng) * std::log1p(theta);
}

double cell_sum_rate(const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng)
{
    return throughput(1, cfg, a, eng) + throughput(2, cfg, a, eng);
}

double coverage(int user, const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p)
{
    return coverage(user, cfg, a, CoverageEngine(p));
}

CoverageResult coverage(const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p)
{
    return coverage(cfg, a, CoverageEngine(p));
}

double throughput(int user, const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p)
{
    return throughput(user, cfg, a, CoverageEngine(p));
}

double cell_sum_rate(const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p)
{
    return cell_sum_rate(cfg, a, CoverageEngine(p));
}

} // namespace pnoma
