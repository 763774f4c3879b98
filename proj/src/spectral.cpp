#include "pnoma/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pnoma {

namespace {
using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr double kQuadTol = 1e-12;
constexpr unsigned kQuadDepth = 12;
} // namespace

double sinc(double x)
{
    if (std::abs(x) < 1e-8) {
        const double px = M_PI * x;
        return 1.0 - px * px / 6.0;
    }
    return std::sin(M_PI * x) / (M_PI * x);
}

double pulse_energy(double bw)
{
    if (!(bw > 0.0)) {
        throw std::domain_error("pulse_energy: bandwidth must be positive");
    }
    const double e2 = gk::integrate(
        [bw](double f) {
            const double s = sinc(2.0 * f / bw);
            return s * s;
        },
        -bw / 2.0, bw / 2.0, kQuadDepth, kQuadTol);
    return std::sqrt(e2);
}

double interference_factor(double alpha, double beta)
{
    if (alpha <= 0.0) {
        return 0.0;
    }
    const double bw1 = alpha + beta;
    const double bw2 = 1.0 - beta;
    const double fa = (alpha + beta) / 2.0;
    const double fb = (1.0 + beta) / 2.0;
    const double e1 = pulse_energy(bw1);
    const double e2 = pulse_energy(bw2);
    const double cross = gk::integrate(
        [&](double f) {
            return sinc(2.0 * (f - fa) / bw1) * sinc(2.0 * (f - fb) / bw2);
        },
        beta, beta + alpha, kQuadDepth, kQuadTol);
    const double r = cross / (e1 * e2);
    const double i = r * r;
    // quadrature can land epsilon outside [0,1] at the endpoints
    return std::min(std::max(i, 0.0), 1.0);
}

OverlapConfig::OverlapConfig(double a, double b)
    : alpha(a), beta(b)
{
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0 - alpha + 1e-12)) {
        std::ostringstream msg;
        msg << "OverlapConfig: require 0 <= alpha <= 1 and 0 <= beta <= 1 - alpha, got alpha="
            << alpha << " beta=" << beta;
        throw std::invalid_argument(msg.str());
    }
    if (beta > 1.0 - alpha) {
        beta = 1.0 - alpha;
    }
    bw1 = alpha + beta;
    bw2 = 1.0 - beta;
    center1 = (alpha + beta) / 2.0;
    center2 = (1.0 + beta) / 2.0;
    i_factor = interference_factor(alpha, beta);
}

} // namespace pnoma
