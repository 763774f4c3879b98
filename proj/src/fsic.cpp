#include "pnoma/fsic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pnoma {

Allocation::Allocation(double p1_, double p2_, double theta1_, double theta2_)
    : p1(p1_), p2(p2_), theta1(theta1_), theta2(theta2_)
{
    if (std::abs(p1 + p2 - 1.0) > 1e-9 || p1 < 0.0 || p2 < 0.0) {
        std::ostringstream msg;
        msg << "Allocation: powers must be nonnegative and sum to 1, got p1=" << p1
            << " p2=" << p2;
        throw std::invalid_argument(msg.str());
    }
    if (theta1 < 0.0 || theta2 < 0.0) {
        throw std::invalid_argument("Allocation: SINR thresholds must be nonnegative");
    }
}

Allocation Allocation::from_p1(double p1, double theta1, double theta2)
{
    return Allocation(p1, 1.0 - p1, theta1, theta2);
}

const char* to_string(Branch b)
{
    switch (b) {
    case Branch::Sic: return "sic";
    case Branch::TreatAsNoise: return "noise";
    case Branch::Outage: return "outage";
    }
    return "?";
}

EffectivePowers effective_powers(const Allocation& a, double i_factor)
{
    return EffectivePowers{
        a.p1 - a.theta1 * a.p2 * i_factor,
        a.p2 - a.theta2 * a.p1 * i_factor,
        a.p2 * i_factor - a.theta2 * a.p1,
    };
}

DecodingThresholds thresholds(const Allocation& a, double i_factor)
{
    const EffectivePowers ep = effective_powers(a, i_factor);
    DecodingThresholds t;

    // Rate 0 decodes trivially: mbar = 0 so coverage is 1 and the
    // throughput log(1+0) vanishes.
    if (a.theta1 == 0.0) {
        t.mbar1 = 0.0;
        t.branch = Branch::TreatAsNoise;
    } else {
        if (ep.pt1 > 0.0) {
            t.m0 = a.theta1 / ep.pt1;
        }
        if (ep.pt21 > 0.0 && a.p1 > 0.0) {
            t.m1 = std::max(a.theta2 / ep.pt21, a.theta1 / a.p1);
        }
        if (t.m0 && t.m1) {
            // tie selects the SIC route
            if (*t.m1 <= *t.m0) {
                t.mbar1 = *t.m1;
                t.branch = Branch::Sic;
            } else {
                t.mbar1 = *t.m0;
                t.branch = Branch::TreatAsNoise;
            }
        } else if (t.m0) {
            t.mbar1 = *t.m0;
            t.branch = Branch::TreatAsNoise;
        } else if (t.m1) {
            t.mbar1 = *t.m1;
            t.branch = Branch::Sic;
        } else {
            t.branch = Branch::Outage;
        }
    }

    if (a.theta2 == 0.0) {
        t.mbar2 = 0.0;
    } else if (ep.pt2 > 0.0) {
        t.mbar2 = a.theta2 / ep.pt2;
    }
    return t;
}

} // namespace pnoma
