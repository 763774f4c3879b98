#ifndef PNOMA_FSIC_HPP
#define PNOMA_FSIC_HPP

#include <optional>

namespace pnoma {

/// Power split and linear SINR thresholds for the two users.
/// p1 + p2 = 1; the transmission rate of user i is log(1 + theta_i).
struct Allocation {
    double p1;
    double p2;
    double theta1;
    double theta2;

    Allocation(double p1, double p2, double theta1, double theta2);
    static Allocation from_p1(double p1, double theta1, double theta2);
};

/// Effective transmit powers after threshold-scaled intracell
/// interference is charged against the message being decoded.
/// Any of these may be <= 0, which means guaranteed outage for the
/// corresponding decoding branch.
struct EffectivePowers {
    double pt1;  ///< P1 - theta1 * P2 * I
    double pt2;  ///< P2 - theta2 * P1 * I
    double pt21; ///< P2 * I - theta2 * P1  (UE2's message seen at UE1)
};

enum class Branch { Sic, TreatAsNoise, Outage };

const char* to_string(Branch b);

/// Fading thresholds governing the decoding events.  UE i is covered
/// iff h_i > R_i^eta * (intercell + noise) * mbar_i.  mbar1 selects the
/// better of the SIC route (m1) and the treat-as-noise route (m0);
/// mbar2 exists only while pt2 > 0.
struct DecodingThresholds {
    std::optional<double> m0;
    std::optional<double> m1;
    std::optional<double> mbar1;
    std::optional<double> mbar2;
    Branch branch; ///< route selected for UE1; Outage if neither admissible
};

EffectivePowers effective_powers(const Allocation& a, double i_factor);

DecodingThresholds thresholds(const Allocation& a, double i_factor);

} // namespace pnoma

#endif
