#ifndef PNOMA_SPECTRAL_HPP
#define PNOMA_SPECTRAL_HPP

namespace pnoma {

/// Sinc(x) = sin(pi x)/(pi x), with Sinc(0) = 1.
double sinc(double x);

/// Energy normalization E for a square pulse occupying the bandwidth
/// fraction bw, E^2 = integral of Sinc^2(2f/bw) over [-bw/2, bw/2].
/// Scales as sqrt(bw). Throws std::domain_error if bw <= 0.
double pulse_energy(double bw);

/// Effective interference factor I(alpha, beta) in [0,1] seen after
/// matched filtering when two square-pulse messages overlap on a
/// fraction alpha of the channel and the strong user keeps an
/// exclusive fraction beta.
double interference_factor(double alpha, double beta);

/// Spectrum split between the two users.  bw1 = alpha + beta belongs to
/// UE1, bw2 = 1 - beta to UE2, and i_factor caches the interference
/// factor for the pair since every SINR evaluation needs it.
struct OverlapConfig {
    double alpha;
    double beta;
    double bw1;
    double bw2;
    double center1;
    double center2;
    double i_factor;

    /// Validates 0 <= alpha <= 1 and 0 <= beta <= 1 - alpha, then
    /// derives bandwidths, centers, and the cached interference factor.
    /// Throws std::invalid_argument on violation.
    OverlapConfig(double alpha, double beta);
};

} // namespace pnoma

#endif
