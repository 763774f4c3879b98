#ifndef PNOMA_ANALYTIC_HPP
#define PNOMA_ANALYTIC_HPP

#include <stdexcept>
#include <unordered_map>

#include "pnoma/fsic.hpp"
#include "pnoma/spectral.hpp"

namespace pnoma {

/// Homogeneous PPP downlink network parameters.
struct NetworkParams {
    double lambda = 10.0; ///< BS intensity per unit area
    double eta = 4.0;     ///< path-loss exponent, > 2
    double sigma2 = 1e-9; ///< noise power, linear

    NetworkParams() = default;
    NetworkParams(double lambda, double eta, double sigma2);

    double delta() const { return 2.0 / eta; }
};

/// Raised when a coverage integral cannot reach the required accuracy.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// pdf of the distance from the typical BS to its nearest neighbor,
/// 2 pi lambda x exp(-pi lambda x^2).
double nearest_neighbor_pdf(double x, const NetworkParams& p);

/// pdf of the ordered link distance of user i (i in {1,2}) given that
/// both users are uniform in the in-disk of radius rho/2.
/// Throws std::domain_error if r is outside [0, rho/2].
double ordered_link_pdf(double r, double rho, int user);

/// 2F1(1, 1-delta; 2-delta; z) for z <= 0, via the Euler integral with
/// the substitution that removes the endpoint singularity.
double hyp2f1_interference(double delta, double z);

/// Laplace transform of the unit-power intercell interference at the
/// typical UE, conditioned on link distance (u = rho - R) and rho.
/// General-eta route; throws std::domain_error if u <= 0.
double laplace_intercell_general(double s, double u, double rho, const NetworkParams& p);

/// Closed form of the same transform at eta = 4.
double laplace_intercell_eta4(double s, double u, double rho, const NetworkParams& p);

/// Dispatching evaluator: uses the eta = 4 closed form when applicable.
double laplace_intercell(double s, double u, double rho, const NetworkParams& p);

struct CoverageResult {
    double p_cov1;
    double p_cov2;
    Branch branch;           ///< decoding route of UE1
    double quadrature_error; ///< worst outer-integral error estimate
};

/// Evaluates the coverage double integral and memoizes results.  The
/// integral depends on the allocation only through (mbar, scale), so a
/// grid search hits the cache constantly.  Not safe for concurrent use.
class CoverageEngine {
public:
    explicit CoverageEngine(const NetworkParams& p) : params_(p) {}

    const NetworkParams& params() const { return params_; }

    /// P(C_i) for fading threshold mbar and intercell scaling factor
    /// scale = P_i + (1 - P_i) * I(alpha, beta).
    double probability(int user, double mbar, double scale) const;

    double last_error() const { return last_error_; }
    std::size_t cache_size() const { return cache_.size(); }

private:
    struct Key {
        int user;
        std::uint64_t mbar_bits;
        std::uint64_t scale_bits;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    double integrate(int user, double mbar, double scale) const;

    NetworkParams params_;
    mutable std::unordered_map<Key, double, KeyHash> cache_;
    mutable double last_error_ = 0.0;
};

double coverage(int user, const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng);
CoverageResult coverage(const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng);
double throughput(int user, const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng);
double cell_sum_rate(const OverlapConfig& cfg, const Allocation& a, const CoverageEngine& eng);

/// Convenience one-shot variants (no cache reuse).
double coverage(int user, const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p);
CoverageResult coverage(const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p);
double throughput(int user, const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p);
double cell_sum_rate(const OverlapConfig& cfg, const Allocation& a, const NetworkParams& p);

} // namespace pnoma

#endif
