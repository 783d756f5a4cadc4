#pragma once

#include "tworelay/relay_policy.hpp"

namespace tworelay {

enum class OutageCase {
    x_dominant,  ///< finite rho, delta2 y0 <= delta1 x0
    y_dominant,  ///< finite rho, delta2 y0 > delta1 x0
    minimum,     ///< unbounded rho: the outage floor
};

struct OutageReport {
    double p_out = 1.0;
    OutageCase case_used = OutageCase::minimum;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double omega_x = 0.0;
    double omega_y = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    RelayCutoff rho = RelayCutoff::unbounded();
};

/// Fixed transmit powers of the baseline without power control.
struct FpaConfig {
    double p_s1_fix = 1.0;
    double p_s2_fix = 1.0;
    double p_r_fix = 1.0;

    void validate() const;
};

/// 1 - exp(-x0 / omega_x) exp(-y0 / omega_y): outage when the relay never truncates.
double min_outage(double x0, double y0, double omega_x, double omega_y);

// System outage probability of the optimal policy in each region case. Same
// effective lower limits as the matching average-power forms.
double outage_x_dominant(const RelayPolicy& policy);
double outage_y_dominant(const RelayPolicy& policy);

/// Mixing weights of the two inversion sub-regions: x = delta1 omega_x / Sigma,
/// y = delta2 omega_y / Sigma with Sigma = delta1 omega_x + delta2 omega_y.
/// They sum to one, which is what makes the rho-dependent outage terms vanish
/// once lambda1 = x0 (resp. lambda2 = y0).
struct OutageWeights {
    double x = 0.5;
    double y = 0.5;
};
OutageWeights outage_weights(double delta1, double delta2, double omega_x, double omega_y);

/// System outage probability of the optimal policy (either session fails).
OutageReport outage_opa(const RelayPolicy& policy);

/// Outage of the fixed-power baseline: a cycle survives iff both uplinks and
/// both broadcast links carry their rates at the fixed powers.
double outage_fpa(double delta1, double delta2, double omega_x, double omega_y, const FpaConfig& fpa);
double outage_fpa(const SystemConfig& config, const FpaConfig& fpa);

}  // namespace tworelay
