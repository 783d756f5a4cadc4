#pragma once

#include <cstdint>

#include "tworelay/outage.hpp"
#include "tworelay/relay_policy.hpp"
#include "tworelay/system_model.hpp"

namespace tworelay {

enum class PolicyKind { opa, fpa };

struct SimOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do
    /// not depend on this value.
    unsigned workers = 0;
    /// Trials per chunk. Chunk k always draws from substream (seed, k).
    std::uint64_t chunk_size = 1U << 16;
};

/// Empirical outcome of a simulation run.
///
/// Average powers are taken over all trials, silent cycles counted as zero
/// power, which is what a long-term power budget constrains.
struct SimReport {
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    double outage_rate = 0.0;
    double avg_power_s1 = 0.0;
    double avg_power_s2 = 0.0;
    double avg_power_relay = 0.0;
    double binomial_sigma = 0.0;  ///< sqrt(r (1 - r) / trials)
    // Standard errors of the three power means.
    double power_sigma_s1 = 0.0;
    double power_sigma_s2 = 0.0;
    double power_sigma_relay = 0.0;
    std::uint64_t seed = 0;
    PolicyKind policy_kind = PolicyKind::opa;

    friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Simulates the optimal policies solved from the configuration.
SimReport run_opa(const SystemConfig& config, const SimOptions& options);

/// Simulates explicitly supplied policies (e.g. an arbitrary relay threshold).
SimReport run_opa(const OpaPolicies& policies, const SimOptions& options);

/// Simulates the fixed-power baseline.
SimReport run_fpa(double delta1, double delta2, double omega_x, double omega_y, const FpaConfig& fpa,
                  const SimOptions& options);
SimReport run_fpa(const SystemConfig& config, const FpaConfig& fpa, const SimOptions& options);

}  // namespace tworelay
