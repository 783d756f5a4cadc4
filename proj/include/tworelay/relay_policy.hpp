#pragma once

#include <algorithm>
#include <optional>

#include "tworelay/endnode_policy.hpp"
#include "tworelay/system_model.hpp"

namespace tworelay {

/// Truncation threshold of the relay's broadcast power: a finite rho > 0 or
/// the unbounded regime in which the relay always inverts both links.
class RelayCutoff {
public:
    static RelayCutoff unbounded() { return RelayCutoff{}; }
    static RelayCutoff finite(double rho);

    [[nodiscard]] bool is_unbounded() const noexcept { return !rho_.has_value(); }
    /// Throws std::logic_error for the unbounded cutoff.
    [[nodiscard]] double value() const;

    friend bool operator==(const RelayCutoff&, const RelayCutoff&) = default;

private:
    RelayCutoff() = default;
    explicit RelayCutoff(double rho) : rho_(rho) {}

    std::optional<double> rho_;
};

/// Which end-node cutoff shapes the decode region.
enum class RegionCase {
    x_dominant,  ///< delta2 * y0 <= delta1 * x0 (ties land here)
    y_dominant,  ///< delta2 * y0 >  delta1 * x0
};

RegionCase region_case(double delta1, double delta2, double x0, double y0);

/// Relay power-allocation state: the decode region (x0, y0), the truncation
/// threshold rho and the derived lambda1 = max(x0, delta2 / rho),
/// lambda2 = max(y0, delta1 / rho) (x0 and y0 when rho is unbounded).
class RelayPolicy {
public:
    static RelayPolicy make(double delta1, double delta2, double x0, double y0, double omega_x,
                            double omega_y, RelayCutoff rho);

    /// Same decode region and channel statistics, different threshold.
    [[nodiscard]] RelayPolicy with_rho(RelayCutoff rho) const;

    [[nodiscard]] double delta1() const noexcept { return delta1_; }
    [[nodiscard]] double delta2() const noexcept { return delta2_; }
    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] double y0() const noexcept { return y0_; }
    [[nodiscard]] double omega_x() const noexcept { return omega_x_; }
    [[nodiscard]] double omega_y() const noexcept { return omega_y_; }
    [[nodiscard]] const RelayCutoff& rho() const noexcept { return rho_; }
    [[nodiscard]] double lambda1() const noexcept { return lambda1_; }
    [[nodiscard]] double lambda2() const noexcept { return lambda2_; }
    [[nodiscard]] RegionCase region() const noexcept { return case_; }

    /// Smallest finite rho at which truncation no longer removes any decodable
    /// state: max(delta1 / y0, delta2 / x0).
    [[nodiscard]] double saturation_rho() const { return std::max(delta1_ / y0_, delta2_ / x0_); }

private:
    RelayPolicy() = default;

    double delta1_ = 0.0;
    double delta2_ = 0.0;
    double x0_ = 0.0;
    double y0_ = 0.0;
    double omega_x_ = 0.0;
    double omega_y_ = 0.0;
    RelayCutoff rho_ = RelayCutoff::unbounded();
    double lambda1_ = 0.0;
    double lambda2_ = 0.0;
    RegionCase case_ = RegionCase::x_dominant;
};

/// Relay decodes both uplink codewords iff x >= x0 and y >= y0.
bool relay_decodes(const RelayPolicy& policy, const ChannelState& state);

/// Minimum broadcast power that meets both rates: max(delta1 / y, delta2 / x)
/// inside the decode region, 0 outside.
double relay_power_static(const RelayPolicy& policy, const ChannelState& state);

/// Budget-limited relay power: the static power when it does not exceed rho,
/// 0 otherwise (never truncated when rho is unbounded).
double relay_power_optimal(const RelayPolicy& policy, const ChannelState& state);

// Closed-form E[relay_power_optimal] for each region case. Both use the
// effective lower limits x1 = max(x0, lambda2 delta2 / delta1) and
// y1 = max(y0, lambda1 delta1 / delta2) of the two inversion sub-regions, which
// equal x0 (resp. y0) as long as rho >= delta2 / x0 (resp. delta1 / y0).
double avg_relay_power_x_dominant(const RelayPolicy& policy);
double avg_relay_power_y_dominant(const RelayPolicy& policy);

/// Average relay power for the policy's region case.
double avg_relay_power(const RelayPolicy& policy);

// Saturated average power, i.e. the rho-independent maximum.
double max_avg_relay_power_x_dominant(double delta1, double delta2, double x0, double y0,
                                      double omega_x, double omega_y);
double max_avg_relay_power_y_dominant(double delta1, double delta2, double x0, double y0,
                                      double omega_x, double omega_y);
double max_avg_relay_power(double delta1, double delta2, double x0, double y0, double omega_x,
                           double omega_y);

/// Threshold rho at which the average relay power equals p_avg, or unbounded
/// when p_avg covers the saturated demand.
RelayCutoff solve_rho(double delta1, double delta2, double x0, double y0, double omega_x,
                      double omega_y, double p_avg);

/// All three node policies of one configuration.
struct OpaPolicies {
    EndNodePolicy s1;
    EndNodePolicy s2;
    RelayPolicy relay;
};

OpaPolicies solve_policies(const SystemConfig& config);

}  // namespace tworelay
