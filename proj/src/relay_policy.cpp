#include "tworelay/relay_policy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tworelay/specfun.hpp"

namespace tworelay {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::invalid_argument(std::string("relay policy: ") + name +
                                    " must be positive and finite, got " + std::to_string(value));
    }
}

}  // namespace

RelayCutoff RelayCutoff::finite(double rho) {
    require_positive(rho, "rho");
    return RelayCutoff{rho};
}

double RelayCutoff::value() const {
    if (!rho_) throw std::logic_error("RelayCutoff: unbounded cutoff has no finite value");
    return *rho_;
}

RegionCase region_case(double delta1, double delta2, double x0, double y0) {
    return delta2 * y0 <= delta1 * x0 ? RegionCase::x_dominant : RegionCase::y_dominant;
}

RelayPolicy RelayPolicy::make(double delta1, double delta2, double x0, double y0, double omega_x,
                              double omega_y, RelayCutoff rho) {
    require_positive(delta1, "delta1");
    require_positive(delta2, "delta2");
    require_positive(x0, "x0");
    require_positive(y0, "y0");
    require_positive(omega_x, "omega_x");
    require_positive(omega_y, "omega_y");
    RelayPolicy p;
    p.delta1_ = delta1;
    p.delta2_ = delta2;
    p.x0_ = x0;
    p.y0_ = y0;
    p.omega_x_ = omega_x;
    p.omega_y_ = omega_y;
    p.case_ = region_case(delta1, delta2, x0, y0);
    return p.with_rho(rho);
}

RelayPolicy RelayPolicy::with_rho(RelayCutoff rho) const {
    RelayPolicy p = *this;
    p.rho_ = rho;
    if (rho.is_unbounded()) {
        p.lambda1_ = x0_;
        p.lambda2_ = y0_;
    } else {
        p.lambda1_ = std::max(x0_, delta2_ / rho.value());
        p.lambda2_ = std::max(y0_, delta1_ / rho.value());
    }
    return p;
}

bool relay_decodes(const RelayPolicy& policy, const ChannelState& state) {
    return state.x >= policy.x0() && state.y >= policy.y0();
}

double relay_power_static(const RelayPolicy& policy, const ChannelState& state) {
    if (!relay_decodes(policy, state)) return 0.0;
    return std::max(policy.delta1() / state.y, policy.delta2() / state.x);
}

double relay_power_optimal(const RelayPolicy& policy, const ChannelState& state) {
    const double p = relay_power_static(policy, state);
    if (policy.rho().is_unbounded()) return p;
    return p <= policy.rho().value() ? p : 0.0;
}

// Region inverting y (power delta1 / y): x >= x1, lambda2 <= y <= (delta1/delta2) x.
// Region inverting x (power delta2 / x): y >= (delta1/delta2) lambda1, x >= lambda1.
double avg_relay_power_x_dominant(const RelayPolicy& p) {
    const double ratio = p.delta1() / p.delta2();
    const double s = 1.0 / p.omega_x() + ratio / p.omega_y();
    const double x1 = std::max(p.x0(), p.lambda2() / ratio);
    const double c1 = p.delta1() / p.omega_y();
    const double c2 = p.delta2() / p.omega_x();
    const double band = exp_integral_e1(p.lambda2() / p.omega_y()) -
                        exp_integral_e1(ratio * x1 / p.omega_y());
    return c1 * std::exp(-x1 / p.omega_x()) * band + c1 * exp_integral_e1(s * x1) +
           c2 * exp_integral_e1(s * p.lambda1());
}

// Mirror image of the x-dominant form with the roles of the two links swapped.
double avg_relay_power_y_dominant(const RelayPolicy& p) {
    const double ratio = p.delta2() / p.delta1();
    const double s = 1.0 / p.omega_y() + ratio / p.omega_x();
    const double y1 = std::max(p.y0(), p.lambda1() / ratio);
    const double c1 = p.delta1() / p.omega_y();
    const double c2 = p.delta2() / p.omega_x();
    const double band = exp_integral_e1(p.lambda1() / p.omega_x()) -
                        exp_integral_e1(ratio * y1 / p.omega_x());
    return c2 * std::exp(-y1 / p.omega_y()) * band + c2 * exp_integral_e1(s * y1) +
           c1 * exp_integral_e1(s * p.lambda2());
}

double avg_relay_power(const RelayPolicy& policy) {
    return policy.region() == RegionCase::x_dominant ? avg_relay_power_x_dominant(policy)
                                                     : avg_relay_power_y_dominant(policy);
}

double max_avg_relay_power_x_dominant(double delta1, double delta2, double x0, double y0,
                                      double omega_x, double omega_y) {
    const double cross = delta1 * x0 / (delta2 * omega_y);
    return delta1 / omega_y * std::exp(-x0 / omega_x) *
               (exp_integral_e1(y0 / omega_y) - exp_integral_e1(cross)) +
           (delta1 / omega_y + delta2 / omega_x) * exp_integral_e1(x0 / omega_x + cross);
}

double max_avg_relay_power_y_dominant(double delta1, double delta2, double x0, double y0,
                                      double omega_x, double omega_y) {
    const double cross = delta2 * y0 / (delta1 * omega_x);
    return delta2 / omega_x * std::exp(-y0 / omega_y) *
               (exp_integral_e1(x0 / omega_x) - exp_integral_e1(cross)) +
           (delta1 / omega_y + delta2 / omega_x) * exp_integral_e1(y0 / omega_y + cross);
}

double max_avg_relay_power(double delta1, double delta2, double x0, double y0, double omega_x,
                           double omega_y) {
    return region_case(delta1, delta2, x0, y0) == RegionCase::x_dominant
               ? max_avg_relay_power_x_dominant(delta1, delta2, x0, y0, omega_x, omega_y)
               : max_avg_relay_power_y_dominant(delta1, delta2, x0, y0, omega_x, omega_y);
}

RelayCutoff solve_rho(double delta1, double delta2, double x0, double y0, double omega_x,
                      double omega_y, double p_avg) {
    require_positive(p_avg, "p_avg");
    const RelayPolicy base =
        RelayPolicy::make(delta1, delta2, x0, y0, omega_x, omega_y, RelayCutoff::unbounded());
    const double p_max = max_avg_relay_power(delta1, delta2, x0, y0, omega_x, omega_y);
    if (p_avg >= p_max) return RelayCutoff::unbounded();

    // Average power is increasing in rho on (0, saturation_rho] and flat beyond;
    // solve on log-log axes.
    const double log_sat = std::log(base.saturation_rho());
    auto log_power = [&](double log_rho) {
        const double rho = std::exp(log_rho);
        if (!(rho > 0.0)) return -std::numeric_limits<double>::infinity();
        const double p = avg_relay_power(base.with_rho(RelayCutoff::finite(rho)));
        return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    };
    const double log_rho = solve_monotone(log_power, std::log(p_avg),
                                          log_sat - std::log(kBracketExpansionFactor), log_sat,
                                          Monotone::increasing);
    return RelayCutoff::finite(std::exp(log_rho));
}

OpaPolicies solve_policies(const SystemConfig& config) {
    config.validate();
    const double d1 = config.delta1();
    const double d2 = config.delta2();
    auto s1 = EndNodePolicy::for_budget(d1, config.omega_x, config.pbar_s1);
    auto s2 = EndNodePolicy::for_budget(d2, config.omega_y, config.pbar_s2);
    const RelayCutoff rho = solve_rho(d1, d2, s1.cutoff(), s2.cutoff(), config.omega_x,
                                      config.omega_y, config.p_avg_relay);
    auto relay = RelayPolicy::make(d1, d2, s1.cutoff(), s2.cutoff(), config.omega_x,
                                   config.omega_y, rho);
    return {s1, s2, relay};
}

}  // namespace tworelay
