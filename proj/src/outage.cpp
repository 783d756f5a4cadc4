#include "tworelay/outage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tworelay {

namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

void FpaConfig::validate() const {
    for (const double v : {p_s1_fix, p_s2_fix, p_r_fix}) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument("FpaConfig: fixed powers must be positive and finite, got " +
                                        std::to_string(v));
        }
    }
}

double min_outage(double x0, double y0, double omega_x, double omega_y) {
    return clamp_probability(-std::expm1(-x0 / omega_x - y0 / omega_y));
}

// 1 - e^{-A} + wy e^{-s x1} - e^{-s l1} + wx e^{-s l1} rearranged with wx + wy = 1
// into -expm1(-A) + wy (e^{-s x1} - e^{-s l1}); x1 <= lambda1 so the bracket is >= 0.
double outage_x_dominant(const RelayPolicy& p) {
    const double ratio = p.delta1() / p.delta2();
    const double s = 1.0 / p.omega_x() + ratio / p.omega_y();
    const double x1 = std::max(p.x0(), p.lambda2() / ratio);
    const double wy = outage_weights(p.delta1(), p.delta2(), p.omega_x(), p.omega_y()).y;
    const double band = -std::exp(-s * x1) * std::expm1(-s * (p.lambda1() - x1));
    return clamp_probability(-std::expm1(-x1 / p.omega_x() - p.lambda2() / p.omega_y()) +
                             wy * band);
}

double outage_y_dominant(const RelayPolicy& p) {
    const double ratio = p.delta2() / p.delta1();
    const double s = 1.0 / p.omega_y() + ratio / p.omega_x();
    const double y1 = std::max(p.y0(), p.lambda1() / ratio);
    const double wx = outage_weights(p.delta1(), p.delta2(), p.omega_x(), p.omega_y()).x;
    const double band = -std::exp(-s * y1) * std::expm1(-s * (p.lambda2() - y1));
    return clamp_probability(-std::expm1(-y1 / p.omega_y() - p.lambda1() / p.omega_x()) +
                             wx * band);
}

OutageReport outage_opa(const RelayPolicy& policy) {
    OutageReport report;
    report.delta1 = policy.delta1();
    report.delta2 = policy.delta2();
    report.omega_x = policy.omega_x();
    report.omega_y = policy.omega_y();
    report.x0 = policy.x0();
    report.y0 = policy.y0();
    report.rho = policy.rho();
    if (policy.rho().is_unbounded()) {
        report.case_used = OutageCase::minimum;
        report.p_out = min_outage(policy.x0(), policy.y0(), policy.omega_x(), policy.omega_y());
    } else if (policy.region() == RegionCase::x_dominant) {
        report.case_used = OutageCase::x_dominant;
        report.p_out = outage_x_dominant(policy);
    } else {
        report.case_used = OutageCase::y_dominant;
        report.p_out = outage_y_dominant(policy);
    }
    return report;
}

OutageWeights outage_weights(double delta1, double delta2, double omega_x, double omega_y) {
    return {1.0 / (1.0 + (delta2 * omega_y) / (delta1 * omega_x)),
            1.0 / (1.0 + (delta1 * omega_x) / (delta2 * omega_y))};
}

double outage_fpa(double delta1, double delta2, double omega_x, double omega_y, const FpaConfig& fpa) {
    fpa.validate();
    const double x_needed = std::max(delta1 / fpa.p_s1_fix, delta2 / fpa.p_r_fix);
    const double y_needed = std::max(delta2 / fpa.p_s2_fix, delta1 / fpa.p_r_fix);
    return min_outage(x_needed, y_needed, omega_x, omega_y);
}

double outage_fpa(const SystemConfig& config, const FpaConfig& fpa) {
    return outage_fpa(config.delta1(), config.delta2(), config.omega_x, config.omega_y, fpa);
}

}  // namespace tworelay
