#include "tworelay/endnode_policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tworelay/specfun.hpp"
#include "tworelay/system_model.hpp"

namespace tworelay {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::invalid_argument(std::string("endnode policy: ") + name +
                                    " must be positive and finite, got " + std::to_string(value));
    }
}

// Initial normalized bracket [1e-12, 50] for cutoff / omega.
constexpr double kCutoffBracketLo = 1e-12;
constexpr double kCutoffBracketHi = 50.0;
constexpr double kTinyLogCutoff = -100.0;

}  // namespace

EndNodePolicy EndNodePolicy::for_budget(double delta, double omega, double pbar) {
    return {delta, solve_cutoff(delta, omega, pbar), omega, pbar};
}

EndNodePolicy EndNodePolicy::for_cutoff(double delta, double omega, double cutoff) {
    return {delta, cutoff, omega, endnode_average_power(delta, omega, cutoff)};
}

double EndNodePolicy::rate() const { return std::log2(1.0 + delta_) / kPhases; }

double endnode_average_power(double delta, double omega, double cutoff) {
    require_positive(delta, "delta");
    require_positive(omega, "omega");
    require_positive(cutoff, "cutoff");
    return delta / omega * exp_integral_e1(cutoff / omega);
}

double solve_cutoff(double delta, double omega, double pbar) {
    require_positive(delta, "delta");
    require_positive(omega, "omega");
    require_positive(pbar, "pbar");
    // Solve log E1(e^u) = log(pbar * omega / delta) for u = log(cutoff / omega).
    const double log_target = std::log(pbar) + std::log(omega) - std::log(delta);
    const double u = solve_monotone(
        [](double v) {
            // E1(t) = -gamma - ln t + O(t) once t = e^v is far below double precision.
            return v < kTinyLogCutoff ? std::log(-kEulerGamma - v) : log_exp_integral_e1(std::exp(v));
        },
        log_target, std::log(kCutoffBracketLo), std::log(kCutoffBracketHi), Monotone::decreasing);
    // Very large budgets push the cutoff below the double range.
    return std::max(omega * std::exp(u), std::numeric_limits<double>::min());
}

double endnode_power(const EndNodePolicy& policy, double gain) {
    return gain >= policy.cutoff() ? policy.delta() / gain : 0.0;
}

bool link_supports_rate(const EndNodePolicy& policy, double gain) { return gain >= policy.cutoff(); }

}  // namespace tworelay
