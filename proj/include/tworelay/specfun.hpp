#pragma once

#include <functional>
#include <stdexcept>

namespace tworelay {

/// A strictly positive, finite real. Construction throws std::domain_error otherwise.
class PositiveReal {
public:
    explicit PositiveReal(double value);
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    double value_;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Shared solver tolerances and caps. Callers with tiny targets should solve on
// log axes so the residual tolerance is meaningful.
inline constexpr double kSolverResidualTol = 1e-12;
inline constexpr double kSolverWidthTol = 1e-14;
inline constexpr double kBracketExpansionFactor = 4.0;
inline constexpr int kMaxBracketExpansions = 200;
inline constexpr int kMaxBisectionSteps = 200;

/// Exponential integral E1(x) = int_x^inf e^-t / t dt.
///
/// Power series for x <= 1, modified Lentz continued fraction above. Relative
/// error stays below 1e-12 on [1e-6, 700]; the result is 0 once e^-x
/// underflows.
double exp_integral_e1(PositiveReal x);
double exp_integral_e1(double x);

/// log E1(x), finite for every finite x > 0 (no underflow for large x).
double log_exp_integral_e1(double x);

enum class Monotone { increasing, decreasing };

/// Target lies outside the range reachable after bracket expansion.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection did not converge within the step cap (f is not monotone).
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    /// Expand and bisect multiplicatively; the bracket must stay in (0, inf).
    bool positive_domain = false;
};

/// Finds x with f(x) = target for f strictly monotone in the declared direction.
///
/// The bracket [lo, hi] is widened by kBracketExpansionFactor (at most
/// kMaxBracketExpansions times) until it encloses the target, then bisected
/// until its width drops below kSolverWidthTol * max(1, |x|) (kSolverWidthTol * x
/// on a positive domain) or f hits the target exactly. The residual test
/// |f(x) - target| <= kSolverResidualTol * max(1, |target|) is not an exit
/// condition: for targets far below 1 it would accept a poor x.
double solve_monotone(const std::function<double(double)>& f, double target, double lo, double hi,
                      Monotone direction, SolveOptions options = {});

}  // namespace tworelay
