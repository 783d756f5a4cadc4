#include "tworelay/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tworelay {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 1000;

void require_e1_domain(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("exp_integral_e1: argument must be positive and finite, got " +
                                std::to_string(x));
    }
}

// -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;  // (-1)^{k+1} x^k / k!
    for (int k = 1; k <= kMaxTerms; ++k) {
        term *= (k == 1 ? x : -x / k);
        const double contrib = term / k;
        sum += contrib;
        if (std::abs(contrib) < kEps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// e^x E1(x) for x > 1, modified Lentz on 1/(x+1- 1^2/(x+3- 2^2/(x+5- ...))).
double scaled_e1_fraction(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxTerms; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

PositiveReal::PositiveReal(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::domain_error("PositiveReal: value must be positive and finite, got " +
                                std::to_string(value));
    }
}

double exp_integral_e1(PositiveReal x) {
    const double v = x.value();
    if (v <= 1.0) return e1_series(v);
    return scaled_e1_fraction(v) * std::exp(-v);
}

double exp_integral_e1(double x) {
    require_e1_domain(x);
    return exp_integral_e1(PositiveReal{x});
}

double log_exp_integral_e1(double x) {
    require_e1_domain(x);
    if (x <= 1.0) return std::log(e1_series(x));
    return -x + std::log(scaled_e1_fraction(x));
}

double solve_monotone(const std::function<double(double)>& f, double target, double lo, double hi,
                      Monotone direction, SolveOptions options) {
    if (!(lo < hi)) throw std::invalid_argument("solve_monotone: bracket must satisfy lo < hi");
    if (options.positive_domain && lo <= 0.0) {
        throw std::invalid_argument("solve_monotone: positive-domain bracket must have lo > 0");
    }
    const double sign = direction == Monotone::increasing ? 1.0 : -1.0;
    // g is increasing in x; g(x*) = 0 at the root.
    auto g = [&](double x) { return sign * (f(x) - target); };

    double g_lo = g(lo);
    double g_hi = g(hi);
    for (int i = 0; !(g_lo <= 0.0 && g_hi >= 0.0); ++i) {
        if (i == kMaxBracketExpansions) {
            throw BracketError("solve_monotone: target " + std::to_string(target) +
                               " not bracketed after expansion");
        }
        if (g_lo > 0.0) {
            const double width = hi - lo;
            hi = lo;
            g_hi = g_lo;
            lo = options.positive_domain ? lo / kBracketExpansionFactor
                                         : lo - (kBracketExpansionFactor - 1.0) * width;
            g_lo = g(lo);
        } else {
            const double width = hi - lo;
            lo = hi;
            g_lo = g_hi;
            hi = options.positive_domain ? hi * kBracketExpansionFactor
                                         : hi + (kBracketExpansionFactor - 1.0) * width;
            g_hi = g(hi);
        }
        if (std::isnan(g_lo) || std::isnan(g_hi)) {
            throw BracketError("solve_monotone: function is NaN while expanding the bracket");
        }
    }

    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;

    for (int step = 0; step < kMaxBisectionSteps; ++step) {
        const bool geometric = options.positive_domain && hi > 2.0 * lo;
        const double mid = geometric ? std::sqrt(lo) * std::sqrt(hi) : lo + 0.5 * (hi - lo);
        const double g_mid = g(mid);
        if (g_mid == 0.0) return mid;
        if (g_mid < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        const double scale = options.positive_domain ? mid : std::max(1.0, std::abs(mid));
        if (hi - lo <= kSolverWidthTol * scale) return lo + 0.5 * (hi - lo);
    }
    throw ConvergenceError("solve_monotone: no convergence within the bisection step cap");
}

}  // namespace tworelay
