#pragma once

namespace tworelay {

/// Truncated channel inversion at an end node.
///
/// The node transmits delta / gain whenever its own link gain reaches the
/// cutoff and stays silent otherwise. The cutoff is the unique root of
/// (delta / omega) * E1(cutoff / omega) = pbar, which makes the long-term
/// average power equal the budget.
class EndNodePolicy {
public:
    /// Solves the cutoff for the given budget.
    static EndNodePolicy for_budget(double delta, double omega, double pbar);

    /// Wraps an explicit cutoff; pbar is recomputed from it.
    static EndNodePolicy for_cutoff(double delta, double omega, double cutoff);

    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] double cutoff() const noexcept { return cutoff_; }
    [[nodiscard]] double omega() const noexcept { return omega_; }
    [[nodiscard]] double pbar() const noexcept { return pbar_; }

    /// Rate carried on the link, log2(1 + delta) / 3.
    [[nodiscard]] double rate() const;

private:
    EndNodePolicy(double delta, double cutoff, double omega, double pbar)
        : delta_(delta), cutoff_(cutoff), omega_(omega), pbar_(pbar) {}

    double delta_;
    double cutoff_;
    double omega_;
    double pbar_;
};

/// Long-term average power (delta / omega) * E1(cutoff / omega) of the policy.
double endnode_average_power(double delta, double omega, double cutoff);

/// Unique c > 0 with (delta / omega) * E1(c / omega) = pbar.
double solve_cutoff(double delta, double omega, double pbar);

/// delta / gain when gain >= cutoff (inclusive), else 0.
double endnode_power(const EndNodePolicy& policy, double gain);

/// True iff the link capacity (1/3) log2(1 + P gain) reaches the rate, i.e. gain >= cutoff.
bool link_supports_rate(const EndNodePolicy& policy, double gain);

}  // namespace tworelay
