#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tworelay/relay_policy.hpp"

namespace tworelay {

/// Bad command-line input or configuration value.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { sweep_total_power, power_gains, validate };

/// Points start, start + step, ... up to stop (inclusive within step * 1e-9).
/// Throws UsageError for malformed text or an empty grid.
std::vector<double> parse_grid(std::string_view text);

std::vector<double> default_grid(ScenarioKind kind);

struct ScenarioSpec {
    ScenarioKind scenario = ScenarioKind::sweep_total_power;
    double rate_1 = 1.0 / 3.0;
    double rate_2 = 1.0 / 3.0;
    double omega_x = 1.0;
    double omega_y = 1.0;
    /// Total power in dB for sweep_total_power and validate, target outage
    /// probability for power_gains.
    std::vector<double> grid;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string output_path;

    /// Throws UsageError on an empty or non-increasing grid, trials < 1000 or
    /// non-positive rates and channel means.
    void validate() const;
};

/// CSV-ready table; cells are preformatted text.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// 12 significant digits, '.' decimal point, locale independent.
std::string format_number(double value);

/// Comma separated, header row first, LF line endings.
void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);

double to_db(double linear);
double from_db(double db);

/// One point of the total-power sweep (all values are linear probabilities).
struct TotalPowerPoint {
    double total_power_db = 0.0;
    double op_opa_analytic = 1.0;
    double op_opa_mc = 1.0;
    double op_fpa_analytic = 1.0;
    double op_fpa_mc = 1.0;
};

/// Analytic columns only; MC columns are left at 1.
TotalPowerPoint total_power_analytic(double rate_1, double rate_2, double omega_x, double omega_y,
                                     double total_power_db);

/// Power savings of the optimal policy at a target minimum outage probability.
struct PowerGainPoint {
    double op_target = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    double gain_s = 1.0;  ///< P_S^fix / Pbar_S (linear; identical for both end nodes)
    double gain_r = 1.0;  ///< P_R^fix / Pbar_R^max (linear)
};

/// Throws UsageError when op_target is outside (0, 1).
PowerGainPoint power_gain_point(double rate_1, double rate_2, double omega_x, double omega_y,
                                double op_target);

/// Columns: P_T_dB, op_opa_analytic, op_opa_mc, op_fpa_analytic, op_fpa_mc.
Table scenario_total_power(const ScenarioSpec& spec);

/// Columns: op_target, gain_s_dB, gain_r_dB.
Table scenario_power_gains(const ScenarioSpec& spec);

/// Replaceable closed forms, so a deliberately broken formula can be shown to
/// make its validation rows fail.
struct ValidationHooks {
    std::function<double(const RelayPolicy&)> avg_relay_power = tworelay::avg_relay_power;
};

struct ValidationResult {
    /// Columns: check, case, measured, reference, deviation, tolerance, status.
    Table table;
    bool passed = true;
};

/// Runs the closed-form identities and closed-form vs Monte Carlo checks on a
/// built-in parameter grid. The scenario grid is the total-power grid (dB) of the
/// optimal-vs-fixed dominance check.
ValidationResult scenario_validate(const ScenarioSpec& spec, const ValidationHooks& hooks = {});

/// Parameter sets used by the Monte Carlo rows of scenario_validate.
std::vector<SystemConfig> validation_configs();

}  // namespace tworelay
