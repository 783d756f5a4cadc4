#include "tworelay/scenario.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <utility>

#include "tworelay/endnode_policy.hpp"
#include "tworelay/mc_engine.hpp"
#include "tworelay/outage.hpp"
#include "tworelay/specfun.hpp"

namespace tworelay {

namespace {

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw UsageError(fmt::format("grid: invalid {} '{}'", what, text));
    }
    return value;
}

double relative_deviation(double measured, double reference) {
    return std::abs(measured - reference) / std::max(std::abs(reference), 1e-300);
}

std::string regime_label(const RelayPolicy& policy) {
    std::string label =
        policy.region() == RegionCase::x_dominant ? "x_dominant" : "y_dominant";
    if (policy.rho().is_unbounded()) return label + ":unbounded";
    // Truncation deep enough to move the start of an inversion sub-region.
    const bool shifted = policy.region() == RegionCase::x_dominant ? policy.lambda1() > policy.x0()
                                                                   : policy.lambda2() > policy.y0();
    return label + (shifted ? ":finite-deep" : ":finite");
}

class Checker {
public:
    void add(std::string check, std::string label, double measured, double reference,
             double deviation, double tolerance) {
        const bool ok = deviation <= tolerance;  // false for NaN
        passed_ = passed_ && ok;
        rows_.push_back({std::move(check), std::move(label), format_number(measured),
                         format_number(reference), format_number(deviation),
                         format_number(tolerance), ok ? "PASS" : "FAIL"});
    }

    ValidationResult finish() && {
        ValidationResult result;
        result.table.header = {"check", "case", "measured", "reference", "deviation", "tolerance",
                               "status"};
        result.table.rows = std::move(rows_);
        result.passed = passed_;
        return result;
    }

private:
    std::vector<std::vector<std::string>> rows_;
    bool passed_ = true;
};

void check_e1(Checker& checker) {
    int violations = 0;
    double previous = std::numeric_limits<double>::infinity();
    constexpr int n = 200;
    for (int i = 0; i < n; ++i) {
        const double x = std::pow(10.0, -3.0 + (std::log10(50.0) + 3.0) * i / (n - 1));
        const double e1 = exp_integral_e1(x);
        const bool bracket = std::exp(-x) / (x + 1.0) < e1 && e1 < std::exp(-x) / x;
        const bool decreasing = e1 < previous;
        violations += (bracket && decreasing) ? 0 : 1;
        previous = e1;
    }
    checker.add("e1_bracket_monotone", "grid200", violations, 0.0, violations, 0.0);
}

void check_cutoff_roundtrip(Checker& checker) {
    constexpr std::array<std::array<double, 3>, 5> cases{{
        {1.0, 1.0, 0.5}, {7.0, 2.0, 0.01}, {0.26, 0.5, 3.0}, {1.0, 1.0, 1e-6}, {2.0, 3.0, 20.0}}};
    int k = 0;
    for (const auto& [delta, omega, cutoff] : cases) {
        const double solved = solve_cutoff(delta, omega, endnode_average_power(delta, omega, cutoff));
        checker.add("cutoff_roundtrip", fmt::format("c{}", k++), solved, cutoff,
                    relative_deviation(solved, cutoff), 1e-9);
    }
}

void check_closed_form_identities(Checker& checker, const std::vector<OpaPolicies>& policies) {
    int k = 0;
    for (const auto& p : policies) {
        const auto& relay = p.relay;
        const std::string label = fmt::format("set{:02d}", k++);
        const double floor = 1.0 - std::exp(-relay.x0() / relay.omega_x()) *
                                       std::exp(-relay.y0() / relay.omega_y());
        const double unbounded = outage_opa(relay.with_rho(RelayCutoff::unbounded())).p_out;
        checker.add("saturation_unbounded", label, unbounded, floor, std::abs(unbounded - floor),
                    1e-12);
        const auto saturated = relay.with_rho(RelayCutoff::finite(relay.saturation_rho()));
        const double at_sat = outage_opa(saturated).p_out;
        checker.add("saturation_finite_rho", label, at_sat, floor, std::abs(at_sat - floor), 1e-12);
        const double p_max = max_avg_relay_power(relay.delta1(), relay.delta2(), relay.x0(),
                                                 relay.y0(), relay.omega_x(), relay.omega_y());
        const double p_sat = avg_relay_power(saturated);
        checker.add("saturation_relay_power", label, p_sat, p_max, relative_deviation(p_sat, p_max),
                    1e-12);

        if (!relay.rho().is_unbounded()) {
            const double rho = relay.rho().value();
            const double p_target = avg_relay_power(relay);
            const RelayCutoff solved =
                solve_rho(relay.delta1(), relay.delta2(), relay.x0(), relay.y0(), relay.omega_x(),
                          relay.omega_y(), p_target);
            const double solved_rho = solved.is_unbounded() ? INFINITY : solved.value();
            checker.add("rho_roundtrip", label, solved_rho, rho, relative_deviation(solved_rho, rho),
                        1e-6);
        }

        // rho -> saturation from below: nonincreasing and converging to the floor.
        double previous = 1.0;
        int increases = 0;
        double last = 1.0;
        for (int j = 1; j <= 40; ++j) {
            const double rho = relay.saturation_rho() * (1.0 - std::ldexp(1.0, -j));
            last = outage_opa(relay.with_rho(RelayCutoff::finite(rho))).p_out;
            increases += last > previous + 1e-15 ? 1 : 0;
            previous = last;
        }
        checker.add("rho_limit_monotone", label, increases, 0.0, increases, 0.0);
        checker.add("rho_limit_converges", label, last, floor, std::abs(last - floor), 1e-9);
    }
}

void check_case_boundary(Checker& checker) {
    constexpr std::array<std::array<double, 5>, 10> combos{{
        // delta1, delta2, omega_x, omega_y, x0
        {1.0, 1.0, 1.0, 1.0, 0.2},
        {7.0, 1.0, 1.0, 1.0, 0.1},
        {1.0, 7.0, 2.0, 0.5, 0.3},
        {0.5, 2.0, 0.5, 3.0, 0.05},
        {3.0, 0.7, 1.5, 1.5, 0.8},
        {1.0, 1.0, 10.0, 0.1, 1.0},
        {2.0, 2.0, 0.3, 0.3, 0.02},
        {15.0, 3.0, 4.0, 1.0, 0.4},
        {0.26, 0.26, 1.0, 2.0, 0.6},
        {1.0, 0.3, 0.2, 5.0, 0.15},
    }};
    int k = 0;
    for (const auto& [d1, d2, ox, oy, x0] : combos) {
        const double y0 = d1 * x0 / d2;
        const std::string label = fmt::format("b{}", k++);
        const double max_x = max_avg_relay_power_x_dominant(d1, d2, x0, y0, ox, oy);
        const double max_y = max_avg_relay_power_y_dominant(d1, d2, x0, y0, ox, oy);
        checker.add("case_boundary_max_power", label, max_x, max_y, relative_deviation(max_x, max_y),
                    1e-10);
        const auto base = RelayPolicy::make(d1, d2, x0, y0, ox, oy, RelayCutoff::unbounded());
        for (const double fraction : {0.2, 0.7}) {
            const auto p = base.with_rho(RelayCutoff::finite(fraction * base.saturation_rho()));
            const std::string sub = fmt::format("{}:rho{}", label, fraction);
            const double ox_ = outage_x_dominant(p);
            const double oy_ = outage_y_dominant(p);
            checker.add("case_boundary_outage", sub, ox_, oy_, relative_deviation(ox_, oy_), 1e-10);
            const double px = avg_relay_power_x_dominant(p);
            const double py = avg_relay_power_y_dominant(p);
            checker.add("case_boundary_relay_power", sub, px, py, relative_deviation(px, py), 1e-10);
        }
    }
}

void check_monte_carlo(Checker& checker, const std::vector<SystemConfig>& configs,
                       const std::vector<OpaPolicies>& policies, const ScenarioSpec& spec,
                       const ValidationHooks& hooks) {
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const auto& config = configs[k];
        const auto& p = policies[k];
        const std::string label = fmt::format("set{:02d}:{}", k, regime_label(p.relay));
        SimOptions options;
        options.trials = spec.trials;
        options.seed = substream_seed(spec.seed, k);
        options.workers = spec.workers;
        const SimReport sim = run_opa(p, options);
        const double n = static_cast<double>(sim.trials);

        const double op = outage_opa(p.relay).p_out;
        checker.add("mc_opa_outage", label, sim.outage_rate, op, std::abs(sim.outage_rate - op),
                    4.0 * std::sqrt(op * (1.0 - op) / n));

        auto power_row = [&](const char* check, double measured, double sigma, double reference) {
            const double tol = std::max(0.01, 4.0 * sigma / reference);
            checker.add(check, label, measured, reference, relative_deviation(measured, reference),
                        tol);
        };
        power_row("mc_power_s1", sim.avg_power_s1, sim.power_sigma_s1, config.pbar_s1);
        power_row("mc_power_s2", sim.avg_power_s2, sim.power_sigma_s2, config.pbar_s2);
        power_row("mc_power_relay", sim.avg_power_relay, sim.power_sigma_relay,
                  hooks.avg_relay_power(p.relay));

        const double excess = sim.avg_power_relay / config.p_avg_relay - 1.0;
        checker.add("mc_relay_budget", label, sim.avg_power_relay, config.p_avg_relay, excess,
                    std::max(0.01, 4.0 * sim.power_sigma_relay / config.p_avg_relay));
    }
}

void check_fpa(Checker& checker, const ScenarioSpec& spec) {
    struct Case {
        double rate_1, rate_2, omega_x, omega_y;
        FpaConfig fpa;
    };
    const std::array<Case, 5> cases{{
        {1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, {10.0, 10.0, 10.0}},
        {0.5, 0.25, 2.0, 0.5, {2.0, 5.0, 1.0}},
        {1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, {5.0, 5.0, 1e6}},
        {0.25, 0.5, 0.5, 1.5, {1.0, 3.0, 0.5}},
        {1.0, 1.0, 3.0, 3.0, {20.0, 40.0, 30.0}},
    }};
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& c = cases[k];
        const double d1 = delta_of_rate(c.rate_1);
        const double d2 = delta_of_rate(c.rate_2);
        SimOptions options;
        options.trials = spec.trials;
        options.seed = substream_seed(spec.seed, 1000 + k);
        options.workers = spec.workers;
        const SimReport sim = run_fpa(d1, d2, c.omega_x, c.omega_y, c.fpa, options);
        const double op = outage_fpa(d1, d2, c.omega_x, c.omega_y, c.fpa);
        checker.add("mc_fpa_outage", fmt::format("fpa{}", k), sim.outage_rate, op,
                    std::abs(sim.outage_rate - op),
                    4.0 * std::sqrt(op * (1.0 - op) / static_cast<double>(sim.trials)));
    }
}

void check_dominance(Checker& checker, const ScenarioSpec& spec) {
    for (const double db : spec.grid) {
        const auto point =
            total_power_analytic(spec.rate_1, spec.rate_2, spec.omega_x, spec.omega_y, db);
        checker.add("opa_beats_fpa", fmt::format("PT={}dB", format_number(db)),
                    point.op_opa_analytic, point.op_fpa_analytic,
                    std::max(0.0, point.op_opa_analytic - point.op_fpa_analytic), 1e-12);
    }
}

void check_budget_monotonicity(Checker& checker) {
    const SystemConfig base{1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    auto op_of = [](const SystemConfig& c) { return outage_opa(solve_policies(c).relay).p_out; };
    const std::array<double SystemConfig::*, 3> budgets{
        &SystemConfig::pbar_s1, &SystemConfig::pbar_s2, &SystemConfig::p_avg_relay};
    const std::array<const char*, 3> names{"pbar_s1", "pbar_s2", "p_avg_relay"};
    for (std::size_t b = 0; b < budgets.size(); ++b) {
        int increases = 0;
        double previous = 1.0;
        for (int i = 0; i <= 20; ++i) {
            SystemConfig c = base;
            c.*budgets[b] = from_db(-10.0 + 2.0 * i);
            const double op = op_of(c);
            increases += op > previous + 1e-12 ? 1 : 0;
            previous = op;
        }
        checker.add("opa_monotone_in_budget", names[b], increases, 0.0, increases, 0.0);
    }
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
    std::array<std::string_view, 3> parts;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? text.find(':', begin) : text.size();
        if (end == std::string_view::npos) {
            throw UsageError(fmt::format("grid: expected start:stop:step, got '{}'", text));
        }
        parts[i] = text.substr(begin, end - begin);
        begin = end + 1;
    }
    if (parts[2].find(':') != std::string_view::npos) {
        throw UsageError(fmt::format("grid: expected start:stop:step, got '{}'", text));
    }
    const double start = parse_double(parts[0], "start");
    const double stop = parse_double(parts[1], "stop");
    const double step = parse_double(parts[2], "step");
    if (step <= 0.0) throw UsageError("grid: step must be positive");
    if (stop < start) throw UsageError(fmt::format("grid: '{}' is empty (stop < start)", text));
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> points(count);
    for (std::size_t i = 0; i < count; ++i) points[i] = start + static_cast<double>(i) * step;
    return points;
}

std::vector<double> default_grid(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::power_gains: {
            // 1e-3 ... 0.9, log-spaced below 0.1 and linear above.
            std::vector<double> grid;
            for (int i = 0; i < 10; ++i) grid.push_back(std::pow(10.0, -3.0 + 0.2 * i));
            for (int i = 0; i < 9; ++i) grid.push_back(0.1 + 0.1 * i);
            return grid;
        }
        case ScenarioKind::sweep_total_power:
        case ScenarioKind::validate:
            return parse_grid("-10:30:2");
    }
    return {};
}

void ScenarioSpec::validate() const {
    if (grid.empty()) throw UsageError("grid must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw UsageError("grid must be strictly increasing");
    }
    if (trials < 1000) throw UsageError("trials must be at least 1000");
    for (const auto& [value, name] : {std::pair{rate_1, "rate_1"}, std::pair{rate_2, "rate_2"},
                                      std::pair{omega_x, "omega_x"}, std::pair{omega_y, "omega_y"}}) {
        if (!std::isfinite(value) || value <= 0.0) {
            throw UsageError(fmt::format("{} must be positive and finite", name));
        }
    }
    if (scenario == ScenarioKind::power_gains) {
        for (const double op : grid) {
            if (!(op > 0.0 && op < 1.0)) {
                throw UsageError(fmt::format("outage target {} outside (0, 1)", op));
            }
        }
    }
}

std::string format_number(double value) {
    if (value == 0.0) return "0";
    return fmt::format("{:.12g}", value);
}

void write_csv(std::ostream& out, const Table& table) {
    auto write_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) out << ',';
            out << row[i];
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

double to_db(double linear) { return 10.0 * std::log10(linear); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

TotalPowerPoint total_power_analytic(double rate_1, double rate_2, double omega_x, double omega_y,
                                     double total_power_db) {
    const double share = from_db(total_power_db) / 3.0;
    const SystemConfig config{rate_1, rate_2, omega_x, omega_y, share, share, share};
    TotalPowerPoint point;
    point.total_power_db = total_power_db;
    point.op_opa_analytic = outage_opa(solve_policies(config).relay).p_out;
    point.op_fpa_analytic = outage_fpa(config, FpaConfig{share, share, share});
    return point;
}

PowerGainPoint power_gain_point(double rate_1, double rate_2, double omega_x, double omega_y,
                                double op_target) {
    if (!(op_target > 0.0 && op_target < 1.0)) {
        throw UsageError(fmt::format("outage target {} outside (0, 1)", op_target));
    }
    const double d1 = delta_of_rate(rate_1);
    const double d2 = delta_of_rate(rate_2);
    // Equal split of the outage exponent: x0 / omega_x = y0 / omega_y.
    const double t = -0.5 * std::log1p(-op_target);
    PowerGainPoint point;
    point.op_target = op_target;
    point.x0 = t * omega_x;
    point.y0 = t * omega_y;
    const double pbar_s1 = endnode_average_power(d1, omega_x, point.x0);
    const double p_s1_fix = d1 / point.x0;
    const double p_s2_fix = d2 / point.y0;
    point.gain_s = p_s1_fix / pbar_s1;
    const double p_r_max = max_avg_relay_power(d1, d2, point.x0, point.y0, omega_x, omega_y);
    const double p_r_fix = std::max(d1 * p_s2_fix / d2, d2 * p_s1_fix / d1);
    point.gain_r = p_r_fix / p_r_max;
    return point;
}

Table scenario_total_power(const ScenarioSpec& spec) {
    spec.validate();
    Table table;
    table.header = {"P_T_dB", "op_opa_analytic", "op_opa_mc", "op_fpa_analytic", "op_fpa_mc"};
    for (std::size_t row = 0; row < spec.grid.size(); ++row) {
        const double db = spec.grid[row];
        TotalPowerPoint point =
            total_power_analytic(spec.rate_1, spec.rate_2, spec.omega_x, spec.omega_y, db);
        const double share = from_db(db) / 3.0;
        const SystemConfig config{spec.rate_1, spec.rate_2, spec.omega_x, spec.omega_y,
                                  share,       share,       share};
        SimOptions options;
        options.trials = spec.trials;
        options.seed = substream_seed(spec.seed, row);
        options.workers = spec.workers;
        point.op_opa_mc = run_opa(config, options).outage_rate;
        point.op_fpa_mc = run_fpa(config, FpaConfig{share, share, share}, options).outage_rate;
        table.rows.push_back({format_number(db), format_number(point.op_opa_analytic),
                              format_number(point.op_opa_mc), format_number(point.op_fpa_analytic),
                              format_number(point.op_fpa_mc)});
    }
    return table;
}

Table scenario_power_gains(const ScenarioSpec& spec) {
    spec.validate();
    Table table;
    table.header = {"op_target", "gain_s_dB", "gain_r_dB"};
    for (const double op : spec.grid) {
        const auto point = power_gain_point(spec.rate_1, spec.rate_2, spec.omega_x, spec.omega_y, op);
        table.rows.push_back(
            {format_number(op), format_number(to_db(point.gain_s)), format_number(to_db(point.gain_r))});
    }
    return table;
}

std::vector<SystemConfig> validation_configs() {
    constexpr std::array<std::pair<double, double>, 3> rates{
        {{1.0 / 3.0, 1.0 / 3.0}, {0.5, 0.25}, {0.25, 0.5}}};
    constexpr std::array<std::pair<double, double>, 3> omegas{{{1.0, 1.0}, {2.0, 0.5}, {0.5, 1.5}}};
    // Relay budget as a fraction of the saturated demand: deep truncation,
    // mild truncation, and no truncation.
    constexpr std::array<double, 3> relay_fractions{0.15, 0.6, 1.5};
    std::vector<SystemConfig> configs;
    int k = 0;
    for (const auto& [r1, r2] : rates) {
        for (const auto& [ox, oy] : omegas) {
            const bool swap = (k++ % 2) != 0;
            SystemConfig c{r1, r2, ox, oy, swap ? 1.2 : 0.6, swap ? 0.6 : 1.2, 1.0};
            const double x0 = solve_cutoff(c.delta1(), ox, c.pbar_s1);
            const double y0 = solve_cutoff(c.delta2(), oy, c.pbar_s2);
            const double p_max = max_avg_relay_power(c.delta1(), c.delta2(), x0, y0, ox, oy);
            for (const double f : relay_fractions) {
                c.p_avg_relay = f * p_max;
                configs.push_back(c);
            }
        }
    }
    return configs;
}

ValidationResult scenario_validate(const ScenarioSpec& spec, const ValidationHooks& hooks) {
    spec.validate();
    const auto configs = validation_configs();
    std::vector<OpaPolicies> policies;
    policies.reserve(configs.size());
    for (const auto& c : configs) policies.push_back(solve_policies(c));

    Checker checker;
    check_e1(checker);
    check_cutoff_roundtrip(checker);
    check_closed_form_identities(checker, policies);
    check_case_boundary(checker);
    check_budget_monotonicity(checker);
    check_dominance(checker, spec);
    check_monte_carlo(checker, configs, policies, spec, hooks);
    check_fpa(checker, spec);
    return std::move(checker).finish();
}

}  // namespace tworelay
