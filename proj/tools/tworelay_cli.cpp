// tworelay: outage-optimal power allocation for three-phase two-way DF relaying.
//
//   tworelay sweep-total-power [--grid -10:30:2] [--trials N] [--seed S] [--out file.csv]
//   tworelay power-gains       [--grid 0.001:0.9:0.001] [--out file.csv]
//   tworelay validate          [--trials N] [--seed S] [--out file.csv]
//
// Every flag may also come from an INI file given with --config; keys live in
// a section named after the subcommand (e.g. [sweep-total-power]) and flags on
// the command line win. Exit status: 0 success, 1 usage/config error, 2
// validation failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tworelay/scenario.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidationFailed = 2;

struct CommonFlags {
    std::string out;
    std::optional<std::string> grid;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    double rate_1 = 1.0 / 3.0;
    double rate_2 = 1.0 / 3.0;
    double omega_x = 1.0;
    double omega_y = 1.0;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags, const char* grid_help) {
    sub->add_option("--out", flags.out, "Output CSV path (stdout when omitted)");
    sub->add_option("--grid", flags.grid, grid_help);
    sub->add_option("--trials", flags.trials, "Monte Carlo trials per point")->capture_default_str();
    sub->add_option("--seed", flags.seed, "Base random seed")->capture_default_str();
    sub->add_option("--workers", flags.workers, "Worker threads (0 = all cores)")
        ->capture_default_str();
    sub->add_option("--rate-1", flags.rate_1, "Rate of session S1->S2, bits/use")
        ->capture_default_str();
    sub->add_option("--rate-2", flags.rate_2, "Rate of session S2->S1, bits/use")
        ->capture_default_str();
    sub->add_option("--omega-x", flags.omega_x, "Mean S1-R channel power gain")
        ->capture_default_str();
    sub->add_option("--omega-y", flags.omega_y, "Mean S2-R channel power gain")
        ->capture_default_str();
}

tworelay::ScenarioSpec make_spec(tworelay::ScenarioKind kind, const CommonFlags& flags) {
    tworelay::ScenarioSpec spec;
    spec.scenario = kind;
    spec.rate_1 = flags.rate_1;
    spec.rate_2 = flags.rate_2;
    spec.omega_x = flags.omega_x;
    spec.omega_y = flags.omega_y;
    spec.grid = flags.grid ? tworelay::parse_grid(*flags.grid) : tworelay::default_grid(kind);
    spec.trials = flags.trials;
    spec.seed = flags.seed;
    spec.workers = flags.workers;
    spec.output_path = flags.out;
    spec.validate();
    return spec;
}

void emit(const tworelay::Table& table, const std::string& path) {
    if (path.empty()) {
        tworelay::write_csv(std::cout, table);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw tworelay::UsageError("cannot open output file '" + path + "'");
    tworelay::write_csv(out, table);
    out.flush();
    if (!out) throw tworelay::UsageError("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage-optimal power allocation for three-phase two-way DF relaying"};
    app.set_config("--config", "", "INI file with one [subcommand] section; flags override it");
    app.allow_config_extras(false);
    app.require_subcommand(1);

    CommonFlags sweep_flags;
    CommonFlags gains_flags;
    CommonFlags validate_flags;
    auto* sweep = app.add_subcommand("sweep-total-power",
                                     "Outage vs total power, optimal vs fixed allocation");
    auto* gains = app.add_subcommand("power-gains", "Power gains over fixed allocation vs target outage");
    auto* validate = app.add_subcommand("validate", "Closed-form and Monte Carlo self-checks");
    add_common_flags(sweep, sweep_flags, "Total power grid in dB, start:stop:step");
    add_common_flags(gains, gains_flags, "Target outage grid, start:stop:step within (0, 1)");
    add_common_flags(validate, validate_flags,
                     "Total power grid in dB for the dominance check, start:stop:step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sweep) {
            const auto spec = make_spec(tworelay::ScenarioKind::sweep_total_power, sweep_flags);
            emit(tworelay::scenario_total_power(spec), spec.output_path);
        } else if (*gains) {
            const auto spec = make_spec(tworelay::ScenarioKind::power_gains, gains_flags);
            emit(tworelay::scenario_power_gains(spec), spec.output_path);
        } else if (*validate) {
            const auto spec = make_spec(tworelay::ScenarioKind::validate, validate_flags);
            const auto result = tworelay::scenario_validate(spec);
            emit(result.table, spec.output_path);
            if (!result.passed) {
                std::cerr << "validation failed\n";
                return kExitValidationFailed;
            }
        }
    } catch (const tworelay::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
