#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "tworelay/outage.hpp"
#include "tworelay/scenario.hpp"
#include "tworelay/specfun.hpp"

using namespace tworelay;

namespace {

ScenarioSpec spec_for(ScenarioKind kind, std::uint64_t trials = 200'000) {
    ScenarioSpec s;
    s.scenario = kind;
    s.grid = default_grid(kind);
    s.trials = trials;
    s.seed = 2024;
    s.workers = 1;
    return s;
}

double cell(const Table& t, std::size_t row, std::string_view column) {
    const auto it = std::find(t.header.begin(), t.header.end(), column);
    REQUIRE(it != t.header.end());
    return std::stod(t.rows.at(row).at(static_cast<std::size_t>(it - t.header.begin())));
}

// x-dominant average power with the sign of the band term flipped.
double broken_avg_relay_power(const RelayPolicy& p) {
    if (p.region() != RegionCase::x_dominant) return avg_relay_power(p);
    const double ratio = p.delta1() / p.delta2();
    const double s = 1.0 / p.omega_x() + ratio / p.omega_y();
    const double x1 = std::max(p.x0(), p.lambda2() / ratio);
    const double c1 = p.delta1() / p.omega_y();
    const double c2 = p.delta2() / p.omega_x();
    const double band =
        exp_integral_e1(p.lambda2() / p.omega_y()) - exp_integral_e1(ratio * x1 / p.omega_y());
    return -c1 * std::exp(-x1 / p.omega_x()) * band + c1 * exp_integral_e1(s * x1) +
           c2 * exp_integral_e1(s * p.lambda1());
}

}  // namespace

TEST_CASE("parse_grid") {
    const auto g = parse_grid("-10:30:2");
    REQUIRE(g.size() == 21);
    CHECK(g.front() == -10.0);
    CHECK(g.back() == doctest::Approx(30.0));
    CHECK(parse_grid("0.1:0.3:0.1").size() == 3);
    CHECK(parse_grid("5:5:1").size() == 1);
    CHECK_THROWS_AS(parse_grid(""), UsageError);
    CHECK_THROWS_AS(parse_grid("1:2"), UsageError);
    CHECK_THROWS_AS(parse_grid("a:2:1"), UsageError);
    CHECK_THROWS_AS(parse_grid("1:2:0"), UsageError);
    CHECK_THROWS_AS(parse_grid("3:2:1"), UsageError);
}

TEST_CASE("ScenarioSpec validation") {
    auto s = spec_for(ScenarioKind::sweep_total_power);
    CHECK_NOTHROW(s.validate());
    s.grid.clear();
    CHECK_THROWS_AS(s.validate(), UsageError);
    s.grid = {1.0, 1.0};
    CHECK_THROWS_AS(s.validate(), UsageError);
    s.grid = {1.0};
    s.trials = 999;
    CHECK_THROWS_AS(s.validate(), UsageError);
    s.trials = 1000;
    s.omega_x = 0.0;
    CHECK_THROWS_AS(s.validate(), UsageError);
    auto g = spec_for(ScenarioKind::power_gains);
    g.grid = {0.5, 1.0};
    CHECK_THROWS_AS(g.validate(), UsageError);
}

TEST_CASE("number formatting and CSV dialect") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-12.5) == "-12.5");
    CHECK(format_number(1e-20) == "1e-20");
    const Table t{{"a", "b"}, {{"1", "2"}, {"3", "4"}}};
    CHECK(to_csv(t) == "a,b\n1,2\n3,4\n");
    CHECK(to_db(100.0) == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(from_db(to_db(0.37)) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("total power sweep") {
    const auto spec = spec_for(ScenarioKind::sweep_total_power);
    const auto table = scenario_total_power(spec);
    CHECK(table.header == std::vector<std::string>{"P_T_dB", "op_opa_analytic", "op_opa_mc",
                                                   "op_fpa_analytic", "op_fpa_mc"});
    REQUIRE(table.rows.size() == spec.grid.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const double opa = cell(table, i, "op_opa_analytic");
        const double fpa = cell(table, i, "op_fpa_analytic");
        CHECK(opa <= fpa);
        const double n = static_cast<double>(spec.trials);
        const double s_opa = std::sqrt(std::max(opa * (1.0 - opa), 1.0 / n) / n);
        const double s_fpa = std::sqrt(std::max(fpa * (1.0 - fpa), 1.0 / n) / n);
        CHECK(std::abs(cell(table, i, "op_opa_mc") - opa) <= 4.0 * s_opa);
        CHECK(std::abs(cell(table, i, "op_fpa_mc") - fpa) <= 4.0 * s_fpa);
    }
    const auto low = total_power_analytic(1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, -60.0);
    CHECK(low.op_opa_analytic > 0.999);
    CHECK(low.op_fpa_analytic > 0.999);
}

TEST_CASE("power gains") {
    const auto table = scenario_power_gains(spec_for(ScenarioKind::power_gains));
    CHECK(table.header == std::vector<std::string>{"op_target", "gain_s_dB", "gain_r_dB"});
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(cell(table, i, "gain_s_dB") > 0.0);
        CHECK(cell(table, i, "gain_r_dB") > 0.0);
    }
    double previous = INFINITY;
    for (const double op : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
        const auto g = power_gain_point(1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, op);
        CHECK(g.gain_s < previous);
        previous = g.gain_s;
    }
    CHECK_THROWS_AS(power_gain_point(1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, 0.0), UsageError);
    CHECK_THROWS_AS(power_gain_point(1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, 1.0), UsageError);
}

TEST_CASE("gain cutoffs reproduce the target outage") {
    for (const double ox : {1.0, 0.4}) {
        for (const double op : {1e-3, 0.05, 0.3, 0.9}) {
            const auto g = power_gain_point(0.5, 0.2, ox, 2.0, op);
            CHECK(std::abs(min_outage(g.x0, g.y0, ox, 2.0) - op) <= 1e-12 * op);
            CHECK(g.x0 / ox == doctest::Approx(g.y0 / 2.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("validation suite passes and is deterministic") {
    const auto spec = spec_for(ScenarioKind::validate);
    const auto first = scenario_validate(spec);
    CHECK(first.passed);
    CHECK(first.table.header == std::vector<std::string>{"check", "case", "measured", "reference",
                                                         "deviation", "tolerance", "status"});
    const auto failed = std::count_if(first.table.rows.begin(), first.table.rows.end(),
                                      [](const auto& row) { return row.back() != "PASS"; });
    CHECK(failed == 0);
    const auto second = scenario_validate(spec);
    CHECK(to_csv(first.table) == to_csv(second.table));
}

TEST_CASE("a sign error in the relay power form fails its validation rows") {
    ValidationHooks hooks;
    hooks.avg_relay_power = broken_avg_relay_power;
    const auto result = scenario_validate(spec_for(ScenarioKind::validate), hooks);
    CHECK_FALSE(result.passed);
    const auto relay_failures =
        std::count_if(result.table.rows.begin(), result.table.rows.end(), [](const auto& row) {
            return row.front() == "mc_power_relay" && row.back() == "FAIL";
        });
    CHECK(relay_failures > 0);
    const auto other_failures =
        std::count_if(result.table.rows.begin(), result.table.rows.end(), [](const auto& row) {
            return row.front() != "mc_power_relay" && row.back() == "FAIL";
        });
    CHECK(other_failures == 0);
}
