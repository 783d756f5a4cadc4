#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <optional>

#include "tworelay/endnode_policy.hpp"
#include "tworelay/mc_engine.hpp"
#include "tworelay/outage.hpp"
#include "tworelay/relay_policy.hpp"
#include "tworelay/scenario.hpp"
#include "tworelay/specfun.hpp"
#include "tworelay/system_model.hpp"

namespace py = pybind11;
using namespace tworelay;

namespace {

// None stands for the unbounded relay cutoff on the Python side.
RelayCutoff cutoff_from(std::optional<double> rho) {
    return rho ? RelayCutoff::finite(*rho) : RelayCutoff::unbounded();
}

std::optional<double> cutoff_to(const RelayCutoff& rho) {
    if (rho.is_unbounded()) return std::nullopt;
    return rho.value();
}

SimOptions sim_options(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    SimOptions o;
    o.trials = trials;
    o.seed = seed;
    o.workers = workers;
    return o;
}

ScenarioSpec make_spec(ScenarioKind kind, std::optional<std::vector<double>> grid, double rate_1,
                       double rate_2, double omega_x, double omega_y, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers) {
    ScenarioSpec spec;
    spec.scenario = kind;
    spec.grid = grid ? *grid : default_grid(kind);
    spec.rate_1 = rate_1;
    spec.rate_2 = rate_2;
    spec.omega_x = omega_x;
    spec.omega_y = omega_y;
    spec.trials = trials;
    spec.seed = seed;
    spec.workers = workers;
    spec.validate();
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Outage-optimal power allocation for three-phase two-way decode-and-forward relaying";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    m.def("exp_integral_e1", py::overload_cast<double>(&exp_integral_e1), py::arg("x"));
    m.def("delta_of_rate", &delta_of_rate, py::arg("rate"), py::arg("phases") = kPhases);
    m.def("solve_cutoff", &solve_cutoff, py::arg("delta"), py::arg("omega"), py::arg("pbar"));
    m.def("endnode_average_power", &endnode_average_power, py::arg("delta"), py::arg("omega"),
          py::arg("cutoff"));

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](double r1, double r2, double ox, double oy, double s1, double s2, double pr) {
                 SystemConfig c{r1, r2, ox, oy, s1, s2, pr};
                 c.validate();
                 return c;
             }),
             py::arg("rate_1") = 1.0 / 3.0, py::arg("rate_2") = 1.0 / 3.0, py::arg("omega_x") = 1.0,
             py::arg("omega_y") = 1.0, py::arg("pbar_s1") = 1.0, py::arg("pbar_s2") = 1.0,
             py::arg("p_avg_relay") = 1.0)
        .def_readwrite("rate_1", &SystemConfig::rate_1)
        .def_readwrite("rate_2", &SystemConfig::rate_2)
        .def_readwrite("omega_x", &SystemConfig::omega_x)
        .def_readwrite("omega_y", &SystemConfig::omega_y)
        .def_readwrite("pbar_s1", &SystemConfig::pbar_s1)
        .def_readwrite("pbar_s2", &SystemConfig::pbar_s2)
        .def_readwrite("p_avg_relay", &SystemConfig::p_avg_relay)
        .def_property_readonly("delta1", &SystemConfig::delta1)
        .def_property_readonly("delta2", &SystemConfig::delta2);

    py::class_<FpaConfig>(m, "FpaConfig")
        .def(py::init([](double s1, double s2, double r) {
                 FpaConfig f{s1, s2, r};
                 f.validate();
                 return f;
             }),
             py::arg("p_s1_fix"), py::arg("p_s2_fix"), py::arg("p_r_fix"))
        .def_readwrite("p_s1_fix", &FpaConfig::p_s1_fix)
        .def_readwrite("p_s2_fix", &FpaConfig::p_s2_fix)
        .def_readwrite("p_r_fix", &FpaConfig::p_r_fix);

    py::enum_<RegionCase>(m, "RegionCase")
        .value("x_dominant", RegionCase::x_dominant)
        .value("y_dominant", RegionCase::y_dominant);

    py::class_<RelayPolicy>(m, "RelayPolicy")
        .def(py::init([](double d1, double d2, double x0, double y0, double ox, double oy,
                         std::optional<double> rho) {
                 return RelayPolicy::make(d1, d2, x0, y0, ox, oy, cutoff_from(rho));
             }),
             py::arg("delta1"), py::arg("delta2"), py::arg("x0"), py::arg("y0"),
             py::arg("omega_x"), py::arg("omega_y"), py::arg("rho") = py::none())
        .def("with_rho", [](const RelayPolicy& p, std::optional<double> rho) {
            return p.with_rho(cutoff_from(rho));
        }, py::arg("rho"))
        .def_property_readonly("delta1", &RelayPolicy::delta1)
        .def_property_readonly("delta2", &RelayPolicy::delta2)
        .def_property_readonly("x0", &RelayPolicy::x0)
        .def_property_readonly("y0", &RelayPolicy::y0)
        .def_property_readonly("omega_x", &RelayPolicy::omega_x)
        .def_property_readonly("omega_y", &RelayPolicy::omega_y)
        .def_property_readonly("rho", [](const RelayPolicy& p) { return cutoff_to(p.rho()); })
        .def_property_readonly("lambda1", &RelayPolicy::lambda1)
        .def_property_readonly("lambda2", &RelayPolicy::lambda2)
        .def_property_readonly("region", &RelayPolicy::region)
        .def_property_readonly("saturation_rho", &RelayPolicy::saturation_rho)
        .def("power", [](const RelayPolicy& p, double x, double y) {
            return relay_power_optimal(p, ChannelState{x, y});
        }, py::arg("x"), py::arg("y"))
        .def("static_power", [](const RelayPolicy& p, double x, double y) {
            return relay_power_static(p, ChannelState{x, y});
        }, py::arg("x"), py::arg("y"))
        .def("avg_power", &avg_relay_power)
        .def("outage", [](const RelayPolicy& p) { return outage_opa(p).p_out; });

    m.def("max_avg_relay_power", &max_avg_relay_power, py::arg("delta1"), py::arg("delta2"),
          py::arg("x0"), py::arg("y0"), py::arg("omega_x"), py::arg("omega_y"));
    m.def("solve_rho",
          [](double d1, double d2, double x0, double y0, double ox, double oy, double p_avg) {
              return cutoff_to(solve_rho(d1, d2, x0, y0, ox, oy, p_avg));
          },
          py::arg("delta1"), py::arg("delta2"), py::arg("x0"), py::arg("y0"), py::arg("omega_x"),
          py::arg("omega_y"), py::arg("p_avg"));
    m.def("solve_policies", [](const SystemConfig& c) { return solve_policies(c).relay; },
          py::arg("config"), "Relay policy (with both end-node cutoffs) for a configuration.");

    m.def("min_outage", &min_outage, py::arg("x0"), py::arg("y0"), py::arg("omega_x"),
          py::arg("omega_y"));
    m.def("outage_fpa", py::overload_cast<const SystemConfig&, const FpaConfig&>(&outage_fpa),
          py::arg("config"), py::arg("fpa"));

    py::class_<SimReport>(m, "SimReport")
        .def_readonly("trials", &SimReport::trials)
        .def_readonly("outages", &SimReport::outages)
        .def_readonly("outage_rate", &SimReport::outage_rate)
        .def_readonly("avg_power_s1", &SimReport::avg_power_s1)
        .def_readonly("avg_power_s2", &SimReport::avg_power_s2)
        .def_readonly("avg_power_relay", &SimReport::avg_power_relay)
        .def_readonly("binomial_sigma", &SimReport::binomial_sigma)
        .def_readonly("power_sigma_s1", &SimReport::power_sigma_s1)
        .def_readonly("power_sigma_s2", &SimReport::power_sigma_s2)
        .def_readonly("power_sigma_relay", &SimReport::power_sigma_relay)
        .def_readonly("seed", &SimReport::seed)
        .def(py::self == py::self);

    m.def("run_opa",
          [](const SystemConfig& c, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
              py::gil_scoped_release release;
              return run_opa(c, sim_options(trials, seed, workers));
          },
          py::arg("config"), py::arg("trials") = 1'000'000, py::arg("seed") = 1,
          py::arg("workers") = 0);
    m.def("run_fpa",
          [](const SystemConfig& c, const FpaConfig& f, std::uint64_t trials, std::uint64_t seed,
             unsigned workers) {
              py::gil_scoped_release release;
              return run_fpa(c, f, sim_options(trials, seed, workers));
          },
          py::arg("config"), py::arg("fpa"), py::arg("trials") = 1'000'000, py::arg("seed") = 1,
          py::arg("workers") = 0);

    m.def("power_gain", [](double r1, double r2, double ox, double oy, double op) {
        const auto g = power_gain_point(r1, r2, ox, oy, op);
        return py::dict(py::arg("op_target") = g.op_target, py::arg("x0") = g.x0,
                        py::arg("y0") = g.y0, py::arg("gain_s") = g.gain_s,
                        py::arg("gain_r") = g.gain_r);
    }, py::arg("rate_1"), py::arg("rate_2"), py::arg("omega_x"), py::arg("omega_y"),
       py::arg("op_target"));

    auto scenario = [&m](const char* name, ScenarioKind kind, auto&& run) {
        m.def(name,
              [kind, run](std::optional<std::vector<double>> grid, double r1, double r2, double ox,
                          double oy, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
                  const auto spec = make_spec(kind, grid, r1, r2, ox, oy, trials, seed, workers);
                  py::gil_scoped_release release;
                  return run(spec);
              },
              py::arg("grid") = py::none(), py::arg("rate_1") = 1.0 / 3.0,
              py::arg("rate_2") = 1.0 / 3.0, py::arg("omega_x") = 1.0, py::arg("omega_y") = 1.0,
              py::arg("trials") = 1'000'000, py::arg("seed") = 1, py::arg("workers") = 0);
    };
    scenario("sweep_total_power_csv", ScenarioKind::sweep_total_power,
             [](const ScenarioSpec& s) { return to_csv(scenario_total_power(s)); });
    scenario("power_gains_csv", ScenarioKind::power_gains,
             [](const ScenarioSpec& s) { return to_csv(scenario_power_gains(s)); });
    scenario("validate_csv", ScenarioKind::validate, [](const ScenarioSpec& s) {
        const auto result = scenario_validate(s);
        return std::pair{result.passed, to_csv(result.table)};
    });
}
