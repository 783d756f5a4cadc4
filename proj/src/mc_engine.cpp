#include "tworelay/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace tworelay {

namespace {

struct ChunkTotals {
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    double sum_s1 = 0.0;
    double sum_s2 = 0.0;
    double sum_relay = 0.0;
    double sq_s1 = 0.0;
    double sq_s2 = 0.0;
    double sq_relay = 0.0;
};

// One cycle's outcome.
struct CycleOutcome {
    bool outage;
    double p_s1;
    double p_s2;
    double p_relay;
};

void validate_options(const SimOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("simulation: trials must be >= 1");
    if (options.chunk_size < 1) throw std::invalid_argument("simulation: chunk_size must be >= 1");
}

template <typename Cycle>
SimReport simulate(const SimOptions& options, double omega_x, double omega_y, PolicyKind kind,
                   Cycle&& cycle) {
    validate_options(options);
    const std::uint64_t n_chunks = (options.trials + options.chunk_size - 1) / options.chunk_size;
    std::vector<ChunkTotals> totals(n_chunks);

    auto run_chunk = [&](std::uint64_t chunk) {
        const std::uint64_t begin = chunk * options.chunk_size;
        const std::uint64_t end = std::min(options.trials, begin + options.chunk_size);
        FadingSampler sampler(options.seed, chunk, omega_x, omega_y);
        ChunkTotals t;
        for (std::uint64_t i = begin; i < end; ++i) {
            const CycleOutcome o = cycle(sampler.next());
            ++t.trials;
            t.outages += o.outage ? 1 : 0;
            t.sum_s1 += o.p_s1;
            t.sum_s2 += o.p_s2;
            t.sum_relay += o.p_relay;
            t.sq_s1 += o.p_s1 * o.p_s1;
            t.sq_s2 += o.p_s2 * o.p_s2;
            t.sq_relay += o.p_relay * o.p_relay;
        }
        totals[chunk] = t;
    };

    unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
    workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, n_chunks));
    if (workers == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < n_chunks; c = next++) run_chunk(c);
            });
        }
    }

    // Reduce in chunk order so the result is independent of scheduling.
    ChunkTotals sum;
    for (const ChunkTotals& t : totals) {
        sum.trials += t.trials;
        sum.outages += t.outages;
        sum.sum_s1 += t.sum_s1;
        sum.sum_s2 += t.sum_s2;
        sum.sum_relay += t.sum_relay;
        sum.sq_s1 += t.sq_s1;
        sum.sq_s2 += t.sq_s2;
        sum.sq_relay += t.sq_relay;
    }

    const double n = static_cast<double>(sum.trials);
    auto std_error = [n](double s, double sq) {
        const double mean = s / n;
        const double var = std::max(0.0, sq / n - mean * mean);
        return std::sqrt(var / n);
    };
    SimReport r;
    r.trials = sum.trials;
    r.outages = sum.outages;
    r.outage_rate = static_cast<double>(sum.outages) / n;
    r.avg_power_s1 = sum.sum_s1 / n;
    r.avg_power_s2 = sum.sum_s2 / n;
    r.avg_power_relay = sum.sum_relay / n;
    r.binomial_sigma = std::sqrt(r.outage_rate * (1.0 - r.outage_rate) / n);
    r.power_sigma_s1 = std_error(sum.sum_s1, sum.sq_s1);
    r.power_sigma_s2 = std_error(sum.sum_s2, sum.sq_s2);
    r.power_sigma_relay = std_error(sum.sum_relay, sum.sq_relay);
    r.seed = options.seed;
    r.policy_kind = kind;
    return r;
}

}  // namespace

SimReport run_opa(const SystemConfig& config, const SimOptions& options) {
    validate_options(options);
    return run_opa(solve_policies(config), options);
}

SimReport run_opa(const OpaPolicies& policies, const SimOptions& options) {
    const auto& relay = policies.relay;
    return simulate(options, relay.omega_x(), relay.omega_y(), PolicyKind::opa,
                    [&](const ChannelState& state) {
                        const double p_relay = relay_power_optimal(relay, state);
                        // The relay transmits only when it decoded both codewords and the
                        // broadcast stays within rho; otherwise some session is lost.
                        return CycleOutcome{p_relay == 0.0, endnode_power(policies.s1, state.x),
                                            endnode_power(policies.s2, state.y), p_relay};
                    });
}

SimReport run_fpa(double delta1, double delta2, double omega_x, double omega_y, const FpaConfig& fpa,
                  const SimOptions& options) {
    fpa.validate();
    // Capacity (1/3) log2(1 + P g) >= R  <=>  g >= delta / P.
    const double x_s1 = delta1 / fpa.p_s1_fix;
    const double y_s2 = delta2 / fpa.p_s2_fix;
    const double y_r = delta1 / fpa.p_r_fix;
    const double x_r = delta2 / fpa.p_r_fix;
    SimReport r = simulate(options, omega_x, omega_y, PolicyKind::fpa, [&](const ChannelState& s) {
        const bool outage = s.x < x_s1 || s.y < y_s2 || s.y < y_r || s.x < x_r;
        return CycleOutcome{outage, 0.0, 0.0, 0.0};
    });
    // Every node spends its fixed power in every cycle.
    r.avg_power_s1 = fpa.p_s1_fix;
    r.avg_power_s2 = fpa.p_s2_fix;
    r.avg_power_relay = fpa.p_r_fix;
    return r;
}

SimReport run_fpa(const SystemConfig& config, const FpaConfig& fpa, const SimOptions& options) {
    return run_fpa(config.delta1(), config.delta2(), config.omega_x, config.omega_y, fpa, options);
}

}  // namespace tworelay
