#include "tworelay/system_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tworelay {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite, got " +
                                    std::to_string(value));
    }
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double delta_of_rate(double rate, int phases) {
    if (!std::isfinite(rate) || rate <= 0.0) {
        throw std::domain_error("delta_of_rate: rate must be positive, got " + std::to_string(rate));
    }
    if (phases < 1) throw std::domain_error("delta_of_rate: phases must be >= 1");
    const double exponent = phases * rate;
    // exp2 is exact at integer exponents; expm1 keeps precision as rate -> 0.
    return exponent < 0.5 ? std::expm1(exponent * std::numbers::ln2) : std::exp2(exponent) - 1.0;
}

void SystemConfig::validate() const {
    require_positive(rate_1, "rate_1");
    require_positive(rate_2, "rate_2");
    require_positive(omega_x, "omega_x");
    require_positive(omega_y, "omega_y");
    require_positive(pbar_s1, "pbar_s1");
    require_positive(pbar_s2, "pbar_s2");
    require_positive(p_avg_relay, "p_avg_relay");
}

void ChannelState::validate() const {
    if (!(std::isfinite(x) && std::isfinite(y) && x >= 0.0 && y >= 0.0)) {
        throw std::invalid_argument("ChannelState: gains must be finite and non-negative");
    }
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream_index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream_index + 0x632be59bd9b4e019ULL));
}

FadingSampler::FadingSampler(std::uint64_t seed, std::uint64_t stream_index, double omega_x,
                             double omega_y)
    : seed_(seed),
      stream_index_(stream_index),
      omega_x_(omega_x),
      omega_y_(omega_y),
      engine_(substream_seed(seed, stream_index)) {
    require_positive(omega_x, "omega_x");
    require_positive(omega_y, "omega_y");
}

double FadingSampler::next_uniform() {
    // 53 random bits mapped onto {1, ..., 2^53} / 2^53, i.e. (0, 1].
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

ChannelState FadingSampler::next() {
    const double ux = next_uniform();
    const double uy = next_uniform();
    return {-omega_x_ * std::log(ux), -omega_y_ * std::log(uy)};
}

ChannelState sample_state(FadingSampler& sampler) { return sampler.next(); }

}  // namespace tworelay
