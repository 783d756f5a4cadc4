#pragma once

#include <cstdint>
#include <random>

namespace tworelay {

/// Number of phases in one transmission cycle (S1 -> R, S2 -> R, R broadcast).
inline constexpr int kPhases = 3;

/// SNR threshold 2^(phases * rate) - 1 needed to carry `rate` bits per use with a 1/phases pre-log.
double delta_of_rate(double rate, int phases = kPhases);

/// One problem instance. Powers are linear and normalized to unit noise variance.
struct SystemConfig {
    double rate_1 = 1.0 / 3.0;  ///< S1 -> S2 session rate, bits per channel use
    double rate_2 = 1.0 / 3.0;  ///< S2 -> S1 session rate
    double omega_x = 1.0;       ///< mean squared S1-R amplitude
    double omega_y = 1.0;       ///< mean squared S2-R amplitude
    double pbar_s1 = 1.0;       ///< average power budget of S1
    double pbar_s2 = 1.0;       ///< average power budget of S2
    double p_avg_relay = 1.0;   ///< average power budget of the relay

    /// Throws std::invalid_argument unless every field is positive and finite.
    void validate() const;

    [[nodiscard]] double delta1() const { return delta_of_rate(rate_1); }
    [[nodiscard]] double delta2() const { return delta_of_rate(rate_2); }
};

/// Squared channel amplitudes (x for S1-R, y for S2-R) of one fading block.
struct ChannelState {
    double x = 0.0;
    double y = 0.0;

    void validate() const;
};

/// Mixes a seed and a stream index into an independent 64-bit generator seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream_index);

/// Rayleigh block-fading source: x ~ Exp(omega_x), y ~ Exp(omega_y), independent.
///
/// Draws use the inverse CDF x = -omega * ln(u) with u in (0, 1], so the same
/// (seed, stream_index) reproduces the same uniforms whatever the means are.
/// Single owner; give every parallel worker its own sampler.
class FadingSampler {
public:
    FadingSampler(std::uint64_t seed, std::uint64_t stream_index, double omega_x, double omega_y);

    ChannelState next();

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }
    [[nodiscard]] double omega_x() const noexcept { return omega_x_; }
    [[nodiscard]] double omega_y() const noexcept { return omega_y_; }

private:
    double next_uniform();

    std::uint64_t seed_;
    std::uint64_t stream_index_;
    double omega_x_;
    double omega_y_;
    std::mt19937_64 engine_;
};

ChannelState sample_state(FadingSampler& sampler);

}  // namespace tworelay
