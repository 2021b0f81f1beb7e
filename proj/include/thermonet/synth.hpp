#pragma once

#include <cstdint>
#include <limits>

#include "thermonet/ingest.hpp"
#include "thermonet/timeseries.hpp"

namespace thermonet {

/// SplitMix64: a 64-bit counter-based generator (state advances by the
/// golden-ratio increment, output is a fixed bit mixer of the state).
/// Bit-identical on every platform; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal by the Marsaglia polar method. The spare deviate is
    /// discarded so each call consumes whole rejection rounds only.
    double normal() noexcept;

private:
    std::uint64_t state_;
};

enum class Regime { Smooth, Jumpy };

struct RegimeParams {
    Regime kind = Regime::Smooth;
    std::size_t n = 2000;
    double phi = 0.9;
    double sigma = 1.0;
    double jump_prob = 0.05;
    double jump_scale = 8.0;  ///< jump magnitude in units of sigma
    std::uint64_t seed = 42;
    double dt = 1.0 / 9.0;
};

/// Throws on out-of-range parameters.
void validate(const RegimeParams& p);

/// AR(1) series x[t] = phi x[t-1] + sigma e[t] with x[-1] = 0. The jumpy
/// regime adds, with probability jump_prob per step, a jump of
/// +-jump_scale*sigma. Jumps draw from a stream separate from the
/// innovations, so jump_prob = 0 reproduces the smooth series exactly.
TimeSeries gen_series(const RegimeParams& p);

struct VideoParams {
    int width = 16;
    int height = 12;
    double fps = 9.0;
    std::uint64_t pattern_seed = 1;
    double base = 20000.0;
    double noise_sigma = 0.0;
};

/// frame_t = round(clip(base + signal[t] * P + noise, 0, 65535)) with P a
/// fixed pattern in [0.5, 1.5) drawn from pattern_seed and i.i.d. Gaussian
/// pixel noise of scale noise_sigma.
FrameSequence gen_video(std::size_t n_frames, const VideoParams& p, const TimeSeries& signal);

}  // namespace thermonet
