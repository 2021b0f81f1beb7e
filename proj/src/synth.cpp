#include "thermonet/synth.hpp"

#include <algorithm>
#include <cmath>

#include "thermonet/error.hpp"

namespace thermonet {

namespace {

// Derives an independent stream seed from a user seed.
std::uint64_t substream(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 mix(seed ^ (salt * 0xd1b54a32d192ed03ULL));
    return mix();
}

}  // namespace

double SplitMix64::normal() noexcept {
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

void validate(const RegimeParams& p) {
    if (p.n < 1) fail_usage("bad-params", "series length must be >= 1");
    if (!(p.phi > -1.0 && p.phi < 1.0)) fail_usage("bad-params", "phi must lie in (-1, 1)");
    if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) fail_usage("bad-params", "sigma must be >= 0");
    if (!(p.dt > 0.0) || !std::isfinite(p.dt)) fail_usage("bad-params", "dt must be positive");
    if (p.kind == Regime::Jumpy) {
        if (!(p.jump_prob >= 0.0 && p.jump_prob < 1.0)) {
            fail_usage("bad-params", "jump_prob must lie in [0, 1)");
        }
        if (!(p.jump_scale >= 0.0) || !std::isfinite(p.jump_scale)) {
            fail_usage("bad-params", "jump_scale must be >= 0");
        }
    }
}

TimeSeries gen_series(const RegimeParams& p) {
    validate(p);
    SplitMix64 innovations(substream(p.seed, 1));
    SplitMix64 jumps(substream(p.seed, 2));
    const double jump = p.jump_scale * p.sigma;

    std::vector<double> x(p.n);
    double prev = 0.0;
    for (std::size_t t = 0; t < p.n; ++t) {
        double next = p.phi * prev + p.sigma * innovations.normal();
        if (p.kind == Regime::Jumpy) {
            const double hit = jumps.uniform();
            const double sign = jumps.uniform() < 0.5 ? -1.0 : 1.0;
            if (hit < p.jump_prob) next += sign * jump;
        }
        x[t] = next;
        prev = next;
    }
    const char* tag = p.kind == Regime::Smooth ? "smooth-" : "jumpy-";
    return TimeSeries(std::move(x), p.dt, tag + std::to_string(p.seed), Stage::RawMean);
}

FrameSequence gen_video(std::size_t n_frames, const VideoParams& p, const TimeSeries& signal) {
    if (signal.size() != n_frames) {
        fail_usage("dimension-mismatch", "signal has " + std::to_string(signal.size()) +
                                             " samples for " + std::to_string(n_frames) +
                                             " frames");
    }
    if (p.width < 1 || p.height < 1) fail_usage("bad-geometry", "frame size must be >= 1x1");
    if (!(p.noise_sigma >= 0.0)) fail_usage("bad-params", "noise_sigma must be >= 0");

    const std::size_t ppf = static_cast<std::size_t>(p.width) * p.height;
    SplitMix64 pattern_rng(substream(p.pattern_seed, 3));
    std::vector<double> pattern(ppf);
    for (double& v : pattern) v = 0.5 + pattern_rng.uniform();

    SplitMix64 noise_rng(substream(p.pattern_seed, 4));
    std::vector<std::vector<std::uint16_t>> frames(n_frames, std::vector<std::uint16_t>(ppf));
    for (std::size_t t = 0; t < n_frames; ++t) {
        for (std::size_t i = 0; i < ppf; ++i) {
            double v = p.base + signal.values()[t] * pattern[i];
            if (p.noise_sigma > 0.0) v += p.noise_sigma * noise_rng.normal();
            frames[t][i] = static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 65535.0)));
        }
    }
    return FrameSequence(std::move(frames), p.width, p.height, p.fps,
                         "synthetic-" + std::to_string(p.pattern_seed));
}

}  // namespace thermonet
