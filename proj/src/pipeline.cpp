#include "thermonet/pipeline.hpp"

#include "thermonet/error.hpp"
#include "thermonet/preprocess.hpp"

namespace thermonet {

namespace {

TimeSeries prepare(const TimeSeries& reduced, NormalizeMode mode) {
    if (mode == NormalizeMode::Amplitude) return prepare_for_pooling(reduced);
    auto [residuals, fit] = detrend_linear(baseline(reduced));
    (void)fit;
    return normalize(residuals, 1.0);
}

}  // namespace

PipelineResult run_pipeline(std::span<const TimeSeries> reduced, const PipelineConfig& config) {
    if (reduced.empty()) fail_usage("no-input", "pipeline needs at least one series");

    std::vector<TimeSeries> prepared;
    prepared.reserve(reduced.size());
    for (const auto& s : reduced) prepared.push_back(prepare(s, config.normalize_mode));

    TimeSeries pooled = pool(prepared);
    QuantileSpec spec = quantile_bounds(pooled, config.q);
    std::vector<std::uint32_t> symbols = assign_symbols(pooled, spec);
    QuantileNetwork network = build_network(symbols, spec);
    EdgeScoreTable scores = edge_betweenness(network);
    const std::vector<double> values = scores.scores();
    Ecdf distribution(values);
    const Verdict verdict = classify(scores, config.theta);

    return PipelineResult{std::move(prepared), std::move(pooled), std::move(spec),
                          std::move(symbols),  std::move(network), std::move(scores),
                          std::move(distribution), verdict};
}

}  // namespace thermonet
