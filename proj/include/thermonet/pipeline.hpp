#pragma once

#include <optional>
#include <span>
#include <vector>

#include "thermonet/classify.hpp"
#include "thermonet/metrics.hpp"
#include "thermonet/netmap.hpp"
#include "thermonet/timeseries.hpp"

namespace thermonet {

enum class Reducer { Mean, Pc1 };

enum class NormalizeMode {
    Amplitude,  ///< see amplitude_scale()
    None,       ///< scale 1
};

struct PipelineConfig {
    int q = kDefaultQuantiles;
    double theta = kDefaultTheta;
    Reducer reducer = Reducer::Mean;
    NormalizeMode normalize_mode = NormalizeMode::Amplitude;
};

/// Every intermediate product of one pipeline run.
struct PipelineResult {
    std::vector<TimeSeries> prepared;  ///< normalized residuals, input order
    TimeSeries pooled;
    QuantileSpec spec;
    std::vector<std::uint32_t> symbols;
    QuantileNetwork network;
    EdgeScoreTable scores;
    Ecdf distribution;
    Verdict verdict;
};

/// Detrends and normalizes each reduced series on its own, pools them in
/// order, maps the pool to a quantile network and classifies its edge
/// betweenness distribution.
PipelineResult run_pipeline(std::span<const TimeSeries> reduced, const PipelineConfig& config);

}  // namespace thermonet
