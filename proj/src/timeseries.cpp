#include "thermonet/timeseries.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "thermonet/error.hpp"

namespace thermonet {

namespace {

constexpr std::array<std::pair<Stage, std::string_view>, 6> kStageNames{{
    {Stage::RawMean, "raw-mean"},
    {Stage::Pc1, "pc1"},
    {Stage::Baselined, "baselined"},
    {Stage::Detrended, "detrended"},
    {Stage::Normalized, "normalized"},
    {Stage::Pooled, "pooled"},
}};

}  // namespace

std::string_view to_string(Stage stage) noexcept {
    for (const auto& [s, name] : kStageNames) {
        if (s == stage) return name;
    }
    return "unknown";
}

Stage stage_from_string(std::string_view text) {
    for (const auto& [s, name] : kStageNames) {
        if (name == text) return s;
    }
    fail_usage("bad-stage", "unknown series stage '" + std::string(text) + "'");
}

TimeSeries::TimeSeries(std::vector<double> values, double dt, std::string label, Stage stage)
    : values_(std::move(values)), dt_(dt), label_(std::move(label)), stage_(stage) {
    if (values_.empty()) fail_usage("empty-series", "time series must hold at least one sample");
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        fail_usage("bad-dt", "sample interval must be positive and finite");
    }
}

TimeSeries TimeSeries::advance(std::vector<double> values, Stage next) const {
    // RawMean and Pc1 are sibling entry points, so compare against the
    // later of the two.
    const auto rank = [](Stage s) {
        return s == Stage::RawMean ? static_cast<int>(Stage::Pc1) : static_cast<int>(s);
    };
    if (rank(next) <= rank(stage_)) {
        fail_internal("stage-order", "cannot move series from " + std::string(to_string(stage_)) +
                                         " to " + std::string(to_string(next)));
    }
    return TimeSeries(std::move(values), dt_, label_, next);
}

}  // namespace thermonet
