#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace thermonet {

/// Processing stage of a series. Stages only advance in declaration order.
enum class Stage {
    RawMean,
    Pc1,
    Baselined,
    Detrended,
    Normalized,
    Pooled,
};

std::string_view to_string(Stage stage) noexcept;
Stage stage_from_string(std::string_view text);

/// Uniformly sampled scalar series with provenance.
///
/// Holds the per-frame temperature proxy straight out of a reducer and every
/// later pipeline product. Construction validates that the series is
/// non-empty and that `dt` is positive and finite.
class TimeSeries {
public:
    TimeSeries(std::vector<double> values, double dt, std::string label, Stage stage);

    const std::vector<double>& values() const noexcept { return values_; }
    double dt() const noexcept { return dt_; }
    const std::string& label() const noexcept { return label_; }
    Stage stage() const noexcept { return stage_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Same provenance, new values and stage. Rejects backward stage moves.
    TimeSeries advance(std::vector<double> values, Stage next) const;

private:
    std::vector<double> values_;
    double dt_;
    std::string label_;
    Stage stage_;
};

}  // namespace thermonet
