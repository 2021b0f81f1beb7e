#pragma once

#include <span>

#include "thermonet/timeseries.hpp"

namespace thermonet {

/// Least-squares line y = slope * t + intercept over sample index t.
struct DetrendReport {
    double slope = 0.0;  ///< value per sample
    double intercept = 0.0;
    double residual_mean = 0.0;
};

/// Shifts the series so its first sample is exactly zero.
TimeSeries baseline(const TimeSeries& s);

/// Removes the ordinary least-squares line fitted against the integer
/// sample index 0..n-1. Requires at least two samples.
std::pair<TimeSeries, DetrendReport> detrend_linear(const TimeSeries& s);

/// Divides a detrended series by `scale` (> 0, finite).
TimeSeries normalize(const TimeSeries& s, double scale);

/// Scale used by the pipeline driver: mean |value| of the baselined series
/// when that exceeds 1e-12, else the residual standard deviation when that
/// exceeds 1e-12, else 1.
double amplitude_scale(const TimeSeries& baselined, const TimeSeries& residuals);

/// Concatenates normalized series in order. All must share dt.
TimeSeries pool(std::span<const TimeSeries> series);

/// baseline -> detrend -> normalize for a single reduced series.
TimeSeries prepare_for_pooling(const TimeSeries& reduced);

}  // namespace thermonet
