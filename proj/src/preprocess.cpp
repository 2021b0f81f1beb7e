#include "thermonet/preprocess.hpp"

#include <cmath>

#include "thermonet/error.hpp"
#include "thermonet/simd/kernels.hpp"

namespace thermonet {

TimeSeries baseline(const TimeSeries& s) {
    if (s.stage() != Stage::RawMean && s.stage() != Stage::Pc1) {
        fail_usage("wrong-stage", "baseline expects a raw-mean or pc1 series, got " +
                                      std::string(to_string(s.stage())));
    }
    std::vector<double> out(s.values());
    const double origin = out.front();
    for (double& v : out) v -= origin;
    return s.advance(std::move(out), Stage::Baselined);
}

std::pair<TimeSeries, DetrendReport> detrend_linear(const TimeSeries& s) {
    const auto& y = s.values();
    const std::size_t n = y.size();
    if (n < 2) fail_usage("too-short", "detrending needs at least two samples");
    if (static_cast<int>(s.stage()) >= static_cast<int>(Stage::Detrended)) {
        fail_usage("wrong-stage", "series is already " + std::string(to_string(s.stage())));
    }

    const auto& k = simd::active_kernels();
    const double nd = static_cast<double>(n);
    const double y_mean = k.sum(y) / nd;
    const double t_mean = (nd - 1.0) / 2.0;
    // sum (t - t_mean)(y - y_mean) = sum t (y - y_mean); sum (t - t_mean)^2 = n(n^2-1)/12.
    const double sxy = k.index_weighted_sum(y, y_mean);
    const double sxx = nd * (nd * nd - 1.0) / 12.0;

    DetrendReport report;
    report.slope = sxy / sxx;
    report.intercept = y_mean - report.slope * t_mean;

    std::vector<double> residuals(n);
    k.affine_residuals(y, report.slope, report.intercept, residuals);
    report.residual_mean = k.sum(residuals) / nd;
    return {s.advance(std::move(residuals), Stage::Detrended), report};
}

TimeSeries normalize(const TimeSeries& s, double scale) {
    if (s.stage() != Stage::Detrended) {
        fail_usage("wrong-stage", "normalize expects a detrended series, got " +
                                      std::string(to_string(s.stage())));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        fail_usage("bad-scale", "normalization scale must be positive and finite");
    }
    std::vector<double> out(s.size());
    simd::active_kernels().divide(s.values(), scale, out);
    return s.advance(std::move(out), Stage::Normalized);
}

double amplitude_scale(const TimeSeries& baselined, const TimeSeries& residuals) {
    constexpr double kFloor = 1e-12;
    const auto& k = simd::active_kernels();
    const double mean_abs = k.sum_abs(baselined.values()) / static_cast<double>(baselined.size());
    if (mean_abs > kFloor) return mean_abs;

    const auto& r = residuals.values();
    const double r_mean = k.sum(r) / static_cast<double>(r.size());
    double ss = 0.0;
    for (double v : r) ss += (v - r_mean) * (v - r_mean);
    const double sd = std::sqrt(ss / static_cast<double>(r.size()));
    if (sd > kFloor) return sd;
    return 1.0;
}

TimeSeries pool(std::span<const TimeSeries> series) {
    if (series.empty()) fail_usage("empty-pool", "pool needs at least one series");
    const double dt = series.front().dt();
    std::vector<double> values;
    std::string label;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        if (s.stage() != Stage::Normalized) {
            fail_usage("wrong-stage", "pool member " + std::to_string(i) + " is " +
                                          std::string(to_string(s.stage())) + ", not normalized");
        }
        if (s.dt() != dt) {
            fail_usage("mixed-dt", "pool member " + std::to_string(i) + " has a different dt");
        }
        values.insert(values.end(), s.values().begin(), s.values().end());
        if (i > 0) label += '+';
        label += s.label();
    }
    return TimeSeries(std::move(values), dt, std::move(label), Stage::Pooled);
}

TimeSeries prepare_for_pooling(const TimeSeries& reduced) {
    const TimeSeries shifted = baseline(reduced);
    auto [residuals, fit] = detrend_linear(shifted);
    (void)fit;
    return normalize(residuals, amplitude_scale(shifted, residuals));
}

}  // namespace thermonet
