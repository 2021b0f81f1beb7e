#pragma once

#include <string_view>

#include "thermonet/metrics.hpp"

namespace thermonet {

inline constexpr double kDefaultTheta = 0.2;

/// Name of the edge-score normalization the threshold is calibrated for.
inline constexpr std::string_view kNormalizationName = "ordered-pairs";

enum class Label { BeyondThreshold, WithinThreshold };

std::string_view to_string(Label label) noexcept;

struct Verdict {
    Label label = Label::WithinThreshold;
    double theta = kDefaultTheta;
    double max_score = 0.0;
    int support_above = 0;  ///< edges with score >= theta
};

/// Beyond-threshold iff some edge scores at least theta. theta in (0, 1).
Verdict classify(const EdgeScoreTable& dist, double theta = kDefaultTheta);

struct GroupComparison {
    double ks_statistic = 0.0;  ///< sup |F_a - F_b|
    double theta_gap = 0.0;     ///< max(a) - max(b)
};

GroupComparison compare_groups(const Ecdf& a, const Ecdf& b);

}  // namespace thermonet
