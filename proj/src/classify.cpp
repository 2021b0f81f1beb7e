#include "thermonet/classify.hpp"

#include <algorithm>
#include <cmath>

#include "thermonet/error.hpp"

namespace thermonet {

std::string_view to_string(Label label) noexcept {
    return label == Label::BeyondThreshold ? "beyond-threshold" : "within-threshold";
}

Verdict classify(const EdgeScoreTable& dist, double theta) {
    if (dist.score.empty()) fail_usage("empty-distribution", "no edge scores to classify");
    if (!(theta > 0.0 && theta < 1.0)) fail_usage("bad-theta", "theta must lie in (0, 1)");
    Verdict v;
    v.theta = theta;
    v.max_score = dist.max_score();
    for (const auto& [edge, score] : dist.score) {
        if (score >= theta) ++v.support_above;
    }
    v.label = v.support_above > 0 ? Label::BeyondThreshold : Label::WithinThreshold;
    return v;
}

GroupComparison compare_groups(const Ecdf& a, const Ecdf& b) {
    // Both step functions are constant between merged support points, so the
    // supremum is attained at one of them.
    GroupComparison out;
    for (double x : a.values()) out.ks_statistic = std::max(out.ks_statistic, std::fabs(a.evaluate(x) - b.evaluate(x)));
    for (double x : b.values()) out.ks_statistic = std::max(out.ks_statistic, std::fabs(a.evaluate(x) - b.evaluate(x)));
    out.theta_gap = a.max() - b.max();
    return out;
}

}  // namespace thermonet
