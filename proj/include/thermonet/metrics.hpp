#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "thermonet/netmap.hpp"

namespace thermonet {

using EdgeKey = std::pair<int, int>;

/// Edge betweenness of every stored edge.
///
/// `raw[e]` is the sum over ordered node pairs (s, t), s != t, of the
/// fraction of directed shortest s->t paths that use e. Unreachable pairs
/// contribute nothing. `score[e] = raw[e] / (n (n - 1))` with n the number
/// of occupied nodes, so every score lies in [0, 1].
struct EdgeScoreTable {
    std::map<EdgeKey, double> raw;
    std::map<EdgeKey, double> score;
    int n_nodes = 0;

    std::vector<double> scores() const;
    double max_score() const;
};

/// Brandes-style accumulation with per-edge dependencies; one BFS per source.
EdgeScoreTable edge_betweenness(const QuantileNetwork& g);

/// Shortest-path betweenness of nodes, normalized by (n-1)(n-2); all zeros
/// when n < 3.
std::map<int, double> node_betweenness(const QuantileNetwork& g);

struct Degree {
    int in = 0;
    int out = 0;

    friend bool operator==(const Degree&, const Degree&) = default;
};

std::map<int, Degree> degree_stats(const QuantileNetwork& g);

/// Right-continuous empirical CDF stored as its step points.
class Ecdf {
public:
    /// From a sample multiset (non-empty).
    explicit Ecdf(std::span<const double> samples);

    /// From explicit steps (value ascending, cumulative fraction
    /// non-decreasing and ending at 1), as read back from a CSV.
    static Ecdf from_steps(std::vector<double> values, std::vector<double> cumulative);

    /// Fraction of samples <= x.
    double evaluate(double x) const;

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& cumulative() const noexcept { return cumulative_; }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }

private:
    Ecdf() = default;

    std::vector<double> values_;      // distinct, ascending
    std::vector<double> cumulative_;  // F at each value
};

Ecdf ecdf(std::span<const double> values);

}  // namespace thermonet
