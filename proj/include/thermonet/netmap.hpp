#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "thermonet/timeseries.hpp"

namespace thermonet {

inline constexpr int kDefaultQuantiles = 20;

/// Equiprobable value bins of a series.
///
/// `cuts` holds the distinct k/q empirical quantiles (k = 1..q-1) in
/// ascending order. Coincident quantiles are collapsed, so `cuts.size()`
/// can be smaller than q - 1; bins then merge. `lo`/`hi` are the source
/// series' extremes and close the outermost bins.
struct QuantileSpec {
    int q = kDefaultQuantiles;
    std::vector<double> cuts;
    double lo = 0.0;
    double hi = 0.0;

    int bin_count() const noexcept { return static_cast<int>(cuts.size()) + 1; }
    /// Value interval [low, high) covered by a bin.
    std::pair<double, double> bin_range(int bin) const;
};

struct Transition {
    int src = 0;
    int dst = 0;
    std::int64_t count = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct BinRange {
    int bin = 0;
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const BinRange&, const BinRange&) = default;
};

/// Directed transition network between occupied bins. Self-transitions are
/// not stored. `count` keeps how often a transition was seen, for export
/// only; every metric treats the graph as unweighted.
struct QuantileNetwork {
    int q = kDefaultQuantiles;
    std::vector<int> nodes;          ///< ascending
    std::vector<Transition> edges;   ///< ascending by (src, dst)
    std::vector<BinRange> ranges;    ///< one per node when known, else empty

    friend bool operator==(const QuantileNetwork&, const QuantileNetwork&) = default;
};

/// Linear-interpolation quantiles at zero-based position (n-1)*k/q.
QuantileSpec quantile_bounds(const TimeSeries& s, int q);

/// Bin index per sample: the number of cuts <= value. Ties go up.
std::vector<std::uint32_t> assign_symbols(const TimeSeries& s, const QuantileSpec& spec);

QuantileNetwork build_network(std::span<const std::uint32_t> symbols, int q);
QuantileNetwork build_network(std::span<const std::uint32_t> symbols, const QuantileSpec& spec);

/// quantile_bounds -> assign_symbols -> build_network.
QuantileNetwork map_series(const TimeSeries& s, int q);

}  // namespace thermonet
