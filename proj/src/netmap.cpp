#include "thermonet/netmap.hpp"

#include <algorithm>
#include <map>

#include "thermonet/error.hpp"
#include "thermonet/simd/kernels.hpp"

namespace thermonet {

std::pair<double, double> QuantileSpec::bin_range(int bin) const {
    const double low = bin == 0 ? lo : cuts[static_cast<std::size_t>(bin - 1)];
    const double high = bin == bin_count() - 1 ? hi : cuts[static_cast<std::size_t>(bin)];
    return {low, high};
}

QuantileSpec quantile_bounds(const TimeSeries& s, int q) {
    if (q < 2) fail_usage("bad-q", "quantile count must be >= 2");
    const std::size_t n = s.size();
    if (n < static_cast<std::size_t>(q)) {
        fail_usage("too-short", "series of length " + std::to_string(n) + " cannot fill " +
                                    std::to_string(q) + " quantiles");
    }
    std::vector<double> sorted(s.values());
    std::sort(sorted.begin(), sorted.end());

    QuantileSpec spec;
    spec.q = q;
    spec.lo = sorted.front();
    spec.hi = sorted.back();
    const auto uq = static_cast<std::uint64_t>(q);
    for (std::uint64_t k = 1; k < uq; ++k) {
        // Integer position arithmetic keeps exact-rank cases exact.
        const std::uint64_t num = (n - 1) * k;
        const std::uint64_t below = num / uq;
        const double frac = static_cast<double>(num % uq) / static_cast<double>(uq);
        double cut = sorted[below];
        if (frac > 0.0) cut += frac * (sorted[below + 1] - sorted[below]);
        if (spec.cuts.empty() || cut > spec.cuts.back()) spec.cuts.push_back(cut);
    }
    return spec;
}

std::vector<std::uint32_t> assign_symbols(const TimeSeries& s, const QuantileSpec& spec) {
    std::vector<std::uint32_t> symbols(s.size());
    simd::active_kernels().bin_index(s.values(), spec.cuts, symbols);
    return symbols;
}

QuantileNetwork build_network(std::span<const std::uint32_t> symbols, int q) {
    if (q < 2) fail_usage("bad-q", "quantile count must be >= 2");
    if (symbols.empty()) fail_usage("empty-series", "no symbols to map");

    std::vector<bool> occupied(static_cast<std::size_t>(q), false);
    std::map<std::pair<int, int>, std::int64_t> counts;
    for (std::size_t t = 0; t < symbols.size(); ++t) {
        if (symbols[t] >= static_cast<std::uint32_t>(q)) {
            fail_usage("symbol-out-of-range", "symbol " + std::to_string(symbols[t]) +
                                                  " at index " + std::to_string(t) +
                                                  " is outside [0, " + std::to_string(q) + ")");
        }
        occupied[symbols[t]] = true;
        if (t + 1 < symbols.size() && symbols[t] != symbols[t + 1]) {
            ++counts[{static_cast<int>(symbols[t]), static_cast<int>(symbols[t + 1])}];
        }
    }

    QuantileNetwork net;
    net.q = q;
    for (int b = 0; b < q; ++b) {
        if (occupied[static_cast<std::size_t>(b)]) net.nodes.push_back(b);
    }
    net.edges.reserve(counts.size());
    for (const auto& [edge, count] : counts) net.edges.push_back({edge.first, edge.second, count});
    return net;
}

QuantileNetwork build_network(std::span<const std::uint32_t> symbols, const QuantileSpec& spec) {
    QuantileNetwork net = build_network(symbols, spec.q);
    for (int node : net.nodes) {
        if (node >= spec.bin_count()) {
            fail_usage("symbol-out-of-range", "symbol exceeds the quantile bin count");
        }
        const auto [lo, hi] = spec.bin_range(node);
        net.ranges.push_back({node, lo, hi});
    }
    return net;
}

QuantileNetwork map_series(const TimeSeries& s, int q) {
    const QuantileSpec spec = quantile_bounds(s, q);
    return build_network(assign_symbols(s, spec), spec);
}

}  // namespace thermonet
