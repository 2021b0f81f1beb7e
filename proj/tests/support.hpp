#pragma once

// Test-only oracles and helpers. Nothing here calls into the code paths it
// is used to check.

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "thermonet/netmap.hpp"

namespace thermonet::testing {

/// Edge betweenness by explicit enumeration of every shortest path between
/// every ordered pair. Distances come from Floyd-Warshall; paths are all
/// walks from s of exactly d(s, t) hops that end at t.
struct BruteForceBetweenness {
    std::map<std::pair<int, int>, double> raw;
    double distance_sum = 0.0;  ///< sum of d(s, t) over reachable pairs
};

inline BruteForceBetweenness brute_force_edge_betweenness(const QuantileNetwork& g) {
    const int n = static_cast<int>(g.nodes.size());
    std::map<int, int> index;
    for (int i = 0; i < n; ++i) index[g.nodes[static_cast<std::size_t>(i)]] = i;
    constexpr int kInf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& e : g.edges) {
        adj[index[e.src]][index[e.dst]] = true;
        d[index[e.src]][index[e.dst]] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];

    BruteForceBetweenness out;
    for (const auto& e : g.edges) out.raw[{e.src, e.dst}] = 0.0;

    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            if (s == t || d[s][t] >= kInf) continue;
            out.distance_sum += d[s][t];
            std::vector<std::vector<int>> paths;
            std::vector<int> path{s};
            // Depth-first over all walks of the target length.
            auto walk = [&](auto&& self, int v) -> void {
                if (static_cast<int>(path.size()) - 1 == d[s][t]) {
                    if (v == t) paths.push_back(path);
                    return;
                }
                for (int w = 0; w < n; ++w) {
                    if (!adj[v][w]) continue;
                    path.push_back(w);
                    self(self, w);
                    path.pop_back();
                }
            };
            walk(walk, s);
            const double share = 1.0 / static_cast<double>(paths.size());
            for (const auto& p : paths) {
                for (std::size_t k = 0; k + 1 < p.size(); ++k) {
                    out.raw[{g.nodes[static_cast<std::size_t>(p[k])],
                             g.nodes[static_cast<std::size_t>(p[k + 1])]}] += share;
                }
            }
        }
    }
    return out;
}

/// Random directed graph on `n` labelled nodes with i.i.d. edge probability.
inline QuantileNetwork random_graph(std::mt19937_64& rng, int n, double p, int q = 20) {
    std::bernoulli_distribution coin(p);
    QuantileNetwork g;
    g.q = q;
    for (int i = 0; i < n; ++i) g.nodes.push_back(i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && coin(rng)) g.edges.push_back({i, j, 1});
    return g;
}

inline QuantileNetwork graph_from_edges(std::vector<int> nodes,
                                        std::vector<std::pair<int, int>> edges) {
    QuantileNetwork g;
    g.nodes = std::move(nodes);
    for (auto [a, b] : edges) g.edges.push_back({a, b, 1});
    std::sort(g.edges.begin(), g.edges.end(), [](const auto& x, const auto& y) {
        return std::pair(x.src, x.dst) < std::pair(y.src, y.dst);
    });
    return g;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    long double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    long double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return static_cast<double>(sab / std::sqrt(saa * sbb));
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("thermonet_" + name + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    std::filesystem::path path_;
};

}  // namespace thermonet::testing
