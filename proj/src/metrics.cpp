#include "thermonet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "thermonet/error.hpp"

namespace thermonet {

namespace {

// Dense adjacency over node positions 0..n-1 in ascending bin order.
struct CompactGraph {
    std::vector<int> bins;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<std::size_t>> out_edge;  // index into g.edges
};

CompactGraph compact(const QuantileNetwork& g) {
    CompactGraph cg;
    cg.bins = g.nodes;
    cg.out.resize(cg.bins.size());
    cg.out_edge.resize(cg.bins.size());
    const auto position = [&](int bin) {
        const auto it = std::lower_bound(cg.bins.begin(), cg.bins.end(), bin);
        if (it == cg.bins.end() || *it != bin) {
            fail_internal("dangling-edge", "edge endpoint " + std::to_string(bin) +
                                               " is not an occupied node");
        }
        return static_cast<int>(it - cg.bins.begin());
    };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const int s = position(g.edges[e].src);
        const int d = position(g.edges[e].dst);
        cg.out[static_cast<std::size_t>(s)].push_back(d);
        cg.out_edge[static_cast<std::size_t>(s)].push_back(e);
    }
    return cg;
}

// Single-source shortest-path DAG by BFS: distances, path counts, BFS order.
struct ShortestPathDag {
    std::vector<int> order;
    std::vector<double> sigma;
    std::vector<int> dist;
};

void bfs(const CompactGraph& cg, int source, ShortestPathDag& dag) {
    const std::size_t n = cg.bins.size();
    dag.order.clear();
    dag.sigma.assign(n, 0.0);
    dag.dist.assign(n, -1);
    dag.sigma[static_cast<std::size_t>(source)] = 1.0;
    dag.dist[static_cast<std::size_t>(source)] = 0;
    dag.order.push_back(source);
    for (std::size_t head = 0; head < dag.order.size(); ++head) {
        const auto v = static_cast<std::size_t>(dag.order[head]);
        for (int w : cg.out[v]) {
            const auto wi = static_cast<std::size_t>(w);
            if (dag.dist[wi] < 0) {
                dag.dist[wi] = dag.dist[v] + 1;
                dag.order.push_back(w);
            }
            if (dag.dist[wi] == dag.dist[v] + 1) dag.sigma[wi] += dag.sigma[v];
        }
    }
}

}  // namespace

std::vector<double> EdgeScoreTable::scores() const {
    std::vector<double> out;
    out.reserve(score.size());
    for (const auto& [edge, value] : score) out.push_back(value);
    return out;
}

double EdgeScoreTable::max_score() const {
    double best = 0.0;
    for (const auto& [edge, value] : score) best = std::max(best, value);
    return best;
}

EdgeScoreTable edge_betweenness(const QuantileNetwork& g) {
    if (g.edges.empty()) fail_data("no-edges", "network has no edges; betweenness is undefined");
    const CompactGraph cg = compact(g);
    const std::size_t n = cg.bins.size();

    // Sources run in ascending order and add into the same accumulator, so
    // the floating-point reduction order is fixed.
    std::vector<double> raw(g.edges.size(), 0.0);
    std::vector<double> delta(n);
    ShortestPathDag dag;
    for (std::size_t s = 0; s < n; ++s) {
        bfs(cg, static_cast<int>(s), dag);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
            const auto v = static_cast<std::size_t>(*it);
            for (std::size_t k = 0; k < cg.out[v].size(); ++k) {
                const auto w = static_cast<std::size_t>(cg.out[v][k]);
                if (dag.dist[w] != dag.dist[v] + 1) continue;
                const double c = dag.sigma[v] / dag.sigma[w] * (1.0 + delta[w]);
                raw[cg.out_edge[v][k]] += c;
                delta[v] += c;
            }
        }
    }

    EdgeScoreTable table;
    table.n_nodes = static_cast<int>(n);
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const EdgeKey key{g.edges[e].src, g.edges[e].dst};
        table.raw[key] = raw[e];
        table.score[key] = raw[e] / pairs;
    }
    return table;
}

std::map<int, double> node_betweenness(const QuantileNetwork& g) {
    std::map<int, double> result;
    for (int bin : g.nodes) result[bin] = 0.0;
    const std::size_t n = g.nodes.size();
    if (n < 3) return result;

    const CompactGraph cg = compact(g);
    std::vector<double> centrality(n, 0.0);
    std::vector<double> delta(n);
    ShortestPathDag dag;
    for (std::size_t s = 0; s < n; ++s) {
        bfs(cg, static_cast<int>(s), dag);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
            const auto v = static_cast<std::size_t>(*it);
            for (int w_ : cg.out[v]) {
                const auto w = static_cast<std::size_t>(w_);
                if (dag.dist[w] != dag.dist[v] + 1) continue;
                delta[v] += dag.sigma[v] / dag.sigma[w] * (1.0 + delta[w]);
            }
            if (v != s) centrality[v] += delta[v];
        }
    }
    const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (std::size_t i = 0; i < n; ++i) result[cg.bins[i]] = centrality[i] / norm;
    return result;
}

std::map<int, Degree> degree_stats(const QuantileNetwork& g) {
    std::map<int, Degree> result;
    for (int bin : g.nodes) result[bin] = {};
    // Stored edges are unique per (src, dst), so counting them counts
    // distinct neighbours.
    for (const auto& e : g.edges) {
        ++result[e.src].out;
        ++result[e.dst].in;
    }
    return result;
}

Ecdf::Ecdf(std::span<const double> samples) {
    if (samples.empty()) fail_usage("empty-ecdf", "ECDF needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        values_.push_back(sorted[i]);
        cumulative_.push_back(static_cast<double>(i + 1) / n);
    }
}

Ecdf Ecdf::from_steps(std::vector<double> values, std::vector<double> cumulative) {
    if (values.empty() || values.size() != cumulative.size()) {
        fail_data("bad-ecdf", "ECDF steps must be non-empty and paired");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(cumulative[i] > 0.0 && cumulative[i] <= 1.0)) {
            fail_data("bad-ecdf", "cumulative fraction outside (0, 1]");
        }
        if (i > 0 && (!(values[i] > values[i - 1]) || cumulative[i] < cumulative[i - 1])) {
            fail_data("bad-ecdf", "ECDF steps must be strictly ascending in value");
        }
    }
    if (std::fabs(cumulative.back() - 1.0) > 1e-9) {
        fail_data("bad-ecdf", "ECDF must reach 1 at its last step");
    }
    cumulative.back() = 1.0;
    Ecdf out;
    out.values_ = std::move(values);
    out.cumulative_ = std::move(cumulative);
    return out;
}

double Ecdf::evaluate(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) return 0.0;
    return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

Ecdf ecdf(std::span<const double> values) { return Ecdf(values); }

}  // namespace thermonet
