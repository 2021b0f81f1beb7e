#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "thermonet/error.hpp"
#include "thermonet/metrics.hpp"

using namespace thermonet;
using thermonet::testing::brute_force_edge_betweenness;
using thermonet::testing::graph_from_edges;

TEST_CASE("edge_betweenness examples") {
    SUBCASE("single edge") {
        const auto t = edge_betweenness(graph_from_edges({0, 1}, {{0, 1}}));
        CHECK(t.raw.at({0, 1}) == 1.0);
        CHECK(t.n_nodes == 2);
        CHECK(t.score.at({0, 1}) == 0.5);
    }
    SUBCASE("directed path") {
        const auto g = graph_from_edges({0, 1, 2}, {{0, 1}, {1, 2}});
        const auto oracle = brute_force_edge_betweenness(g);
        CHECK(oracle.raw.at({0, 1}) == 2.0);
        CHECK(oracle.raw.at({1, 2}) == 2.0);
        const auto t = edge_betweenness(g);
        CHECK(t.raw.at({0, 1}) == 2.0);
        CHECK(t.raw.at({1, 2}) == 2.0);
        CHECK(t.score.at({0, 1}) == doctest::Approx(1.0 / 3.0));
        CHECK(t.score.at({1, 2}) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("directed 3-cycle") {
        const auto g = graph_from_edges({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}});
        const auto oracle = brute_force_edge_betweenness(g);
        const auto t = edge_betweenness(g);
        for (const auto& [edge, raw] : oracle.raw) {
            CHECK(raw == 3.0);
            CHECK(t.raw.at(edge) == 3.0);
            CHECK(t.score.at(edge) == 0.5);
        }
    }
    SUBCASE("parallel shortest paths share credit") {
        // 0 -> {1, 2} -> 3: two shortest paths from 0 to 3.
        const auto g = graph_from_edges({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
        const auto t = edge_betweenness(g);
        CHECK(t.raw.at({0, 1}) == 1.5);
        CHECK(t.raw.at({2, 3}) == 1.5);
    }
    SUBCASE("bins need not be contiguous") {
        const auto t = edge_betweenness(graph_from_edges({3, 7, 19}, {{3, 7}, {7, 19}}));
        CHECK(t.raw.at({3, 7}) == 2.0);
        CHECK(t.n_nodes == 3);
    }
    SUBCASE("no edges") {
        QuantileNetwork g;
        g.nodes = {0};
        CHECK_THROWS_AS(edge_betweenness(g), Error);
    }
}

TEST_CASE("edge_betweenness matches brute-force enumeration and conserves path length") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const double p = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
        const auto g = testing::random_graph(rng, n, p);
        if (g.edges.empty()) continue;
        const auto oracle = brute_force_edge_betweenness(g);
        const auto t = edge_betweenness(g);
        double total = 0;
        for (const auto& [edge, raw] : oracle.raw) {
            CHECK(std::fabs(t.raw.at(edge) - raw) <= 1e-12);
            CHECK(t.score.at(edge) >= 0.0);
            CHECK(t.score.at(edge) <= 1.0);
            CHECK(t.score.at(edge) == t.raw.at(edge) / (n * (n - 1.0)));
            total += t.raw.at(edge);
        }
        CHECK(total == doctest::Approx(oracle.distance_sum).epsilon(1e-12));
    }
}

TEST_CASE("edge scores are invariant under node relabelling") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const auto g = testing::random_graph(rng, n, 0.35);
        if (g.edges.empty()) continue;
        std::vector<int> relabel(20);
        std::iota(relabel.begin(), relabel.end(), 0);
        std::shuffle(relabel.begin(), relabel.end(), rng);

        QuantileNetwork h;
        for (int v : g.nodes) h.nodes.push_back(relabel[static_cast<std::size_t>(v)]);
        std::sort(h.nodes.begin(), h.nodes.end());
        for (const auto& e : g.edges)
            h.edges.push_back({relabel[static_cast<std::size_t>(e.src)], relabel[static_cast<std::size_t>(e.dst)], 1});
        std::sort(h.edges.begin(), h.edges.end(),
                  [](const auto& a, const auto& b) { return std::pair(a.src, a.dst) < std::pair(b.src, b.dst); });

        const auto tg = edge_betweenness(g);
        const auto th = edge_betweenness(h);
        for (const auto& [edge, score] : tg.score) {
            const EdgeKey mapped{relabel[static_cast<std::size_t>(edge.first)], relabel[static_cast<std::size_t>(edge.second)]};
            CHECK(th.score.at(mapped) == doctest::Approx(score).epsilon(1e-12));
        }
    }
}

TEST_CASE("edge weights never influence scores") {
    auto g = graph_from_edges({0, 1, 2}, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
    const auto before = edge_betweenness(g);
    for (auto& e : g.edges) e.count = 1 + 13 * e.src;
    const auto after = edge_betweenness(g);
    CHECK(before.raw == after.raw);
}

TEST_CASE("node_betweenness") {
    const auto path = node_betweenness(graph_from_edges({0, 1, 2}, {{0, 1}, {1, 2}}));
    CHECK(path.at(0) == 0.0);
    CHECK(path.at(1) == doctest::Approx(0.5));
    CHECK(path.at(2) == 0.0);

    const auto two = node_betweenness(graph_from_edges({0, 1}, {{0, 1}, {1, 0}}));
    CHECK(two.at(0) == 0.0);
    CHECK(two.at(1) == 0.0);

    const auto complete =
        node_betweenness(graph_from_edges({0, 1, 2}, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}));
    for (const auto& [node, score] : complete) CHECK(score == 0.0);

    // 0 -> {1, 2} -> 3: each middle node carries half of the single pair.
    const auto diamond = node_betweenness(graph_from_edges({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    CHECK(diamond.at(1) == doctest::Approx(0.5 / 6.0));
    CHECK(diamond.at(2) == doctest::Approx(0.5 / 6.0));
}

TEST_CASE("degree_stats") {
    const auto one = degree_stats(graph_from_edges({0, 1}, {{0, 1}}));
    CHECK(one.at(0) == Degree{0, 1});
    CHECK(one.at(1) == Degree{1, 0});

    const auto cycle = degree_stats(graph_from_edges({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}));
    for (const auto& [node, d] : cycle) CHECK(d == Degree{1, 1});

    const auto isolated = degree_stats(graph_from_edges({0, 1, 5}, {{0, 1}}));
    CHECK(isolated.at(5) == Degree{0, 0});
}

TEST_CASE("ecdf") {
    const std::vector<double> single{0.5};
    const Ecdf a(single);
    CHECK(a.evaluate(0.4) == 0.0);
    CHECK(a.evaluate(0.5) == 1.0);

    const std::vector<double> dup{1.0 / 3.0, 1.0 / 3.0};
    CHECK(Ecdf(dup).evaluate(1.0 / 3.0) == 1.0);
    CHECK(Ecdf(dup).values().size() == 1);

    const std::vector<double> two{0.1, 0.3};
    CHECK(Ecdf(two).evaluate(0.2) == 0.5);

    CHECK_THROWS_AS(Ecdf(std::span<const double>{}), Error);

    std::mt19937_64 rng(6);
    std::vector<double> v(200);
    for (auto& x : v) x = static_cast<double>(rng() % 50) / 49.0;
    const Ecdf e(v);
    CHECK(e.evaluate(e.min() - 1e-9) == 0.0);
    CHECK(e.evaluate(e.max()) == 1.0);
    double prev = 0.0;
    for (double x = -0.1; x <= 1.1; x += 0.001) {
        const double f = e.evaluate(x);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("ecdf from steps validates its input") {
    const Ecdf e = Ecdf::from_steps({0.1, 0.2}, {0.25, 1.0});
    CHECK(e.evaluate(0.15) == 0.25);
    CHECK_THROWS_AS(Ecdf::from_steps({0.2, 0.1}, {0.5, 1.0}), Error);
    CHECK_THROWS_AS(Ecdf::from_steps({0.1, 0.2}, {0.5, 0.9}), Error);
    CHECK_THROWS_AS(Ecdf::from_steps({}, {}), Error);
}
