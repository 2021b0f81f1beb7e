#include "thermonet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <tuple>

#include "thermonet/error.hpp"

namespace thermonet::io {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_usage("missing-file", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double parse_double(std::string_view text, const fs::path& path, std::size_t line) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        fail_data("bad-csv", path.string() + ":" + std::to_string(line) + ": '" +
                                 std::string(text) + "' is not a number");
    }
    return value;
}

// Rows of a CSV whose first line must equal `header`. Blank lines skipped.
std::vector<std::vector<std::string_view>> parse_csv(const std::string& text,
                                                     std::string_view header,
                                                     const fs::path& path) {
    std::vector<std::vector<std::string_view>> rows;
    std::string_view rest(text);
    std::size_t line_no = 0;
    const std::size_t columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_no == 1) {
            if (line != header) {
                fail_data("bad-csv", path.string() + ": expected header '" + std::string(header) + "'");
            }
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (cells.size() != columns) {
            fail_data("bad-csv", path.string() + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(columns) + " columns");
        }
        rows.push_back(std::move(cells));
    }
    if (line_no == 0) fail_data("bad-csv", path.string() + " is empty");
    return rows;
}

ordered_json parse_json(const fs::path& path) {
    const std::string text = read_text(path);
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail_data("bad-json", path.string() + ": " + e.what());
    }
}

}  // namespace

std::string format_exact(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_sig12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string series_csv(const TimeSeries& s) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += format_exact(static_cast<double>(i) * s.dt());
        out += ',';
        out += format_exact(s.values()[i]);
        out += '\n';
    }
    return out;
}

void write_series_csv(const fs::path& path, const TimeSeries& s) { write_text(path, series_csv(s)); }

TimeSeries read_series_csv(const fs::path& path, Stage stage) {
    const std::string text = read_text(path);
    const auto rows = parse_csv(text, "t,value", path);
    if (rows.empty()) fail_data("empty-series", path.string() + " holds no samples");
    std::vector<double> values;
    values.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) values.push_back(parse_double(rows[i][1], path, i + 2));
    double dt = 1.0;
    if (rows.size() >= 2) {
        dt = parse_double(rows[1][0], path, 3) - parse_double(rows[0][0], path, 2);
        if (!(dt > 0.0)) fail_data("bad-csv", path.string() + ": t must increase");
    }
    return TimeSeries(std::move(values), dt, path.stem().string(), stage);
}

std::string graph_json(const QuantileNetwork& g) {
    ordered_json doc;
    doc["q"] = g.q;
    ordered_json nodes = ordered_json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        ordered_json node;
        node["id"] = g.nodes[i];
        if (i < g.ranges.size()) {
            node["lo"] = g.ranges[i].lo;
            node["hi"] = g.ranges[i].hi;
        }
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges) {
        ordered_json edge;
        edge["src"] = e.src;
        edge["dst"] = e.dst;
        edge["count"] = e.count;
        edges.push_back(std::move(edge));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

void write_graph_json(const fs::path& path, const QuantileNetwork& g) { write_text(path, graph_json(g)); }

QuantileNetwork read_graph_json(const fs::path& path) {
    const ordered_json doc = parse_json(path);
    QuantileNetwork g;
    try {
        g.q = doc.at("q").get<int>();
        bool with_ranges = true;
        for (const auto& node : doc.at("nodes")) {
            const int id = node.at("id").get<int>();
            g.nodes.push_back(id);
            if (node.contains("lo") && node.contains("hi")) {
                g.ranges.push_back({id, node["lo"].get<double>(), node["hi"].get<double>()});
            } else {
                with_ranges = false;
            }
        }
        if (!with_ranges) g.ranges.clear();
        for (const auto& edge : doc.at("edges")) {
            g.edges.push_back({edge.at("src").get<int>(), edge.at("dst").get<int>(),
                               edge.at("count").get<std::int64_t>()});
        }
    } catch (const nlohmann::json::exception& e) {
        fail_data("bad-graph", path.string() + ": " + e.what());
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Transition& a, const Transition& b) {
                  return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
              });
    const std::set<int> nodes(g.nodes.begin(), g.nodes.end());
    for (const auto& e : g.edges) {
        if (e.src == e.dst || !nodes.count(e.src) || !nodes.count(e.dst) || e.count < 1) {
            fail_data("bad-graph", path.string() + ": invalid edge " + std::to_string(e.src) +
                                       "->" + std::to_string(e.dst));
        }
    }
    return g;
}

std::string graph_dot(const QuantileNetwork& g) {
    std::string out = "digraph quantile_network {\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        out += "  " + std::to_string(g.nodes[i]) + " [label=\"q" + std::to_string(g.nodes[i]);
        if (i < g.ranges.size()) {
            out += "[" + format_sig12(g.ranges[i].lo) + "," + format_sig12(g.ranges[i].hi) + ")";
        }
        out += "\"];\n";
    }
    for (const auto& e : g.edges) {
        out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) + ";\n";
    }
    out += "}\n";
    return out;
}

std::string metrics_csv(const EdgeScoreTable& t) {
    std::string out = "src,dst,raw,score\n";
    for (const auto& [edge, raw] : t.raw) {
        out += std::to_string(edge.first) + ',' + std::to_string(edge.second) + ',' +
               format_sig12(raw) + ',' + format_sig12(t.score.at(edge)) + '\n';
    }
    return out;
}

void write_metrics_csv(const fs::path& path, const EdgeScoreTable& t) { write_text(path, metrics_csv(t)); }

EdgeScoreTable read_metrics_csv(const fs::path& path) {
    const std::string text = read_text(path);
    const auto rows = parse_csv(text, "src,dst,raw,score", path);
    EdgeScoreTable t;
    std::set<int> endpoints;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto src = static_cast<int>(parse_double(rows[i][0], path, i + 2));
        const auto dst = static_cast<int>(parse_double(rows[i][1], path, i + 2));
        t.raw[{src, dst}] = parse_double(rows[i][2], path, i + 2);
        t.score[{src, dst}] = parse_double(rows[i][3], path, i + 2);
        endpoints.insert(src);
        endpoints.insert(dst);
    }
    t.n_nodes = static_cast<int>(endpoints.size());
    return t;
}

std::string ecdf_csv(const Ecdf& e) {
    std::string out = "value,cumfrac\n";
    for (std::size_t i = 0; i < e.values().size(); ++i) {
        out += format_exact(e.values()[i]) + ',' + format_exact(e.cumulative()[i]) + '\n';
    }
    return out;
}

void write_ecdf_csv(const fs::path& path, const Ecdf& e) { write_text(path, ecdf_csv(e)); }

Ecdf read_ecdf_csv(const fs::path& path) {
    const std::string text = read_text(path);
    const auto rows = parse_csv(text, "value,cumfrac", path);
    std::vector<double> values;
    std::vector<double> cumulative;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        values.push_back(parse_double(rows[i][0], path, i + 2));
        cumulative.push_back(parse_double(rows[i][1], path, i + 2));
    }
    return Ecdf::from_steps(std::move(values), std::move(cumulative));
}

std::string verdict_json(const Verdict& v) {
    ordered_json doc;
    doc["theta"] = v.theta;
    doc["normalization"] = std::string(kNormalizationName);
    doc["max_score"] = v.max_score;
    doc["support_above"] = v.support_above;
    doc["label"] = std::string(to_string(v.label));
    return doc.dump(2) + "\n";
}

std::string comparison_json(const GroupComparison& c) {
    ordered_json doc;
    doc["ks_statistic"] = c.ks_statistic;
    doc["theta_gap"] = c.theta_gap;
    doc["normalization"] = std::string(kNormalizationName);
    return doc.dump(2) + "\n";
}

std::string variance_json(const VarianceReport& r) {
    ordered_json doc;
    doc["explained"] = r.explained;
    double cumulative = 0.0;
    for (double v : r.explained) cumulative += v;
    doc["cumulative"] = cumulative;
    return doc.dump(2) + "\n";
}

std::string overlay_csv(const Ecdf& a, const Ecdf& b) {
    std::vector<double> support(a.values());
    support.insert(support.end(), b.values().begin(), b.values().end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    std::string out = "value,cum_a,cum_b\n";
    for (double x : support) {
        out += format_exact(x) + ',' + format_exact(a.evaluate(x)) + ',' +
               format_exact(b.evaluate(x)) + '\n';
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_usage("unwritable-file", "cannot write " + path.string());
    out << text;
    if (!out) fail_usage("unwritable-file", "write failed for " + path.string());
}

}  // namespace thermonet::io
