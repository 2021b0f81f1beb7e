#pragma once

// File formats shared by the CLI and the library:
//
//   series CSV   t,value          t = index * dt in seconds
//   metrics CSV  src,dst,raw,score  12 significant digits
//   ECDF CSV     value,cumfrac    one row per distinct value
//   graph JSON   {"q", "nodes": [{"id","lo","hi"}], "edges": [{"src","dst","count"}]}
//   verdict JSON {"theta", "normalization", "max_score", "support_above", "label"}

#include <filesystem>
#include <string>

#include "thermonet/classify.hpp"
#include "thermonet/ingest.hpp"
#include "thermonet/metrics.hpp"
#include "thermonet/netmap.hpp"
#include "thermonet/timeseries.hpp"

namespace thermonet::io {

/// Shortest decimal text that parses back to the same double.
std::string format_exact(double value);
/// %.12g.
std::string format_sig12(double value);

std::string series_csv(const TimeSeries& s);
void write_series_csv(const std::filesystem::path& path, const TimeSeries& s);
/// dt comes from the first two t values (1.0 for a single row); the label
/// is the file stem.
TimeSeries read_series_csv(const std::filesystem::path& path, Stage stage = Stage::RawMean);

std::string graph_json(const QuantileNetwork& g);
void write_graph_json(const std::filesystem::path& path, const QuantileNetwork& g);
QuantileNetwork read_graph_json(const std::filesystem::path& path);

/// One `src -> dst` line per edge; nodes labelled q<i>[lo,hi).
std::string graph_dot(const QuantileNetwork& g);

std::string metrics_csv(const EdgeScoreTable& t);
void write_metrics_csv(const std::filesystem::path& path, const EdgeScoreTable& t);
/// n_nodes is recovered as the number of distinct edge endpoints, which is
/// exact for any network with at least one edge.
EdgeScoreTable read_metrics_csv(const std::filesystem::path& path);

std::string ecdf_csv(const Ecdf& e);
void write_ecdf_csv(const std::filesystem::path& path, const Ecdf& e);
Ecdf read_ecdf_csv(const std::filesystem::path& path);

std::string verdict_json(const Verdict& v);
std::string comparison_json(const GroupComparison& c);
std::string variance_json(const VarianceReport& r);

/// value,cum_a,cum_b over the merged support of both distributions.
std::string overlay_csv(const Ecdf& a, const Ecdf& b);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace thermonet::io
