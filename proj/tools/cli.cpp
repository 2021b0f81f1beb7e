#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "thermonet/classify.hpp"
#include "thermonet/error.hpp"
#include "thermonet/ingest.hpp"
#include "thermonet/io.hpp"
#include "thermonet/metrics.hpp"
#include "thermonet/netmap.hpp"
#include "thermonet/pipeline.hpp"
#include "thermonet/preprocess.hpp"
#include "thermonet/synth.hpp"

namespace thermonet::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kConventionNote =
    "Edge betweenness scores are normalized by n(n-1), the number of ordered node pairs of\n"
    "the occupied quantile network (normalization \"ordered-pairs\"). The default threshold\n"
    "theta = 0.2 is the dry-eye cut-off of the original thermal-imaging method and is only\n"
    "meaningful under this normalization. Exit codes: 0 ok, 2 usage, 3 data, 4 internal.";

constexpr std::uint64_t kFallbackSeed = 42;

Roi parse_roi(const std::string& text) {
    Roi roi;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d,%d,%d,%d%c", &roi.x0, &roi.y0, &roi.w, &roi.h, &tail) != 4) {
        fail_usage("bad-roi", "roi must be x0,y0,w,h, got '" + text + "'");
    }
    return roi;
}

Reducer parse_reducer(const std::string& text) {
    if (text == "mean") return Reducer::Mean;
    if (text == "pc1") return Reducer::Pc1;
    fail_usage("bad-reducer", "reducer must be mean or pc1");
}

NormalizeMode parse_normalize(const std::string& text) {
    if (text == "amplitude") return NormalizeMode::Amplitude;
    if (text == "none") return NormalizeMode::None;
    fail_usage("bad-normalize", "normalize must be amplitude or none");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("THERMONET_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') fail_usage("bad-seed", "THERMONET_SEED is not an integer");
        return v;
    }
    return kFallbackSeed;
}

// Emits to a file when a path is given, else to stdout.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
    } else {
        io::write_text(path, text);
    }
}

struct Reduction {
    TimeSeries series;
    std::optional<VarianceReport> variance;
};

Reduction reduce_manifest(const fs::path& manifest, const std::string& roi_text, Reducer reducer,
                          int components) {
    FrameSequence frames = load_frames(manifest);
    if (!roi_text.empty()) frames = crop(frames, parse_roi(roi_text));
    if (reducer == Reducer::Mean) return {mean_series(frames), std::nullopt};
    auto [series, report] = pc1_series(frames, components);
    return {std::move(series), std::move(report)};
}

// Files written by a multi-output command; removed again unless committed.
class OutputSet {
public:
    ~OutputSet() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
    }

    void write(const fs::path& path, const std::string& text) {
        io::write_text(path, text);
        written_.push_back(path);
    }

    void commit() { committed_ = true; }

private:
    std::vector<fs::path> written_;
    bool committed_ = false;
};

std::string nodes_csv(const QuantileNetwork& g) {
    const auto degrees = degree_stats(g);
    const auto betweenness = node_betweenness(g);
    std::string out = "node,in_degree,out_degree,betweenness\n";
    for (int node : g.nodes) {
        const Degree d = degrees.at(node);
        out += std::to_string(node) + ',' + std::to_string(d.in) + ',' + std::to_string(d.out) +
               ',' + io::format_sig12(betweenness.at(node)) + '\n';
    }
    return out;
}

std::string verdict_line(const Verdict& v) {
    std::ostringstream s;
    s << "label=" << to_string(v.label) << " max_score=" << io::format_sig12(v.max_score)
      << " theta=" << io::format_sig12(v.theta) << " support_above=" << v.support_above
      << " normalization=" << kNormalizationName << '\n';
    return s.str();
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"thermonet: frame sequences -> time series -> quantile transition networks -> "
                 "edge-betweenness verdicts"};
    app.footer(kConventionNote);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::function<void()> action;

    // reduce
    std::string manifest, roi_text, reducer_text = "mean", out_path, variance_out;
    int components = 3;
    auto* reduce = app.add_subcommand("reduce", "Reduce a frame sequence to a time series CSV");
    reduce->footer(kConventionNote);
    reduce->add_option("--manifest", manifest, "Frame manifest JSON")->required();
    reduce->add_option("--roi", roi_text, "Region of interest x0,y0,w,h (default: full frame)");
    reduce->add_option("--reducer", reducer_text, "mean or pc1")->capture_default_str();
    reduce->add_option("--components", components, "Components in the variance report (pc1)")
        ->capture_default_str();
    reduce->add_option("--out", out_path, "Output series CSV (t,value)")->required();
    reduce->add_option("--variance-out", variance_out,
                       "Variance report JSON for pc1 (default: <out>.variance.json)");
    reduce->callback([&] {
        action = [&] {
            const Reducer reducer = parse_reducer(reducer_text);
            const Reduction r = reduce_manifest(manifest, roi_text, reducer, components);
            OutputSet outputs;
            outputs.write(out_path, io::series_csv(r.series));
            if (r.variance) {
                fs::path vpath = variance_out;
                if (vpath.empty()) vpath = fs::path(out_path).replace_extension(".variance.json");
                outputs.write(vpath, io::variance_json(*r.variance));
            }
            outputs.commit();
        };
    });

    // preprocess
    std::vector<std::string> inputs;
    std::string normalize_text = "amplitude", stage_text = "raw-mean", keep_dir;
    auto* prep = app.add_subcommand(
        "preprocess", "Baseline, detrend and normalize each series, then pool them in order");
    prep->footer(kConventionNote);
    prep->add_option("inputs", inputs, "Series CSVs, pooled in the given order")->required();
    prep->add_option("--stage", stage_text, "Stage of the input series (raw-mean or pc1)")
        ->capture_default_str();
    prep->add_option("--normalize", normalize_text, "amplitude or none")->capture_default_str();
    prep->add_option("--out", out_path, "Pooled series CSV")->required();
    prep->add_option("--keep-intermediates", keep_dir, "Directory for per-series residual CSVs");
    prep->callback([&] {
        action = [&] {
            const Stage stage = stage_from_string(stage_text);
            const NormalizeMode mode = parse_normalize(normalize_text);
            std::vector<TimeSeries> prepared;
            for (const auto& in : inputs) {
                const TimeSeries s = io::read_series_csv(in, stage);
                if (mode == NormalizeMode::Amplitude) {
                    prepared.push_back(prepare_for_pooling(s));
                } else {
                    prepared.push_back(normalize(detrend_linear(baseline(s)).first, 1.0));
                }
            }
            OutputSet outputs;
            if (!keep_dir.empty()) {
                for (std::size_t i = 0; i < prepared.size(); ++i) {
                    outputs.write(fs::path(keep_dir) / (fs::path(inputs[i]).stem().string() +
                                                        ".normalized.csv"),
                                  io::series_csv(prepared[i]));
                }
            }
            outputs.write(out_path, io::series_csv(pool(prepared)));
            outputs.commit();
        };
    });

    // netmap
    std::string in_path;
    int q = kDefaultQuantiles;
    auto* netmap = app.add_subcommand("netmap", "Map a series to a quantile transition network");
    netmap->footer(kConventionNote);
    netmap->add_option("--in", in_path, "Series CSV (normally the pooled series)")->required();
    netmap->add_option("--q", q, "Number of equiprobable quantiles")->capture_default_str();
    netmap->add_option("--out", out_path, "Graph JSON (stdout if omitted)");
    netmap->callback([&] {
        action = [&] {
            const TimeSeries s = io::read_series_csv(in_path, Stage::Pooled);
            emit(out_path, io::graph_json(map_series(s, q)));
        };
    });

    // metrics
    std::string graph_path, ecdf_out, nodes_out;
    auto* metrics = app.add_subcommand("metrics", "Edge betweenness, node metrics and ECDF of a graph");
    metrics->footer(kConventionNote);
    metrics->add_option("--graph", graph_path, "Graph JSON")->required();
    metrics->add_option("--out", out_path, "Metrics CSV src,dst,raw,score (stdout if omitted)");
    metrics->add_option("--ecdf-out", ecdf_out, "ECDF CSV value,cumfrac of the edge scores");
    metrics->add_option("--nodes-out", nodes_out, "Node CSV: degrees and node betweenness");
    metrics->callback([&] {
        action = [&] {
            const QuantileNetwork g = io::read_graph_json(graph_path);
            const EdgeScoreTable table = edge_betweenness(g);
            OutputSet outputs;
            if (!ecdf_out.empty()) {
                const auto scores = table.scores();
                outputs.write(ecdf_out, io::ecdf_csv(Ecdf(scores)));
            }
            if (!nodes_out.empty()) outputs.write(nodes_out, nodes_csv(g));
            if (out_path.empty()) {
                std::cout << io::metrics_csv(table);
            } else {
                outputs.write(out_path, io::metrics_csv(table));
            }
            outputs.commit();
        };
    });

    // classify
    std::string metrics_path;
    double theta = kDefaultTheta;
    auto* cls = app.add_subcommand("classify", "Apply the max-score >= theta rule to a metrics CSV");
    cls->footer(kConventionNote);
    cls->add_option("--metrics", metrics_path, "Metrics CSV")->required();
    cls->add_option("--theta", theta, "Threshold on normalized edge betweenness")
        ->capture_default_str();
    cls->add_option("--out", out_path, "Verdict JSON (stdout if omitted)");
    cls->callback([&] {
        action = [&] {
            const Verdict v = classify(io::read_metrics_csv(metrics_path), theta);
            emit(out_path, io::verdict_json(v));
        };
    });

    // pipeline
    std::string out_dir;
    bool keep = false;
    auto* pipe = app.add_subcommand(
        "pipeline", "Full run: preprocess, pool, map, score and classify a group of series");
    pipe->footer(kConventionNote);
    pipe->add_option("inputs", inputs,
                     "Series CSVs, or frame manifests (.json) reduced with --reducer")
        ->required();
    pipe->add_option("--q", q, "Number of equiprobable quantiles")->capture_default_str();
    pipe->add_option("--theta", theta, "Threshold on normalized edge betweenness")
        ->capture_default_str();
    pipe->add_option("--reducer", reducer_text, "Reducer for manifest inputs: mean or pc1")
        ->capture_default_str();
    pipe->add_option("--roi", roi_text, "Region of interest for manifest inputs");
    pipe->add_option("--normalize", normalize_text, "amplitude or none")->capture_default_str();
    pipe->add_option("--out-dir", out_dir, "Output directory")->required();
    pipe->add_flag("--keep-intermediates", keep, "Also write per-series, pooled and node files");
    pipe->callback([&] {
        action = [&] {
            PipelineConfig config;
            config.q = q;
            config.theta = theta;
            config.reducer = parse_reducer(reducer_text);
            config.normalize_mode = parse_normalize(normalize_text);

            std::vector<TimeSeries> reduced;
            for (const auto& in : inputs) {
                if (fs::path(in).extension() == ".json") {
                    reduced.push_back(reduce_manifest(in, roi_text, config.reducer, 1).series);
                } else {
                    reduced.push_back(io::read_series_csv(in));
                }
            }
            const PipelineResult r = run_pipeline(reduced, config);

            const fs::path dir(out_dir);
            OutputSet outputs;
            if (keep) {
                for (std::size_t i = 0; i < r.prepared.size(); ++i) {
                    char name[64];
                    std::snprintf(name, sizeof name, "normalized_%03zu.csv", i);
                    outputs.write(dir / name, io::series_csv(r.prepared[i]));
                }
                outputs.write(dir / "pooled.csv", io::series_csv(r.pooled));
                outputs.write(dir / "nodes.csv", nodes_csv(r.network));
            }
            outputs.write(dir / "graph.json", io::graph_json(r.network));
            outputs.write(dir / "metrics.csv", io::metrics_csv(r.scores));
            outputs.write(dir / "ecdf.csv", io::ecdf_csv(r.distribution));
            outputs.write(dir / "verdict.json", io::verdict_json(r.verdict));
            outputs.commit();
            std::cout << verdict_line(r.verdict);
        };
    });

    // synth
    auto* synth = app.add_subcommand("synth", "Generate seeded synthetic series or videos");
    synth->footer(kConventionNote);
    synth->require_subcommand(1);
    RegimeParams params;
    std::string kind_text = "smooth";
    std::optional<std::uint64_t> seed;
    double fps = 9.0;
    int count = 1;

    auto add_regime_options = [&](CLI::App* cmd) {
        cmd->add_option("--kind", kind_text, "smooth or jumpy")->capture_default_str();
        cmd->add_option("--phi", params.phi, "AR(1) coefficient in (-1, 1)")->capture_default_str();
        cmd->add_option("--sigma", params.sigma, "Innovation scale")->capture_default_str();
        cmd->add_option("--jump-prob", params.jump_prob, "Per-step jump probability (jumpy)")
            ->capture_default_str();
        cmd->add_option("--jump-scale", params.jump_scale, "Jump size in units of sigma (jumpy)")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "Seed (falls back to THERMONET_SEED, then 42)");
        cmd->add_option("--fps", fps, "Sampling rate in frames per second")->capture_default_str();
    };
    auto resolve_params = [&] {
        if (kind_text == "smooth") {
            params.kind = Regime::Smooth;
        } else if (kind_text == "jumpy") {
            params.kind = Regime::Jumpy;
        } else {
            fail_usage("bad-kind", "kind must be smooth or jumpy");
        }
        if (!(fps > 0.0)) fail_usage("bad-fps", "fps must be positive");
        params.dt = 1.0 / fps;
        params.seed = resolve_seed(seed);
        validate(params);
    };

    auto* synth_series = synth->add_subcommand("series", "AR(1) series, optionally with jumps");
    synth_series->footer(kConventionNote);
    add_regime_options(synth_series);
    synth_series->add_option("--n", params.n, "Samples per series")->capture_default_str();
    synth_series->add_option("--count", count, "Number of series (seeds seed, seed+1, ...)")
        ->capture_default_str();
    synth_series->add_option("--out", out_path, "Output CSV (single series)");
    synth_series->add_option("--out-dir", out_dir, "Output directory (series_NNN.csv)");
    synth_series->callback([&] {
        action = [&] {
            resolve_params();
            if (count < 1) fail_usage("bad-count", "count must be >= 1");
            if (count == 1 && !out_path.empty()) {
                io::write_text(out_path, io::series_csv(gen_series(params)));
                return;
            }
            if (out_dir.empty()) fail_usage("missing-output", "give --out or --out-dir");
            OutputSet outputs;
            const std::uint64_t first = params.seed;
            for (int i = 0; i < count; ++i) {
                params.seed = first + static_cast<std::uint64_t>(i);
                char name[32];
                std::snprintf(name, sizeof name, "series_%03d.csv", i);
                outputs.write(fs::path(out_dir) / name, io::series_csv(gen_series(params)));
            }
            outputs.commit();
        };
    });

    std::size_t frames = 135;
    VideoParams video;
    double amplitude = 500.0;
    std::string format_text = "pgm16";
    auto* synth_video = synth->add_subcommand(
        "video", "Rank-one frame sequence driven by a synthetic series, written as frames + manifest");
    synth_video->footer(kConventionNote);
    add_regime_options(synth_video);
    synth_video->add_option("--frames", frames, "Frame count")->capture_default_str();
    synth_video->add_option("--width", video.width, "Frame width")->capture_default_str();
    synth_video->add_option("--height", video.height, "Frame height")->capture_default_str();
    synth_video->add_option("--base", video.base, "Base intensity (counts)")->capture_default_str();
    synth_video->add_option("--amplitude", amplitude, "Signal multiplier (counts per unit)")
        ->capture_default_str();
    synth_video->add_option("--noise", video.noise_sigma, "Per-pixel Gaussian noise scale")
        ->capture_default_str();
    synth_video->add_option("--format", format_text, "pgm16 or raw16le")->capture_default_str();
    synth_video->add_option("--out-dir", out_dir, "Directory for frames and manifest.json")
        ->required();
    synth_video->callback([&] {
        action = [&] {
            resolve_params();
            if (frames < 1) fail_usage("bad-frames", "frame count must be >= 1");
            if (format_text != "pgm16" && format_text != "raw16le") {
                fail_usage("bad-format", "format must be pgm16 or raw16le");
            }
            params.n = frames;
            const TimeSeries base_signal = gen_series(params);
            std::vector<double> scaled(base_signal.values());
            for (double& v : scaled) v *= amplitude;
            const TimeSeries signal(std::move(scaled), params.dt, base_signal.label(),
                                    Stage::RawMean);
            video.fps = fps;
            video.pattern_seed = params.seed;
            const FrameSequence seq = gen_video(frames, video, signal);
            const fs::path m = save_frames(
                seq, out_dir, format_text == "pgm16" ? FrameFormat::Pgm16 : FrameFormat::Raw16Le);
            std::cout << "manifest=" << m.string() << " frames=" << seq.frame_count()
                      << " fps=" << io::format_sig12(seq.fps())
                      << " duration_s=" << io::format_sig12(seq.duration_seconds()) << '\n';
        };
    });

    // compare
    std::string a_path, b_path, plot_out;
    auto* compare = app.add_subcommand("compare", "Two-sample KS comparison of two ECDF CSVs");
    compare->footer(kConventionNote);
    compare->add_option("--a", a_path, "ECDF CSV of group A")->required();
    compare->add_option("--b", b_path, "ECDF CSV of group B")->required();
    compare->add_option("--out", out_path, "Comparison JSON (stdout if omitted)");
    compare->add_option("--plot-out", plot_out, "Overlay CSV value,cum_a,cum_b");
    compare->callback([&] {
        action = [&] {
            const Ecdf a = io::read_ecdf_csv(a_path);
            const Ecdf b = io::read_ecdf_csv(b_path);
            OutputSet outputs;
            if (!plot_out.empty()) outputs.write(plot_out, io::overlay_csv(a, b));
            const std::string json = io::comparison_json(compare_groups(a, b));
            if (out_path.empty()) {
                std::cout << json;
            } else {
                outputs.write(out_path, json);
            }
            outputs.commit();
        };
    });

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "Convert a graph JSON to Graphviz DOT");
    dot->footer(kConventionNote);
    dot->add_option("--graph", graph_path, "Graph JSON")->required();
    dot->add_option("--out", out_path, "DOT file (stdout if omitted)");
    dot->callback([&] {
        action = [&] { emit(out_path, io::graph_dot(io::read_graph_json(graph_path))); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help requests are modelled as parse errors with status 0.
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "thermonet: error[usage] " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "thermonet: error[" << e.tag() << "] " << e.detail() << '\n';
        return exit_code(e.kind());
    }

    try {
        if (action) action();
        return 0;
    } catch (const Error& e) {
        std::cerr << "thermonet: error[" << e.tag() << "] " << e.detail() << '\n';
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "thermonet: error[io] " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "thermonet: error[internal] " << e.what() << '\n';
        return 4;
    }
}

}  // namespace thermonet::cli
