// canids — CAN-bus log toolkit: message-sequence-graph similarity and three
// injection detectors (fixed threshold, Bayesian change point, sequence
// model), plus synthetic traffic generation and fabricated-frame injection.
//
// Exit codes: 0 success, 1 usage/configuration error, 2 data error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "canids/change_point.hpp"
#include "canids/dataset.hpp"
#include "canids/errors.hpp"
#include "canids/eval.hpp"
#include "canids/inject.hpp"
#include "canids/log_io.hpp"
#include "canids/lstm.hpp"
#include "canids/sequence_graph.hpp"
#include "canids/similarity.hpp"
#include "canids/threshold.hpp"

namespace {

using namespace canids;

// write to `path`, or to stdout when the path is empty
void emit_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoFailure, "cannot open " + path + " for writing");
    out << content;
    if (!content.empty() && content.back() != '\n')
        out << '\n';
    if (!out)
        throw Error(Errc::IoFailure, "failed writing " + path);
}

std::vector<std::uint8_t> parse_hex_payload(const std::string& hex) {
    if (hex.size() % 2 != 0 || hex.size() > 16)
        throw Error(Errc::BadSpec, "payload must be 0..16 hex digits, even count");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(hex.size() / 2);
    auto nibble = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw Error(Errc::BadSpec, "payload contains a non-hex digit");
    };
    for (std::size_t i = 0; i < hex.size(); i += 2)
        bytes.push_back(static_cast<std::uint8_t>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    return bytes;
}

struct LoadedLog {
    std::vector<CanFrame> frames;
    std::vector<Label> labels; // empty when no sidecar was given
};

// read a log (and optional label sidecar), report lenient-mode skips on
// stderr, and restrict to one channel unless all_channels is set
LoadedLog load_log(const std::string& log_path, const std::string& labels_path,
                   bool strict, const std::string& channel, bool all_channels) {
    ReadOptions opts;
    opts.strict = strict;
    ReadResult read = read_log_file(log_path, opts);
    for (const auto& w : read.warnings)
        std::cerr << log_path << ':' << w.line << ": skipped: " << w.message << '\n';

    LoadedLog loaded;
    loaded.frames = std::move(read.frames);
    if (!labels_path.empty()) {
        loaded.labels = read_label_file(labels_path);
        if (loaded.labels.size() != loaded.frames.size())
            throw Error(Errc::LengthMismatch,
                        "label sidecar has " + std::to_string(loaded.labels.size()) +
                            " entries for " + std::to_string(loaded.frames.size()) + " frames");
    }
    if (!all_channels) {
        std::vector<CanFrame> frames;
        std::vector<Label> labels;
        for (std::size_t i = 0; i < loaded.frames.size(); ++i) {
            if (loaded.frames[i].channel != channel)
                continue;
            frames.push_back(std::move(loaded.frames[i]));
            if (!loaded.labels.empty())
                labels.push_back(loaded.labels[i]);
        }
        loaded.frames = std::move(frames);
        loaded.labels = std::move(labels);
    }
    return loaded;
}

std::vector<MessageSequenceGraph> graphs_of(const LoadedLog& log, std::size_t window,
                                            std::size_t stride) {
    WindowizeResult cut = windowize(log.frames, window, stride, log.labels);
    std::cerr << cut.windows.size() << " windows, " << cut.dropped_frames
              << " trailing frames dropped\n";
    std::vector<MessageSequenceGraph> graphs;
    graphs.reserve(cut.windows.size());
    for (const auto& w : cut.windows)
        graphs.push_back(compute_msg(w));
    return graphs;
}

// ---------------------------------------------------------------- similarity

struct SimilarityOpts {
    std::string log, labels, out, svg;
    std::size_t window = 100, stride = 0;
    std::string metric = "pearson", channel = "can0";
    bool strict = false, all_channels = false;
    double svg_threshold = std::numeric_limits<double>::quiet_NaN();
};

void run_similarity(const SimilarityOpts& o) {
    LoadedLog log = load_log(o.log, o.labels, o.strict, o.channel, o.all_channels);
    auto graphs = graphs_of(log, o.window, o.stride);
    SimilaritySeries series = similarity_series(graphs, metric_from_string(o.metric), o.window);
    std::ostringstream csv;
    write_series_csv(csv, series);
    emit_text(o.out, csv.str());
    if (!o.svg.empty())
        emit_text(o.svg, series_to_svg(series, o.svg_threshold));
}

// ---------------------------------------------------------------- export-dot

struct ExportDotOpts {
    std::string log, out, name = "msg";
    std::size_t window = 100, stride = 0, index = 0;
    std::string channel = "can0";
    bool strict = false, all_channels = false;
};

void run_export_dot(const ExportDotOpts& o) {
    LoadedLog log = load_log(o.log, "", o.strict, o.channel, o.all_channels);
    auto graphs = graphs_of(log, o.window, o.stride);
    if (o.index >= graphs.size())
        throw Error(Errc::TooFewGraphs,
                    "window index " + std::to_string(o.index) + " out of range (" +
                        std::to_string(graphs.size()) + " windows)");
    emit_text(o.out, to_dot(graphs[o.index], o.name));
}

// ---------------------------------------------------------- detect-threshold

struct DetectThresholdOpts {
    std::string series, out, verdicts;
    double threshold = 0.87;
    bool calibrate = false;
};

void run_detect_threshold(const DetectThresholdOpts& o) {
    SimilaritySeries series = read_series_csv_file(o.series);
    double threshold = o.threshold;
    double calibration_accuracy = std::numeric_limits<double>::quiet_NaN();
    if (o.calibrate) {
        CalibrationResult cal = calibrate_threshold(series);
        threshold = cal.threshold;
        calibration_accuracy = cal.accuracy;
    }
    ThresholdVerdicts verdicts = threshold_detect(series, threshold);
    if (!o.verdicts.empty()) {
        std::ostringstream csv;
        csv << "pair_index,attack\n";
        for (std::size_t i = 0; i < verdicts.attack.size(); ++i)
            csv << i << ',' << static_cast<int>(verdicts.attack[i]) << '\n';
        emit_text(o.verdicts, csv.str());
    }
    char tbuf[40];
    std::snprintf(tbuf, sizeof(tbuf), "%.17g", threshold);
    if (series.has_labels()) {
        std::map<std::string, std::string> params{{"threshold", tbuf},
                                                  {"calibrated", o.calibrate ? "true" : "false"}};
        if (o.calibrate) {
            char abuf[40];
            std::snprintf(abuf, sizeof(abuf), "%.17g", calibration_accuracy);
            params["calibration_accuracy"] = abuf;
        }
        DetectionReport report = score(verdicts.attack, series.labels, Detector::threshold,
                                       series.metric, std::move(params));
        emit_text(o.out, report_to_json(report));
    } else {
        std::size_t flagged = 0;
        for (auto a : verdicts.attack)
            flagged += a;
        nlohmann::json j{{"detector", "threshold"},
                         {"metric", to_string(series.metric)},
                         {"threshold", threshold},
                         {"pairs", verdicts.attack.size()},
                         {"attack_pairs", flagged}};
        emit_text(o.out, j.dump(2));
    }
}

// ----------------------------------------------------------------- detect-cpd

struct DetectCpdOpts {
    std::string series, out, posterior;
    CpdConfig config;
};

void run_detect_cpd(const DetectCpdOpts& o) {
    SimilaritySeries series = read_series_csv_file(o.series);
    ChangePointEstimate est = change_point_detect(series.values, o.config);
    if (!o.posterior.empty()) {
        std::ostringstream csv;
        write_tau_posterior_csv(csv, est);
        emit_text(o.posterior, csv.str());
    }
    emit_text(o.out, estimate_to_json(est, o.config));
}

// ----------------------------------------------------------------- train-lstm

struct TrainLstmOpts {
    std::string benign, injected, checkpoint, history, out;
    std::size_t lookback = 10;
    ModelConfig config;
};

LabeledSequenceDataset dataset_from_csvs(const std::string& benign_path,
                                         const std::string& injected_path,
                                         std::size_t lookback, double train_fraction) {
    SimilaritySeries benign = read_series_csv_file(benign_path);
    SimilaritySeries injected = read_series_csv_file(injected_path);
    return build_constructed_dataset(benign, injected, lookback, train_fraction);
}

void run_train_lstm(const TrainLstmOpts& o) {
    ModelConfig config = o.config;
    config.lookback = o.lookback;
    LabeledSequenceDataset dataset =
        dataset_from_csvs(o.benign, o.injected, o.lookback, config.train_fraction);
    LstmModel model = init_model(config);
    TrainHistory history = train(model, dataset);
    save_checkpoint(model, o.checkpoint);
    if (!o.history.empty()) {
        std::ostringstream csv;
        write_history_csv(csv, history);
        emit_text(o.history, csv.str());
    }
    nlohmann::json j;
    j["train_samples"] = dataset.train_count;
    j["test_samples"] = dataset.samples.size() - dataset.train_count;
    j["epochs"] = history.epochs.size();
    if (!history.epochs.empty()) {
        j["final_loss"] = history.epochs.back().loss;
        j["final_train_accuracy"] = history.epochs.back().accuracy;
    }
    if (dataset.train_count < dataset.samples.size()) {
        std::span<const SequenceSample> test(dataset.samples.data() + dataset.train_count,
                                             dataset.samples.size() - dataset.train_count);
        j["test_accuracy"] = predict(model, test).accuracy;
    }
    j["checkpoint"] = o.checkpoint;
    emit_text(o.out, j.dump(2));
}

// --------------------------------------------------------------- predict-lstm

struct PredictLstmOpts {
    std::string checkpoint, benign, injected, out, predictions;
    double train_fraction = 2.0 / 3.0;
    std::string split = "test";
};

void run_predict_lstm(const PredictLstmOpts& o) {
    LstmModel model = load_checkpoint(o.checkpoint);
    LabeledSequenceDataset dataset =
        dataset_from_csvs(o.benign, o.injected, model.config.lookback, o.train_fraction);
    std::size_t begin = 0, end = dataset.samples.size();
    if (o.split == "test")
        begin = dataset.train_count;
    else if (o.split == "train")
        end = dataset.train_count;
    std::span<const SequenceSample> chosen(dataset.samples.data() + begin, end - begin);
    Predictions preds = predict(model, chosen);
    if (!o.predictions.empty()) {
        std::ostringstream csv;
        csv << "sample_index,probability,verdict,label\n";
        char buf[40];
        for (std::size_t i = 0; i < preds.probabilities.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", preds.probabilities[i]);
            csv << begin + i << ',' << buf << ',' << static_cast<int>(preds.verdicts[i]) << ','
                << static_cast<int>(chosen[i].label) << '\n';
        }
        emit_text(o.predictions, csv.str());
    }
    std::vector<Label> labels;
    labels.reserve(chosen.size());
    for (const auto& s : chosen)
        labels.push_back(s.label ? Label::injected : Label::benign);
    DetectionReport report =
        score(preds.verdicts, labels, Detector::lstm, dataset.metric,
              {{"split", o.split}, {"checkpoint", o.checkpoint}});
    emit_text(o.out, report_to_json(report));
}

// ----------------------------------------------------------------------- eval

struct EvalOpts {
    std::string verdicts, labels, out;
    std::string detector = "threshold", metric = "pearson";
};

void run_eval(const EvalOpts& o) {
    std::vector<Label> verdict_bits = read_label_file(o.verdicts);
    std::vector<Label> labels = read_label_file(o.labels);
    std::vector<std::uint8_t> verdicts;
    verdicts.reserve(verdict_bits.size());
    for (Label l : verdict_bits)
        verdicts.push_back(l == Label::injected ? 1 : 0);
    Detector detector = Detector::threshold;
    if (o.detector == "change_point")
        detector = Detector::change_point;
    else if (o.detector == "lstm")
        detector = Detector::lstm;
    else if (o.detector != "threshold")
        throw Error(Errc::BadSpec, "unknown detector '" + o.detector + "'");
    DetectionReport report = score(verdicts, labels, detector,
                                   metric_from_string(o.metric), {});
    emit_text(o.out, report_to_json(report));
}

// ------------------------------------------------------------------- generate

struct GenerateOpts {
    std::string spec_path, preset, out;
    std::size_t frames = 12000;
    double mean_gap = 0.01, start_time = 0.0;
    std::size_t payload_bytes = 8;
    std::string channel = "can0";
    std::uint64_t seed = 1;
};

SyntheticTrafficSpec preset_spec(const std::string& name) {
    SyntheticTrafficSpec spec;
    auto ring10 = [&spec](double q) {
        // 10-PID ring with a leak of probability q spread evenly over the 9
        // non-successor states
        const std::size_t n = 10;
        for (std::size_t i = 0; i < n; ++i)
            spec.pid_alphabet.push_back("10" + std::string(1, static_cast<char>('0' + i)));
        spec.transition.assign(n, std::vector<double>(n, q / 9.0));
        for (std::size_t i = 0; i < n; ++i)
            spec.transition[i][(i + 1) % n] = 1.0 - q;
    };
    if (name == "ring10") {
        ring10(0.001); // near-deterministic: similarity series is a flat band
    } else if (name == "ring10-noisy") {
        ring10(0.05); // dispersed: similarity series has realistic spread
    } else if (name == "ring3") {
        // strictly deterministic 3-PID ring
        spec.pid_alphabet = {"200", "201", "202"};
        spec.transition = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    } else {
        throw Error(Errc::BadSpec,
                    "unknown preset '" + name + "' (ring10, ring10-noisy, ring3)");
    }
    return spec;
}

SyntheticTrafficSpec spec_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot open " + path);
    SyntheticTrafficSpec spec;
    try {
        nlohmann::json j;
        in >> j;
        spec.pid_alphabet = j.at("pid_alphabet").get<std::vector<std::string>>();
        spec.transition = j.at("transition").get<std::vector<std::vector<double>>>();
        if (j.contains("frame_count"))
            spec.frame_count = j.at("frame_count").get<std::size_t>();
        if (j.contains("mean_interarrival"))
            spec.mean_interarrival = j.at("mean_interarrival").get<double>();
        if (j.contains("start_time"))
            spec.start_time = j.at("start_time").get<double>();
        if (j.contains("payload_bytes"))
            spec.payload_bytes = j.at("payload_bytes").get<std::size_t>();
        if (j.contains("channel"))
            spec.channel = j.at("channel").get<std::string>();
        if (j.contains("seed"))
            spec.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadSpec, std::string("cannot parse traffic spec: ") + e.what());
    }
    return spec;
}

void run_generate(const GenerateOpts& o, const CLI::App* cmd) {
    SyntheticTrafficSpec spec;
    if (!o.spec_path.empty())
        spec = spec_from_json(o.spec_path);
    else
        spec = preset_spec(o.preset);
    // explicit flags win over spec-file fields
    if (o.spec_path.empty() || cmd->count("--frames"))
        spec.frame_count = o.frames;
    if (o.spec_path.empty() || cmd->count("--mean-gap"))
        spec.mean_interarrival = o.mean_gap;
    if (o.spec_path.empty() || cmd->count("--start-time"))
        spec.start_time = o.start_time;
    if (o.spec_path.empty() || cmd->count("--payload-bytes"))
        spec.payload_bytes = o.payload_bytes;
    if (o.spec_path.empty() || cmd->count("--channel"))
        spec.channel = o.channel;
    if (o.spec_path.empty() || cmd->count("--seed"))
        spec.seed = o.seed;

    std::vector<CanFrame> frames = generate_benign(spec);
    std::ostringstream meta;
    meta << "synthetic first-order traffic; seed=" << spec.seed
         << " frames=" << spec.frame_count << " pids=" << spec.pid_alphabet.size();
    write_log_file(o.out, frames, {meta.str()});
    std::cerr << "wrote " << frames.size() << " frames to " << o.out << '\n';
}

// --------------------------------------------------------------------- inject

struct InjectOpts {
    std::string log, out, labels_out, pid, payload_hex, channel;
    std::size_t rate = 1, start = 0, end = 0;
    std::uint64_t seed = 1;
    bool strict = false;
};

void run_inject(const InjectOpts& o, const CLI::App* cmd) {
    ReadOptions ropts;
    ropts.strict = o.strict;
    ReadResult read = read_log_file(o.log, ropts);
    for (const auto& w : read.warnings)
        std::cerr << o.log << ':' << w.line << ": skipped: " << w.message << '\n';

    InjectionSpec spec;
    spec.target_pid = o.pid;
    spec.payload = parse_hex_payload(o.payload_hex);
    spec.rate = o.rate;
    spec.start_frame = o.start;
    spec.end_frame = cmd->count("--end") ? o.end : read.frames.size();
    spec.seed = o.seed;
    spec.channel = o.channel;

    InjectResult result = inject_frames(read.frames, spec);
    std::ostringstream meta;
    meta << "injected pid=" << spec.target_pid << " rate=" << spec.rate << " interval=["
         << spec.start_frame << ',' << spec.end_frame << ") seed=" << spec.seed;
    write_log_file(o.out, result.frames, {meta.str()});
    if (!o.labels_out.empty())
        write_label_file(o.labels_out, result.labels);
    std::size_t injected = 0;
    for (Label l : result.labels)
        injected += l == Label::injected;
    std::cerr << "wrote " << result.frames.size() << " frames (" << injected
              << " injected) to " << o.out << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CAN-bus log toolkit: windowed message-sequence-graph similarity "
                 "and fabricated-frame injection detection"};
    app.set_version_flag("--version", "1.0.0");
    app.require_subcommand(1);

    SimilarityOpts sim;
    auto* c_sim = app.add_subcommand(
        "similarity", "Similarity series of consecutive window graphs from a log");
    c_sim->add_option("--log", sim.log, "candump-style input log")->required();
    c_sim->add_option("--labels", sim.labels, "per-frame 0/1 ground-truth sidecar")
        ->capture_default_str();
    c_sim->add_option("--window", sim.window, "frames per window")->capture_default_str();
    c_sim->add_option("--stride", sim.stride, "window stride; 0 = window size")
        ->capture_default_str();
    c_sim->add_option("--metric", sim.metric, "similarity metric (cosine|pearson)")
        ->capture_default_str();
    c_sim->add_option("--channel", sim.channel, "bus channel to keep")->capture_default_str();
    c_sim->add_flag("--all-channels", sim.all_channels, "keep every channel")
        ->capture_default_str();
    c_sim->add_flag("--strict", sim.strict, "abort on the first malformed line")
        ->capture_default_str();
    c_sim->add_option("--out", sim.out, "output CSV path; empty = stdout")
        ->capture_default_str();
    c_sim->add_option("--svg", sim.svg, "also render the series to this SVG file")
        ->capture_default_str();
    c_sim->add_option("--svg-threshold", sim.svg_threshold,
                      "draw this threshold line in the SVG");
    c_sim->callback([&] { run_similarity(sim); });

    ExportDotOpts dot;
    auto* c_dot = app.add_subcommand("export-dot", "Export one window graph as Graphviz");
    c_dot->add_option("--log", dot.log, "candump-style input log")->required();
    c_dot->add_option("--window", dot.window, "frames per window")->capture_default_str();
    c_dot->add_option("--stride", dot.stride, "window stride; 0 = window size")
        ->capture_default_str();
    c_dot->add_option("--index", dot.index, "window index to export")->capture_default_str();
    c_dot->add_option("--name", dot.name, "graph name")->capture_default_str();
    c_dot->add_option("--channel", dot.channel, "bus channel to keep")->capture_default_str();
    c_dot->add_flag("--all-channels", dot.all_channels, "keep every channel")
        ->capture_default_str();
    c_dot->add_flag("--strict", dot.strict, "abort on the first malformed line")
        ->capture_default_str();
    c_dot->add_option("--out", dot.out, "output path; empty = stdout")->capture_default_str();
    c_dot->callback([&] { run_export_dot(dot); });

    DetectThresholdOpts thr;
    auto* c_thr = app.add_subcommand("detect-threshold",
                                     "Flag similarity pairs below a fixed threshold");
    c_thr->add_option("--series", thr.series, "similarity CSV input")->required();
    c_thr->add_option("--threshold", thr.threshold, "attack iff value < threshold")
        ->capture_default_str();
    c_thr->add_flag("--calibrate", thr.calibrate,
                    "pick the accuracy-maximizing threshold from the labeled series")
        ->capture_default_str();
    c_thr->add_option("--verdicts", thr.verdicts, "write per-pair verdict CSV here")
        ->capture_default_str();
    c_thr->add_option("--out", thr.out, "report JSON path; empty = stdout")
        ->capture_default_str();
    c_thr->callback([&] { run_detect_threshold(thr); });

    DetectCpdOpts cpd;
    auto* c_cpd = app.add_subcommand("detect-cpd",
                                     "Bayesian single change-point scan of a series");
    c_cpd->add_option("--series", cpd.series, "similarity CSV input")->required();
    c_cpd->add_option("--samples", cpd.config.samples, "MCMC iterations, burn-in included")
        ->capture_default_str();
    c_cpd->add_option("--burn-in", cpd.config.burn_in, "iterations discarded for adaptation")
        ->capture_default_str();
    c_cpd->add_option("--strength-threshold", cpd.config.strength_threshold,
                      "percent mean shift that counts as a change")
        ->capture_default_str();
    c_cpd->add_option("--seed", cpd.config.seed, "sampler seed")->capture_default_str();
    c_cpd->add_option("--posterior", cpd.posterior, "write the change-index posterior CSV here")
        ->capture_default_str();
    c_cpd->add_option("--out", cpd.out, "report JSON path; empty = stdout")
        ->capture_default_str();
    c_cpd->callback([&] { run_detect_cpd(cpd); });

    TrainLstmOpts trn;
    auto* c_trn = app.add_subcommand(
        "train-lstm", "Train the sequence classifier on a benign + an injected series");
    c_trn->add_option("--benign", trn.benign, "benign similarity CSV")->required();
    c_trn->add_option("--injected", trn.injected, "injected similarity CSV")->required();
    c_trn->add_option("--checkpoint", trn.checkpoint, "write the trained model here")
        ->required();
    c_trn->add_option("--history", trn.history, "write per-epoch loss/accuracy CSV here")
        ->capture_default_str();
    c_trn->add_option("--lookback", trn.lookback, "values per training sample")
        ->capture_default_str();
    c_trn->add_option("--train-fraction", trn.config.train_fraction,
                      "leading fraction of samples used for training")
        ->capture_default_str();
    c_trn->add_option("--input-units", trn.config.input_units, "first layer width")
        ->capture_default_str();
    c_trn->add_option("--hidden-units", trn.config.hidden_units, "second layer width")
        ->capture_default_str();
    c_trn->add_option("--dropout", trn.config.dropout, "inverted dropout rate")
        ->capture_default_str();
    c_trn->add_option("--learning-rate", trn.config.learning_rate, "Adam step size")
        ->capture_default_str();
    c_trn->add_option("--batch-size", trn.config.batch_size, "samples per update")
        ->capture_default_str();
    c_trn->add_option("--epochs", trn.config.epochs, "training epochs")->capture_default_str();
    c_trn->add_option("--seed", trn.config.seed, "init/shuffle/dropout seed")
        ->capture_default_str();
    c_trn->add_option("--out", trn.out, "summary JSON path; empty = stdout")
        ->capture_default_str();
    c_trn->callback([&] { run_train_lstm(trn); });

    PredictLstmOpts prd;
    auto* c_prd = app.add_subcommand("predict-lstm",
                                     "Score sequences with a trained checkpoint");
    c_prd->add_option("--checkpoint", prd.checkpoint, "trained model JSON")->required();
    c_prd->add_option("--benign", prd.benign, "benign similarity CSV")->required();
    c_prd->add_option("--injected", prd.injected, "injected similarity CSV")->required();
    c_prd->add_option("--train-fraction", prd.train_fraction,
                      "split used when the dataset was built")
        ->capture_default_str();
    c_prd->add_option("--split", prd.split, "which samples to score (train|test|all)")
        ->capture_default_str();
    c_prd->add_option("--predictions", prd.predictions, "write per-sample CSV here")
        ->capture_default_str();
    c_prd->add_option("--out", prd.out, "report JSON path; empty = stdout")
        ->capture_default_str();
    c_prd->callback([&] { run_predict_lstm(prd); });

    EvalOpts evl;
    auto* c_evl = app.add_subcommand("eval",
                                     "Confusion matrix of a verdict file vs a label file");
    c_evl->add_option("--verdicts", evl.verdicts, "0/1 verdict per line")->required();
    c_evl->add_option("--labels", evl.labels, "0/1 ground truth per line")->required();
    c_evl->add_option("--detector", evl.detector,
                      "detector name echoed in the report (threshold|change_point|lstm)")
        ->capture_default_str();
    c_evl->add_option("--metric", evl.metric, "metric name echoed in the report")
        ->capture_default_str();
    c_evl->add_option("--out", evl.out, "report JSON path; empty = stdout")
        ->capture_default_str();
    c_evl->callback([&] { run_eval(evl); });

    GenerateOpts gen;
    auto* c_gen = app.add_subcommand("generate", "Generate synthetic benign bus traffic");
    c_gen->add_option("--spec", gen.spec_path,
                      "traffic spec JSON (pid_alphabet, transition, ...)")
        ->capture_default_str();
    c_gen->add_option("--preset", gen.preset,
                      "built-in traffic model (ring10|ring10-noisy|ring3)")
        ->capture_default_str();
    c_gen->add_option("--frames", gen.frames, "frames to generate")->capture_default_str();
    c_gen->add_option("--mean-gap", gen.mean_gap, "mean inter-arrival seconds")
        ->capture_default_str();
    c_gen->add_option("--start-time", gen.start_time, "timestamp origin")
        ->capture_default_str();
    c_gen->add_option("--payload-bytes", gen.payload_bytes, "payload length per frame")
        ->capture_default_str();
    c_gen->add_option("--channel", gen.channel, "channel name")->capture_default_str();
    c_gen->add_option("--seed", gen.seed, "generator seed (echoed in the log header)")
        ->capture_default_str();
    c_gen->add_option("--out", gen.out, "output log path")->required();
    c_gen->callback([&] {
        if (gen.spec_path.empty() && gen.preset.empty())
            throw CLI::ValidationError("generate", "either --spec or --preset is required");
        if (!gen.spec_path.empty() && !gen.preset.empty())
            throw CLI::ValidationError("generate", "--spec and --preset are exclusive");
        run_generate(gen, c_gen);
    });

    InjectOpts inj;
    auto* c_inj = app.add_subcommand("inject",
                                     "Insert fabricated frames into a recorded log");
    c_inj->add_option("--log", inj.log, "candump-style input log")->required();
    c_inj->add_option("--out", inj.out, "output log path")->required();
    c_inj->add_option("--labels-out", inj.labels_out, "write the 0/1 frame sidecar here")
        ->capture_default_str();
    c_inj->add_option("--pid", inj.pid, "PID of the fabricated frames")->required();
    c_inj->add_option("--payload", inj.payload_hex, "fabricated payload as hex digits")
        ->capture_default_str();
    c_inj->add_option("--rate", inj.rate, "insert after every rate-th legitimate frame")
        ->capture_default_str();
    c_inj->add_option("--start", inj.start, "first legitimate frame ordinal of the interval")
        ->capture_default_str();
    c_inj->add_option("--end", inj.end, "one-past-last frame ordinal; default: log end")
        ->capture_default_str();
    c_inj->add_option("--seed", inj.seed, "timestamp jitter seed")->capture_default_str();
    c_inj->add_flag("--strict", inj.strict, "abort on the first malformed line")
        ->capture_default_str();
    c_inj->callback([&] { run_inject(inj, c_inj); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::BadSpec || e.code() == Errc::BadTransitionMatrix ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
