#include "porebench/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "porebench/dataset_io.hpp"
#include "porebench/detector.hpp"
#include "porebench/errors.hpp"
#include "porebench/evaluation.hpp"
#include "porebench/noise_synth.hpp"
#include "porebench/parallel.hpp"
#include "porebench/sample_io.hpp"
#include "porebench/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace porebench::cli {

namespace {

std::shared_ptr<spdlog::logger> logger() {
    static std::shared_ptr<spdlog::logger> log = [] {
        auto l = spdlog::stderr_logger_mt("porebench");
        l->set_pattern("[porebench] [%l] %v");
        return l;
    }();
    const char* env = std::getenv("POREBENCH_LOG");
    const std::string level = env ? env : "info";
    if (level == "error") {
        log->set_level(spdlog::level::err);
    } else if (level == "debug") {
        log->set_level(spdlog::level::debug);
    } else {
        log->set_level(spdlog::level::info);
    }
    return log;
}

// Machine-parsable one-line failure record on stderr.
int fail(ExitCode code, const char* kind, const std::string& message) {
    std::string escaped;
    for (char c : message) {
        if (c == '"' || c == '\\') escaped += '\\';
        escaped += (c == '\n') ? ' ' : c;
    }
    std::cerr << "porebench: error=" << kind << " exit=" << static_cast<int>(code) << " message=\"" << escaped
              << "\"\n";
    return code;
}

// --config FILE: a JSON object whose keys mirror long flag names. Values fill
// in flags absent from the command line; arrays expand to multi-value flags.
std::vector<std::string> apply_config_overlay(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end() || std::next(it) == args.end()) return args;
    const fs::path path = *std::next(it);
    args.erase(it, it + 2);
    json overlay;
    try {
        overlay = json::parse(io::read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": JSON parse error at byte " + std::to_string(e.byte));
    }
    if (!overlay.is_object()) throw ValidationError(path.string() + ": config must be a JSON object");
    auto on_command_line = [&](const std::string& flag) {
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };
    std::vector<std::string> extra;
    for (const auto& [key, value] : overlay.items()) {
        const std::string flag = "--" + key;
        if (on_command_line(flag)) continue;
        auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        if (value.is_boolean()) {
            if (value.get<bool>()) extra.push_back(flag);
        } else if (value.is_array()) {
            extra.push_back(flag);
            for (const auto& v : value) extra.push_back(text(v));
        } else {
            extra.push_back(flag);
            extra.push_back(text(value));
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

// --- generate ----------------------------------------------------------------

struct GenerateArgs {
    double snr = 4.0;
    std::uint64_t seed = 0;
    std::string out;
    std::vector<double> dnp_nm;
    std::vector<double> cnp_nm;
    std::vector<double> duration_ms;
    std::size_t train = 60'000;
    std::size_t val = 30'000;
    std::size_t test = 30'000;
    double trace_seconds = 10.0;
    unsigned threads = 0;
};

int do_generate(const GenerateArgs& a) {
    GenerateOptions opt;
    opt.grid = GridSpec::defaults();
    if (!a.dnp_nm.empty()) {
        opt.grid.dnp_values.clear();
        for (double v : a.dnp_nm) opt.grid.dnp_values.push_back(v * 1e-9);
    }
    if (!a.cnp_nm.empty()) opt.grid.cnp_values = a.cnp_nm;
    if (!a.duration_ms.empty()) {
        opt.grid.duration_values.clear();
        for (double v : a.duration_ms) opt.grid.duration_values.push_back(v * 1e-3);
    }
    opt.grid.snr = a.snr;
    opt.splits = {a.train, a.val, a.test};
    opt.master_seed = a.seed;
    opt.base.trace_seconds = a.trace_seconds;
    opt.threads = a.threads;
    opt.grid.validate();

    auto log = logger();
    log->info("generate: snr={} seed={} out={} cells={} splits(windows)={}/{}/{} trace_seconds={} threads={}", a.snr,
              a.seed, a.out, opt.grid.cell_count(), a.train, a.val, a.test, a.trace_seconds,
              resolve_threads(a.threads));
    const DatasetManifest m = generate_dataset(opt, a.out);
    for (const auto& w : m.warnings) log->warn("{}", w);
    log->info("generate: wrote {} traces", m.traces.size());
    return kOk;
}

// --- segment -----------------------------------------------------------------

struct SegmentArgs {
    std::string in;
    std::string events;
    std::string id;
    std::string out;
    double rate = 10'000.0;
    double window_seconds = 0.5;
};

int do_segment(const SegmentArgs& a) {
    Trace trace;
    trace.sample_rate = a.rate;
    trace.noisy = io::read_samples_f32le(a.in);
    if (!a.events.empty()) {
        for (const auto& row : read_events_csv(a.events)) {
            SpikeEvent e;
            e.start_index = std::llround(row.start_s * a.rate);
            e.start_time = row.start_s;
            e.duration = row.duration_ms * 1e-3;
            e.amplitude = row.amplitude_pa * 1e-12;
            trace.events.push_back(e);
        }
    }
    const std::string id = a.id.empty() ? fs::path(a.in).stem().string() : a.id;
    logger()->info("segment: in={} id={} rate={} window_seconds={}", a.in, id, a.rate, a.window_seconds);
    const Segmentation seg = segment_windows(trace, id, a.window_seconds);
    if (seg.dropped_samples > 0) {
        logger()->warn("segment: dropped {} trailing samples (partial window)", seg.dropped_samples);
    }
    std::vector<WindowLabel> labels;
    for (const auto& w : seg.windows) labels.push_back(w.label);
    write_windows_csv(a.out, labels);
    return kOk;
}

// --- detect ------------------------------------------------------------------

struct DetectArgs {
    std::string in;
    double multiple = 4.0;
    std::string rms = "estimate";
    std::string out;
    std::string split = "test";
    std::string events_out;
    bool on_clean = false;
    unsigned threads = 0;
};

int do_detect(const DetectArgs& a) {
    const DatasetManifest m = load_manifest(a.in);
    DetectorConfig cfg;
    cfg.threshold_multiple = a.multiple;
    cfg.rms_source = a.rms == "clean" ? RmsSource::oracle : RmsSource::estimated;
    logger()->info("detect: in={} split={} multiple={} rms={} on_clean={} threads={}", a.in, a.split, a.multiple,
                   a.rms, a.on_clean, resolve_threads(a.threads));

    std::vector<const TraceRecord*> traces;
    for (const auto& t : m.traces) {
        if (t.split == a.split) traces.push_back(&t);
    }
    const auto window_samples = static_cast<std::size_t>(std::llround(m.window_seconds * m.sample_rate));
    std::vector<std::vector<WindowLabel>> labels(traces.size());
    std::vector<std::vector<DetectedEvent>> detections(traces.size());
    parallel_for(traces.size(), a.threads, [&](std::size_t i) {
        const TraceFiles files = trace_files(a.in, traces[i]->id);
        const std::vector<double> noisy = io::read_samples_f32le(files.noisy);
        std::vector<double> clean;
        if (cfg.rms_source == RmsSource::oracle || a.on_clean) {
            if (!fs::exists(files.clean)) {
                throw ValidationError("trace " + traces[i]->id + " has no clean companion");
            }
            clean = io::read_samples_f32le(files.clean);
            if (clean.size() != noisy.size()) throw ValidationError("trace " + traces[i]->id + ": length mismatch");
        }
        double rms = 0.0;
        if (cfg.rms_source == RmsSource::oracle) {
            std::vector<double> diff(noisy.size());
            for (std::size_t k = 0; k < noisy.size(); ++k) diff[k] = noisy[k] - clean[k];
            rms = empirical_rms(diff);
        } else {
            rms = estimate_noise_rms(noisy);
        }
        const auto& signal = a.on_clean ? clean : noisy;
        detections[i] = detect_events(signal, rms, cfg, m.sample_rate);
        labels[i] = aggregate_detections(detections[i], signal.size(), window_samples, traces[i]->id, 1e12);
    });

    std::vector<WindowLabel> rows;
    for (const auto& l : labels) rows.insert(rows.end(), l.begin(), l.end());
    write_windows_csv(a.out, rows);
    if (!a.events_out.empty()) {
        std::string csv = "trace_id,peak_index,start_index,end_index,amplitude_pA,duration_ms,frequency_hz\n";
        for (std::size_t i = 0; i < traces.size(); ++i) {
            const auto freq = event_frequency(detections[i], m.sample_rate);
            for (std::size_t k = 0; k < detections[i].size(); ++k) {
                const auto& d = detections[i][k];
                csv += traces[i]->id + "," + std::to_string(d.peak_index) + "," + std::to_string(d.start_index) + "," +
                       std::to_string(d.end_index) + "," + io::format_number(d.amplitude * 1e12) + "," +
                       io::format_number(d.duration * 1e3) + "," +
                       (k < freq.size() ? io::format_number(freq[k]) : std::string()) + "\n";
            }
        }
        io::write_text_file(a.events_out, csv);
    }
    return kOk;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateArgs {
    std::string labels;
    std::string pred;
    std::string out;
    std::string manifest;
};

int do_evaluate(const EvaluateArgs& a) {
    logger()->info("evaluate: labels={} pred={} out={} manifest={}", a.labels, a.pred, a.out,
                   a.manifest.empty() ? "(auto)" : a.manifest);
    const auto labels = read_windows_csv(a.labels);
    const auto preds = read_windows_csv(a.pred);
    fs::path manifest_dir = a.manifest;
    if (manifest_dir.empty()) {
        const fs::path guess = fs::absolute(a.labels).parent_path().parent_path();
        if (fs::exists(guess / "manifest.json")) manifest_dir = guess;
    }
    std::optional<CellLookup> cells;
    if (!manifest_dir.empty()) cells = cell_lookup(load_manifest(manifest_dir));
    const auto records = score_predictions(preds, labels);
    const EvaluationReport report = aggregate(records, cells);
    const json j = report_to_json(report);
    if (!a.out.empty()) io::write_text_file(a.out, j.dump(2) + "\n");
    std::cout << "windows=" << report.window_count << " improper=" << report.improper_count
              << " count=" << report.totals.count.mean << " amplitude=" << report.totals.amplitude.mean
              << " duration=" << report.totals.duration.mean << "\n";
    return kOk;
}

// --- psd ---------------------------------------------------------------------

struct PsdArgs {
    std::string out;
    double f_min = 1.0;
    double f_max = 5'000.0;
    std::size_t points = 200;
    double snr = 0.0;
    double dnp_nm = 10.0;
    std::string welch_out;
    std::optional<std::uint64_t> seed;
    std::size_t samples = 1'000'000;
    std::size_t segment = 16'384;
};

int do_psd(const PsdArgs& a) {
    if (!a.welch_out.empty() && !a.seed) throw CLI::ValidationError("--welch-out requires --seed");
    if (!(a.f_min < a.f_max)) throw CLI::ValidationError("--fmin must be below --fmax");
    TraceConfig config;
    NoisePsdModel model = make_noise_model(config.geometry, config.electrolyte, config.bias, config.noise,
                                           config.bandwidth, config.constants);
    const double seconds = static_cast<double>(a.samples) / config.sampling.sample_rate;
    if (a.snr > 0.0) {
        const double delta_i = blockage_amplitude(model.open_pore_current, a.dnp_nm * 1e-9, config.geometry.diameter);
        model.scale = snr_scale_factor(delta_i, a.snr, model_rms(model, seconds));
    }
    logger()->info("psd: out={} fmin={} fmax={} points={} snr={} scale={} welch_out={}", a.out, a.f_min, a.f_max,
                   a.points, a.snr, model.scale, a.welch_out.empty() ? "-" : a.welch_out);

    std::string csv = "f_hz,s_i_a2_per_hz\n";
    const double ratio = a.points > 1 ? std::log(a.f_max / a.f_min) / static_cast<double>(a.points - 1) : 0.0;
    for (std::size_t i = 0; i < a.points; ++i) {
        const double f = a.f_min * std::exp(ratio * static_cast<double>(i));
        csv += io::format_number(f) + "," + io::format_number(model.scale * model.scale * psd_total(f, model)) + "\n";
    }
    io::write_text_file(a.out, csv);

    if (!a.welch_out.empty()) {
        const auto noise = synthesize_colored_noise(model, a.samples, config.sampling.sample_rate, *a.seed);
        const PsdEstimate est = welch_psd(noise.samples, config.sampling.sample_rate, a.segment);
        std::string w = "f_hz,s_i_a2_per_hz\n";
        for (std::size_t i = 0; i < est.frequency.size(); ++i) {
            w += io::format_number(est.frequency[i]) + "," + io::format_number(est.density[i]) + "\n";
        }
        io::write_text_file(a.welch_out, w);
    }
    return kOk;
}

// --- import ------------------------------------------------------------------

struct ImportArgs {
    std::string in;
    double rate = 10'000.0;
    std::string format = "f32le";
    std::string out;
    std::string id;
    bool skip_header = false;
};

int do_import(const ImportArgs& a) {
    logger()->info("import: in={} rate={} format={} out={}", a.in, a.rate, a.format, a.out);
    const Trace trace = import_external_trace(a.in, a.rate, a.format == "csv" ? SampleFormat::csv : SampleFormat::f32le,
                                              a.skip_header);
    const std::string id = a.id.empty() ? fs::path(a.in).stem().string() : a.id;
    std::error_code ec;
    fs::create_directories(fs::path(a.out) / "traces", ec);
    if (ec) throw IoError("cannot create " + a.out + ": " + ec.message());

    DatasetManifest m;
    if (fs::exists(fs::path(a.out) / "manifest.json")) {
        m = load_manifest(a.out);
        if (m.kind != "external") throw ValidationError(a.out + " holds a generated dataset");
        std::erase_if(m.traces, [&](const TraceRecord& t) { return t.id == id; });
    } else {
        m.kind = "external";
        m.snr = std::numeric_limits<double>::infinity();
        m.grid = GridSpec{{1e-9}, {1.0}, {1e-3}, 1.0};
        m.split_windows = {0, 0, 0};
    }
    m.sample_rate = trace.sample_rate;
    io::write_samples_f32le(trace_files(a.out, id).noisy, trace.noisy);
    TraceRecord r;
    r.id = id;
    r.split = "external";
    r.n_samples = trace.size();
    r.external = true;
    r.source = trace.provenance.source;
    r.source_sample_rate = trace.provenance.source_sample_rate;
    m.traces.push_back(r);
    std::sort(m.traces.begin(), m.traces.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    m.split_traces["external"] = m.traces.size();
    save_manifest(a.out, m);
    const auto dropped = trace.size() % static_cast<std::size_t>(std::llround(m.window_seconds * m.sample_rate));
    if (dropped) logger()->warn("import: {} trailing samples do not fill a window and will be ignored", dropped);
    return kOk;
}

// --- manifest / export -------------------------------------------------------

int do_manifest(const std::string& dir, bool as_json) {
    const DatasetManifest m = load_manifest(dir);
    const json full = to_json(m);
    json summary = {{"schema_version", full["schema_version"]}, {"generator_version", full["generator_version"]},
                    {"kind", full["kind"]},                     {"master_seed", full["master_seed"]},
                    {"seed_derivation", full["seed_derivation"]}, {"sample_rate_hz", full["sample_rate_hz"]},
                    {"snr", full["snr"]},                       {"trace_seconds", full["trace_seconds"]},
                    {"window_seconds", full["window_seconds"]}, {"grid", full["grid"]},
                    {"splits", full["splits"]},                 {"trace_count", m.traces.size()},
                    {"warning_count", m.warnings.size()}};
    if (as_json) {
        std::cout << summary.dump(2) << "\n";
        return kOk;
    }
    std::cout << "kind:             " << m.kind << "\n"
              << "schema_version:   " << m.schema_version << "\n"
              << "generator:        " << m.generator_version << "\n"
              << "master_seed:      " << m.master_seed << " (" << m.seed_derivation << ")\n"
              << "sample_rate_hz:   " << m.sample_rate << "\n"
              << "snr:              " << m.snr << "\n"
              << "trace_seconds:    " << m.trace_seconds << "\n"
              << "window_seconds:   " << m.window_seconds << "\n"
              << "grid:             " << m.grid.dnp_values.size() << " D_np x " << m.grid.cnp_values.size()
              << " C_np x " << m.grid.duration_values.size() << " durations = " << m.grid.cell_count() << " cells\n";
    for (const auto& [name, count] : m.split_traces) {
        std::cout << "split " << name << ": " << count << " traces\n";
    }
    std::cout << "traces:           " << m.traces.size() << "\n"
              << "warnings:         " << m.warnings.size() << "\n";
    return kOk;
}

int do_export(const std::string& in, const std::string& out) {
    logger()->info("export: in={} out={}", in, out);
    const ExportSummary s = export_database(in, out);
    logger()->info("export: {} traces, {} files", s.traces, s.files);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
    std::vector<std::string> args;
    try {
        args = apply_config_overlay(raw_args);
    } catch (const IoError& e) {
        return fail(kIo, "io", e.what());
    } catch (const std::exception& e) {
        return fail(kValidation, "validation", e.what());
    }

    CLI::App app{"porebench: synthetic nanopore translocation traces, baseline detector and evaluation harness"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand help for every subcommand");
    app.add_option("--config", "JSON file whose keys mirror long flag names (read before parsing)");

    const auto positive = CLI::PositiveNumber;
    const auto non_negative = CLI::NonNegativeNumber;

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a labelled grid-sweep dataset");
    generate->add_option("--snr", gen.snr, "Signal-to-noise ratio dI / (6 RMS) [dimensionless]")->required()->check(positive);
    generate->add_option("--seed", gen.seed, "Master seed [integer]")->required();
    generate->add_option("--out", gen.out, "Output directory [path]")->required();
    generate->add_option("--dnp-nm", gen.dnp_nm, "Sphere diameters [nm] (default 3..17 step 1)")->check(positive);
    generate->add_option("--cnp-nm", gen.cnp_nm, "Concentrations [nmol/L] (default 20 log-spaced in [0.01, 1])")->check(positive);
    generate->add_option("--duration-ms", gen.duration_ms, "Translocation durations [ms] (default 0.5 1 1.5 3 5)")->check(positive);
    generate->add_option("--train", gen.train, "Training windows [count]")->capture_default_str()->check(non_negative);
    generate->add_option("--val", gen.val, "Validation windows [count]")->capture_default_str()->check(non_negative);
    generate->add_option("--test", gen.test, "Test windows [count]")->capture_default_str()->check(non_negative);
    generate->add_option("--trace-seconds", gen.trace_seconds, "Trace length [s]")->capture_default_str()->check(positive);
    generate->add_option("--threads", gen.threads, "Worker threads [count], 0 = all cores")->capture_default_str();

    SegmentArgs seg;
    auto* segment = app.add_subcommand("segment", "Cut a trace file into 0.5 s windows and label them");
    segment->add_option("--in", seg.in, "Trace samples, float32 little-endian [pA]")->required();
    segment->add_option("--events", seg.events, "Event table CSV (start_s,end_s,duration_ms,amplitude_pA)");
    segment->add_option("--id", seg.id, "Trace id written to the CSV (default: file stem)");
    segment->add_option("--rate", seg.rate, "Sample rate [Hz]")->capture_default_str()->check(positive);
    segment->add_option("--window-seconds", seg.window_seconds, "Window length [s]")->capture_default_str()->check(positive);
    segment->add_option("--out", seg.out, "Output window CSV [path]")->required();

    DetectArgs det;
    auto* detect = app.add_subcommand("detect", "Run the prominence-threshold detector over a dataset split");
    detect->add_option("--in", det.in, "Dataset directory [path]")->required();
    detect->add_option("--multiple", det.multiple, "Prominence threshold [multiples of noise RMS]")->capture_default_str()->check(positive);
    detect->add_option("--rms", det.rms, "Noise RMS source: clean (noisy - clean) or estimate")->capture_default_str()
        ->check(CLI::IsMember({"clean", "estimate"}));
    detect->add_option("--out", det.out, "Prediction window CSV [path]")->required();
    detect->add_option("--split", det.split, "Split to process")->capture_default_str();
    detect->add_option("--events-out", det.events_out, "Per-event CSV with frequencies [path]");
    detect->add_flag("--on-clean", det.on_clean, "Detect on the clean companion instead of the noisy trace");
    detect->add_option("--threads", det.threads, "Worker threads [count], 0 = all cores")->capture_default_str();

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "Score a prediction CSV against window labels");
    evaluate->add_option("--labels", ev.labels, "Ground-truth window CSV [path]")->required();
    evaluate->add_option("--pred", ev.pred, "Prediction window CSV [path]")->required();
    evaluate->add_option("--out", ev.out, "Report JSON [path]");
    evaluate->add_option("--manifest", ev.manifest, "Dataset directory for grid cells (default: labels/../..)");

    PsdArgs ps;
    auto* psd = app.add_subcommand("psd", "Write the noise PSD model, optionally with a Welch estimate");
    psd->add_option("--out", ps.out, "Model CSV f_hz,s_i_a2_per_hz [path]")->required();
    psd->add_option("--fmin", ps.f_min, "Lowest frequency [Hz]")->capture_default_str()->check(positive);
    psd->add_option("--fmax", ps.f_max, "Highest frequency [Hz]")->capture_default_str()->check(positive);
    psd->add_option("--points", ps.points, "Log-spaced points [count]")->capture_default_str()->check(CLI::Range(2, 1'000'000));
    psd->add_option("--snr", ps.snr, "Scale the model to this SNR [dimensionless]; 0 = unscaled")->capture_default_str()->check(non_negative);
    psd->add_option("--dnp-nm", ps.dnp_nm, "Sphere diameter setting dI for --snr [nm]")->capture_default_str()->check(positive);
    psd->add_option("--welch-out", ps.welch_out, "Welch estimate of a realization [path]");
    psd->add_option("--seed", ps.seed, "Seed of the realization [integer]");
    psd->add_option("--samples", ps.samples, "Realization length [samples]")->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));
    psd->add_option("--segment", ps.segment, "Welch segment length [samples]")->capture_default_str()->check(CLI::Range(4, 1 << 24));

    ImportArgs im;
    auto* import_cmd = app.add_subcommand("import", "Import an external trace, resampled to 10 kHz");
    import_cmd->add_option("--in", im.in, "Input file [path]")->required();
    import_cmd->add_option("--rate", im.rate, "Input sample rate [Hz]")->capture_default_str()->check(positive);
    import_cmd->add_option("--format", im.format, "f32le (float32 pA) or csv (pA per row)")->capture_default_str()
        ->check(CLI::IsMember({"f32le", "csv"}));
    import_cmd->add_option("--out", im.out, "Dataset directory to create or extend [path]")->required();
    import_cmd->add_option("--id", im.id, "Trace id (default: file stem)");
    import_cmd->add_flag("--skip-header", im.skip_header, "Ignore the first CSV row");

    std::string manifest_dir;
    bool manifest_json = false;
    auto* manifest = app.add_subcommand("manifest", "Summarise a dataset manifest");
    manifest->add_option("dir,--dir", manifest_dir, "Dataset directory [path]")->required();
    manifest->add_flag("--json", manifest_json, "Print the summary as JSON");

    std::string export_in;
    std::string export_out;
    auto* export_cmd = app.add_subcommand("export", "Copy a dataset into the public database layout");
    export_cmd->add_option("--in", export_in, "Dataset directory [path]")->required();
    export_cmd->add_option("--out", export_out, "Database directory [path]")->required();

    try {
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kArgument, "argument", e.what());
    }

    try {
        if (generate->parsed()) return do_generate(gen);
        if (segment->parsed()) return do_segment(seg);
        if (detect->parsed()) return do_detect(det);
        if (evaluate->parsed()) return do_evaluate(ev);
        if (psd->parsed()) return do_psd(ps);
        if (import_cmd->parsed()) return do_import(im);
        if (manifest->parsed()) return do_manifest(manifest_dir, manifest_json);
        if (export_cmd->parsed()) return do_export(export_in, export_out);
        return fail(kArgument, "argument", "no subcommand");
    } catch (const CLI::ValidationError& e) {
        return fail(kArgument, "argument", e.what());
    } catch (const IoError& e) {
        return fail(kIo, "io", e.what());
    } catch (const ValidationError& e) {
        return fail(kValidation, "validation", e.what());
    } catch (const GenerationError& e) {
        return fail(kValidation, "generation", e.what());
    } catch (const DomainError& e) {
        return fail(kArgument, "domain", e.what());
    } catch (const std::exception& e) {
        return fail(kInternal, "internal", e.what());
    }
}

}  // namespace porebench::cli
