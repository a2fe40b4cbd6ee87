#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "porebench/rng.hpp"
#include "porebench/trace_assembly.hpp"

namespace porebench {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kGeneratorVersion = "porebench-1.0.0";

// Parameter sweep. Sphere diameters in m, concentrations in nmol/L,
// durations in s.
struct GridSpec {
    std::vector<double> dnp_values;
    std::vector<double> cnp_values;
    std::vector<double> duration_values;
    double snr = 4.0;

    // 3..17 nm step 1 nm; 20 log-spaced concentrations in [0.01, 1] nM;
    // {0.5, 1, 1.5, 3, 5} ms.
    static GridSpec defaults();

    void validate() const;
    std::size_t cell_count() const { return dnp_values.size() * cnp_values.size() * duration_values.size(); }
};

struct GridCell {
    std::size_t index = 0;
    double duration = 0.0;         // s
    double concentration = 0.0;    // nM
    double sphere_diameter = 0.0;  // m
};

// Cells enumerate duration-major, then concentration, then diameter.
GridCell grid_cell(const GridSpec& grid, std::size_t index);

// `base` with the cell's diameter, concentration and duration and the given SNR.
TraceConfig cell_config(const TraceConfig& base, const GridCell& cell, double snr);

struct WindowLabel {
    std::string trace_id;
    std::size_t window_index = 0;
    std::size_t count = 0;
    double avg_amplitude_pa = 0.0;
    double avg_duration_ms = 0.0;

    bool operator==(const WindowLabel&) const = default;
};

struct SplitSizes {
    std::size_t train = 60'000;
    std::size_t val = 30'000;
    std::size_t test = 30'000;
};

inline const std::vector<std::string> kSplitNames{"train", "val", "test"};

struct TraceRecord {
    std::string id;
    std::string split;
    std::size_t cell = 0;
    double duration_ms = 0.0;
    double cnp_nm = 0.0;
    double dnp_nm = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_samples = 0;
    std::size_t n_events = 0;
    std::size_t n_jumps = 0;
    double i0_pa = 0.0;
    double delta_i_pa = 0.0;
    double noise_rms_pa = 0.0;
    double probability = 0.0;
    bool probability_clamped = false;
    bool external = false;
    std::string source;
    double source_sample_rate = 0.0;
};

struct DatasetManifest {
    int schema_version = kSchemaVersion;
    std::string generator_version = kGeneratorVersion;
    std::string kind = "generated";  // or "external"
    std::uint64_t master_seed = 0;
    double sample_rate = 10'000.0;
    double snr = 4.0;
    double trace_seconds = 10.0;
    double window_seconds = 0.5;
    std::string seed_derivation = kSeedDerivationId;
    GridSpec grid;
    SplitSizes split_windows;
    std::map<std::string, std::size_t> split_traces;
    TraceConfig base_config;
    std::vector<TraceRecord> traces;
    std::vector<std::string> warnings;

    std::size_t windows_per_trace() const;
    const TraceRecord& trace(const std::string& id) const;
};

nlohmann::json to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const TraceConfig& config);
TraceConfig config_from_json(const nlohmann::json& j);

// Throws IoError when missing, ValidationError (with parse location) when malformed.
DatasetManifest load_manifest(const std::filesystem::path& dataset_dir);
void save_manifest(const std::filesystem::path& dataset_dir, const DatasetManifest& manifest);

// --- windows -------------------------------------------------------------

// Labels for consecutive windows of `window_samples` covering n_samples
// (partial tail ignored). An event belongs to the window holding its start sample.
std::vector<WindowLabel> label_windows(const std::vector<SpikeEvent>& events, std::size_t n_samples,
                                       std::size_t window_samples, const std::string& trace_id);

struct WindowSegment {
    std::span<const double> samples;
    WindowLabel label;
};

struct Segmentation {
    std::vector<WindowSegment> windows;
    std::size_t dropped_samples = 0;  // partial tail
};

// Non-overlapping windows over trace.noisy. A partial final window is dropped
// and reported; with `strict` it is a ValidationError instead.
Segmentation segment_windows(const Trace& trace, const std::string& trace_id, double window_seconds = 0.5,
                             bool strict = false);

// --- files -----------------------------------------------------------------

struct EventRow {
    double start_s = 0.0;
    double end_s = 0.0;
    double duration_ms = 0.0;
    double amplitude_pa = 0.0;
};

inline constexpr const char* kEventsHeader = "start_s,end_s,duration_ms,amplitude_pA";
inline constexpr const char* kWindowsHeader = "trace_id,window_index,count,avg_amplitude_pA,avg_duration_ms";

std::string events_csv(const std::vector<SpikeEvent>& events);
std::vector<EventRow> read_events_csv(const std::filesystem::path& path);

std::string windows_csv(const std::vector<WindowLabel>& labels);
std::vector<WindowLabel> parse_windows_csv(std::string_view text);
std::vector<WindowLabel> read_windows_csv(const std::filesystem::path& path);
void write_windows_csv(const std::filesystem::path& path, const std::vector<WindowLabel>& labels);

struct TraceFiles {
    std::filesystem::path noisy;
    std::filesystem::path clean;
    std::filesystem::path events;
};
TraceFiles trace_files(const std::filesystem::path& dataset_dir, const std::string& id);

// --- generation ------------------------------------------------------------

struct GenerateOptions {
    GridSpec grid = GridSpec::defaults();
    SplitSizes splits;
    std::uint64_t master_seed = 0;
    TraceConfig base;  // per-cell fields (diameter, concentration, duration, SNR) are overwritten
    double window_seconds = 0.5;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Whole traces are allocated round-robin over cells within each split.
// Trace k (global order train, val, test) uses seed derive_seed(master_seed, k).
DatasetManifest generate_dataset(const GenerateOptions& options, const std::filesystem::path& out_dir);

// --- database export -------------------------------------------------------

struct ExportSummary {
    std::size_t traces = 0;
    std::size_t files = 0;
};

// <db>/index.csv plus <db>/<id>/{noisy.f32le, clean.f32le, events.csv, conditions.json}.
ExportSummary export_database(const std::filesystem::path& dataset_dir, const std::filesystem::path& db_dir);

// --- external traces -------------------------------------------------------

enum class SampleFormat { f32le, csv };

inline constexpr double kNetworkSampleRate = 10'000.0;

// Linear interpolation onto the 10 kHz grid; identity when already at 10 kHz.
std::vector<double> resample_linear(std::span<const double> samples, double from_rate, double to_rate);

// CSV: one sample per row in pA, last column used when several are present.
// `skip_header` drops the first row unparsed.
Trace import_external_trace(const std::filesystem::path& path, double sample_rate, SampleFormat format,
                            bool skip_header = false);

}  // namespace porebench
