#include "porebench/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "porebench/errors.hpp"
#include "porebench/parallel.hpp"
#include "porebench/rng.hpp"
#include "porebench/sample_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace porebench {

// --- grid ------------------------------------------------------------------

GridSpec GridSpec::defaults() {
    GridSpec g;
    for (int nm = 3; nm <= 17; ++nm) g.dnp_values.push_back(nm * 1e-9);
    for (int k = 0; k < 20; ++k) g.cnp_values.push_back(std::pow(10.0, -2.0 + 2.0 * k / 19.0));
    g.duration_values = {0.5e-3, 1e-3, 1.5e-3, 3e-3, 5e-3};
    g.snr = 4.0;
    return g;
}

namespace {

void require_increasing(const std::vector<double>& values, const char* name) {
    if (values.empty()) throw ValidationError(std::string("grid: ") + name + " is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw ValidationError(std::string("grid: ") + name + " values must be positive and finite");
        }
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw ValidationError(std::string("grid: ") + name + " must be strictly increasing");
        }
    }
}

}  // namespace

void GridSpec::validate() const {
    require_increasing(dnp_values, "sphere diameters");
    require_increasing(cnp_values, "concentrations");
    require_increasing(duration_values, "durations");
    if (!(snr > 0.0)) throw ValidationError("grid: SNR must be positive");
}

GridCell grid_cell(const GridSpec& grid, std::size_t index) {
    if (index >= grid.cell_count()) throw DomainError("grid_cell: index out of range");
    const std::size_t nd = grid.dnp_values.size();
    const std::size_t nc = grid.cnp_values.size();
    GridCell c;
    c.index = index;
    c.sphere_diameter = grid.dnp_values[index % nd];
    c.concentration = grid.cnp_values[(index / nd) % nc];
    c.duration = grid.duration_values[index / (nd * nc)];
    return c;
}

TraceConfig cell_config(const TraceConfig& base, const GridCell& cell, double snr) {
    TraceConfig config = base;
    config.translocation.sphere_diameter = cell.sphere_diameter;
    config.translocation.concentration = cell.concentration;
    config.translocation.duration = cell.duration;
    config.snr = snr;
    return config;
}

// --- json --------------------------------------------------------------------

namespace {

json optional_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

template <std::size_t N>
std::array<double, N> array_from(const json& j) {
    const auto v = j.get<std::vector<double>>();
    if (v.size() != N) throw ValidationError("expected an array of " + std::to_string(N) + " numbers");
    std::array<double, N> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

}  // namespace

json config_to_json(const TraceConfig& c) {
    json j;
    j["geometry"] = {{"diameter_m", c.geometry.diameter}, {"thickness_m", c.geometry.thickness}};
    j["electrolyte"] = {{"salt_concentration_mol_m3", c.electrolyte.salt_concentration},
                        {"cation_mobility_m2_Vs", c.electrolyte.cation_mobility},
                        {"anion_mobility_m2_Vs", c.electrolyte.anion_mobility},
                        {"surface_charge_C_m2", c.electrolyte.surface_charge_density}};
    j["bias"] = {{"voltage_V", c.bias.voltage}, {"temperature_K", c.bias.temperature}};
    j["constants"] = {{"elementary_charge_C", c.constants.elementary_charge},
                      {"avogadro_per_mol", c.constants.avogadro},
                      {"boltzmann_J_K", c.constants.boltzmann}};
    j["translocation"] = {{"sphere_diameter_m", c.translocation.sphere_diameter},
                          {"concentration_nM", c.translocation.concentration},
                          {"duration_s", c.translocation.duration},
                          {"probability_coefficient_per_nM", c.translocation.probability_coefficient},
                          {"fall_fraction", c.translocation.fall_fraction}};
    j["noise"] = {{"hooge_alpha", c.noise.hooge_alpha},
                  {"flicker_exponent", c.noise.flicker_exponent},
                  {"electrode_coefficient_A2", c.noise.electrode_coefficient},
                  {"electrode_exponent", c.noise.electrode_exponent},
                  {"dielectric_loss", c.noise.dielectric_loss},
                  {"chip_capacitance_F", c.noise.chip_capacitance}};
    j["drift"] = {{"slow_amplitude", c.drift.slow_amplitude},
                  {"sin_sd", c.drift.sin_sd},
                  {"cos_sd", c.drift.cos_sd},
                  {"angular_frequency_rad_s", c.drift.angular_frequency},
                  {"jump_height_fraction", c.drift.jump_height_fraction},
                  {"jump_jitter", c.drift.jump_jitter},
                  {"expected_jumps_per_10s", c.drift.expected_jumps_per_10s}};
    j["bandwidth_hz"] = c.bandwidth;
    j["sample_rate_hz"] = c.sampling.sample_rate;
    j["trace_seconds"] = c.trace_seconds;
    j["snr"] = optional_number(c.snr);
    return j;
}

TraceConfig config_from_json(const json& j) {
    TraceConfig c;
    const auto& g = j.at("geometry");
    c.geometry = {g.at("diameter_m").get<double>(), g.at("thickness_m").get<double>()};
    const auto& e = j.at("electrolyte");
    c.electrolyte = {e.at("salt_concentration_mol_m3").get<double>(), e.at("cation_mobility_m2_Vs").get<double>(),
                     e.at("anion_mobility_m2_Vs").get<double>(), e.at("surface_charge_C_m2").get<double>()};
    const auto& b = j.at("bias");
    c.bias = {b.at("voltage_V").get<double>(), b.at("temperature_K").get<double>()};
    const auto& k = j.at("constants");
    c.constants = {k.at("elementary_charge_C").get<double>(), k.at("avogadro_per_mol").get<double>(),
                   k.at("boltzmann_J_K").get<double>()};
    const auto& t = j.at("translocation");
    c.translocation.sphere_diameter = t.at("sphere_diameter_m").get<double>();
    c.translocation.concentration = t.at("concentration_nM").get<double>();
    c.translocation.duration = t.at("duration_s").get<double>();
    c.translocation.probability_coefficient = t.at("probability_coefficient_per_nM").get<double>();
    c.translocation.fall_fraction = t.at("fall_fraction").get<double>();
    const auto& n = j.at("noise");
    c.noise.hooge_alpha = n.at("hooge_alpha").get<double>();
    c.noise.flicker_exponent = n.at("flicker_exponent").get<double>();
    c.noise.electrode_coefficient = n.at("electrode_coefficient_A2").get<double>();
    c.noise.electrode_exponent = n.at("electrode_exponent").get<double>();
    c.noise.dielectric_loss = n.at("dielectric_loss").get<double>();
    c.noise.chip_capacitance = n.at("chip_capacitance_F").get<double>();
    const auto& d = j.at("drift");
    c.drift.slow_amplitude = d.at("slow_amplitude").get<double>();
    c.drift.sin_sd = array_from<4>(d.at("sin_sd"));
    c.drift.cos_sd = array_from<4>(d.at("cos_sd"));
    c.drift.angular_frequency = d.at("angular_frequency_rad_s").get<double>();
    c.drift.jump_height_fraction = d.at("jump_height_fraction").get<double>();
    c.drift.jump_jitter = d.at("jump_jitter").get<double>();
    c.drift.expected_jumps_per_10s = d.at("expected_jumps_per_10s").get<double>();
    c.bandwidth = j.at("bandwidth_hz").get<double>();
    c.sampling.sample_rate = j.at("sample_rate_hz").get<double>();
    c.trace_seconds = j.at("trace_seconds").get<double>();
    c.snr = number_or_inf(j.at("snr"));
    return c;
}

namespace {

json trace_record_json(const TraceRecord& t) {
    json j = {{"id", t.id},
              {"split", t.split},
              {"cell", t.cell},
              {"duration_ms", t.duration_ms},
              {"cnp_nM", t.cnp_nm},
              {"dnp_nm", t.dnp_nm},
              {"seed", t.seed},
              {"n_samples", t.n_samples},
              {"n_events", t.n_events},
              {"n_jumps", t.n_jumps},
              {"i0_pA", t.i0_pa},
              {"delta_i_pA", t.delta_i_pa},
              {"noise_rms_pA", t.noise_rms_pa},
              {"probability", t.probability},
              {"probability_clamped", t.probability_clamped}};
    if (t.external) {
        j["external"] = true;
        j["source"] = t.source;
        j["source_sample_rate_hz"] = t.source_sample_rate;
    }
    return j;
}

TraceRecord trace_record_from(const json& j) {
    TraceRecord t;
    t.id = j.at("id").get<std::string>();
    t.split = j.at("split").get<std::string>();
    t.cell = j.at("cell").get<std::size_t>();
    t.duration_ms = j.at("duration_ms").get<double>();
    t.cnp_nm = j.at("cnp_nM").get<double>();
    t.dnp_nm = j.at("dnp_nm").get<double>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.n_samples = j.at("n_samples").get<std::size_t>();
    t.n_events = j.at("n_events").get<std::size_t>();
    t.n_jumps = j.at("n_jumps").get<std::size_t>();
    t.i0_pa = j.at("i0_pA").get<double>();
    t.delta_i_pa = j.at("delta_i_pA").get<double>();
    t.noise_rms_pa = j.at("noise_rms_pA").get<double>();
    t.probability = j.at("probability").get<double>();
    t.probability_clamped = j.at("probability_clamped").get<bool>();
    t.external = j.value("external", false);
    if (t.external) {
        t.source = j.at("source").get<std::string>();
        t.source_sample_rate = j.at("source_sample_rate_hz").get<double>();
    }
    return t;
}

}  // namespace

std::size_t DatasetManifest::windows_per_trace() const {
    return static_cast<std::size_t>(std::llround(trace_seconds / window_seconds));
}

const TraceRecord& DatasetManifest::trace(const std::string& id) const {
    for (const auto& t : traces) {
        if (t.id == id) return t;
    }
    throw ValidationError("manifest has no trace '" + id + "'");
}

json to_json(const DatasetManifest& m) {
    json j;
    j["schema_version"] = m.schema_version;
    j["generator_version"] = m.generator_version;
    j["kind"] = m.kind;
    j["master_seed"] = m.master_seed;
    j["sample_rate_hz"] = m.sample_rate;
    j["snr"] = optional_number(m.snr);
    j["trace_seconds"] = m.trace_seconds;
    j["window_seconds"] = m.window_seconds;
    j["seed_derivation"] = m.seed_derivation;
    j["grid"] = {{"dnp_m", m.grid.dnp_values},
                 {"cnp_nM", m.grid.cnp_values},
                 {"duration_s", m.grid.duration_values},
                 {"snr", optional_number(m.grid.snr)}};
    json splits = json::object();
    const std::map<std::string, std::size_t> windows{
        {"train", m.split_windows.train}, {"val", m.split_windows.val}, {"test", m.split_windows.test}};
    for (const auto& [name, count] : windows) {
        const auto it = m.split_traces.find(name);
        splits[name] = {{"windows", count}, {"traces", it == m.split_traces.end() ? 0 : it->second}};
    }
    j["splits"] = splits;
    j["config"] = config_to_json(m.base_config);

    json cells = json::array();
    if (m.kind == "generated") {
        std::vector<std::map<std::string, std::size_t>> per_cell(m.grid.cell_count());
        for (const auto& t : m.traces) per_cell.at(t.cell)[t.split] += 1;
        for (std::size_t i = 0; i < m.grid.cell_count(); ++i) {
            const GridCell c = grid_cell(m.grid, i);
            cells.push_back({{"index", i},
                             {"duration_s", c.duration},
                             {"cnp_nM", c.concentration},
                             {"dnp_m", c.sphere_diameter},
                             {"traces", per_cell[i]}});
        }
    }
    j["cells"] = cells;
    json traces = json::array();
    for (const auto& t : m.traces) traces.push_back(trace_record_json(t));
    j["traces"] = traces;
    j["warnings"] = m.warnings;
    return j;
}

DatasetManifest manifest_from_json(const json& j) {
    try {
        DatasetManifest m;
        m.schema_version = j.at("schema_version").get<int>();
        if (m.schema_version != kSchemaVersion) {
            throw ValidationError("unsupported manifest schema_version " + std::to_string(m.schema_version));
        }
        m.generator_version = j.at("generator_version").get<std::string>();
        m.kind = j.at("kind").get<std::string>();
        m.master_seed = j.at("master_seed").get<std::uint64_t>();
        m.sample_rate = j.at("sample_rate_hz").get<double>();
        m.snr = number_or_inf(j.at("snr"));
        m.trace_seconds = j.at("trace_seconds").get<double>();
        m.window_seconds = j.at("window_seconds").get<double>();
        m.seed_derivation = j.at("seed_derivation").get<std::string>();
        const auto& g = j.at("grid");
        m.grid.dnp_values = g.at("dnp_m").get<std::vector<double>>();
        m.grid.cnp_values = g.at("cnp_nM").get<std::vector<double>>();
        m.grid.duration_values = g.at("duration_s").get<std::vector<double>>();
        m.grid.snr = number_or_inf(g.at("snr"));
        const auto& s = j.at("splits");
        m.split_windows.train = s.at("train").at("windows").get<std::size_t>();
        m.split_windows.val = s.at("val").at("windows").get<std::size_t>();
        m.split_windows.test = s.at("test").at("windows").get<std::size_t>();
        for (const auto& [name, v] : s.items()) m.split_traces[name] = v.at("traces").get<std::size_t>();
        m.base_config = config_from_json(j.at("config"));
        for (const auto& t : j.at("traces")) m.traces.push_back(trace_record_from(t));
        m.warnings = j.at("warnings").get<std::vector<std::string>>();
        return m;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
}

DatasetManifest load_manifest(const fs::path& dataset_dir) {
    const fs::path path = dataset_dir / "manifest.json";
    if (!fs::exists(path)) throw IoError("missing manifest: " + path.string());
    json j;
    try {
        j = json::parse(io::read_text_file(path));
    } catch (const json::parse_error& e) {
        // e.byte is the 1-based offset of the failure.
        throw ValidationError(path.string() + ": JSON parse error at byte " + std::to_string(e.byte) + ": " +
                              e.what());
    }
    return manifest_from_json(j);
}

void save_manifest(const fs::path& dataset_dir, const DatasetManifest& manifest) {
    io::write_text_file(dataset_dir / "manifest.json", to_json(manifest).dump(2) + "\n");
}

// --- windows -----------------------------------------------------------------

std::vector<WindowLabel> label_windows(const std::vector<SpikeEvent>& events, std::size_t n_samples,
                                       std::size_t window_samples, const std::string& trace_id) {
    if (window_samples == 0) throw DomainError("label_windows: zero window length");
    const std::size_t n_windows = n_samples / window_samples;
    std::vector<WindowLabel> labels(n_windows);
    std::vector<double> amp_sum(n_windows, 0.0);
    std::vector<double> dur_sum(n_windows, 0.0);
    for (std::size_t w = 0; w < n_windows; ++w) {
        labels[w].trace_id = trace_id;
        labels[w].window_index = w;
    }
    for (const auto& e : events) {
        if (e.start_index < 0) continue;
        const auto w = static_cast<std::size_t>(e.start_index) / window_samples;
        if (w >= n_windows) continue;
        labels[w].count += 1;
        amp_sum[w] += e.amplitude * 1e12;
        dur_sum[w] += e.duration * 1e3;
    }
    for (std::size_t w = 0; w < n_windows; ++w) {
        if (labels[w].count == 0) continue;
        labels[w].avg_amplitude_pa = amp_sum[w] / static_cast<double>(labels[w].count);
        labels[w].avg_duration_ms = dur_sum[w] / static_cast<double>(labels[w].count);
    }
    return labels;
}

Segmentation segment_windows(const Trace& trace, const std::string& trace_id, double window_seconds, bool strict) {
    if (!(window_seconds > 0.0)) throw DomainError("segment_windows: window length must be positive");
    const auto window_samples = static_cast<std::size_t>(std::llround(window_seconds * trace.sample_rate));
    if (window_samples == 0) throw DomainError("segment_windows: window shorter than one sample");
    Segmentation out;
    const std::size_t n = trace.size();
    out.dropped_samples = n % window_samples;
    if (strict && out.dropped_samples != 0) {
        throw ValidationError("segment_windows: trace of " + std::to_string(n) + " samples is not a multiple of " +
                              std::to_string(window_samples));
    }
    const auto labels = label_windows(trace.events, n, window_samples, trace_id);
    const std::span<const double> all(trace.noisy);
    for (std::size_t w = 0; w < labels.size(); ++w) {
        out.windows.push_back({all.subspan(w * window_samples, window_samples), labels[w]});
    }
    return out;
}

// --- csv ---------------------------------------------------------------------

std::string events_csv(const std::vector<SpikeEvent>& events) {
    std::string out = std::string(kEventsHeader) + "\n";
    for (const auto& e : events) {
        out += io::format_number(e.start_time) + "," + io::format_number(e.end_time()) + "," +
               io::format_number(e.duration * 1e3) + "," + io::format_number(e.amplitude * 1e12) + "\n";
    }
    return out;
}

namespace {

template <typename RowFn>
void for_each_row(std::string_view text, std::string_view header, const std::string& what, RowFn&& fn) {
    std::size_t row = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++row;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!saw_header) {
            if (line != header) {
                throw ParseError(what + ": expected header '" + std::string(header) + "'", row);
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;
        fn(io::split_csv_line(line), row);
    }
    if (!saw_header) throw ParseError(what + ": empty file", 1);
}

}  // namespace

std::vector<EventRow> read_events_csv(const fs::path& path) {
    std::vector<EventRow> rows;
    for_each_row(io::read_text_file(path), kEventsHeader, path.string(),
                 [&](const std::vector<std::string_view>& f, std::size_t row) {
                     if (f.size() != 4) throw ParseError(path.string() + ": expected 4 fields", row);
                     rows.push_back({io::parse_number(f[0], row), io::parse_number(f[1], row),
                                     io::parse_number(f[2], row), io::parse_number(f[3], row)});
                 });
    return rows;
}

std::string windows_csv(const std::vector<WindowLabel>& labels) {
    std::string out = std::string(kWindowsHeader) + "\n";
    for (const auto& l : labels) {
        out += l.trace_id + "," + std::to_string(l.window_index) + "," + std::to_string(l.count) + "," +
               io::format_number(l.avg_amplitude_pa) + "," + io::format_number(l.avg_duration_ms) + "\n";
    }
    return out;
}

std::vector<WindowLabel> parse_windows_csv(std::string_view text) {
    std::vector<WindowLabel> labels;
    for_each_row(text, kWindowsHeader, "window csv", [&](const std::vector<std::string_view>& f, std::size_t row) {
        if (f.size() != 5) throw ParseError("window csv: expected 5 fields", row);
        if (f[0].empty()) throw ParseError("window csv: empty trace_id", row);
        WindowLabel l;
        l.trace_id = std::string(f[0]);
        l.window_index = io::parse_unsigned(f[1], row);
        l.count = io::parse_unsigned(f[2], row);
        l.avg_amplitude_pa = io::parse_number(f[3], row);
        l.avg_duration_ms = io::parse_number(f[4], row);
        if (l.count == 0 && (l.avg_amplitude_pa != 0.0 || l.avg_duration_ms != 0.0)) {
            throw ParseError("window csv: zero count with non-zero averages", row);
        }
        labels.push_back(std::move(l));
    });
    return labels;
}

std::vector<WindowLabel> read_windows_csv(const fs::path& path) {
    try {
        return parse_windows_csv(io::read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_windows_csv(const fs::path& path, const std::vector<WindowLabel>& labels) {
    io::write_text_file(path, windows_csv(labels));
}

TraceFiles trace_files(const fs::path& dataset_dir, const std::string& id) {
    const fs::path base = dataset_dir / "traces";
    return {base / (id + ".f32le"), base / (id + ".clean.f32le"), base / (id + ".events.csv")};
}

// --- generation ----------------------------------------------------------------

namespace {

std::string trace_id(const std::string& split, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s-%06zu", split.c_str(), index);
    return buf;
}

void make_dirs(const fs::path& p) {
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw IoError("cannot create " + p.string() + ": " + ec.message());
}

struct Job {
    std::string id;
    std::string split;
    std::size_t cell = 0;
    std::uint64_t seed = 0;
};

}  // namespace

DatasetManifest generate_dataset(const GenerateOptions& options, const fs::path& out_dir) {
    options.grid.validate();
    const TraceConfig& base = options.base;
    if (options.grid.dnp_values.back() > base.geometry.diameter) {
        throw ValidationError("grid sphere diameter " + io::format_number(options.grid.dnp_values.back()) +
                              " m exceeds the pore diameter " + io::format_number(base.geometry.diameter) + " m");
    }
    const double samples = base.trace_seconds * base.sampling.sample_rate;
    if (std::abs(samples - std::round(samples)) > 1e-6) {
        throw ValidationError("trace length is not a whole number of samples");
    }
    const double windows = base.trace_seconds / options.window_seconds;
    if (std::abs(windows - std::round(windows)) > 1e-9 || windows < 1.0) {
        throw ValidationError("trace length is not a whole number of windows");
    }

    DatasetManifest m;
    m.master_seed = options.master_seed;
    m.sample_rate = base.sampling.sample_rate;
    m.snr = options.grid.snr;
    m.trace_seconds = base.trace_seconds;
    m.window_seconds = options.window_seconds;
    m.grid = options.grid;
    m.split_windows = options.splits;
    m.base_config = base;
    m.base_config.snr = options.grid.snr;

    const std::size_t per_trace = m.windows_per_trace();
    const std::size_t split_windows[] = {options.splits.train, options.splits.val, options.splits.test};
    const std::size_t n_cells = options.grid.cell_count();
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < kSplitNames.size(); ++s) {
        if (split_windows[s] % per_trace != 0) {
            throw ValidationError("infeasible split: " + kSplitNames[s] + " asks for " +
                                  std::to_string(split_windows[s]) + " windows, not a multiple of " +
                                  std::to_string(per_trace) + " windows per trace");
        }
        const std::size_t n_traces = split_windows[s] / per_trace;
        m.split_traces[kSplitNames[s]] = n_traces;
        for (std::size_t k = 0; k < n_traces; ++k) {
            Job job{trace_id(kSplitNames[s], k), kSplitNames[s], k % n_cells, 0};
            job.seed = derive_seed(options.master_seed, jobs.size());
            jobs.push_back(std::move(job));
        }
    }

    make_dirs(out_dir / "traces");
    make_dirs(out_dir / "windows");

    std::vector<std::vector<WindowLabel>> labels(jobs.size());
    std::vector<TraceRecord> records(jobs.size());
    std::vector<std::vector<std::string>> warnings(jobs.size());

    parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        const GridCell cell = grid_cell(options.grid, job.cell);
        const TraceConfig config = cell_config(base, cell, options.grid.snr);
        const Trace trace = assemble_trace(config, job.seed);

        const TraceFiles files = trace_files(out_dir, job.id);
        io::write_samples_f32le(files.noisy, trace.noisy);
        io::write_samples_f32le(files.clean, trace.clean);
        io::write_text_file(files.events, events_csv(trace.events));

        const auto window_samples = static_cast<std::size_t>(std::llround(options.window_seconds * trace.sample_rate));
        labels[i] = label_windows(trace.events, trace.size(), window_samples, job.id);

        TraceRecord& r = records[i];
        r.id = job.id;
        r.split = job.split;
        r.cell = job.cell;
        r.duration_ms = cell.duration * 1e3;
        r.cnp_nm = cell.concentration;
        r.dnp_nm = cell.sphere_diameter * 1e9;
        r.seed = job.seed;
        r.n_samples = trace.size();
        r.n_events = trace.events.size();
        r.n_jumps = trace.provenance.jump_count;
        r.i0_pa = trace.provenance.open_pore_current * 1e12;
        r.delta_i_pa = trace.provenance.delta_i * 1e12;
        r.noise_rms_pa = trace.provenance.noise_rms * 1e12;
        r.probability = trace.provenance.probability.value;
        r.probability_clamped = trace.provenance.probability.clamped;
        for (const auto& w : trace.provenance.warnings) warnings[i].push_back(job.id + ": " + w);
    });

    for (const auto& split : kSplitNames) {
        std::vector<WindowLabel> rows;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].split == split) rows.insert(rows.end(), labels[i].begin(), labels[i].end());
        }
        write_windows_csv(out_dir / "windows" / (split + ".csv"), rows);
    }
    m.traces = std::move(records);
    for (auto& w : warnings) m.warnings.insert(m.warnings.end(), w.begin(), w.end());
    save_manifest(out_dir, m);
    return m;
}

// --- export ----------------------------------------------------------------------

ExportSummary export_database(const fs::path& dataset_dir, const fs::path& db_dir) {
    const DatasetManifest m = load_manifest(dataset_dir);
    make_dirs(db_dir);
    ExportSummary summary;
    std::string index = "trace_id,split,dnp_nm,cnp_nM,duration_ms,snr,n_events,noisy,clean,events,conditions\n";
    for (const auto& t : m.traces) {
        const TraceFiles src = trace_files(dataset_dir, t.id);
        const fs::path dir = db_dir / t.id;
        make_dirs(dir);
        std::error_code ec;
        fs::copy_file(src.noisy, dir / "noisy.f32le", fs::copy_options::overwrite_existing, ec);
        if (ec) throw IoError("copy " + src.noisy.string() + ": " + ec.message());
        fs::copy_file(src.clean, dir / "clean.f32le", fs::copy_options::overwrite_existing, ec);
        if (ec) throw IoError("copy " + src.clean.string() + ": " + ec.message());
        fs::copy_file(src.events, dir / "events.csv", fs::copy_options::overwrite_existing, ec);
        if (ec) throw IoError("copy " + src.events.string() + ": " + ec.message());

        TraceConfig config = m.base_config;
        const GridCell cell = grid_cell(m.grid, t.cell);
        config.translocation.sphere_diameter = cell.sphere_diameter;
        config.translocation.concentration = cell.concentration;
        config.translocation.duration = cell.duration;
        json conditions = {{"trace", trace_record_json(t)},
                           {"config", config_to_json(config)},
                           {"units", {{"samples", "pA, little-endian float32"},
                                      {"events", "start_s,end_s in s; duration_ms in ms; amplitude_pA in pA"}}},
                           {"generator_version", m.generator_version},
                           {"master_seed", m.master_seed},
                           {"seed_derivation", m.seed_derivation}};
        io::write_text_file(dir / "conditions.json", conditions.dump(2) + "\n");

        index += t.id + "," + t.split + "," + io::format_number(t.dnp_nm) + "," + io::format_number(t.cnp_nm) + "," +
                 io::format_number(t.duration_ms) + "," + (std::isfinite(m.snr) ? io::format_number(m.snr) : "inf") +
                 "," + std::to_string(t.n_events) + "," + t.id + "/noisy.f32le," + t.id + "/clean.f32le," + t.id +
                 "/events.csv," + t.id + "/conditions.json\n";
        summary.traces += 1;
        summary.files += 4;
    }
    io::write_text_file(db_dir / "index.csv", index);
    summary.files += 1;
    return summary;
}

// --- external traces ---------------------------------------------------------------

std::vector<double> resample_linear(std::span<const double> samples, double from_rate, double to_rate) {
    if (!(from_rate > 0.0) || !(to_rate > 0.0)) throw DomainError("resample_linear: rates must be positive");
    if (samples.empty() || from_rate == to_rate) return {samples.begin(), samples.end()};
    const double last = static_cast<double>(samples.size() - 1);
    const auto n_out = static_cast<std::size_t>(std::floor(last * to_rate / from_rate + 1e-9)) + 1;
    std::vector<double> out(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        const double pos = std::min(static_cast<double>(k) * from_rate / to_rate, last);
        const auto i = static_cast<std::size_t>(std::floor(pos));
        const double frac = pos - static_cast<double>(i);
        out[k] = frac == 0.0 ? samples[i] : samples[i] + frac * (samples[i + 1] - samples[i]);
    }
    return out;
}

Trace import_external_trace(const fs::path& path, double sample_rate, SampleFormat format, bool skip_header) {
    if (!(sample_rate > 0.0)) throw DomainError("import: sample rate must be positive");
    std::vector<double> amperes;
    if (format == SampleFormat::f32le) {
        amperes = io::read_samples_f32le(path);
    } else {
        const std::string text = io::read_text_file(path);
        std::size_t pos = 0;
        std::size_t row = 0;
        while (pos < text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string::npos) eol = text.size();
            std::string_view line(text.data() + pos, eol - pos);
            pos = eol + 1;
            ++row;
            if (row == 1 && skip_header) continue;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.empty()) continue;
            const auto fields = io::split_csv_line(line);
            const double pa = io::parse_number(fields.back(), row);
            if (!std::isfinite(pa)) {
                throw ValidationError(path.string() + ": non-finite sample at index " +
                                      std::to_string(amperes.size()) + " (row " + std::to_string(row) + ")");
            }
            amperes.push_back(pa * 1e-12);
        }
    }
    Trace trace;
    trace.sample_rate = kNetworkSampleRate;
    trace.noisy = resample_linear(amperes, sample_rate, kNetworkSampleRate);
    trace.provenance.external = true;
    trace.provenance.source = path.string();
    trace.provenance.source_sample_rate = sample_rate;
    return trace;
}

}  // namespace porebench
