#include "porebench/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "porebench/errors.hpp"

namespace porebench {

double relative_error(double predicted, double truth) {
    if (truth == 0.0) throw DomainError("relative_error: true value is zero");
    return std::abs(predicted - truth) / std::abs(truth);
}

double rpd(double predicted, double truth) {
    const double scale = (std::abs(predicted) + std::abs(truth)) / 2.0;
    if (scale == 0.0) return 0.0;
    return std::abs(predicted - truth) / scale;
}

namespace {

std::string key_of(const std::string& trace, std::size_t window) { return trace + "#" + std::to_string(window); }

}  // namespace

std::vector<ErrorRecord> score_predictions(const std::vector<WindowLabel>& predictions,
                                           const std::vector<WindowLabel>& labels) {
    std::unordered_map<std::string, const WindowLabel*> by_key;
    std::vector<std::string> duplicates;
    for (const auto& p : predictions) {
        if (!by_key.emplace(key_of(p.trace_id, p.window_index), &p).second) {
            duplicates.push_back(key_of(p.trace_id, p.window_index));
        }
    }
    std::vector<std::string> missing;
    std::vector<ErrorRecord> records;
    records.reserve(labels.size());
    std::set<std::string> seen;
    for (const auto& truth : labels) {
        const std::string key = key_of(truth.trace_id, truth.window_index);
        const auto it = by_key.find(key);
        if (it == by_key.end()) {
            missing.push_back(key);
            continue;
        }
        seen.insert(key);
        const WindowLabel& pred = *it->second;
        ErrorRecord r;
        r.trace_id = truth.trace_id;
        r.window_index = truth.window_index;
        if (truth.count == 0) {
            if (pred.count > 0) {
                r.count_error = r.amplitude_error = r.duration_error = 1.0;
                r.improper = true;
            }
        } else {
            r.count_error = relative_error(static_cast<double>(pred.count), static_cast<double>(truth.count));
            r.amplitude_error = relative_error(pred.avg_amplitude_pa, truth.avg_amplitude_pa);
            r.duration_error = relative_error(pred.avg_duration_ms, truth.avg_duration_ms);
        }
        records.push_back(r);
    }
    std::vector<std::string> extra;
    for (const auto& [key, _] : by_key) {
        if (!seen.count(key)) extra.push_back(key);
    }
    if (!missing.empty() || !extra.empty() || !duplicates.empty()) {
        std::sort(extra.begin(), extra.end());
        auto list = [](const std::vector<std::string>& keys) {
            std::string s;
            for (std::size_t i = 0; i < keys.size() && i < 10; ++i) s += (i ? " " : "") + keys[i];
            if (keys.size() > 10) s += " ...";
            return s;
        };
        throw ValidationError("window key mismatch: " + std::to_string(missing.size()) + " missing [" + list(missing) +
                              "], " + std::to_string(extra.size()) + " extra [" + list(extra) + "], " +
                              std::to_string(duplicates.size()) + " duplicate [" + list(duplicates) + "]");
    }
    return records;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd m;
    m.n = values.size();
    if (values.empty()) return m;
    double sum = 0.0;
    for (double v : values) sum += v;
    m.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(values.size()));
    return m;
}

namespace {

struct FeatureColumns {
    std::vector<double> count;
    std::vector<double> amplitude;
    std::vector<double> duration;

    void add(const ErrorRecord& r) {
        count.push_back(r.count_error);
        amplitude.push_back(r.amplitude_error);
        duration.push_back(r.duration_error);
    }
    FeatureStats stats() const { return {mean_std(count), mean_std(amplitude), mean_std(duration)}; }
};

}  // namespace

CellLookup cell_lookup(const DatasetManifest& manifest) {
    CellLookup out;
    for (const auto& t : manifest.traces) out[t.id] = {t.duration_ms, t.cnp_nm, t.dnp_nm};
    return out;
}

EvaluationReport aggregate(const std::vector<ErrorRecord>& records, const std::optional<CellLookup>& cells) {
    EvaluationReport report;
    std::map<CellKey, FeatureColumns> per_cell;
    std::map<std::pair<double, double>, FeatureColumns> per_surface;
    std::map<double, FeatureColumns> per_duration;
    FeatureColumns all;
    for (const auto& r : records) {
        CellKey key{};
        if (cells) {
            const auto it = cells->find(r.trace_id);
            if (it == cells->end()) throw ValidationError("aggregate: trace '" + r.trace_id + "' has no grid cell");
            key = it->second;
        }
        per_cell[key].add(r);
        per_surface[{key.cnp_nm, key.dnp_nm}].add(r);
        per_duration[key.duration_ms].add(r);
        all.add(r);
        if (r.improper) ++report.improper_count;
    }
    report.window_count = records.size();
    for (const auto& [key, cols] : per_cell) report.per_cell.push_back({key, cols.stats()});
    for (const auto& [key, cols] : per_surface) report.per_surface.push_back({key.first, key.second, cols.stats()});
    for (const auto& [key, cols] : per_duration) report.per_duration.push_back({key, cols.stats()});

    report.totals = all.stats();
    if (!report.per_duration.empty()) {
        double c = 0.0, a = 0.0, d = 0.0;
        for (const auto& pd : report.per_duration) {
            c += pd.stats.count.mean;
            a += pd.stats.amplitude.mean;
            d += pd.stats.duration.mean;
        }
        const auto k = static_cast<double>(report.per_duration.size());
        report.totals.count.mean = c / k;
        report.totals.amplitude.mean = a / k;
        report.totals.duration.mean = d / k;
    }
    return report;
}

namespace {

nlohmann::json ms_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}, {"n", m.n}}; }

nlohmann::json stats_json(const FeatureStats& s) {
    return {{"count", ms_json(s.count)}, {"amplitude", ms_json(s.amplitude)}, {"duration", ms_json(s.duration)}};
}

}  // namespace

nlohmann::json report_to_json(const EvaluationReport& report) {
    nlohmann::json j;
    j["std_convention"] = "population";
    j["totals"] = stats_json(report.totals);
    j["improper_count"] = report.improper_count;
    j["window_count"] = report.window_count;
    auto& per_duration = j["per_duration"] = nlohmann::json::array();
    for (const auto& d : report.per_duration) {
        auto entry = stats_json(d.stats);
        entry["duration_ms"] = d.duration_ms;
        per_duration.push_back(entry);
    }
    auto& per_surface = j["per_surface"] = nlohmann::json::array();
    for (const auto& s : report.per_surface) {
        auto entry = stats_json(s.stats);
        entry["cnp_nM"] = s.cnp_nm;
        entry["dnp_nm"] = s.dnp_nm;
        per_surface.push_back(entry);
    }
    auto& per_cell = j["per_cell"] = nlohmann::json::array();
    for (const auto& c : report.per_cell) {
        auto entry = stats_json(c.stats);
        entry["duration_ms"] = c.key.duration_ms;
        entry["cnp_nM"] = c.key.cnp_nm;
        entry["dnp_nm"] = c.key.dnp_nm;
        per_cell.push_back(entry);
    }
    return j;
}

double window_frequency(std::size_t count, double window_seconds) {
    if (!(window_seconds > 0.0)) throw DomainError("window_frequency: window length must be positive");
    return static_cast<double>(count) / window_seconds;
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DomainError("linear_fit: xs and ys differ in length");
    if (xs.size() < 2) throw DomainError("linear_fit: need at least two points");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DomainError("linear_fit: xs are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 0.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

}  // namespace porebench
