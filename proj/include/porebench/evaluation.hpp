#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "porebench/dataset_io.hpp"

namespace porebench {

// |x - x0| / x0. Throws DomainError at x0 == 0.
double relative_error(double predicted, double truth);

// |x - x0| / ((|x| + |x0|) / 2), with rpd(0, 0) := 0. Always in [0, 2].
double rpd(double predicted, double truth);

struct ErrorRecord {
    std::string trace_id;
    std::size_t window_index = 0;
    double count_error = 0.0;
    double amplitude_error = 0.0;
    double duration_error = 0.0;
    bool improper = false;  // true zero predicted as non-zero
};

// Zero rules: truth 0 and prediction 0 score 0 on every feature; truth 0 and
// prediction > 0 score 1 on every feature. Otherwise relative_error per
// feature. Every label yields exactly one record, in label order. Missing or
// extra prediction keys raise ValidationError listing them.
std::vector<ErrorRecord> score_predictions(const std::vector<WindowLabel>& predictions,
                                           const std::vector<WindowLabel>& labels);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population (divide by N)
    std::size_t n = 0;
};

MeanStd mean_std(const std::vector<double>& values);

struct FeatureStats {
    MeanStd count;
    MeanStd amplitude;
    MeanStd duration;
};

struct CellKey {
    double duration_ms = 0.0;
    double cnp_nm = 0.0;
    double dnp_nm = 0.0;
    auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
    CellKey key;
    FeatureStats stats;
};

struct SurfaceStats {  // (C_np, D_np) pooled over durations
    double cnp_nm = 0.0;
    double dnp_nm = 0.0;
    FeatureStats stats;
};

struct DurationStats {
    double duration_ms = 0.0;
    FeatureStats stats;
};

// Staged aggregation of per-window errors:
//   per_cell      mean/std over windows in each (duration, C_np, D_np) cell
//   per_surface   mean/std over windows in each (C_np, D_np), all durations pooled
//   per_duration  mean/std over windows of each duration
//   totals        mean = mean of per-duration means; std over all windows
struct EvaluationReport {
    std::vector<CellStats> per_cell;
    std::vector<SurfaceStats> per_surface;
    std::vector<DurationStats> per_duration;
    FeatureStats totals;
    std::size_t improper_count = 0;
    std::size_t window_count = 0;
};

// trace_id -> grid cell coordinates.
using CellLookup = std::map<std::string, CellKey>;
CellLookup cell_lookup(const DatasetManifest& manifest);

// Without a lookup every record falls in a single anonymous cell. Records
// whose trace is not in the lookup raise ValidationError.
EvaluationReport aggregate(const std::vector<ErrorRecord>& records, const std::optional<CellLookup>& cells);

nlohmann::json report_to_json(const EvaluationReport& report);

// count / window_seconds.
double window_frequency(std::size_t count, double window_seconds = 0.5);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;  // 0 by convention when ys are constant
};

// Ordinary least squares; needs two distinct xs.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace porebench
