#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace m2s {

// Joined per-instance measurements. t99 has three states: a value, absent
// while aqc_present (search gave up: ranked most difficult), or aqc_present
// false (measure never taken).
struct DifficultyRecord {
    std::string instance_id;
    int n = 0;
    std::optional<double> p_avg;
    std::optional<double> p_infinity;
    bool aqc_present = false;
    std::optional<double> t99;
    std::optional<std::uint64_t> n_calls;
    std::optional<bool> satisfiable;
};

enum class Measure { qw, aqc, classical };

const char* measure_name(Measure m);

// Pearson correlation of tie-averaged ranks. Throws InvalidArgument on
// length mismatch, fewer than two points, or an all-constant side.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct CorrelationReport {
    Measure measure_x = Measure::qw;
    Measure measure_y = Measure::aqc;
    int n = 0;
    double rho = 0.0;
    std::size_t sample_size = 0;
    std::size_t excluded = 0;  // records lacking either measure (or not-found t99)
};

// Spearman correlation between two difficulty measures over one record set;
// pairs with a missing side are excluded and counted.
CorrelationReport correlate(const std::vector<DifficultyRecord>& records,
                            Measure measure_x, Measure measure_y);

std::vector<double> average_ranks(const std::vector<double>& values);

// Instance ids in ascending difficulty: qw sorts by p_avg descending, aqc by
// t99 ascending with not-found last, classical by n_calls ascending. Ties
// break by instance id.
std::vector<std::string> rank_by_difficulty(
    const std::vector<DifficultyRecord>& records, Measure measure);

struct DecilePartition {
    Measure measure = Measure::qw;
    int n = 0;
    std::vector<std::string> ranked;        // ascending difficulty
    std::map<std::string, int> decile_of;   // 1..10, decile 10 most difficult
    std::vector<std::string> top1pct;
    std::map<int, std::string> boundary_ids;  // percentile in {10..90, 99} -> id
};

// Requires >= 100 records so the top 1% is nonempty. Decile k covers ranks
// (ceil((k-1)N/10), ceil(kN/10)]; percentile p's boundary id sits at rank
// ceil(pN/100); the top 1% is every rank above ceil(0.99 N).
DecilePartition partition_deciles(const std::vector<DifficultyRecord>& records,
                                  Measure measure);

enum class AxisMode { log_linear, log_log };

struct ScalingFit {
    double kappa = 0.0;      // slope in log2 units
    double stderr_ = 0.0;    // standard error of the slope
    double intercept = 0.0;  // log2 intercept
    AxisMode axis_mode = AxisMode::log_linear;
    std::vector<std::pair<double, double>> points;  // (n, value) as given
    std::vector<double> residuals;  // log2(value) - log2(fit)
};

// Ordinary least squares of log2(value) against n (log-linear) or log2(n)
// (log-log). Requires >= 3 points with positive values.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points,
                       AxisMode axis_mode);

// Group index 1..10 are deciles under group_measure; 11 is the top 1%.
struct MedianSeries {
    int group = 0;
    std::vector<std::pair<int, double>> points;  // (n, median of report_measure)
};

// Median of report_measure per (n, group_measure decile). Medians use the
// lower-middle order statistic; groups whose median is a not-found t99 are
// omitted from the series.
std::vector<MedianSeries> cross_decile_medians(
    const std::map<int, std::vector<DifficultyRecord>>& records_by_n,
    Measure group_measure, Measure report_measure);

// Measure value of each percentile-boundary instance per n (the data behind
// percentile scaling plots). Keys are percentiles {10..90, 99}.
std::map<int, std::vector<std::pair<int, double>>> percentile_boundary_values(
    const std::map<int, std::vector<DifficultyRecord>>& records_by_n,
    Measure measure);

struct Histogram {
    std::vector<double> edges;    // bins + 1
    std::vector<double> density;  // integrates to 1 over the edges
    std::size_t count = 0;
};

struct HistogramSpec {
    int bins = 0;  // 0 = Freedman-Diaconis
};

Histogram make_histogram(std::vector<double> values, const HistogramSpec& spec = {});

struct SatisfiabilitySplit {
    std::size_t sat_count = 0;
    std::size_t unsat_count = 0;
    bool sat_empty = false;
    bool unsat_empty = false;
    // keys: p_avg, t99, log10_t99, n_calls, log10_n_calls
    std::map<std::string, double> sat_median;
    std::map<std::string, double> unsat_median;
    std::map<std::string, Histogram> sat_hist;
    std::map<std::string, Histogram> unsat_hist;
    std::size_t t99_not_found_skipped = 0;
};

// Per-group medians and probability-density histograms for each available
// measure. Not-found t99 values are excluded from t99 statistics and counted
// in t99_not_found_skipped. Requires satisfiable flags on every record.
SatisfiabilitySplit split_by_satisfiability(
    const std::vector<DifficultyRecord>& records, const HistogramSpec& spec = {});

struct PortfolioOptions {
    // Divide each measure's native costs by their median over the record set
    // before comparing across algorithms; raw native units otherwise.
    bool median_normalize = true;
};

struct PortfolioSummary {
    Measure measure_a = Measure::qw;
    Measure measure_b = Measure::classical;
    std::size_t sample_size = 0;
    double portfolio_total = 0.0, portfolio_median = 0.0, portfolio_max = 0.0;
    double standalone_a_total = 0.0, standalone_a_median = 0.0, standalone_a_max = 0.0;
    double standalone_b_total = 0.0, standalone_b_median = 0.0, standalone_b_max = 0.0;
    std::vector<double> portfolio_costs;  // per instance, record order
    std::vector<double> speedup_vs_a;     // standalone_a / portfolio
    std::vector<double> speedup_vs_b;
};

// Parallel two-algorithm portfolio: each instance costs twice the smaller
// normalized standalone cost (both run on half the resources). Native costs:
// qw = 1/p_avg, aqc = t99 (not-found = +inf), classical = n_calls.
PortfolioSummary portfolio_eval(const std::vector<DifficultyRecord>& records,
                                Measure measure_a, Measure measure_b,
                                const PortfolioOptions& options = {});

}  // namespace m2s
