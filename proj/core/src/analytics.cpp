#include "m2s/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "m2s/errors.hpp"

namespace m2s {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower-middle order statistic, so medians are always observed values.
double median_lower(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

double native_cost(const DifficultyRecord& r, Measure m, bool& missing) {
    switch (m) {
        case Measure::qw:
            if (!r.p_avg) { missing = true; return 0.0; }
            return 1.0 / *r.p_avg;
        case Measure::aqc:
            if (!r.aqc_present) { missing = true; return 0.0; }
            return r.t99 ? *r.t99 : kInf;
        case Measure::classical:
            if (!r.n_calls) { missing = true; return 0.0; }
            return static_cast<double>(*r.n_calls);
    }
    missing = true;
    return 0.0;
}

}  // namespace

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::qw: return "qw";
        case Measure::aqc: return "aqc";
        case Measure::classical: return "classical";
    }
    return "?";
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mean_rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw InvalidArgument("spearman requires equally sized inputs");
    if (xs.size() < 2) throw InvalidArgument("spearman requires at least two points");
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    const double n = static_cast<double>(xs.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw InvalidArgument("spearman undefined for a constant input");
    return sxy / std::sqrt(sxx * syy);
}

namespace {

// Measured value for correlations: nullopt when the measure is absent or an
// aqc search came back empty-handed.
std::optional<double> finite_measure(const DifficultyRecord& r, Measure m) {
    switch (m) {
        case Measure::qw: return r.p_avg;
        case Measure::aqc:
            if (!r.aqc_present) return std::nullopt;
            return r.t99;
        case Measure::classical:
            if (!r.n_calls) return std::nullopt;
            return static_cast<double>(*r.n_calls);
    }
    return std::nullopt;
}

}  // namespace

CorrelationReport correlate(const std::vector<DifficultyRecord>& records,
                            Measure measure_x, Measure measure_y) {
    CorrelationReport report;
    report.measure_x = measure_x;
    report.measure_y = measure_y;
    std::vector<double> xs, ys;
    for (const DifficultyRecord& r : records) {
        report.n = r.n;
        const std::optional<double> x = finite_measure(r, measure_x);
        const std::optional<double> y = finite_measure(r, measure_y);
        if (x && y) {
            xs.push_back(*x);
            ys.push_back(*y);
        } else {
            ++report.excluded;
        }
    }
    report.sample_size = xs.size();
    report.rho = spearman(xs, ys);
    return report;
}

std::vector<std::string> rank_by_difficulty(
    const std::vector<DifficultyRecord>& records, Measure measure) {
    struct Key {
        double primary;  // ascending difficulty
        const std::string* id;
    };
    std::vector<Key> keys;
    keys.reserve(records.size());
    for (const DifficultyRecord& r : records) {
        if (r.n != records.front().n)
            throw InvalidArgument("difficulty ranking requires records of equal n");
        switch (measure) {
            case Measure::qw:
                if (!r.p_avg)
                    throw InvalidArgument("missing qw measure on " + r.instance_id);
                keys.push_back({-*r.p_avg, &r.instance_id});
                break;
            case Measure::aqc:
                if (!r.aqc_present)
                    throw InvalidArgument("missing aqc measure on " + r.instance_id);
                keys.push_back({r.t99 ? *r.t99 : kInf, &r.instance_id});
                break;
            case Measure::classical:
                if (!r.n_calls)
                    throw InvalidArgument("missing classical measure on " + r.instance_id);
                keys.push_back({static_cast<double>(*r.n_calls), &r.instance_id});
                break;
        }
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        if (a.primary != b.primary) return a.primary < b.primary;
        return *a.id < *b.id;
    });
    std::vector<std::string> out;
    out.reserve(keys.size());
    for (const Key& k : keys) out.push_back(*k.id);
    return out;
}

DecilePartition partition_deciles(const std::vector<DifficultyRecord>& records,
                                  Measure measure) {
    if (records.size() < 100)
        throw InvalidArgument("decile partition requires at least 100 records");
    DecilePartition part;
    part.measure = measure;
    part.n = records.front().n;
    part.ranked = rank_by_difficulty(records, measure);
    const std::uint64_t N = part.ranked.size();

    auto ceil_div = [](std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; };
    for (int decile = 1; decile <= 10; ++decile) {
        const std::uint64_t lo = ceil_div(static_cast<std::uint64_t>(decile - 1) * N, 10);
        const std::uint64_t hi = ceil_div(static_cast<std::uint64_t>(decile) * N, 10);
        for (std::uint64_t rank = lo + 1; rank <= hi; ++rank)
            part.decile_of[part.ranked[rank - 1]] = decile;
    }
    for (int percentile : {10, 20, 30, 40, 50, 60, 70, 80, 90, 99}) {
        const std::uint64_t rank =
            ceil_div(static_cast<std::uint64_t>(percentile) * N, 100);
        part.boundary_ids[percentile] = part.ranked[rank - 1];
    }
    const std::uint64_t cutoff = ceil_div(99 * N, 100);
    for (std::uint64_t rank = cutoff + 1; rank <= N; ++rank)
        part.top1pct.push_back(part.ranked[rank - 1]);
    return part;
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points,
                       AxisMode axis_mode) {
    if (points.size() < 3)
        throw InvalidArgument("scaling fit requires at least three points");
    ScalingFit fit;
    fit.axis_mode = axis_mode;
    fit.points = points;

    std::vector<double> xs, ys;
    for (const auto& [n, value] : points) {
        if (!(value > 0.0))
            throw InvalidArgument("scaling fit requires positive values");
        xs.push_back(axis_mode == AxisMode::log_log ? std::log2(n) : n);
        ys.push_back(std::log2(value));
    }
    const double N = static_cast<double>(xs.size());
    const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / N;
    const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / N;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    if (sxx == 0.0) throw InvalidArgument("scaling fit requires distinct n");
    fit.kappa = sxy / sxx;
    fit.intercept = mean_y - fit.kappa * mean_x;

    double ssr = 0.0;
    fit.residuals.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double resid = ys[i] - (fit.intercept + fit.kappa * xs[i]);
        fit.residuals.push_back(resid);
        ssr += resid * resid;
    }
    const double sigma_sq = ssr / (N - 2.0);
    fit.stderr_ = std::sqrt(std::max(0.0, sigma_sq / sxx));
    return fit;
}

namespace {

// Report value for medians: not-found t99 becomes +inf so the order
// statistic can land on it (the group is then omitted).
double report_value(const DifficultyRecord& r, Measure m) {
    bool missing = false;
    double cost;
    switch (m) {
        case Measure::qw:
            if (!r.p_avg) throw InvalidArgument("missing qw measure on " + r.instance_id);
            return *r.p_avg;
        case Measure::aqc:
            cost = native_cost(r, m, missing);
            if (missing) throw InvalidArgument("missing aqc measure on " + r.instance_id);
            return cost;
        case Measure::classical:
            cost = native_cost(r, m, missing);
            if (missing)
                throw InvalidArgument("missing classical measure on " + r.instance_id);
            return cost;
    }
    throw InvalidArgument("unknown measure");
}

}  // namespace

std::vector<MedianSeries> cross_decile_medians(
    const std::map<int, std::vector<DifficultyRecord>>& records_by_n,
    Measure group_measure, Measure report_measure) {
    std::vector<MedianSeries> series(11);
    for (int g = 1; g <= 11; ++g) series[static_cast<std::size_t>(g - 1)].group = g;

    for (const auto& [n, records] : records_by_n) {
        DecilePartition part = partition_deciles(records, group_measure);
        std::map<std::string, const DifficultyRecord*> by_id;
        for (const DifficultyRecord& r : records) by_id[r.instance_id] = &r;

        std::map<int, std::vector<double>> group_values;
        for (const auto& [id, decile] : part.decile_of)
            group_values[decile].push_back(report_value(*by_id[id], report_measure));
        for (const std::string& id : part.top1pct)
            group_values[11].push_back(report_value(*by_id[id], report_measure));

        for (auto& [group, values] : group_values) {
            if (values.empty()) continue;
            const double med = median_lower(values);
            if (!std::isfinite(med)) continue;  // dominated by not-found t99
            series[static_cast<std::size_t>(group - 1)].points.push_back({n, med});
        }
    }
    return series;
}

std::map<int, std::vector<std::pair<int, double>>> percentile_boundary_values(
    const std::map<int, std::vector<DifficultyRecord>>& records_by_n,
    Measure measure) {
    std::map<int, std::vector<std::pair<int, double>>> out;
    for (const auto& [n, records] : records_by_n) {
        DecilePartition part = partition_deciles(records, measure);
        std::map<std::string, const DifficultyRecord*> by_id;
        for (const DifficultyRecord& r : records) by_id[r.instance_id] = &r;
        for (const auto& [percentile, id] : part.boundary_ids) {
            const double value = report_value(*by_id[id], measure);
            if (std::isfinite(value)) out[percentile].push_back({n, value});
        }
    }
    return out;
}

Histogram make_histogram(std::vector<double> values, const HistogramSpec& spec) {
    if (values.empty()) throw InvalidArgument("histogram of empty sample");
    std::sort(values.begin(), values.end());
    const double lo = values.front();
    const double hi = values.back();
    const auto N = static_cast<double>(values.size());

    int bins = spec.bins;
    if (bins <= 0) {
        // Freedman-Diaconis, falling back to the square-root rule when the
        // IQR degenerates
        const double q1 = values[static_cast<std::size_t>(0.25 * (values.size() - 1))];
        const double q3 = values[static_cast<std::size_t>(0.75 * (values.size() - 1))];
        const double iqr = q3 - q1;
        const double width = 2.0 * iqr / std::cbrt(N);
        if (width > 0.0 && hi > lo)
            bins = static_cast<int>(std::ceil((hi - lo) / width));
        else
            bins = static_cast<int>(std::ceil(std::sqrt(N)));
        bins = std::max(1, std::min(bins, 512));
    }

    Histogram h;
    h.count = values.size();
    const double span = hi > lo ? hi - lo : 1.0;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b)
        h.edges[static_cast<std::size_t>(b)] = lo + span * b / bins;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        auto b = static_cast<long>((v - lo) / span * bins);
        b = std::clamp(b, 0l, static_cast<long>(bins - 1));
        ++counts[static_cast<std::size_t>(b)];
    }
    h.density.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        const double width = h.edges[static_cast<std::size_t>(b) + 1] -
                             h.edges[static_cast<std::size_t>(b)];
        h.density[static_cast<std::size_t>(b)] =
            static_cast<double>(counts[static_cast<std::size_t>(b)]) / (N * width);
    }
    return h;
}

SatisfiabilitySplit split_by_satisfiability(
    const std::vector<DifficultyRecord>& records, const HistogramSpec& spec) {
    SatisfiabilitySplit split;
    std::map<std::string, std::vector<double>> sat_values, unsat_values;
    for (const DifficultyRecord& r : records) {
        if (!r.satisfiable)
            throw InvalidArgument("missing satisfiable flag on " + r.instance_id);
        auto& sink = *r.satisfiable ? sat_values : unsat_values;
        (*r.satisfiable ? split.sat_count : split.unsat_count) += 1;
        if (r.p_avg) sink["p_avg"].push_back(*r.p_avg);
        if (r.aqc_present) {
            if (r.t99) {
                sink["t99"].push_back(*r.t99);
                sink["log10_t99"].push_back(std::log10(*r.t99));
            } else {
                ++split.t99_not_found_skipped;
            }
        }
        if (r.n_calls) {
            sink["n_calls"].push_back(static_cast<double>(*r.n_calls));
            sink["log10_n_calls"].push_back(std::log10(static_cast<double>(*r.n_calls)));
        }
    }
    split.sat_empty = split.sat_count == 0;
    split.unsat_empty = split.unsat_count == 0;
    for (auto& [key, values] : sat_values) {
        split.sat_median[key] = median_lower(values);
        split.sat_hist[key] = make_histogram(values, spec);
    }
    for (auto& [key, values] : unsat_values) {
        split.unsat_median[key] = median_lower(values);
        split.unsat_hist[key] = make_histogram(values, spec);
    }
    return split;
}

PortfolioSummary portfolio_eval(const std::vector<DifficultyRecord>& records,
                                Measure measure_a, Measure measure_b,
                                const PortfolioOptions& options) {
    if (records.empty()) throw InvalidArgument("portfolio of empty record set");
    PortfolioSummary summary;
    summary.measure_a = measure_a;
    summary.measure_b = measure_b;
    summary.sample_size = records.size();

    std::vector<double> a_costs, b_costs;
    a_costs.reserve(records.size());
    b_costs.reserve(records.size());
    for (const DifficultyRecord& r : records) {
        bool missing = false;
        const double a = native_cost(r, measure_a, missing);
        const double b = native_cost(r, measure_b, missing);
        if (missing)
            throw InvalidArgument("missing portfolio cost on " + r.instance_id);
        a_costs.push_back(a);
        b_costs.push_back(b);
    }

    if (options.median_normalize) {
        auto normalize = [](std::vector<double>& costs) {
            std::vector<double> finite;
            for (double c : costs)
                if (std::isfinite(c)) finite.push_back(c);
            if (finite.empty()) return;
            const double med = median_lower(finite);
            if (med > 0.0)
                for (double& c : costs) c /= med;
        };
        normalize(a_costs);
        normalize(b_costs);
    }

    auto aggregate = [](const std::vector<double>& costs, double& total,
                        double& median, double& max) {
        total = 0.0;
        max = 0.0;
        for (double c : costs) {
            total += c;
            max = std::max(max, c);
        }
        median = median_lower(costs);
    };

    summary.portfolio_costs.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        summary.portfolio_costs.push_back(2.0 * std::min(a_costs[i], b_costs[i]));

    aggregate(a_costs, summary.standalone_a_total, summary.standalone_a_median,
              summary.standalone_a_max);
    aggregate(b_costs, summary.standalone_b_total, summary.standalone_b_median,
              summary.standalone_b_max);
    aggregate(summary.portfolio_costs, summary.portfolio_total,
              summary.portfolio_median, summary.portfolio_max);

    summary.speedup_vs_a.reserve(records.size());
    summary.speedup_vs_b.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        summary.speedup_vs_a.push_back(a_costs[i] / summary.portfolio_costs[i]);
        summary.speedup_vs_b.push_back(b_costs[i] / summary.portfolio_costs[i]);
    }
    return summary;
}

}  // namespace m2s
