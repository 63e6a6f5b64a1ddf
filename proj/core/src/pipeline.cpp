#include "m2s/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "m2s/analytics.hpp"
#include "m2s/dynamics.hpp"
#include "m2s/errors.hpp"
#include "m2s/instance_io.hpp"
#include "m2s/ising.hpp"
#include "m2s/mix_bandb.hpp"
#include "m2s/records.hpp"
#include "m2s/two_sat.hpp"
#include "m2s/version.hpp"

namespace m2s {

namespace {

namespace fs = std::filesystem;

std::vector<int> dataset_sizes(const fs::path& dataset) {
    std::vector<int> sizes;
    if (!fs::is_directory(dataset))
        throw DataError("dataset directory not found: " + dataset.string());
    for (const auto& entry : fs::directory_iterator(dataset)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() < 2 || name[0] != 'n') continue;
        const bool digits = std::all_of(name.begin() + 1, name.end(),
                                        [](char c) { return c >= '0' && c <= '9'; });
        if (digits) sizes.push_back(std::stoi(name.substr(1)));
    }
    std::sort(sizes.begin(), sizes.end());
    if (sizes.empty())
        throw DataError("dataset has no n<k> subdirectories: " + dataset.string());
    return sizes;
}

std::string hash_to_hex(std::uint64_t h) {
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = hex[(h >> (60 - 4 * i)) & 0xF];
    return out;
}

}  // namespace

std::optional<SolverKind> solver_from_name(std::string_view name) {
    if (name == "qw") return SolverKind::qw;
    if (name == "aqc") return SolverKind::aqc;
    if (name == "classical") return SolverKind::classical;
    if (name == "twosat") return SolverKind::twosat;
    return std::nullopt;
}

const char* solver_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::qw: return "qw";
        case SolverKind::aqc: return "aqc";
        case SolverKind::classical: return "classical";
        case SolverKind::twosat: return "twosat";
    }
    return "?";
}

fs::path dataset_dir(const RunConfig& config) {
    return fs::path(config.out_dir) / "dataset";
}
fs::path results_dir(const RunConfig& config) {
    return fs::path(config.out_dir) / "results";
}
fs::path analytics_dir(const RunConfig& config) {
    return fs::path(config.out_dir) / "analytics";
}
fs::path results_path(const RunConfig& config, SolverKind kind) {
    return results_dir(config) / (std::string(solver_name(kind)) + ".jsonl");
}

std::string dataset_hash(const fs::path& dataset) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (int n : dataset_sizes(dataset)) {
        const std::string label = "n" + std::to_string(n) + "\n";
        h = fnv1a(label.data(), label.size(), h);
        const std::string manifest =
            read_text_file(dataset / ("n" + std::to_string(n)) / "manifest.txt");
        h = fnv1a(manifest.data(), manifest.size(), h);
    }
    return hash_to_hex(h);
}

int effective_workers(const RunConfig& config) {
    if (const char* env = std::getenv("M2SBENCH_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return std::max(1, config.workers);
}

GenReport cmd_gen(const RunConfig& config, std::ostream& log) {
    GenReport report;
    const fs::path root = dataset_dir(config);
    const int workers = effective_workers(config);
    for (int n = config.n_min; n <= config.n_max; ++n) {
        GeneratedDataset generated = generate_dataset(
            n, config.target_count, config.master_seed, config.clause_factor,
            workers);
        write_dataset(root / ("n" + std::to_string(n)), generated.instances);
        log << "gen n=" << n << " kept " << generated.stats.kept << "/"
            << generated.stats.attempted << "\n";
        report.per_n.push_back(generated.stats);
    }
    report.dataset_hash_hex = dataset_hash(root);
    write_text_file(root / "dataset_hash.txt", report.dataset_hash_hex + "\n");
    return report;
}

namespace {

struct SolveContext {
    const RunConfig& config;
    SolverKind kind;
    std::string config_hash_hex;
    std::map<int, double> gamma_by_n;
};

EvolveOptions evolve_options(const RunConfig& config) {
    EvolveOptions opts;
    opts.rtol = config.rtol;
    opts.atol = config.atol;
    return opts;
}

std::string solve_one(const SolveContext& ctx, const Instance& inst) {
    const RunConfig& config = ctx.config;
    switch (ctx.kind) {
        case SolverKind::qw: {
            QuantumRunLine line;
            line.instance_id = inst.id;
            line.n = inst.n;
            line.tolerance = config.rtol;
            line.code_version = kCodeVersion;
            try {
                const EnergyTable table = build_energy_table(inst);
                WalkConfig walk;
                walk.gamma = config.gamma_override ? *config.gamma_override
                                                   : ctx.gamma_by_n.at(inst.n);
                walk.window = {config.qw_t_start, config.qw_width};
                QwResult result =
                    qw_average_probability(inst, table, walk, evolve_options(config));
                line.gamma = walk.gamma;
                line.p_avg = result.p_avg;
                line.step_count = result.step_count;
                if (config.qw_pinf && inst.n <= kDenseDiagMaxN)
                    line.p_infinity = qw_infinite_time_average(table, walk.gamma);
            } catch (const Error& e) {
                line.error = e.what();
            }
            return serialize_line(line);
        }
        case SolverKind::aqc: {
            QuantumRunLine line;
            line.instance_id = inst.id;
            line.n = inst.n;
            line.aqc_attempted = true;
            line.tolerance = config.rtol;
            line.code_version = kCodeVersion;
            try {
                const EnergyTable table = build_energy_table(inst);
                EvolveOptions eopts = evolve_options(config);
                eopts.max_steps = config.t99_max_steps_per_probe;
                const auto started = std::chrono::steady_clock::now();
                std::uint64_t steps = 0;
                ProbabilityProbe probe = [&](double t_f) -> std::optional<double> {
                    if (config.t99_wall_cap_seconds > 0.0) {
                        const std::chrono::duration<double> elapsed =
                            std::chrono::steady_clock::now() - started;
                        if (elapsed.count() > config.t99_wall_cap_seconds)
                            return std::nullopt;
                    }
                    try {
                        StateVector psi = uniform_superposition(table.n);
                        EvolveStats stats =
                            evolve(table, linear_anneal_blend(AnnealSchedule{t_f}),
                                   0.0, t_f, psi, eopts);
                        steps += stats.step_count;
                        return std::norm(psi.amplitudes[table.ground_index]);
                    } catch (const StepLimitError&) {
                        return std::nullopt;
                    } catch (const NormDriftError&) {
                        return std::nullopt;
                    }
                };
                T99Options topts;
                topts.t_init = config.t99_init;
                topts.max_doublings = config.t99_max_doublings;
                AqcResult result = find_t99(probe, topts);
                line.t99 = result.t99;
                if (result.t99) line.bracket = result.bracket;
                line.step_count = steps;
            } catch (const Error& e) {
                line.error = e.what();
            }
            return serialize_line(line);
        }
        case SolverKind::classical: {
            ClassicalRunLine line;
            line.instance_id = inst.id;
            line.n = inst.n;
            line.seed = config.master_seed;
            line.config_hash_hex = ctx.config_hash_hex;
            try {
                MixBandBConfig bc;
                bc.mixing.k = config.sdp_k;
                bc.mixing.max_sweeps = config.sdp_max_sweeps;
                bc.mixing.tol = config.sdp_tol;
                bc.rounding_rounds = config.rounding_rounds;
                bc.seed = config.master_seed;
                ClassicalRunRecord record = mixbandb_solve(inst, bc);
                line.n_calls = record.n_calls;
                line.best_unsatisfied = record.best_unsatisfied;
                line.node_count = record.node_count;
            } catch (const Error& e) {
                line.error = e.what();
            }
            return serialize_line(line);
        }
        case SolverKind::twosat: {
            TwoSatLine line;
            line.instance_id = inst.id;
            line.n = inst.n;
            line.satisfiable = two_sat_satisfiable(inst);
            return serialize_line(line);
        }
    }
    throw Error("unreachable solver kind");
}

void finalize_sorted(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot reopen " + path.string());
    std::string line;
    std::string meta_line;
    std::map<std::string, std::string> by_id;  // id -> raw line, first wins
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            meta_line = line;
            first = false;
            continue;
        }
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("instance_id")) continue;
        by_id.emplace(j["instance_id"].get<std::string>(), line);
    }
    in.close();
    std::ostringstream out;
    out << meta_line << "\n";
    for (const auto& [id, raw] : by_id) out << raw << "\n";
    write_text_file(path, out.str());
}

}  // namespace

RunReport cmd_run(const RunConfig& config, SolverKind kind,
                  const fs::path& dataset, std::ostream& log) {
    std::vector<Instance> instances;
    for (int n : dataset_sizes(dataset)) {
        std::vector<Instance> batch =
            read_dataset(dataset / ("n" + std::to_string(n)));
        std::move(batch.begin(), batch.end(), std::back_inserter(instances));
    }

    ResultFileMeta meta;
    meta.kind = solver_name(kind);
    meta.config_hash_hex = config_hash(config);
    meta.dataset_hash_hex = dataset_hash(dataset);
    meta.code_version = kCodeVersion;
    meta.config_text = serialize_config_semantic(config);

    fs::create_directories(results_dir(config));
    const fs::path path = results_path(config, kind);
    const std::set<std::string> done = completed_ids(path, meta);

    RunReport report;
    report.results_file = path;
    report.skipped = done.size();

    SolveContext ctx{config, kind, meta.config_hash_hex, {}};
    if (kind == SolverKind::qw && !config.gamma_override) {
        // heuristic hopping rate per n, from the whole dataset at that n
        std::map<int, std::vector<EnergyTable>> tables;
        for (const Instance& inst : instances)
            tables[inst.n].push_back(build_energy_table(inst));
        for (const auto& [n, list] : tables) {
            ctx.gamma_by_n[n] = heuristic_gamma(list);
            log << "gamma_heur n=" << n << " = " << format_double(ctx.gamma_by_n[n])
                << "\n";
        }
    }

    std::vector<const Instance*> pending;
    for (const Instance& inst : instances)
        if (!done.count(inst.id)) pending.push_back(&inst);

    std::ofstream out;
    if (!fs::exists(path)) {
        out.open(path, std::ios::binary);
        out << serialize_meta(meta) << "\n";
    } else {
        // a truncated final line from a killed run must not absorb the next
        // append
        bool ends_with_newline = false;
        {
            std::ifstream check(path, std::ios::binary | std::ios::ate);
            if (check.tellg() > 0) {
                check.seekg(-1, std::ios::end);
                ends_with_newline = check.get() == '\n';
            }
        }
        out.open(path, std::ios::binary | std::ios::app);
        if (out && !ends_with_newline) out << "\n";
    }
    if (!out) throw DataError("cannot open results file " + path.string());

    std::mutex write_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failed{0};
    const int workers = effective_workers(config);
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) return;
            const std::string line = solve_one(ctx, *pending[i]);
            if (line.find("\"error\"") != std::string::npos) ++failed;
            std::lock_guard<std::mutex> lock(write_mutex);
            out << line << "\n";
            out.flush();
        }
    };
    if (workers <= 1 || pending.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    out.close();
    report.computed = pending.size();
    report.failed = failed.load();

    finalize_sorted(path);
    log << solver_name(kind) << ": computed " << report.computed << ", resumed "
        << report.skipped << ", failed " << report.failed << "\n";
    return report;
}

// ---------------------------------------------------------------------------
// analyze

namespace {

// single-line form of the semantic config for provenance comments
std::string inline_config(const std::string& config_text) {
    std::string flat = config_text;
    while (!flat.empty() && flat.back() == '\n') flat.pop_back();
    for (char& c : flat)
        if (c == '\n') c = ';';
    return flat;
}

struct CsvWriter {
    std::ostringstream body;
    const ResultFileMeta& meta;

    explicit CsvWriter(const ResultFileMeta& m, const std::string& header)
        : meta(m) {
        body << "# m2sbench analytics\n";
        body << "# config_hash=" << meta.config_hash_hex << "\n";
        body << "# dataset_hash=" << meta.dataset_hash_hex << "\n";
        body << "# code_version=" << meta.code_version << "\n";
        if (!meta.config_text.empty())
            body << "# config=" << inline_config(meta.config_text) << "\n";
        body << header << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body << ",";
            body << cells[i];
        }
        body << "\n";
    }
};

std::string fmt(double v) { return format_double(v); }

// qw/aqc joint heatmap bins per n: p_avg linear, t99 log10.
void write_fig2(const JoinedRecords& joined, const ResultFileMeta& meta,
                const fs::path& dir, std::vector<fs::path>& written) {
    CsvWriter csv(meta, "n,x_measure,y_measure,x_lo,x_hi,y_lo,y_hi,count");
    constexpr int kBins = 24;
    for (const auto& [n, records] : joined.by_n) {
        std::vector<std::pair<double, double>> points;
        for (const DifficultyRecord& r : records)
            if (r.p_avg && r.aqc_present && r.t99)
                points.push_back({*r.p_avg, std::log10(*r.t99)});
        if (points.size() < 4) continue;
        double x_lo = points[0].first, x_hi = points[0].first;
        double y_lo = points[0].second, y_hi = points[0].second;
        for (const auto& [x, y] : points) {
            x_lo = std::min(x_lo, x); x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y); y_hi = std::max(y_hi, y);
        }
        if (x_hi <= x_lo) x_hi = x_lo + 1.0;
        if (y_hi <= y_lo) y_hi = y_lo + 1.0;
        std::map<std::pair<int, int>, std::size_t> counts;
        for (const auto& [x, y] : points) {
            int bx = std::min(kBins - 1, static_cast<int>((x - x_lo) / (x_hi - x_lo) * kBins));
            int by = std::min(kBins - 1, static_cast<int>((y - y_lo) / (y_hi - y_lo) * kBins));
            ++counts[{bx, by}];
        }
        for (const auto& [bin, count] : counts) {
            const double bx_lo = x_lo + (x_hi - x_lo) * bin.first / kBins;
            const double bx_hi = x_lo + (x_hi - x_lo) * (bin.first + 1) / kBins;
            const double by_lo = y_lo + (y_hi - y_lo) * bin.second / kBins;
            const double by_hi = y_lo + (y_hi - y_lo) * (bin.second + 1) / kBins;
            csv.row({std::to_string(n), "p_avg", "log10_t99", fmt(bx_lo), fmt(bx_hi),
                     fmt(by_lo), fmt(by_hi), std::to_string(count)});
        }
    }
    const fs::path path = dir / "fig2_heatmap.csv";
    write_text_file(path, csv.body.str());
    written.push_back(path);
}

void write_percentile_file(const JoinedRecords& joined, const ResultFileMeta& meta,
                           const fs::path& dir, std::vector<fs::path>& written) {
    CsvWriter csv(meta, "measure,percentile,kind,n,value,kappa,stderr");
    for (Measure measure : {Measure::qw, Measure::aqc}) {
        std::map<int, std::vector<std::pair<int, double>>> series;
        try {
            series = percentile_boundary_values(joined.by_n, measure);
        } catch (const InvalidArgument&) {
            continue;  // measure missing from the record set
        }
        for (const auto& [percentile, points] : series) {
            for (const auto& [n, value] : points)
                csv.row({measure_name(measure), std::to_string(percentile), "point",
                         std::to_string(n), fmt(value), "", ""});
            if (points.size() >= 3) {
                std::vector<std::pair<double, double>> fit_points;
                for (const auto& [n, value] : points)
                    fit_points.push_back({static_cast<double>(n), value});
                const ScalingFit fit = scaling_fit(fit_points, AxisMode::log_linear);
                csv.row({measure_name(measure), std::to_string(percentile), "fit", "",
                         "", fmt(fit.kappa), fmt(fit.stderr_)});
            }
        }
    }
    const fs::path path = dir / "fig3_percentiles.csv";
    write_text_file(path, csv.body.str());
    written.push_back(path);
}

void write_cross_file(const JoinedRecords& joined, const ResultFileMeta& meta,
                      const fs::path& dir, std::vector<fs::path>& written) {
    CsvWriter csv(meta, "group_measure,report_measure,group,kind,n,value,kappa,stderr");
    const std::pair<Measure, Measure> combos[] = {
        {Measure::aqc, Measure::qw}, {Measure::qw, Measure::aqc}};
    for (const auto& [group_measure, report_measure] : combos) {
        std::vector<MedianSeries> series;
        try {
            series = cross_decile_medians(joined.by_n, group_measure, report_measure);
        } catch (const InvalidArgument&) {
            continue;
        }
        for (const MedianSeries& s : series) {
            const std::string group =
                s.group == 11 ? "top1pct" : std::to_string(s.group);
            for (const auto& [n, median] : s.points)
                csv.row({measure_name(group_measure), measure_name(report_measure),
                         group, "point", std::to_string(n), fmt(median), "", ""});
            if (s.points.size() >= 3) {
                std::vector<std::pair<double, double>> fit_points;
                for (const auto& [n, median] : s.points)
                    fit_points.push_back({static_cast<double>(n), median});
                const ScalingFit fit = scaling_fit(fit_points, AxisMode::log_linear);
                csv.row({measure_name(group_measure), measure_name(report_measure),
                         group, "fit", "", "", fmt(fit.kappa), fmt(fit.stderr_)});
            }
        }
    }
    const fs::path path = dir / "fig4_cross.csv";
    write_text_file(path, csv.body.str());
    written.push_back(path);
}

void write_calls_hist(const JoinedRecords& joined, const ResultFileMeta& meta,
                      const fs::path& dir, std::vector<fs::path>& written) {
    CsvWriter csv(meta, "n,measure,bin_lo,bin_hi,density,count");
    for (const auto& [n, records] : joined.by_n) {
        std::vector<double> values;
        for (const DifficultyRecord& r : records)
            if (r.n_calls)
                values.push_back(std::log10(static_cast<double>(*r.n_calls)));
        if (values.size() < 2) continue;
        const Histogram h = make_histogram(values);
        for (std::size_t b = 0; b + 1 < h.edges.size(); ++b)
            csv.row({std::to_string(n), "log10_n_calls", fmt(h.edges[b]),
                     fmt(h.edges[b + 1]), fmt(h.density[b]),
                     std::to_string(h.count)});
    }
    const fs::path path = dir / "fig5_hist.csv";
    write_text_file(path, csv.body.str());
    written.push_back(path);
}

void write_sat_hist(const JoinedRecords& joined, const ResultFileMeta& meta,
                    const fs::path& dir, std::vector<fs::path>& written) {
    CsvWriter csv(meta, "n,group,measure,kind,bin_lo,bin_hi,value");
    for (const auto& [n, records] : joined.by_n) {
        bool flags = !records.empty();
        for (const DifficultyRecord& r : records)
            if (!r.satisfiable) flags = false;
        if (!flags) continue;
        const SatisfiabilitySplit split = split_by_satisfiability(records);
        auto emit = [&](const char* group,
                        const std::map<std::string, double>& medians,
                        const std::map<std::string, Histogram>& hists) {
            for (const auto& [measure, median] : medians)
                csv.row({std::to_string(n), group, measure, "median", "", "",
                         fmt(median)});
            for (const auto& [measure, h] : hists)
                for (std::size_t b = 0; b + 1 < h.edges.size(); ++b)
                    csv.row({std::to_string(n), group, measure, "bin",
                             fmt(h.edges[b]), fmt(h.edges[b + 1]), fmt(h.density[b])});
        };
        emit("sat", split.sat_median, split.sat_hist);
        emit("unsat", split.unsat_median, split.unsat_hist);
    }
    const fs::path path = dir / "fig6_sat_hist.csv";
    write_text_file(path, csv.body.str());
    written.push_back(path);
}

void write_scaling(const JoinedRecords& joined, const ResultFileMeta& meta,
                   const fs::path& dir, std::vector<fs::path>& written) {
    CsvWriter csv(meta, "group,measure,axis,kind,n,value,kappa,stderr");
    // median p_avg / t99 per n for satisfiable vs unsatisfiable instances
    for (const char* group : {"sat", "unsat"}) {
        const bool want_sat = std::string(group) == "sat";
        for (const char* measure : {"p_avg", "t99"}) {
            std::vector<std::pair<double, double>> points;
            for (const auto& [n, records] : joined.by_n) {
                std::vector<double> values;
                for (const DifficultyRecord& r : records) {
                    if (!r.satisfiable || *r.satisfiable != want_sat) continue;
                    if (std::string(measure) == "p_avg" && r.p_avg)
                        values.push_back(*r.p_avg);
                    else if (std::string(measure) == "t99" && r.t99)
                        values.push_back(*r.t99);
                }
                if (values.empty()) continue;
                std::sort(values.begin(), values.end());
                points.push_back({static_cast<double>(n),
                                  values[(values.size() - 1) / 2]});
            }
            if (points.size() < 3) continue;
            for (AxisMode axis : {AxisMode::log_linear, AxisMode::log_log}) {
                const char* axis_name =
                    axis == AxisMode::log_linear ? "log_linear" : "log_log";
                const ScalingFit fit = scaling_fit(points, axis);
                for (const auto& [n, value] : points)
                    csv.row({group, measure, axis_name, "point", fmt(n), fmt(value),
                             "", ""});
                csv.row({group, measure, axis_name, "fit", "", "", fmt(fit.kappa),
                         fmt(fit.stderr_)});
                for (std::size_t i = 0; i < fit.residuals.size(); ++i)
                    csv.row({group, measure, axis_name, "residual",
                             fmt(points[i].first), fmt(fit.residuals[i]), "", ""});
            }
        }
    }
    const fs::path path = dir / "fig7_scaling.csv";
    write_text_file(path, csv.body.str());
    written.push_back(path);
}

void write_pinf(const JoinedRecords& joined, const ResultFileMeta& meta,
                const fs::path& dir, std::vector<fs::path>& written) {
    CsvWriter csv(meta, "n,instance_id,p_avg,p_infinity");
    for (const auto& [n, records] : joined.by_n)
        for (const DifficultyRecord& r : records)
            if (r.p_avg && r.p_infinity)
                csv.row({std::to_string(n), r.instance_id, fmt(*r.p_avg),
                         fmt(*r.p_infinity)});
    const fs::path path = dir / "appendix_pinf.csv";
    write_text_file(path, csv.body.str());
    written.push_back(path);
}

void write_summary(const JoinedRecords& joined, const ResultFileMeta& meta,
                   const fs::path& dir, std::vector<fs::path>& written) {
    std::ostringstream out;
    out << "m2sbench analysis summary\n";
    out << "config_hash=" << meta.config_hash_hex << "\n";
    out << "dataset_hash=" << meta.dataset_hash_hex << "\n";
    if (!meta.config_text.empty())
        out << "config=" << inline_config(meta.config_text) << "\n";
    out << "error_lines=" << joined.error_lines << "\n\n";

    out << "[records]\n";
    for (const auto& [n, records] : joined.by_n)
        out << "n=" << n << " count=" << records.size() << "\n";
    out << "\n[spearman]\n";
    for (const auto& [n, records] : joined.by_n) {
        const std::pair<Measure, Measure> combos[] = {
            {Measure::qw, Measure::aqc},
            {Measure::qw, Measure::classical},
            {Measure::aqc, Measure::classical}};
        for (const auto& [x, y] : combos) {
            try {
                const CorrelationReport report = correlate(records, x, y);
                out << "n=" << n << " " << measure_name(x) << "_"
                    << measure_name(y) << " rho=" << format_double(report.rho)
                    << " sample=" << report.sample_size
                    << " excluded=" << report.excluded << "\n";
            } catch (const InvalidArgument&) {
            }
        }
        // finite vs infinite window averages
        std::vector<double> pavg, pinf;
        for (const DifficultyRecord& r : records)
            if (r.p_avg && r.p_infinity) {
                pavg.push_back(*r.p_avg);
                pinf.push_back(*r.p_infinity);
            }
        if (pavg.size() >= 2) {
            try {
                out << "n=" << n << " pavg_pinf rho="
                    << format_double(spearman(pavg, pinf)) << " sample="
                    << pavg.size() << "\n";
            } catch (const InvalidArgument&) {
            }
        }
    }

    out << "\n[satisfiability]\n";
    for (const auto& [n, records] : joined.by_n) {
        std::size_t sat = 0, unsat = 0, unknown = 0;
        for (const DifficultyRecord& r : records) {
            if (!r.satisfiable) ++unknown;
            else if (*r.satisfiable) ++sat;
            else ++unsat;
        }
        out << "n=" << n << " sat=" << sat << " unsat=" << unsat
            << " unknown=" << unknown << "\n";
    }

    out << "\n[portfolio]\n";
    const std::pair<Measure, Measure> pairs[] = {
        {Measure::qw, Measure::classical},
        {Measure::qw, Measure::aqc},
        {Measure::aqc, Measure::classical}};
    for (const auto& [n, records] : joined.by_n) {
        for (const auto& [a, b] : pairs) {
            try {
                const PortfolioSummary s = portfolio_eval(records, a, b);
                out << "n=" << n << " pair=" << measure_name(a) << "+"
                    << measure_name(b)
                    << " portfolio_median=" << format_double(s.portfolio_median)
                    << " portfolio_max=" << format_double(s.portfolio_max)
                    << " a_median=" << format_double(s.standalone_a_median)
                    << " a_max=" << format_double(s.standalone_a_max)
                    << " b_median=" << format_double(s.standalone_b_median)
                    << " b_max=" << format_double(s.standalone_b_max) << "\n";
            } catch (const InvalidArgument&) {
            }
        }
    }

    const fs::path path = dir / "summary.txt";
    write_text_file(path, out.str());
    written.push_back(path);
}

}  // namespace

AnalyzeReport cmd_analyze(const std::vector<fs::path>& result_files,
                          const fs::path& out, bool force, std::ostream& log) {
    if (result_files.empty()) throw DataError("analyze needs result files");
    std::vector<ResultFile> files;
    for (const fs::path& p : result_files) files.push_back(read_result_file(p));
    for (const ResultFile& f : files) {
        if (f.meta.config_hash_hex != files.front().meta.config_hash_hex ||
            f.meta.dataset_hash_hex != files.front().meta.dataset_hash_hex) {
            if (!force)
                throw DataError("mixed config or dataset hashes across result files "
                                "(use force to override)");
            log << "warning: mixed provenance hashes, forced\n";
            break;
        }
    }

    const JoinedRecords joined = join_records(files);
    fs::create_directories(out);

    AnalyzeReport report;
    const ResultFileMeta& meta = files.front().meta;
    write_fig2(joined, meta, out, report.files_written);
    write_percentile_file(joined, meta, out, report.files_written);
    write_cross_file(joined, meta, out, report.files_written);
    write_calls_hist(joined, meta, out, report.files_written);
    write_sat_hist(joined, meta, out, report.files_written);
    write_scaling(joined, meta, out, report.files_written);
    write_pinf(joined, meta, out, report.files_written);
    write_summary(joined, meta, out, report.files_written);
    for (const fs::path& p : report.files_written) log << "wrote " << p.string() << "\n";
    return report;
}

OracleReport cmd_oracle(const fs::path& dataset, std::ostream& log) {
    OracleReport report;
    std::map<int, std::pair<double, std::size_t>> timing;  // n -> (seconds, count)
    for (int n : dataset_sizes(dataset)) {
        const fs::path subdir = dataset / ("n" + std::to_string(n));
        const auto entries = parse_manifest(read_text_file(subdir / "manifest.txt"));
        std::vector<Instance> instances;
        for (const auto& entry : entries) {
            try {
                instances.push_back(parse_instance(read_text_file(subdir / entry.path)));
            } catch (const Error& e) {
                ++report.instances_checked;
                report.mismatches.push_back(entry.id + ": unreadable instance (" +
                                            e.what() + ")");
            }
        }
        for (const Instance& inst : instances) {
            const auto start = std::chrono::steady_clock::now();
            ++report.instances_checked;
            auto fail = [&](const std::string& what) {
                report.mismatches.push_back(inst.id + ": " + what);
            };
            try {
                const BruteForceResult bf = brute_force_optima(inst);
                const EnergyTable table = build_energy_table(inst);
                if (table.min_energy() != inst.m() - bf.best_satisfied)
                    fail("energy table minimum disagrees with brute force");
                if (table.ground_degeneracy != static_cast<int>(bf.optima.size()))
                    fail("ground degeneracy disagrees with brute force");
                if (inst.canonicalized) {
                    if (count_satisfied(inst, Assignment{inst.n, 0}) != bf.best_satisfied)
                        fail("canonicalized instance: all-zeros not optimal");
                }
                if (inst.n <= 12) {
                    const std::uint64_t total = std::uint64_t{1} << inst.n;
                    for (std::uint64_t k = 0; k < total; ++k) {
                        const int expected =
                            inst.m() - count_satisfied(inst, Assignment{inst.n, k});
                        if (table.energies[k] != expected) {
                            fail("energy table entry mismatch at index " +
                                 std::to_string(k));
                            break;
                        }
                    }
                }
                if (inst.n <= 16 && !ising_matches_table(build_ising(inst), table))
                    fail("ising reconstruction mismatch");
                const ClassicalRunRecord classical = mixbandb_solve(inst);
                if (classical.best_unsatisfied != inst.m() - bf.best_satisfied)
                    fail("mixbandb optimum disagrees with brute force");
                if (inst.m() - count_satisfied(inst, classical.best_assignment) !=
                    classical.best_unsatisfied)
                    fail("mixbandb assignment does not achieve its reported optimum");
                if (two_sat_satisfiable(inst) != (bf.best_satisfied == inst.m()))
                    fail("2-sat decision disagrees with brute force");
            } catch (const Error& e) {
                fail(std::string("exception: ") + e.what());
            }
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - start;
            timing[inst.n].first += elapsed.count();
            timing[inst.n].second += 1;
        }
    }
    for (const auto& [n, t] : timing)
        log << "oracle n=" << n << " instances=" << t.second
            << " avg_seconds=" << format_double(t.first / static_cast<double>(t.second))
            << "\n";
    for (const std::string& m : report.mismatches) log << "MISMATCH " << m << "\n";
    log << (report.clean() ? "oracle: clean\n" : "oracle: mismatches found\n");
    return report;
}

IngestReport cmd_ingest(const fs::path& source, const fs::path& dest,
                        std::ostream& log) {
    if (!fs::is_directory(source))
        throw DataError("ingest source not found: " + source.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(source))
        if (entry.is_regular_file() && entry.path().extension() == ".cnf")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    IngestReport report;
    std::vector<Instance> accepted;
    for (const fs::path& file : files) {
        try {
            Instance inst = parse_instance(read_text_file(file));
            if (inst.id.empty()) inst.id = file.stem().string();
            if (inst.canonicalized && inst.n <= kBruteForceMaxN) {
                const BruteForceResult bf = brute_force_optima(inst);
                if (count_satisfied(inst, Assignment{inst.n, 0}) != bf.best_satisfied)
                    throw DataError("canonicalized flag set but all-zeros not optimal");
            }
            accepted.push_back(std::move(inst));
            ++report.accepted;
        } catch (const Error& e) {
            report.rejected.push_back({file.filename().string(), e.what()});
        }
    }

    // one n<k>/ directory per size, same as generated datasets
    std::map<int, std::vector<Instance>> by_n;
    for (Instance& inst : accepted) by_n[inst.n].push_back(std::move(inst));
    for (auto& [n, list] : by_n)
        write_dataset(dest / ("n" + std::to_string(n)), list);
    if (!by_n.empty())
        write_text_file(dest / "dataset_hash.txt", dataset_hash(dest) + "\n");

    log << "ingest: accepted " << report.accepted << ", rejected "
        << report.rejected.size() << "\n";
    for (const auto& [file, reason] : report.rejected)
        log << "rejected " << file << ": " << reason << "\n";
    return report;
}

}  // namespace m2s
