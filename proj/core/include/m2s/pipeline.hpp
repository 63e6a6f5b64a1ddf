#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "m2s/config.hpp"
#include "m2s/generate.hpp"

namespace m2s {

enum class SolverKind { qw, aqc, classical, twosat };

std::optional<SolverKind> solver_from_name(std::string_view name);
const char* solver_name(SolverKind kind);

std::filesystem::path dataset_dir(const RunConfig& config);
std::filesystem::path results_dir(const RunConfig& config);
std::filesystem::path analytics_dir(const RunConfig& config);
std::filesystem::path results_path(const RunConfig& config, SolverKind kind);

// FNV-1a over the per-n manifests, in ascending n.
std::string dataset_hash(const std::filesystem::path& dataset);

// Effective worker count: M2SBENCH_WORKERS overrides the config.
int effective_workers(const RunConfig& config);

struct GenReport {
    std::vector<DatasetStats> per_n;
    std::string dataset_hash_hex;
};

// Generates out_dir/dataset/n<k>/ for every n in range, with manifests and a
// dataset hash file.
GenReport cmd_gen(const RunConfig& config, std::ostream& log);

struct RunReport {
    std::filesystem::path results_file;
    std::size_t computed = 0;
    std::size_t skipped = 0;   // already present, resumed
    std::size_t failed = 0;    // recorded in-line as error objects
};

// Runs one solver over every dataset instance, appending JSONL results.
// Restarting skips completed ids; the finalized file is sorted by id.
RunReport cmd_run(const RunConfig& config, SolverKind kind,
                  const std::filesystem::path& dataset, std::ostream& log);

struct AnalyzeReport {
    std::vector<std::filesystem::path> files_written;
};

// Emits the fig*.csv bundle and summary.txt from result files. All inputs
// must carry identical config/dataset hashes unless force is set.
AnalyzeReport cmd_analyze(const std::vector<std::filesystem::path>& result_files,
                          const std::filesystem::path& out, bool force,
                          std::ostream& log);

struct OracleReport {
    std::size_t instances_checked = 0;
    std::vector<std::string> mismatches;

    bool clean() const { return mismatches.empty(); }
};

// Brute-force cross-checks over a dataset: energy tables, Ising
// reconstruction, MixBandB exactness, and 2-SAT agreement.
OracleReport cmd_oracle(const std::filesystem::path& dataset, std::ostream& log);

struct IngestReport {
    std::size_t accepted = 0;
    std::vector<std::pair<std::string, std::string>> rejected;  // file, reason
};

// Validates external instance files (instance-core format) and writes a
// normalized dataset directory with a manifest.
IngestReport cmd_ingest(const std::filesystem::path& source,
                        const std::filesystem::path& dest, std::ostream& log);

}  // namespace m2s
