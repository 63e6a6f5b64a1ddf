#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "m2s/analytics.hpp"

namespace m2s {

// One result line from a quantum run (qw fills gamma/p_avg, aqc fills
// t99/bracket). A set `error` marks a per-instance failure; other fields are
// then meaningless.
struct QuantumRunLine {
    std::string instance_id;
    int n = 0;
    std::optional<double> gamma;
    std::optional<double> p_avg;
    std::optional<double> p_infinity;
    bool aqc_attempted = false;
    std::optional<double> t99;
    std::optional<std::pair<double, double>> bracket;
    std::uint64_t step_count = 0;
    double tolerance = 0.0;
    std::string code_version;
    std::optional<std::string> error;
};

struct ClassicalRunLine {
    std::string instance_id;
    int n = 0;
    std::uint64_t n_calls = 0;
    int best_unsatisfied = 0;
    std::uint64_t node_count = 0;
    std::uint64_t seed = 0;
    std::string config_hash_hex;
    std::optional<std::string> error;
};

struct TwoSatLine {
    std::string instance_id;
    int n = 0;
    bool satisfiable = false;
};

// File-level provenance carried on the first line of each JSONL file.
struct ResultFileMeta {
    std::string kind;  // qw | aqc | classical | twosat
    std::string config_hash_hex;
    std::string dataset_hash_hex;
    std::string code_version;
    std::string config_text;  // semantic config serialization
};

std::string serialize_meta(const ResultFileMeta& meta);
std::string serialize_line(const QuantumRunLine& line);
std::string serialize_line(const ClassicalRunLine& line);
std::string serialize_line(const TwoSatLine& line);

struct ResultFile {
    ResultFileMeta meta;
    std::vector<QuantumRunLine> quantum;      // for qw/aqc kinds
    std::vector<ClassicalRunLine> classical;  // for classical kind
    std::vector<TwoSatLine> twosat;           // for twosat kind
};

// Reads a result file, tolerating a truncated final line (interrupted runs).
ResultFile read_result_file(const std::filesystem::path& path);

// Ids present in a result file; used to resume a batch.
std::set<std::string> completed_ids(const std::filesystem::path& path,
                                    const ResultFileMeta& expected_meta);

// Joins per-solver result files into one DifficultyRecord per instance id.
// Lines carrying errors are dropped (and counted).
struct JoinedRecords {
    std::map<int, std::vector<DifficultyRecord>> by_n;
    std::size_t error_lines = 0;
};

JoinedRecords join_records(const std::vector<ResultFile>& files);

}  // namespace m2s
