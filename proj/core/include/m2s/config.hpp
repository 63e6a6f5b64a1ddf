#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace m2s {

// Pipeline configuration, round-trippable through the line-oriented
// `key=value` text format. Fields that only steer execution (workers,
// out_dir, wall cap) are excluded from the semantic hash so reruns with a
// different worker count produce byte-identical outputs.
struct RunConfig {
    std::uint64_t master_seed = 42;
    int n_min = 5;
    int n_max = 9;
    std::uint64_t target_count = 2000;
    int clause_factor = 3;

    double rtol = 1e-9;
    double atol = 1e-12;

    double qw_t_start = 0.0;
    double qw_width = 100.0;
    bool qw_pinf = true;
    std::optional<double> gamma_override;  // absent: heuristic gamma per n

    // the probe step budget binds before norm drift can accumulate to the
    // 1e-6 abort level on very long anneals
    double t99_init = 1.0;
    int t99_max_doublings = 20;
    std::uint64_t t99_max_steps_per_probe = 1'200'000;
    // 0 disables the cap; a positive cap makes not-found outcomes depend on
    // machine speed, so it is off by default.
    double t99_wall_cap_seconds = 0.0;

    int sdp_k = 0;  // 0: ceil(sqrt(2n)) + 1
    int sdp_max_sweeps = 500;
    double sdp_tol = 1e-9;
    int rounding_rounds = 20;

    int workers = 1;
    std::string out_dir = "out";
};

std::string serialize_config(const RunConfig& config);
RunConfig parse_config(const std::string& text);

// Only the fields that determine results, in fixed order; embedded in output
// provenance headers and hashed.
std::string serialize_config_semantic(const RunConfig& config);

// Hex FNV-1a over serialize_config_semantic.
std::string config_hash(const RunConfig& config);

// Shortest round-trip decimal form, shared by config/CSV writers.
std::string format_double(double value);

}  // namespace m2s
