// Command-line front end for the MAX 2-SAT difficulty benchmark pipeline:
//   gen      generate unique-optimum instance datasets
//   run      measure instances with one solver (qw | aqc | classical | twosat)
//   analyze  turn result files into the fig*.csv bundle and a summary
//   oracle   brute-force cross-checks over a dataset
//   ingest   validate and import external instance files

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "m2s/config.hpp"
#include "m2s/errors.hpp"
#include "m2s/instance_io.hpp"
#include "m2s/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDataError = 2;
constexpr int kExitOracleMismatch = 3;

m2s::RunConfig load_config(const std::string& config_path) {
    if (config_path.empty()) return m2s::RunConfig{};
    return m2s::parse_config(m2s::read_text_file(config_path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MAX 2-SAT quantum/classical difficulty benchmark"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file")
        ->check(CLI::ExistingFile);

    // shared overrides
    std::string out_dir_override;
    app.add_option("--out", out_dir_override, "output directory override");
    int workers_override = 0;
    app.add_option("--workers", workers_override, "worker thread count override");

    auto* gen = app.add_subcommand("gen", "generate datasets");
    std::uint64_t gen_seed = 0;
    bool gen_seed_set = false;
    gen->add_option("--seed", gen_seed, "master seed override")
        ->each([&](const std::string&) { gen_seed_set = true; });
    int gen_nmin = 0, gen_nmax = 0;
    gen->add_option("--n-min", gen_nmin, "smallest variable count");
    gen->add_option("--n-max", gen_nmax, "largest variable count");
    std::uint64_t gen_target = 0;
    gen->add_option("--target", gen_target, "generation attempts per n");

    auto* run = app.add_subcommand("run", "run one solver over a dataset");
    std::string solver;
    run->add_option("--solver", solver, "qw | aqc | classical | twosat")->required();
    std::string run_dataset;
    run->add_option("--dataset", run_dataset,
                    "dataset directory (default <out>/dataset)");
    double run_gamma = 0.0;
    bool run_gamma_set = false;
    run->add_option("--gamma", run_gamma, "fixed hopping rate instead of heuristic")
        ->each([&](const std::string&) { run_gamma_set = true; });

    auto* analyze = app.add_subcommand("analyze", "emit analytics CSV bundle");
    std::vector<std::string> analyze_inputs;
    analyze->add_option("--results", analyze_inputs,
                        "result JSONL files (default: all in <out>/results)");
    bool analyze_force = false;
    analyze->add_flag("--force", analyze_force, "allow mixed provenance hashes");

    auto* oracle = app.add_subcommand("oracle", "verify a dataset with brute force");
    std::string oracle_dataset;
    oracle->add_option("--dataset", oracle_dataset,
                       "dataset directory (default <out>/dataset)");

    auto* ingest = app.add_subcommand("ingest", "import external instance files");
    std::string ingest_source;
    ingest->add_option("--source", ingest_source, "directory of .cnf files")
        ->required()
        ->check(CLI::ExistingDirectory);
    std::string ingest_dest;
    ingest->add_option("--dest", ingest_dest,
                       "destination dataset directory (default <out>/ingested)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        m2s::RunConfig config = load_config(config_path);
        if (!out_dir_override.empty()) config.out_dir = out_dir_override;
        if (workers_override > 0) config.workers = workers_override;

        if (gen->parsed()) {
            if (gen_seed_set) config.master_seed = gen_seed;
            if (gen_nmin > 0) config.n_min = gen_nmin;
            if (gen_nmax > 0) config.n_max = gen_nmax;
            if (gen_target > 0) config.target_count = gen_target;
            const m2s::GenReport report = m2s::cmd_gen(config, std::cout);
            std::cout << "dataset_hash=" << report.dataset_hash_hex << "\n";
            return kExitOk;
        }
        if (run->parsed()) {
            const auto kind = m2s::solver_from_name(solver);
            if (!kind) {
                std::cerr << "unknown solver '" << solver << "'\n";
                return kExitUsage;
            }
            if (run_gamma_set) config.gamma_override = run_gamma;
            const std::filesystem::path dataset =
                run_dataset.empty() ? m2s::dataset_dir(config)
                                    : std::filesystem::path(run_dataset);
            m2s::cmd_run(config, *kind, dataset, std::cout);
            return kExitOk;
        }
        if (analyze->parsed()) {
            std::vector<std::filesystem::path> inputs;
            if (analyze_inputs.empty()) {
                const std::filesystem::path dir = m2s::results_dir(config);
                if (std::filesystem::is_directory(dir))
                    for (const auto& entry : std::filesystem::directory_iterator(dir))
                        if (entry.path().extension() == ".jsonl")
                            inputs.push_back(entry.path());
                std::sort(inputs.begin(), inputs.end());
            } else {
                for (const std::string& p : analyze_inputs) inputs.emplace_back(p);
            }
            m2s::cmd_analyze(inputs, m2s::analytics_dir(config), analyze_force,
                             std::cout);
            return kExitOk;
        }
        if (oracle->parsed()) {
            const std::filesystem::path dataset =
                oracle_dataset.empty() ? m2s::dataset_dir(config)
                                       : std::filesystem::path(oracle_dataset);
            const m2s::OracleReport report = m2s::cmd_oracle(dataset, std::cout);
            return report.clean() ? kExitOk : kExitOracleMismatch;
        }
        if (ingest->parsed()) {
            const std::filesystem::path dest =
                ingest_dest.empty()
                    ? std::filesystem::path(config.out_dir) / "ingested"
                    : std::filesystem::path(ingest_dest);
            m2s::cmd_ingest(ingest_source, dest, std::cout);
            return kExitOk;
        }
    } catch (const m2s::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const m2s::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const m2s::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitUsage;
}
