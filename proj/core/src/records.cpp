#include "m2s/records.hpp"

#include <fstream>

#include <json.hpp>

#include "m2s/errors.hpp"

namespace m2s {

using ojson = nlohmann::ordered_json;

namespace {

ojson meta_json(const ResultFileMeta& meta) {
    ojson j;
    j["file"] = meta.kind;
    j["config_hash"] = meta.config_hash_hex;
    j["dataset_hash"] = meta.dataset_hash_hex;
    j["code_version"] = meta.code_version;
    if (!meta.config_text.empty()) j["config"] = meta.config_text;
    return j;
}

}  // namespace

std::string serialize_meta(const ResultFileMeta& meta) {
    return meta_json(meta).dump();
}

std::string serialize_line(const QuantumRunLine& line) {
    ojson j;
    j["instance_id"] = line.instance_id;
    j["n"] = line.n;
    if (line.error) {
        j["error"] = *line.error;
        return j.dump();
    }
    if (line.gamma) j["gamma"] = *line.gamma;
    if (line.p_avg) j["p_avg"] = *line.p_avg;
    if (line.p_infinity) j["p_infinity"] = *line.p_infinity;
    if (line.aqc_attempted) {
        if (line.t99) j["t99"] = *line.t99;
        else j["t99"] = nullptr;  // searched, not found
        if (line.bracket) j["bracket"] = {line.bracket->first, line.bracket->second};
    }
    j["step_count"] = line.step_count;
    j["tolerance"] = line.tolerance;
    j["code_version"] = line.code_version;
    return j.dump();
}

std::string serialize_line(const ClassicalRunLine& line) {
    ojson j;
    j["instance_id"] = line.instance_id;
    j["n"] = line.n;
    if (line.error) {
        j["error"] = *line.error;
        return j.dump();
    }
    j["n_calls"] = line.n_calls;
    j["best_unsatisfied"] = line.best_unsatisfied;
    j["node_count"] = line.node_count;
    j["seed"] = line.seed;
    j["config_hash"] = line.config_hash_hex;
    return j.dump();
}

std::string serialize_line(const TwoSatLine& line) {
    ojson j;
    j["instance_id"] = line.instance_id;
    j["n"] = line.n;
    j["satisfiable"] = line.satisfiable;
    return j.dump();
}

namespace {

ResultFileMeta parse_meta(const ojson& j) {
    ResultFileMeta meta;
    meta.kind = j.at("file").get<std::string>();
    meta.config_hash_hex = j.at("config_hash").get<std::string>();
    meta.dataset_hash_hex = j.at("dataset_hash").get<std::string>();
    meta.code_version = j.value("code_version", "");
    meta.config_text = j.value("config", "");
    return meta;
}

QuantumRunLine parse_quantum(const ojson& j, bool aqc_kind) {
    QuantumRunLine line;
    line.instance_id = j.at("instance_id").get<std::string>();
    line.n = j.at("n").get<int>();
    if (j.contains("error")) {
        line.error = j["error"].get<std::string>();
        return line;
    }
    if (j.contains("gamma")) line.gamma = j["gamma"].get<double>();
    if (j.contains("p_avg")) line.p_avg = j["p_avg"].get<double>();
    if (j.contains("p_infinity")) line.p_infinity = j["p_infinity"].get<double>();
    if (aqc_kind || j.contains("t99")) {
        line.aqc_attempted = true;
        if (j.contains("t99") && !j["t99"].is_null())
            line.t99 = j["t99"].get<double>();
        if (j.contains("bracket") && j["bracket"].is_array() &&
            j["bracket"].size() == 2)
            line.bracket = {j["bracket"][0].get<double>(),
                            j["bracket"][1].get<double>()};
    }
    line.step_count = j.value("step_count", std::uint64_t{0});
    line.tolerance = j.value("tolerance", 0.0);
    line.code_version = j.value("code_version", "");
    return line;
}

ClassicalRunLine parse_classical(const ojson& j) {
    ClassicalRunLine line;
    line.instance_id = j.at("instance_id").get<std::string>();
    line.n = j.at("n").get<int>();
    if (j.contains("error")) {
        line.error = j["error"].get<std::string>();
        return line;
    }
    line.n_calls = j.at("n_calls").get<std::uint64_t>();
    line.best_unsatisfied = j.at("best_unsatisfied").get<int>();
    line.node_count = j.value("node_count", std::uint64_t{0});
    line.seed = j.value("seed", std::uint64_t{0});
    line.config_hash_hex = j.value("config_hash", "");
    return line;
}

TwoSatLine parse_twosat(const ojson& j) {
    TwoSatLine line;
    line.instance_id = j.at("instance_id").get<std::string>();
    line.n = j.at("n").get<int>();
    line.satisfiable = j.at("satisfiable").get<bool>();
    return line;
}

}  // namespace

ResultFile read_result_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open result file " + path.string());
    ResultFile file;
    std::string line;
    bool meta_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ojson j = ojson::parse(line, nullptr, false);
        if (j.is_discarded()) continue;  // truncated tail from an interrupted run
        if (!meta_seen) {
            if (!j.contains("file"))
                throw DataError("result file missing meta line: " + path.string());
            file.meta = parse_meta(j);
            meta_seen = true;
            continue;
        }
        if (file.meta.kind == "classical")
            file.classical.push_back(parse_classical(j));
        else if (file.meta.kind == "twosat")
            file.twosat.push_back(parse_twosat(j));
        else
            file.quantum.push_back(parse_quantum(j, file.meta.kind == "aqc"));
    }
    if (!meta_seen) throw DataError("empty result file: " + path.string());
    return file;
}

std::set<std::string> completed_ids(const std::filesystem::path& path,
                                    const ResultFileMeta& expected_meta) {
    std::set<std::string> ids;
    if (!std::filesystem::exists(path)) return ids;
    ResultFile file = read_result_file(path);
    if (file.meta.config_hash_hex != expected_meta.config_hash_hex ||
        file.meta.dataset_hash_hex != expected_meta.dataset_hash_hex ||
        file.meta.kind != expected_meta.kind)
        throw DataError("existing result file " + path.string() +
                        " was produced by a different config or dataset");
    for (const auto& l : file.quantum) ids.insert(l.instance_id);
    for (const auto& l : file.classical) ids.insert(l.instance_id);
    for (const auto& l : file.twosat) ids.insert(l.instance_id);
    return ids;
}

JoinedRecords join_records(const std::vector<ResultFile>& files) {
    std::map<std::string, DifficultyRecord> by_id;
    JoinedRecords out;
    auto slot = [&](const std::string& id, int n) -> DifficultyRecord& {
        DifficultyRecord& r = by_id[id];
        r.instance_id = id;
        r.n = n;
        return r;
    };
    for (const ResultFile& file : files) {
        for (const QuantumRunLine& l : file.quantum) {
            if (l.error) {
                ++out.error_lines;
                continue;
            }
            DifficultyRecord& r = slot(l.instance_id, l.n);
            if (l.p_avg) r.p_avg = l.p_avg;
            if (l.p_infinity) r.p_infinity = l.p_infinity;
            if (l.aqc_attempted) {
                r.aqc_present = true;
                r.t99 = l.t99;
            }
        }
        for (const ClassicalRunLine& l : file.classical) {
            if (l.error) {
                ++out.error_lines;
                continue;
            }
            slot(l.instance_id, l.n).n_calls = l.n_calls;
        }
        for (const TwoSatLine& l : file.twosat)
            slot(l.instance_id, l.n).satisfiable = l.satisfiable;
    }
    for (auto& [id, record] : by_id)
        out.by_n[record.n].push_back(std::move(record));
    return out;
}

}  // namespace m2s
