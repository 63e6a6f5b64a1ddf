#include "m2s/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "m2s/errors.hpp"

namespace m2s {

namespace {

long long parse_int(std::string_view token, const char* what) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(std::string("malformed ") + what + ": '" +
                         std::string(token) + "'");
    return value;
}

std::uint64_t parse_u64(std::string_view token, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(std::string("malformed ") + what + ": '" +
                         std::string(token) + "'");
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    if (!inst.id.empty()) out << "c id=" << inst.id << "\n";
    if (inst.seed) out << "c seed=" << *inst.seed << "\n";
    if (inst.attempt) out << "c attempt=" << *inst.attempt << "\n";
    out << "c canonicalized=" << (inst.canonicalized ? 1 : 0) << "\n";
    out << "p cnf " << inst.n << " " << inst.m() << "\n";
    for (const Clause& c : inst.clauses)
        out << c.first.code << " " << c.second.code << " 0\n";
    return out.str();
}

Instance parse_instance(const std::string& text) {
    Instance inst;
    bool header_seen = false;
    int declared_m = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == 'c') {
            auto eq = line.find('=');
            if (eq == std::string::npos || line.size() < 3) continue;
            std::string key = line.substr(2, eq - 2);
            std::string value = line.substr(eq + 1);
            if (key == "id") {
                inst.id = value;
            } else if (key == "seed") {
                inst.seed = parse_u64(value, "seed");
            } else if (key == "attempt") {
                inst.attempt = parse_u64(value, "attempt");
            } else if (key == "canonicalized") {
                inst.canonicalized = parse_int(value, "canonicalized") != 0;
            }
            continue;
        }
        if (line[0] == 'p') {
            auto tokens = split_ws(line);
            if (header_seen) throw ParseError("malformed header: repeated p line");
            if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf")
                throw ParseError("malformed header: '" + line + "'");
            long long n = parse_int(tokens[2], "variable count");
            long long m = parse_int(tokens[3], "clause count");
            if (n <= 0 || m < 0)
                throw ParseError("malformed header: nonpositive sizes");
            inst.n = static_cast<int>(n);
            declared_m = static_cast<int>(m);
            header_seen = true;
            continue;
        }
        if (!header_seen)
            throw ParseError("malformed header: clause before p line");
        auto tokens = split_ws(line);
        if (tokens.size() != 3 || tokens[2] != "0")
            throw ParseError("malformed clause line: '" + line + "'");
        long long a = parse_int(tokens[0], "literal");
        long long b = parse_int(tokens[1], "literal");
        if (a == 0 || b == 0) throw ParseError("zero literal in clause");
        int va = static_cast<int>(a < 0 ? -a : a);
        int vb = static_cast<int>(b < 0 ? -b : b);
        if (va > inst.n || vb > inst.n)
            throw ParseError("variable out of range in clause '" + line + "'");
        if (va == vb)
            throw ParseError("tautological or repeated-variable clause '" + line + "'");
        inst.clauses.push_back(make_clause(static_cast<int>(a), static_cast<int>(b)));
    }
    if (!header_seen) throw ParseError("malformed header: missing p line");
    if (inst.m() != declared_m)
        throw ParseError("clause count mismatch: header declares " +
                         std::to_string(declared_m) + ", found " +
                         std::to_string(inst.m()));
    if (auto msg = validate_instance(inst)) throw ParseError(*msg);
    return inst;
}

std::string serialize_manifest(const std::vector<ManifestEntry>& entries) {
    std::ostringstream out;
    for (const auto& e : entries) out << e.id << "\t" << e.path << "\n";
    return out.str();
}

std::vector<ManifestEntry> parse_manifest(const std::string& text) {
    std::vector<ManifestEntry> entries;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("malformed manifest line: '" + line + "'");
        entries.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return entries;
}

void write_dataset(const std::filesystem::path& dir,
                   const std::vector<Instance>& instances) {
    std::filesystem::create_directories(dir);
    std::vector<ManifestEntry> manifest;
    for (const Instance& inst : instances) {
        if (inst.id.empty()) throw DataError("cannot write instance without id");
        std::string filename = inst.id + ".cnf";
        write_text_file(dir / filename, serialize_instance(inst));
        manifest.push_back({inst.id, filename});
    }
    write_text_file(dir / "manifest.txt", serialize_manifest(manifest));
}

std::vector<Instance> read_dataset(const std::filesystem::path& dir) {
    auto entries = parse_manifest(read_text_file(dir / "manifest.txt"));
    std::vector<Instance> instances;
    instances.reserve(entries.size());
    for (const auto& e : entries) {
        Instance inst = parse_instance(read_text_file(dir / e.path));
        if (inst.id != e.id)
            throw DataError("manifest id '" + e.id + "' does not match file id '" +
                            inst.id + "'");
        instances.push_back(std::move(inst));
    }
    return instances;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace m2s
