#include "m2s/config.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "m2s/errors.hpp"
#include "m2s/rng.hpp"

namespace m2s {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw Error("double formatting failed");
    return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& s, const std::string& key) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError("bad double for config key " + key + ": '" + s + "'");
    return v;
}

long long parse_ll(const std::string& s, const std::string& key) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError("bad integer for config key " + key + ": '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError("bad unsigned for config key " + key + ": '" + s + "'");
    return v;
}

// Semantic fields only, fixed order.
std::vector<std::pair<std::string, std::string>> semantic_items(
    const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("master_seed", std::to_string(c.master_seed));
    items.emplace_back("n_min", std::to_string(c.n_min));
    items.emplace_back("n_max", std::to_string(c.n_max));
    items.emplace_back("target_count", std::to_string(c.target_count));
    items.emplace_back("clause_factor", std::to_string(c.clause_factor));
    items.emplace_back("rtol", format_double(c.rtol));
    items.emplace_back("atol", format_double(c.atol));
    items.emplace_back("qw_t_start", format_double(c.qw_t_start));
    items.emplace_back("qw_width", format_double(c.qw_width));
    items.emplace_back("qw_pinf", c.qw_pinf ? "1" : "0");
    if (c.gamma_override)
        items.emplace_back("gamma", format_double(*c.gamma_override));
    items.emplace_back("t99_init", format_double(c.t99_init));
    items.emplace_back("t99_max_doublings", std::to_string(c.t99_max_doublings));
    items.emplace_back("t99_max_steps_per_probe",
                       std::to_string(c.t99_max_steps_per_probe));
    // nonzero caps change which searches give up, so the cap is semantic
    items.emplace_back("t99_wall_cap_seconds", format_double(c.t99_wall_cap_seconds));
    items.emplace_back("sdp_k", std::to_string(c.sdp_k));
    items.emplace_back("sdp_max_sweeps", std::to_string(c.sdp_max_sweeps));
    items.emplace_back("sdp_tol", format_double(c.sdp_tol));
    items.emplace_back("rounding_rounds", std::to_string(c.rounding_rounds));
    return items;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    for (const auto& [key, value] : semantic_items(c))
        out << key << "=" << value << "\n";
    out << "workers=" << c.workers << "\n";
    out << "out_dir=" << c.out_dir << "\n";
    return out.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("malformed config line: '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "master_seed") c.master_seed = parse_u64(value, key);
        else if (key == "n_min") c.n_min = static_cast<int>(parse_ll(value, key));
        else if (key == "n_max") c.n_max = static_cast<int>(parse_ll(value, key));
        else if (key == "target_count") c.target_count = parse_u64(value, key);
        else if (key == "clause_factor") c.clause_factor = static_cast<int>(parse_ll(value, key));
        else if (key == "rtol") c.rtol = parse_double(value, key);
        else if (key == "atol") c.atol = parse_double(value, key);
        else if (key == "qw_t_start") c.qw_t_start = parse_double(value, key);
        else if (key == "qw_width") c.qw_width = parse_double(value, key);
        else if (key == "qw_pinf") c.qw_pinf = parse_ll(value, key) != 0;
        else if (key == "gamma") c.gamma_override = parse_double(value, key);
        else if (key == "t99_init") c.t99_init = parse_double(value, key);
        else if (key == "t99_max_doublings") c.t99_max_doublings = static_cast<int>(parse_ll(value, key));
        else if (key == "t99_max_steps_per_probe") c.t99_max_steps_per_probe = parse_u64(value, key);
        else if (key == "t99_wall_cap_seconds") c.t99_wall_cap_seconds = parse_double(value, key);
        else if (key == "sdp_k") c.sdp_k = static_cast<int>(parse_ll(value, key));
        else if (key == "sdp_max_sweeps") c.sdp_max_sweeps = static_cast<int>(parse_ll(value, key));
        else if (key == "sdp_tol") c.sdp_tol = parse_double(value, key);
        else if (key == "rounding_rounds") c.rounding_rounds = static_cast<int>(parse_ll(value, key));
        else if (key == "workers") c.workers = static_cast<int>(parse_ll(value, key));
        else if (key == "out_dir") c.out_dir = value;
        else throw DataError("unknown config key: '" + key + "'");
    }
    if (c.n_min < 2 || c.n_max < c.n_min)
        throw DataError("config requires 2 <= n_min <= n_max");
    return c;
}

std::string serialize_config_semantic(const RunConfig& c) {
    std::string blob;
    for (const auto& [key, value] : semantic_items(c)) {
        blob += key;
        blob += '=';
        blob += value;
        blob += '\n';
    }
    return blob;
}

std::string config_hash(const RunConfig& c) {
    const std::string blob = serialize_config_semantic(c);
    const std::uint64_t h = fnv1a(blob.data(), blob.size());
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) buf[i] = hex[(h >> (60 - 4 * i)) & 0xF];
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace m2s
