#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "m2s/instance.hpp"

namespace m2s {

// DIMACS-CNF style text with `c key=value` metadata comments:
//
//   c id=m2s-n3-s7-a0
//   c seed=7
//   c attempt=0
//   c canonicalized=1
//   p cnf 3 6
//   1 2 0
//   ...
//
// parse(serialize(x)) == x, metadata included.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

// One `id <TAB> relative-path` line per instance.
struct ManifestEntry {
    std::string id;
    std::string path;
};

std::string serialize_manifest(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> parse_manifest(const std::string& text);

// Dataset directory helpers: one .cnf file per instance plus `manifest.txt`.
void write_dataset(const std::filesystem::path& dir,
                   const std::vector<Instance>& instances);
std::vector<Instance> read_dataset(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace m2s
