#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "grt/problems.hpp"

namespace grt {

// Plain-text configuration: "[section]" headers and "key = value" lines,
// '#' starts a comment. Numbers are written with 17 significant digits so a
// BenchmarkSpec survives serialize -> parse bit for bit.
std::string serialize_config(const BenchmarkSpec& spec);
BenchmarkSpec parse_config(const std::string& text);
BenchmarkSpec load_config(const std::filesystem::path& path);

// Annotated reference of every section and key.
std::string config_reference();

// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const BenchmarkSpec& spec);
std::string hash_hex(std::uint64_t h);

}  // namespace grt
