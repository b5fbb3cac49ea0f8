#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grt/problems.hpp"

namespace grt {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitSolver = 3 };

// Command-line overrides on top of a benchmark or configuration file.
struct RunOverrides {
  std::optional<int> N;
  std::optional<std::array<int, 2>> mesh;
  std::optional<int> k;
  std::optional<double> eps;
  std::optional<double> sigma0;
  std::optional<double> cfl;
  std::optional<std::string> flux;
  std::optional<std::string> tableau;
  std::optional<bool> limiter;
  std::optional<std::string> scheme;
  std::optional<double> final_time;
  std::optional<std::vector<double>> snapshots;
};

// Built-in benchmark name or path to a configuration file.
BenchmarkSpec resolve_spec(const std::string& source);
void apply_overrides(BenchmarkSpec& spec, const RunOverrides& o);
std::array<int, 2> parse_mesh(const std::string& text);

struct RunOutput {
  std::filesystem::path directory;
  bool vtk = false;
  bool verbose = false;
  int threads = 1;
  std::uint64_t seed = 0;
};

// Runs a validated benchmark and writes snapshots, probes, the conservation log
// and a manifest. Returns an ExitCode.
int run_benchmark(const BenchmarkSpec& spec, const RunOutput& out);

std::filesystem::path default_output_directory();
std::string version_string();

int run_cli(int argc, char** argv);

}  // namespace grt
