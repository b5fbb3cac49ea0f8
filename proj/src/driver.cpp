#include "grt/driver.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "grt/config.hpp"
#include "grt/error.hpp"
#include "grt/harness.hpp"
#include "grt/simulation.hpp"

#ifndef GRTDG_VERSION
#define GRTDG_VERSION "0.0.0"
#endif

namespace grt {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (item.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigurationError("cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

// Nodal snapshot with nodes sorted by position (x fastest in 2D).
void write_snapshot(const std::filesystem::path& file, const Simulation& sim) {
  const DGSpace& sp = sim.space();
  const int k = sp.k();
  const Field Tr = sim.radiative_temperature();
  const State& st = sim.state();
  std::ofstream os(file);
  os << (sp.dim() == 1 ? "x,rho,T,T_r\n" : "x,y,rho,T,T_r\n");
  const int nx = sp.mesh().cells[0] * k;
  const int ny = sp.dim() == 2 ? sp.mesh().cells[1] * k : 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int cx = i / k, a = i % k, cy = j / k, b = j % k;
      int node = (cx + sp.mesh().cells[0] * cy) * sp.nodes_per_cell() + a + k * b;
      auto p = sp.node_position(node);
      os << num(p[0]) << ',';
      if (sp.dim() == 2) os << num(p[1]) << ',';
      os << num(st.rho(node)) << ',' << num(st.T(node)) << ',' << num(Tr(node)) << '\n';
    }
}

// Legacy structured-grid file on the tensor grid of nodes.
void write_vtk(const std::filesystem::path& file, const Simulation& sim) {
  const DGSpace& sp = sim.space();
  const int k = sp.k();
  const int nx = sp.mesh().cells[0] * k;
  const int ny = sp.dim() == 2 ? sp.mesh().cells[1] * k : 1;
  const Field Tr = sim.radiative_temperature();
  std::vector<int> order;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int cx = i / k, a = i % k, cy = j / k, b = j % k;
      order.push_back((cx + sp.mesh().cells[0] * cy) * sp.nodes_per_cell() + a + k * b);
    }
  std::ofstream os(file);
  os << "# vtk DataFile Version 3.0\n" << sim.spec().name << " t=" << num(sim.state().t)
     << "\nASCII\nDATASET STRUCTURED_GRID\nDIMENSIONS " << nx << ' ' << ny << " 1\nPOINTS "
     << order.size() << " double\n";
  for (int n : order) {
    auto p = sp.node_position(n);
    os << num(p[0]) << ' ' << num(sp.dim() == 2 ? p[1] : 0.0) << " 0\n";
  }
  os << "POINT_DATA " << order.size() << '\n';
  auto scalar = [&](const char* name, const Field& f) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int n : order) os << num(f(n)) << '\n';
  };
  scalar("rho", sim.state().rho);
  scalar("T", sim.state().T);
  scalar("T_r", Tr);
}

void write_probes(const std::filesystem::path& file, const Simulation& sim) {
  const auto& ps = sim.probes();
  std::ofstream os(file);
  os << "t";
  for (const auto& p : ps) os << ',' << p.label << "_T_r," << p.label << "_T";
  os << '\n';
  if (ps.empty()) return;
  for (std::size_t i = 0; i < ps[0].times.size(); ++i) {
    os << num(ps[0].times[i]);
    for (const auto& p : ps) os << ',' << num(p.Tr[i]) << ',' << num(p.T[i]);
    os << '\n';
  }
}

}  // namespace

std::string version_string() { return GRTDG_VERSION; }

std::filesystem::path default_output_directory() {
  if (const char* env = std::getenv("GRTDG_OUTPUT_DIR"); env && *env) return env;
  return "grtdg-output";
}

BenchmarkSpec resolve_spec(const std::string& source) {
  for (const auto& n : benchmark_names())
    if (n == source) return benchmark_by_name(source);
  if (std::filesystem::exists(source)) return load_config(source);
  throw ConfigurationError("'" + source + "' is neither a built-in benchmark nor a readable file");
}

std::array<int, 2> parse_mesh(const std::string& text) {
  auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t p1 = 0, p2 = 0;
    int a = std::stoi(text.substr(0, x), &p1);
    int b = std::stoi(text.substr(x + 1), &p2);
    if (p1 != x || p2 != text.size() - x - 1) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::exception&) {
    throw ConfigurationError("mesh must look like 56x32, got '" + text + "'");
  }
}

void apply_overrides(BenchmarkSpec& s, const RunOverrides& o) {
  if (o.N) s.cells = {*o.N, s.dim == 2 ? *o.N : 1};
  if (o.mesh) {
    if (s.dim != 2) throw ConfigurationError("--mesh needs a two-dimensional benchmark");
    s.cells = *o.mesh;
  }
  if (o.k) s.k = *o.k;
  if (o.eps) s.scaling.eps = *o.eps;
  if (o.sigma0) s.scaling.sigma0 = *o.sigma0;
  if (o.cfl) s.cfl = *o.cfl;
  if (o.flux) s.flux = parse_flux_family(*o.flux);
  if (o.tableau) s.tableau = *o.tableau;
  if (o.limiter) s.limiter = *o.limiter;
  if (o.scheme) {
    if (*o.scheme == "ap") s.scheme = Scheme::AP;
    else if (*o.scheme == "diffusion") s.scheme = Scheme::Diffusion;
    else throw ConfigurationError("scheme must be 'ap' or 'diffusion'");
  }
  if (o.final_time) {
    s.final_time = *o.final_time;
    std::erase_if(s.snapshot_times, [&](double t) { return t > s.final_time; });
    if (s.snapshot_times.empty() || s.snapshot_times.back() != s.final_time)
      if (!o.snapshots) s.snapshot_times.push_back(s.final_time);
  }
  if (o.snapshots) s.snapshot_times = *o.snapshots;
}

int run_benchmark(const BenchmarkSpec& spec, const RunOutput& out) {
  namespace fs = std::filesystem;
  const std::string hash = hash_hex(config_hash(spec));
  const std::string prefix = spec.name + "-" + hash.substr(0, 8);
  fs::create_directories(out.directory);
  const fs::path dir = out.directory;

  json manifest;
  manifest["program"] = "grtdg";
  manifest["version"] = version_string();
  manifest["benchmark"] = spec.name;
  manifest["config_hash"] = hash;
  manifest["threads"] = out.threads;
  manifest["seed"] = out.seed;
  manifest["config"] = serialize_config(spec);
  std::vector<std::string> files;

  std::ofstream cons(dir / (prefix + "-conservation.csv"));
  files.push_back(prefix + "-conservation.csv");
  cons << "step,t,dt,picard,newton_max,energy,outflow,residual\n";
  std::ofstream log(dir / (prefix + ".log"));
  files.push_back(prefix + ".log");

  json fronts = json::array();
  int status = kExitOk;
  try {
    Simulation sim(spec);
    log << "grtdg " << version_string() << " " << spec.name << " config " << hash << "\n";
    double prev_energy = sim.energy();
    auto on_step = [&](const Simulation& s, const StepStats& st) {
      const RunStats& rs = s.stats();
      double res = conservation_residual(prev_energy, rs.energy, st.outflow);
      prev_energy = rs.energy;
      cons << rs.steps << ',' << num(s.state().t) << ',' << num(rs.last_dt) << ',' << st.picard_max << ','
           << st.newton_max << ',' << num(rs.energy) << ',' << num(rs.outflow) << ',' << num(res) << '\n';
      char line[200];
      std::snprintf(line, sizeof line, "step %ld t %.9g dt %.6g picard %d newton %d residual %.3e\n",
                    rs.steps, s.state().t, rs.last_dt, st.picard_max, st.newton_max, res);
      log << line;
      if (out.verbose) std::cerr << line;
    };
    auto on_snapshot = [&](const Simulation& s) {
      const std::string tag = prefix + "-snapshot-t" + time_tag(s.state().t);
      write_snapshot(dir / (tag + ".csv"), s);
      files.push_back(tag + ".csv");
      if (out.vtk) {
        write_vtk(dir / (tag + ".vtk"), s);
        files.push_back(tag + ".vtk");
      }
      if (s.space().dim() == 1 && !s.boundary().periodic(0)) {
        auto f = front_position(s.state().T, s.space(), spec.front_threshold);
        json e;
        e["t"] = s.state().t;
        e["front"] = f ? json(*f) : json(nullptr);
        fronts.push_back(e);
      }
    };
    try {
      sim.run(on_snapshot, on_step);
    } catch (const SolverFailure& e) {
      status = kExitSolver;
      json fail;
      fail["message"] = e.what();
      fail["step"] = sim.stats().steps + 1;
      fail["t"] = sim.state().t;
      fail["residual_history"] = e.history();
      manifest["failure"] = fail;
      log << "solver failure: " << e.what() << "\n";
      std::cerr << "solver failure at step " << sim.stats().steps + 1 << ": " << e.what() << "\n";
    }
    if (!sim.probes().empty()) {
      write_probes(dir / (prefix + "-probes.csv"), sim);
      files.push_back(prefix + "-probes.csv");
    }
    const RunStats& rs = sim.stats();
    json stats;
    stats["steps"] = rs.steps;
    stats["final_time"] = sim.state().t;
    stats["picard_max"] = rs.picard_max;
    stats["picard_total"] = rs.picard_total;
    stats["newton_max"] = rs.newton_max;
    stats["limited_cells"] = rs.limited_cells;
    stats["bounded_cells"] = rs.bounded_cells;
    stats["cells_outside_bounds"] = rs.cells_outside;
    stats["energy_initial"] = rs.energy0;
    stats["energy_final"] = rs.energy;
    stats["boundary_outflow"] = rs.outflow;
    stats["max_conservation_residual"] = rs.max_residual;
    manifest["statistics"] = stats;
    if (!fronts.empty()) manifest["fronts"] = fronts;
  } catch (const SolverFailure& e) {
    status = kExitSolver;
    manifest["failure"] = {{"message", e.what()}, {"residual_history", e.history()}};
  }
  manifest["status"] = status == kExitOk ? "ok" : "solver-failure";
  files.push_back(prefix + "-manifest.json");
  manifest["outputs"] = files;
  std::ofstream(dir / (prefix + "-manifest.json")) << manifest.dump(2) << '\n';
  std::cout << spec.name << ": " << (status == kExitOk ? "completed" : "failed") << ", outputs in "
            << dir.string() << " (" << prefix << "-*)\n";
  return status;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"High-order asymptotic-preserving DG-IMEX solver for gray radiative transfer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  RunOverrides ov;
  std::string source, mesh, snapshots, limiter, outdir;
  RunOutput out;
  auto add_overrides = [&](CLI::App* c) {
    c->add_option("source", source, "benchmark name or configuration file")->required();
    c->add_option("--N", ov.N, "cells per axis");
    c->add_option("--mesh", mesh, "2D mesh as NXxNY");
    c->add_option("--k", ov.k, "Gauss points per cell and axis");
    c->add_option("--eps", ov.eps, "Knudsen-like parameter");
    c->add_option("--sigma0", ov.sigma0, "reference opacity");
    c->add_option("--cfl", ov.cfl, "dt / h");
    c->add_option("--flux", ov.flux, "alternating-left-right | alternating-right-left | central");
    c->add_option("--tableau", ov.tableau, "imex1 | ars443");
    c->add_option("--limiter", limiter, "on | off");
    c->add_option("--scheme", ov.scheme, "ap | diffusion");
    c->add_option("--final-time", ov.final_time, "final time");
    c->add_option("--output", outdir, "output directory (default $GRTDG_OUTPUT_DIR or ./grtdg-output)");
    c->add_option("--threads", out.threads, "thread count (recorded; the solver runs on one thread)");
  };

  auto* run = app.add_subcommand("run", "run a benchmark to its final time");
  add_overrides(run);
  run->add_option("--snapshots", snapshots, "comma-separated snapshot times");
  run->add_option("--seed", out.seed, "seed recorded in the manifest");
  run->add_flag("--vtk", out.vtk, "also write legacy VTK snapshots");
  run->add_flag("--verbose", out.verbose, "per-step log on stderr");

  std::string Ns = "20,40,80,160", ks, epss;
  auto* conv = app.add_subcommand("convergence", "self-convergence table over a resolution ladder");
  add_overrides(conv);
  conv->add_option("--ladder", Ns, "comma-separated doubling resolutions");
  conv->add_option("--k-list", ks, "comma-separated k values");
  conv->add_option("--eps-list", epss, "comma-separated eps values");

  bool print = false, reference = false;
  std::string vsource;
  auto* val = app.add_subcommand("validate-config", "check a configuration file or benchmark");
  val->add_option("source", vsource, "benchmark name or configuration file");
  val->add_flag("--print", print, "print the canonical configuration");
  val->add_flag("--reference", reference, "print the configuration reference");

  app.add_subcommand("list-benchmarks", "list built-in benchmarks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand("list-benchmarks")) {
      for (const auto& n : benchmark_names()) {
        BenchmarkSpec s = benchmark_by_name(n);
        std::cout << n << "  (" << s.dim << "D, final time " << s.final_time << ")\n";
      }
      return kExitOk;
    }
    if (app.got_subcommand("validate-config")) {
      if (reference) {
        std::cout << config_reference();
        if (vsource.empty()) return kExitOk;
      }
      if (vsource.empty()) throw ConfigurationError("validate-config needs a source");
      BenchmarkSpec s = resolve_spec(vsource);
      s.validate();
      if (print) std::cout << serialize_config(s);
      else std::cout << vsource << ": valid (hash " << hash_hex(config_hash(s)) << ")\n";
      return kExitOk;
    }
    if (!mesh.empty()) ov.mesh = parse_mesh(mesh);
    if (!limiter.empty()) {
      if (limiter != "on" && limiter != "off") throw ConfigurationError("--limiter takes on or off");
      ov.limiter = limiter == "on";
    }
    if (!snapshots.empty()) ov.snapshots = parse_list(snapshots);
    if (out.threads < 1) throw ConfigurationError("--threads must be >= 1");
    out.directory = outdir.empty() ? default_output_directory() : std::filesystem::path(outdir);
    BenchmarkSpec spec = resolve_spec(source);
    apply_overrides(spec, ov);
    spec.validate();

    if (app.got_subcommand("run")) return run_benchmark(spec, out);

    std::vector<int> ladder;
    for (double v : parse_list(Ns)) ladder.push_back(static_cast<int>(v));
    std::vector<int> klist{spec.k};
    if (!ks.empty()) {
      klist.clear();
      for (double v : parse_list(ks)) klist.push_back(static_cast<int>(v));
    }
    std::vector<double> elist = epss.empty() ? std::vector<double>{spec.scaling.eps} : parse_list(epss);
    for (std::size_t i = 1; i < ladder.size(); ++i)
      if (ladder[i] != 2 * ladder[i - 1]) throw InvalidParameter("--ladder resolutions must double");
    for (int k : klist)
      for (double e : elist) {
        BenchmarkSpec s = spec;
        s.k = k;
        s.scaling.eps = e;
        s.validate();
      }
    std::vector<ConvergenceReport> reports;
    int status = kExitOk;
    for (int k : klist)
      for (double e : elist) {
        BenchmarkSpec s = spec;
        s.k = k;
        s.scaling.eps = e;
        try {
          reports.push_back(self_convergence(s, ladder));
          std::cerr << "k=" << k << " eps=" << e << " done\n";
        } catch (const SolverFailure& f) {
          std::cerr << "k=" << k << " eps=" << e << ": solver failure: " << f.what() << "\n";
          status = kExitSolver;
        }
      }
    std::filesystem::create_directories(out.directory);
    const std::string prefix = spec.name + "-" + hash_hex(config_hash(spec)).substr(0, 8) + "-convergence";
    std::ofstream(out.directory / (prefix + ".csv")) << format_csv(reports);
    std::ofstream(out.directory / (prefix + ".txt")) << format_table(reports);
    std::cout << format_table(reports);
    return status;
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace grt
