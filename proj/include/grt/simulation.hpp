#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "grt/diffusion.hpp"
#include "grt/problems.hpp"
#include "grt/stepper.hpp"

namespace grt {

struct ProbeSeries {
  std::string label;
  std::array<double, 2> position{0.0, 0.0};
  std::vector<double> times;
  std::vector<double> Tr;
  std::vector<double> T;
};

struct RunStats {
  long steps = 0;
  int picard_max = 0;
  long picard_total = 0;
  int newton_max = 0;
  long limited_cells = 0;
  long bounded_cells = 0;
  long cells_outside = 0;
  double energy0 = 0.0;
  double energy = 0.0;
  double outflow = 0.0;       // energy that left through the boundary
  double max_residual = 0.0;  // max per-step |E^{n+1} - E^n + outflow^n|
  double last_dt = 0.0;
};

// Owns the discretization of one benchmark and its evolving state.
class Simulation {
 public:
  using StepCallback = std::function<void(const Simulation&, const StepStats&)>;
  using SnapshotCallback = std::function<void(const Simulation&)>;

  explicit Simulation(BenchmarkSpec spec);

  const BenchmarkSpec& spec() const { return spec_; }
  const DGSpace& space() const { return *space_; }
  const AngularQuadrature& quadrature() const { return quad_; }
  const Medium& medium() const { return *medium_; }
  const KineticBoundary& boundary() const { return *boundary_; }
  const State& state() const { return state_; }
  State& state() { return state_; }
  const RunStats& stats() const { return stats_; }
  const std::vector<ProbeSeries>& probes() const { return probes_; }
  Stepper* stepper() { return stepper_.get(); }
  DiffusionSolver* diffusion() { return diffusion_.get(); }

  // Uniform step count for an interval: the largest dt <= cfl * h that
  // divides it.
  long steps_for(double interval) const;

  // One step of the configured scheme.
  StepStats step(double dt);
  // Uniform steps up to t_end.
  void advance_to(double t_end, const StepCallback& on_step = {});
  // Through every snapshot time to the final time.
  void run(const SnapshotCallback& on_snapshot = {}, const StepCallback& on_step = {});

  double energy() const;
  Field radiative_temperature() const;
  void record_probes();

 private:
  BenchmarkSpec spec_;
  std::unique_ptr<DGSpace> space_;
  AngularQuadrature quad_;
  std::unique_ptr<Medium> medium_;
  std::unique_ptr<KineticBoundary> boundary_;
  std::unique_ptr<Stepper> stepper_;
  std::unique_ptr<DiffusionSolver> diffusion_;
  State state_;
  RunStats stats_;
  std::vector<ProbeSeries> probes_;
  double next_probe_ = 0.0;
};

}  // namespace grt
