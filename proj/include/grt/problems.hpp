#pragma once

#include <array>
#include <string>
#include <vector>

#include "grt/angular.hpp"
#include "grt/boundary.hpp"
#include "grt/mesh.hpp"
#include "grt/operators.hpp"
#include "grt/physics.hpp"
#include "grt/picard.hpp"

namespace grt {

enum class InitialKind { Accuracy1D, Accuracy2D, Equilibrium };

struct InitialCondition {
  InitialKind kind = InitialKind::Equilibrium;
  double b0 = 0.8;  // 1D: T = b0 + b1 sin x
  double b1 = 0.1;
  double a1 = 0.8;  // 2D: T = (a1 + b1 sin x)(a2 + b2 sin y)
  double a2 = 0.8;
  double b2 = 0.1;
  double temperature = 1e-6;  // equilibrium temperature, keV
};

struct Probe {
  std::string label;
  std::array<double, 2> position{0.0, 0.0};
};

enum class Scheme { AP, Diffusion };

struct BenchmarkSpec {
  std::string name;
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<int, 2> cells{40, 1};
  int k = 3;
  PhysicalConstants constants;
  MaterialModel material;
  ScalingParameters scaling;
  InitialCondition initial;
  BoundarySet boundary;
  int angular_n = 8;   // Gauss-Legendre points (1D) or polar levels (2D)
  int angular_nc = 4;  // Chebyshev azimuths per level (2D)
  double final_time = 1.0;
  std::vector<double> snapshot_times;
  double cfl = 0.01;   // dt = cfl * h, rounded down to fit each output interval
  std::string tableau = "ars443";
  Scheme scheme = Scheme::AP;
  FluxFamily flux = FluxFamily::AlternatingLR;
  bool limiter = false;
  bool limit_g = false;
  // Keep T and rho within the range spanned by the initial and boundary
  // temperatures.
  bool bound_limiter = false;
  bool interface_policy = false;
  double penalty_weight = -1.0;  // negative: exp(-eps_t / h)
  PicardConfig picard;
  std::vector<Probe> probes;
  double probe_interval = 0.0;  // 0: record probes every step
  double front_threshold = 0.1;  // keV

  StructuredMesh mesh() const;
  AngularQuadrature quadrature() const;
  void validate() const;
};

BenchmarkSpec accuracy_1d();
BenchmarkSpec accuracy_2d();
BenchmarkSpec marshak(const std::string& variant);  // "2A" or "2B"
BenchmarkSpec tophat();

std::vector<std::string> benchmark_names();
BenchmarkSpec benchmark_by_name(const std::string& name);

// Smooth accuracy data: T, rho and the well-prepared g = -sqrt(sigma0) Omega.grad(rho) / sigma.
struct InitialFields {
  Field rho;
  Field T;
  AngularField g;
};
InitialFields initial_fields(const BenchmarkSpec& spec, const DGSpace& space,
                             const AngularQuadrature& quad, const Medium& medium);

// Closed-form initial temperature at a point.
double initial_temperature(const InitialCondition& ic, double x, double y);

}  // namespace grt
