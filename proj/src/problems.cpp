#include "grt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grt/error.hpp"
#include "grt/tableau.hpp"

namespace grt {

StructuredMesh BenchmarkSpec::mesh() const {
  if (dim == 1) return StructuredMesh(lo[0], hi[0], cells[0]);
  return StructuredMesh(lo[0], hi[0], cells[0], lo[1], hi[1], cells[1]);
}

AngularQuadrature BenchmarkSpec::quadrature() const {
  return dim == 1 ? gauss_legendre(angular_n) : legendre_chebyshev(angular_n, angular_nc);
}

void BenchmarkSpec::validate() const {
  if (dim != 1 && dim != 2) throw InvalidParameter("dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (!(hi[a] > lo[a])) throw InvalidParameter("domain: need lo < hi on every axis");
    if (cells[a] < 1) throw InvalidParameter("mesh: need at least one cell per axis");
  }
  if (k < 1 || k > 8) throw InvalidParameter("k must be in 1..8");
  if (angular_n < 1 || (dim == 2 && angular_nc < 1)) throw InvalidParameter("angular quadrature size");
  if (material.regions.empty()) throw InvalidParameter("material map needs a background region");
  for (const Region& r : material.regions)
    if (!(r.kappa > 0.0) || !(r.density > 0.0) || !(r.specific_heat > 0.0))
      throw InvalidParameter("region '" + r.name + "': opacity, density and specific heat must be positive");
  if (!(constants.a > 0.0) || !(constants.c > 0.0)) throw InvalidParameter("constants a, c must be positive");
  scaling.eps_tilde();
  if (scheme == Scheme::AP && !(scaling.eps > 0.0))
    throw InvalidParameter("the AP scheme needs eps > 0; use the diffusion scheme for eps = 0");
  boundary.validate(dim);
  if (!(final_time > 0.0)) throw InvalidParameter("final time must be positive");
  double prev = 0.0;
  for (double t : snapshot_times) {
    if (!(t > prev) || t > final_time) throw InvalidParameter("snapshot times must increase within (0, final]");
    prev = t;
  }
  if (!(cfl > 0.0)) throw InvalidParameter("cfl must be positive");
  tableau_by_name(tableau);
  if (probe_interval < 0.0) throw InvalidParameter("probe interval must be >= 0");
}

namespace {

Region background(const std::string& name, OpacityLaw law, double kappa, double density,
                  double specific_heat) {
  Region r;
  r.name = name;
  r.law = law;
  r.kappa = kappa;
  r.density = density;
  r.specific_heat = specific_heat;
  return r;
}

}  // namespace

BenchmarkSpec accuracy_1d() {
  BenchmarkSpec s;
  s.name = "accuracy1d";
  s.dim = 1;
  s.lo = {0.0, 0.0};
  s.hi = {2.0 * std::numbers::pi, 1.0};
  s.cells = {40, 1};
  s.k = 3;
  // a = |Omega| makes rho = T^4 the equilibrium Planckian.
  s.constants = {1.0, 2.0};
  s.material.regions = {background("medium", OpacityLaw::PowerLaw, 1.0, 1.0, 1.0)};
  s.scaling = {1.0, 1.0};
  s.initial.kind = InitialKind::Accuracy1D;
  s.boundary = periodic_boundaries();
  s.angular_n = 8;
  s.final_time = 0.2;
  s.snapshot_times = {0.2};
  s.tableau = "ars443";
  s.picard.delta = 1e-12;
  return s;
}

BenchmarkSpec accuracy_2d() {
  BenchmarkSpec s;
  s.name = "accuracy2d";
  s.dim = 2;
  s.lo = {0.0, 0.0};
  s.hi = {2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
  s.cells = {16, 16};
  s.k = 3;
  s.constants = {1.0, 2.0 * std::numbers::pi};
  s.material.regions = {background("medium", OpacityLaw::Constant, 1.0, 1.0, 1.0)};
  s.scaling = {1.0, 1.0};
  s.initial.kind = InitialKind::Accuracy2D;
  s.boundary = periodic_boundaries();
  s.angular_n = 8;
  s.angular_nc = 4;
  s.final_time = 0.01;
  s.snapshot_times = {0.01};
  s.tableau = "ars443";
  s.picard.delta = 1e-12;
  return s;
}

BenchmarkSpec marshak(const std::string& variant) {
  const bool b = variant == "2B" || variant == "2b";
  if (!b && variant != "2A" && variant != "2a")
    throw InvalidParameter("unknown Marshak variant '" + variant + "' (expected 2A or 2B)");
  BenchmarkSpec s;
  const double kappa = b ? 300.0 : 30.0;
  s.name = b ? "marshak2b" : "marshak2a";
  s.dim = 1;
  s.lo = {0.0, 0.0};
  s.hi = {b ? 0.6 : 0.25, 1.0};
  s.cells = {80, 1};
  s.k = 3;
  s.material.regions = {background("slab", OpacityLaw::PowerLaw, kappa, 3.0, 0.1)};
  s.scaling = {1.0, kappa};
  s.initial.kind = InitialKind::Equilibrium;
  s.initial.temperature = 1e-6;
  s.boundary.rules[0][0] = {BoundaryKind::CloseLoop, 1.0, 0.0, 0.0};
  s.boundary.rules[0][1] = {BoundaryKind::CloseLoop, 1e-6, 0.0, 0.0};
  s.boundary.rules[1][0] = s.boundary.rules[1][1] = {BoundaryKind::Periodic, 0.0, 0.0, 0.0};
  s.angular_n = 8;
  s.final_time = b ? 74.0 : 1.0;
  s.snapshot_times = b ? std::vector<double>{10.0, 30.0, 50.0, 74.0}
                       : std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0};
  s.tableau = "ars443";
  // The front into cold material needs g limited as well; 2A is transport
  // dominated and needs c dt / h below the explicit DG limit.
  s.limiter = true;
  s.limit_g = true;
  if (!b) s.cfl = 0.005;
  return s;
}

BenchmarkSpec tophat() {
  BenchmarkSpec s;
  s.name = "tophat";
  s.dim = 2;
  s.lo = {0.0, -2.0};
  s.hi = {7.0, 2.0};
  s.cells = {56, 32};
  s.k = 3;
  s.material.regions = {background("pipe", OpacityLaw::Constant, 0.2, 0.01, 0.1)};
  const std::array<std::array<double, 4>, 7> boxes{{{3.0, 4.0, -1.0, 1.0},
                                                    {0.0, 2.5, -2.0, -0.5},
                                                    {0.0, 2.5, 0.5, 2.0},
                                                    {4.5, 7.0, -2.0, -0.5},
                                                    {4.5, 7.0, 0.5, 2.0},
                                                    {2.5, 4.5, -2.0, -1.5},
                                                    {2.5, 4.5, 1.5, 2.0}}};
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    Region r = background("opaque" + std::to_string(i + 1), OpacityLaw::Constant, 2000.0, 10.0, 0.1);
    r.lo = {boxes[i][0], boxes[i][2]};
    r.hi = {boxes[i][1], boxes[i][3]};
    s.material.regions.push_back(r);
  }
  s.scaling = {1.0, 1e4};
  s.initial.kind = InitialKind::Equilibrium;
  s.initial.temperature = 0.05;
  const BoundaryRule out{BoundaryKind::Outflow, 0.0, 0.0, 0.0};
  s.boundary.rules[0][0] = {BoundaryKind::HeatedSegment, 0.5, -0.5, 0.5};
  s.boundary.rules[0][1] = out;
  s.boundary.rules[1][0] = s.boundary.rules[1][1] = out;
  s.angular_n = 8;
  s.angular_nc = 4;
  s.final_time = 10.0;
  s.snapshot_times = {10.0};
  s.tableau = "imex1";
  s.interface_policy = true;
  s.limiter = true;
  s.limit_g = true;
  s.bound_limiter = true;
  s.probes = {{"A", {0.25, 0.0}}, {"B", {2.75, 0.0}}, {"C", {3.5, 1.25}}, {"D", {4.25, 0.0}},
              {"E", {6.75, 0.0}}};
  s.probe_interval = 0.05;
  return s;
}

std::vector<std::string> benchmark_names() {
  return {"accuracy1d", "accuracy2d", "marshak2a", "marshak2b", "tophat"};
}

BenchmarkSpec benchmark_by_name(const std::string& name) {
  if (name == "accuracy1d") return accuracy_1d();
  if (name == "accuracy2d") return accuracy_2d();
  if (name == "marshak2a") return marshak("2A");
  if (name == "marshak2b") return marshak("2B");
  if (name == "tophat") return tophat();
  throw ConfigurationError("unknown benchmark '" + name + "'");
}

double initial_temperature(const InitialCondition& ic, double x, double y) {
  switch (ic.kind) {
    case InitialKind::Accuracy1D: return ic.b0 + ic.b1 * std::sin(x);
    case InitialKind::Accuracy2D:
      return (ic.a1 + ic.b1 * std::sin(x)) * (ic.a2 + ic.b2 * std::sin(y));
    case InitialKind::Equilibrium: return ic.temperature;
  }
  return ic.temperature;
}

InitialFields initial_fields(const BenchmarkSpec& spec, const DGSpace& space,
                             const AngularQuadrature& quad, const Medium& medium) {
  const InitialCondition& ic = spec.initial;
  const int n = space.n_nodes();
  InitialFields f;
  f.T.resize(n);
  f.rho.resize(n);
  f.g = AngularField::Zero(n, quad.size());
  if (ic.kind == InitialKind::Equilibrium) {
    f.T.setConstant(ic.temperature);
    f.rho = planck(f.T, medium.constants(), medium.sphere_measure());
    return f;
  }
  const double sq = std::sqrt(medium.scaling().sigma0);
  for (int i = 0; i < n; ++i) {
    auto p = space.node_position(i);
    double T = initial_temperature(ic, p[0], p[1]);
    std::array<double, 2> grad{0.0, 0.0};
    if (ic.kind == InitialKind::Accuracy1D) {
      grad[0] = 4.0 * T * T * T * ic.b1 * std::cos(p[0]);
    } else {
      double X = ic.a1 + ic.b1 * std::sin(p[0]), Y = ic.a2 + ic.b2 * std::sin(p[1]);
      grad[0] = 4.0 * T * T * T * ic.b1 * std::cos(p[0]) * Y;
      grad[1] = 4.0 * T * T * T * X * ic.b2 * std::cos(p[1]);
    }
    f.T(i) = T;
    f.rho(i) = T * T * T * T;
    const double sig = medium.sigma_node(i, T);
    for (std::size_t m = 0; m < quad.size(); ++m) {
      double od = quad.component(m, 0) * grad[0];
      if (spec.dim == 2) od += quad.component(m, 1) * grad[1];
      f.g(i, m) = -sq * od / sig;
    }
  }
  return f;
}

}  // namespace grt
