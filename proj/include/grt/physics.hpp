#pragma once

#include <array>
#include <string>
#include <vector>

#include "grt/mesh.hpp"

namespace grt {

struct PhysicalConstants {
  double c = 29.98;    // cm/ns
  double a = 0.01372;  // GJ/cm^3/keV^4
};

inline constexpr double kTemperatureFloor = 1e-6;  // keV

enum class OpacityLaw { Constant, PowerLaw };

// sigma = kappa (constant) or kappa / T^3 (power law), 1/cm.
struct Region {
  std::string name;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
  OpacityLaw law = OpacityLaw::Constant;
  double kappa = 1.0;
  double density = 1.0;        // g/cm^3
  double specific_heat = 1.0;  // GJ/g/keV

  double heat_capacity() const { return density * specific_heat; }
  double opacity(double T) const;
  bool contains(std::array<double, 2> p, int dim) const;
};

// Region 0 is the background; later regions take precedence where they
// contain a point.
struct MaterialModel {
  std::vector<Region> regions;
  int region_at(std::array<double, 2> p, int dim) const;
};

struct ScalingParameters {
  double eps = 1.0;
  double sigma0 = 1.0;
  double eps_tilde() const;
};

double penalization_weight(double eps_tilde, double h);

struct DiagnosticCounters {
  long negative_temperature = 0;
  long negative_density = 0;
};

// Nodal Planckian a c T^4 / |Omega|; negative nodal T is clamped to zero and
// counted.
Field planck(const Field& T, const PhysicalConstants& pc, double sphere_measure,
             DiagnosticCounters* counters = nullptr);
// (|Omega| rho / (a c))^(1/4), with negative rho floored at zero.
Field radiative_temperature(const Field& rho, const PhysicalConstants& pc, double sphere_measure,
                            DiagnosticCounters* counters = nullptr);

// Per-node material data on a DG space.
class Medium {
 public:
  Medium(const DGSpace& space, const MaterialModel& material, const PhysicalConstants& pc,
         const ScalingParameters& scaling, double sphere_measure);

  const PhysicalConstants& constants() const { return pc_; }
  const ScalingParameters& scaling() const { return scaling_; }
  const MaterialModel& material() const { return material_; }
  double sphere_measure() const { return measure_; }
  double eps_tilde() const { return eps_t_; }
  double planck_coefficient() const { return pc_.a * pc_.c / measure_; }
  // C_v / |Omega| per node
  const Field& cv_tilde() const { return cv_tilde_; }
  const std::vector<int>& node_region() const { return node_region_; }
  const std::vector<int>& cell_region() const { return cell_region_; }

  Field sigma(const Field& T) const;
  Field sigma_tilde(const Field& T) const;
  double sigma_node(int node, double T) const;

 private:
  PhysicalConstants pc_;
  ScalingParameters scaling_;
  MaterialModel material_;
  double measure_;
  double eps_t_;
  Field cv_tilde_;
  std::vector<int> node_region_;
  std::vector<int> cell_region_;
};

}  // namespace grt
