#include "grt/physics.hpp"

#include <algorithm>
#include <cmath>

#include "grt/error.hpp"

namespace grt {

double Region::opacity(double T) const {
  if (law == OpacityLaw::Constant) return kappa;
  double t = std::max(T, kTemperatureFloor);
  return kappa / (t * t * t);
}

bool Region::contains(std::array<double, 2> p, int dim) const {
  for (int ax = 0; ax < dim; ++ax)
    if (!(p[ax] > lo[ax] && p[ax] < hi[ax])) return false;
  return true;
}

int MaterialModel::region_at(std::array<double, 2> p, int dim) const {
  if (regions.empty()) throw ConfigurationError("material model has no regions");
  for (int r = static_cast<int>(regions.size()) - 1; r >= 1; --r)
    if (regions[r].contains(p, dim)) return r;
  return 0;
}

double ScalingParameters::eps_tilde() const {
  if (!(eps >= 0.0) || !(sigma0 > 0.0)) throw InvalidParameter("scaling: need eps >= 0, sigma0 > 0");
  return eps / std::sqrt(sigma0);
}

double penalization_weight(double eps_tilde, double h) {
  if (!(h > 0.0) || eps_tilde < 0.0) throw InvalidParameter("penalization_weight: need h > 0");
  return std::exp(-eps_tilde / h);
}

Field planck(const Field& T, const PhysicalConstants& pc, double sphere_measure,
             DiagnosticCounters* counters) {
  const double coef = pc.a * pc.c / sphere_measure;
  Field phi(T.size());
  for (Eigen::Index i = 0; i < T.size(); ++i) {
    double t = T(i);
    if (t < 0.0) {
      if (counters) ++counters->negative_temperature;
      t = 0.0;
    }
    double t2 = t * t;
    phi(i) = coef * t2 * t2;
  }
  return phi;
}

Field radiative_temperature(const Field& rho, const PhysicalConstants& pc, double sphere_measure,
                            DiagnosticCounters* counters) {
  Field tr(rho.size());
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    double r = rho(i);
    if (r < 0.0) {
      if (counters) ++counters->negative_density;
      r = 0.0;
    }
    tr(i) = std::sqrt(std::sqrt(sphere_measure * r / (pc.a * pc.c)));
  }
  return tr;
}

Medium::Medium(const DGSpace& space, const MaterialModel& material, const PhysicalConstants& pc,
               const ScalingParameters& scaling, double sphere_measure)
    : pc_(pc), scaling_(scaling), material_(material), measure_(sphere_measure) {
  if (!(pc.a > 0.0) || !(pc.c > 0.0)) throw InvalidParameter("constants a and c must be positive");
  eps_t_ = scaling.eps_tilde();
  const int nc = space.mesh().n_cells();
  cell_region_.resize(nc);
  for (int c = 0; c < nc; ++c) cell_region_[c] = material.region_at(space.cell_center(c), space.dim());
  node_region_.resize(space.n_nodes());
  cv_tilde_.resize(space.n_nodes());
  for (int n = 0; n < space.n_nodes(); ++n) {
    int r = cell_region_[space.cell_of(n)];
    node_region_[n] = r;
    cv_tilde_(n) = material.regions[r].heat_capacity() / sphere_measure;
  }
}

double Medium::sigma_node(int node, double T) const {
  return material_.regions[node_region_[node]].opacity(T);
}

Field Medium::sigma(const Field& T) const {
  Field s(T.size());
  for (Eigen::Index i = 0; i < T.size(); ++i) s(i) = sigma_node(static_cast<int>(i), T(i));
  return s;
}

Field Medium::sigma_tilde(const Field& T) const { return sigma(T) / scaling_.sigma0; }

}  // namespace grt
