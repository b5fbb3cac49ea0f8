#pragma once

#include <array>
#include <optional>
#include <vector>

#include "grt/angular.hpp"
#include "grt/mesh.hpp"
#include "grt/physics.hpp"

namespace grt {

enum class BoundaryKind { Periodic, CloseLoop, Outflow, HeatedSegment };

struct BoundaryRule {
  BoundaryKind kind = BoundaryKind::Periodic;
  double temperature = 0.0;  // keV, Planckian source for close-loop and heated segments
  double seg_lo = 0.0;       // heated segment extent along the boundary
  double seg_hi = 0.0;

  // Source temperature at boundary coordinate s, if radiation enters there.
  std::optional<double> source_at(double s) const;
};

// rules[axis][side], side 0 = low end, side 1 = high end.
struct BoundarySet {
  std::array<std::array<BoundaryRule, 2>, 2> rules;

  bool periodic(int axis) const { return rules[axis][0].kind == BoundaryKind::Periodic; }
  void validate(int dim) const;
};

BoundarySet periodic_boundaries();

// Ghost states for the kinetic fluxes. Inflow ordinates (Omega . n < 0) at a
// source point carry the Planckian intensity; every other ordinate carries
// the interior intensity rho + eps_t g. The ghost is split back into
// rho_gh = <I_gh> and g_gh = (I_gh - rho_gh) / eps_t.
class KineticBoundary {
 public:
  KineticBoundary(const DGSpace& space, const AngularQuadrature& quad, const BoundarySet& bc,
                  const PhysicalConstants& pc, double eps_tilde);

  bool periodic(int axis) const { return bc_.periodic(axis); }
  const BoundarySet& rules() const { return bc_; }
  int n_points(int axis) const { return space_->lines(axis).n_lines; }
  // Planckian inflow intensity at a boundary point, if any.
  const std::optional<double>& inflow(int axis, int side, int line) const {
    return inflow_[axis][side][line];
  }
  bool incoming(std::size_t m, int axis, int side) const;

  // Interior traces of rho and g at the boundary points of (axis, side).
  Field trace(const Field& u, int axis, int side) const;
  AngularField trace(const AngularField& g, int axis, int side) const;

  void ghost(int axis, int side, const Field& rho_b, const AngularField& g_b, Field& rho_gh,
             AngularField& g_gh) const;

  // Outward normal flux n . <Omega g_gh> integrated over the boundary, scaled
  // by c / sqrt(sigma0): the rate at which rho + c Cv~ T leaves the domain.
  double outflow_rate(const Field& rho, const AngularField& g, double c_over_sqrt_sigma0) const;

 private:
  const DGSpace* space_;
  const AngularQuadrature* quad_;
  BoundarySet bc_;
  double eps_t_;
  std::array<std::array<std::vector<std::optional<double>>, 2>, 2> inflow_;
};

}  // namespace grt
