#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <string>

#include "grt/angular.hpp"
#include "grt/boundary.hpp"
#include "grt/mesh.hpp"
#include "grt/physics.hpp"

namespace grt {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// rho-hat / q-hat pairing. Left-right: rho-hat = rho+, q-hat = q-,
// <Omega g>-hat = (<Omega g>)-. Right-left swaps the sides.
enum class FluxFamily { AlternatingLR, AlternatingRL, Central };

FluxFamily parse_flux_family(const std::string& name);
std::string to_string(FluxFamily f);

// What a non-periodic boundary face contributes to an assembled operator:
// nothing (the flux is injected separately) or the interior trace.
enum class FaceClosure { Zero, Interior };

// Weights of (u-, u+) in the numerical flux at an interior or periodic face.
struct FaceWeights {
  double minus = 0.0;
  double plus = 0.0;
};

// Strong-form derivative along one axis with numerical face flux
// F = minus * u- + plus * u+:
//   D(u) = (2/h) W^{-1} [ -Dr^T W u + l(1) F_right - l(-1) F_left ].
SparseMatrix build_axis_operator(const DGSpace& space, int axis, bool periodic,
                                 const std::function<FaceWeights(int line, int face)>& weights,
                                 const std::function<FaceClosure(int side, int line)>& closure);

// Adds the lifted boundary flux value 'flux' at (axis, side, line) to out.
void inject_boundary_flux(const DGSpace& space, Eigen::Ref<Eigen::VectorXd> out, int axis, int side, int line,
                          double flux);

// exp(-c sigma_t dt / eps_t^2), the interface weight of the rho-hat flux.
double interface_weight(double c, double sigma_tilde, double dt, double eps_tilde);

struct InterfacePolicy {
  bool enabled = false;
  double dt = 0.0;
};

class DGOperators {
 public:
  DGOperators(const DGSpace& space, const AngularQuadrature& quad, const Medium& medium,
              const KineticBoundary& boundary, FluxFamily flux, InterfacePolicy policy = {});

  const DGSpace& space() const { return *space_; }
  const AngularQuadrature& quad() const { return *quad_; }
  const KineticBoundary& boundary() const { return *boundary_; }
  FluxFamily flux() const { return flux_; }

  // Penalty operators: non-periodic boundaries closed with rho-hat = interior
  // and q-hat = 0.
  const SparseMatrix& grad_matrix(int axis) const { return grad_pen_[axis]; }
  const SparseMatrix& div_matrix(int axis) const { return div_[axis]; }
  const SparseMatrix& laplacian() const { return lap_; }

  VectorField grad(const Field& rho) const;
  Field div(const VectorField& q) const;
  Field laplace(const Field& rho) const { return lap_ * rho; }

  // D^g(<Omega g>) for a given angular moment, without boundary fluxes.
  Field g_div(const VectorField& j) const;
  // D^g(<Omega g>) including kinetic boundary fluxes from the ghost of (rho, g).
  Field g_div(const AngularField& g, const Field& rho) const;
  // Column m: Omega_m . D^grad(rho); boundary rho-hat from the ghost of (rho, g_ghost).
  AngularField rho_transport(const Field& rho, const AngularField& g_ghost) const;
  // (I - Pi) D_h(g; Omega) with upwind fluxes; boundary ghosts from (rho, g).
  AngularField transport(const AngularField& g, const Field& rho) const;
  // D_h(g; Omega) before the fluctuation projection.
  AngularField upwind(const AngularField& g, const Field& rho) const;

  VectorField angular_flux(const AngularField& g) const;

 private:
  const DGSpace* space_;
  const AngularQuadrature* quad_;
  const Medium* medium_;
  const KineticBoundary* boundary_;
  FluxFamily flux_;
  std::array<SparseMatrix, 2> grad_pen_, grad_kin_, div_, up_minus_, up_plus_;
  SparseMatrix lap_;
};

}  // namespace grt
