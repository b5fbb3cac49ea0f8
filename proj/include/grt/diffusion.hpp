#pragma once

#include <array>
#include <memory>

#include "grt/angular.hpp"
#include "grt/boundary.hpp"
#include "grt/mesh.hpp"
#include "grt/operators.hpp"
#include "grt/physics.hpp"
#include "grt/picard.hpp"

namespace grt {

// The limit system is solved by one global Newton iteration.
struct DiffusionStats {
  int picard = 0;
  int newton_max = 0;
};

// First-order IMEX solver of the equilibrium diffusion limit
//   (Phi + c Cv~ T)_t = div(c / (3 sigma) grad Phi),  Phi = a c T^4 / |Omega|.
// Faces with a radiation source hold Phi at the Planckian value of the
// source; all other non-periodic faces are insulated.
class DiffusionSolver {
 public:
  DiffusionSolver(const DGSpace& space, const Medium& medium, const KineticBoundary& boundary,
                  FluxFamily flux, PicardConfig picard);

  DiffusionStats step(Field& T, double dt);
  double energy(const Field& T) const;
  Field rho(const Field& T) const;

  const SparseMatrix& laplacian() const { return lap_; }
  // div(1/(3 sigma) grad Phi) with the boundary values injected, written as
  // the Laplacian of a Kirchhoff potential so that the flux into cold
  // material with sigma ~ 1/T^3 is not lost.
  Field diffusion(const Field& T) const;
  Field potential(const Field& T) const;

 private:
  const DGSpace* space_;
  const KineticBoundary* boundary_;
  std::unique_ptr<Medium> limit_;  // same material with eps = 0
  std::array<SparseMatrix, 2> grad_, div_;
  SparseMatrix lap_;
  PicardConfig picard_;
};

}  // namespace grt
