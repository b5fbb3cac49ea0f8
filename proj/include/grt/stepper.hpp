#pragma once

#include <memory>
#include <vector>

#include "grt/angular.hpp"
#include "grt/boundary.hpp"
#include "grt/mesh.hpp"
#include "grt/operators.hpp"
#include "grt/physics.hpp"
#include "grt/picard.hpp"
#include "grt/tableau.hpp"

namespace grt {

struct State {
  Field rho;
  Field T;
  AngularField g;
  double t = 0.0;
};

struct StepperOptions {
  FluxFamily flux = FluxFamily::AlternatingLR;
  bool interface_policy = false;
  bool limit = false;    // limit rho and T once per step
  bool limit_g = false;  // also limit each ordinate of g
  // Bound-preserving scaling of T into [T_lo, T_hi] and of rho into the
  // matching Planckian range, after the slope limiter.
  bool bound_limit = false;
  double T_lo = 0.0;
  double T_hi = 0.0;
  double penalty_weight = -1.0;  // negative: exp(-eps_t / h)
  // Skip the conservative re-update and take the last stage values.
  bool final_update = true;
};

struct StepStats {
  int picard_max = 0;
  int picard_total = 0;
  int newton_max = 0;
  int limited_cells = 0;
  int bounded_cells = 0;
  int cells_outside = 0;  // cell means outside the bounds
  // dt * c/sqrt(sigma0) * sum_l bt_l * (boundary outflow at stage l)
  double outflow = 0.0;
};

// One DG-IMEX time step of the micro-macro system.
class Stepper {
 public:
  Stepper(const DGSpace& space, const AngularQuadrature& quad, const Medium& medium,
          const KineticBoundary& boundary, ButcherTableau tableau, PicardConfig picard,
          StepperOptions options);

  const ButcherTableau& tableau() const { return tab_; }
  double omega() const { return omega_; }
  const DGOperators& operators(double dt);
  StageSolver& stage_solver() { return *solver_; }

  StepStats advance(State& state, double dt);

  // Integral of rho + c Cv~ T.
  double energy(const State& s) const;

 private:
  void prepare(double dt);

  const DGSpace* space_;
  const AngularQuadrature* quad_;
  const Medium* medium_;
  const KineticBoundary* boundary_;
  ButcherTableau tab_;
  PicardConfig picard_;
  StepperOptions opt_;
  double omega_;
  double ops_dt_ = -1.0;
  std::unique_ptr<DGOperators> ops_;
  std::unique_ptr<StageSolver> solver_;
};

}  // namespace grt
