#pragma once

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <map>
#include <memory>
#include <vector>

#include "grt/mesh.hpp"
#include "grt/operators.hpp"
#include "grt/physics.hpp"

namespace grt {

struct PicardConfig {
  double delta = 1e-9;
  int max_picard = 200;
  double newton_tol = 1e-12;
  int max_newton = 100;
  // Opacity frozen at the previous Picard iterate (true) or at the stage guess.
  bool lagged_opacity = true;
  // Step 1 uses a sparse LU up to this many unknowns, BiCGSTAB above it.
  int direct_limit = 20000;
  double linear_tol = 1e-13;
};

// Data of one implicit stage:
//   rho + c Cv~ T - theta L rho        = rhs1
//   eps_t^2 Cv~ T - tau s~ (rho - Phi) = rhs2
// with tau = a_ll dt and theta = tau c omega / (3 sigma0).
struct StageRHS {
  Field rhs1;
  Field rhs2;
  double tau = 0.0;
  double theta = 0.0;
};

struct StageResult {
  Field rho;
  Field T;
  Field sigma_t;  // opacity used in the last Step 2
  int iterations = 0;
  int max_newton = 0;
  std::vector<double> history;
};

struct NewtonResult {
  double T = 0.0;
  int iterations = 0;
  bool bisection = false;
};

// Root of kappa max(T,0)^4 + beta T = r, safeguarded Newton with a bracket.
NewtonResult solve_local(double kappa, double beta, double r, double guess, double tol,
                         int max_iter);

class StageSolver {
 public:
  StageSolver(const DGSpace& space, const Medium& medium, const SparseMatrix& laplacian,
              PicardConfig cfg);

  const PicardConfig& config() const { return cfg_; }
  void set_laplacian(const SparseMatrix& laplacian);

  StageResult solve(const StageRHS& rhs, const Field& rho_guess, const Field& T_guess);

  // Step 1: (I - theta L) rho = rhs1 - c Cv~ T_m.
  Field step1(const StageRHS& rhs, const Field& T_m);
  // Step 2: per-node solve given ra = rhs1 + theta L rho_step1.
  void step2(const StageRHS& rhs, const Field& ra, const Field& sigma_t, const Field& T_guess,
             Field& rho, Field& T, int* newton_iters = nullptr) const;

 private:
  const Eigen::SparseLU<Eigen::SparseMatrix<double>>& factor(double theta);

  const DGSpace* space_;
  const Medium* medium_;
  const SparseMatrix* lap_;
  PicardConfig cfg_;
  using Iterative = Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<double>>;
  Iterative& iterative(double theta);

  std::map<double, std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>>> lu_;
  std::map<double, std::pair<SparseMatrix, std::unique_ptr<Iterative>>> it_;
};

}  // namespace grt
