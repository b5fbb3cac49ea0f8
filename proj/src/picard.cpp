#include "grt/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "grt/error.hpp"

namespace grt {

NewtonResult solve_local(double kappa, double beta, double r, double guess, double tol,
                         int max_iter) {
  NewtonResult res;
  if (beta > 0.0 && r <= 0.0) {
    res.T = r / beta;
    return res;
  }
  if (r <= 0.0) {
    if (beta == 0.0) return res;
    throw SolverFailure("local solve: no admissible root for non-positive data");
  }
  auto f = [&](double t) {
    double tp = std::max(t, 0.0);
    double t2 = tp * tp;
    return kappa * t2 * t2 + beta * t - r;
  };
  double lo = 0.0;
  double hi = kappa > 0.0 ? std::sqrt(std::sqrt(r / kappa)) : r / beta;
  if (beta > 0.0) hi = std::min(hi, r / beta);
  for (int e = 0; f(hi) < 0.0; ++e) {
    if (e > 200) throw SolverFailure("local solve: bracket expansion failed");
    hi *= 2.0;
  }
  double t = std::clamp(guess, lo, hi);
  for (int it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    double fv = f(t);
    if (std::abs(fv) <= tol) break;
    if (fv < 0.0) lo = t; else hi = t;
    double t3 = t * t * t;
    double df = 4.0 * kappa * t3 + beta;
    double next = df > 0.0 ? t - fv / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
      res.bisection = true;
    }
    if (std::abs(next - t) <= 1e-15 * std::abs(t) || hi - lo <= 1e-15 * hi) {
      t = next;
      break;
    }
    t = next;
    if (it == max_iter) throw SolverFailure("local solve: Newton did not converge");
  }
  res.T = t;
  return res;
}

StageSolver::StageSolver(const DGSpace& space, const Medium& medium, const SparseMatrix& laplacian,
                         PicardConfig cfg)
    : space_(&space), medium_(&medium), lap_(&laplacian), cfg_(cfg) {
  if (!(cfg.delta > 0.0) || cfg.max_picard < 1 || cfg.max_newton < 1 || !(cfg.newton_tol > 0.0) ||
      !(cfg.linear_tol > 0.0) || cfg.direct_limit < 0)
    throw InvalidParameter("picard configuration: tolerances must be positive and caps >= 1");
}

void StageSolver::set_laplacian(const SparseMatrix& laplacian) {
  lap_ = &laplacian;
  lu_.clear();
  it_.clear();
}

const Eigen::SparseLU<Eigen::SparseMatrix<double>>& StageSolver::factor(double theta) {
  auto it = lu_.find(theta);
  if (it != lu_.end()) return *it->second;
  const int n = space_->n_nodes();
  Eigen::SparseMatrix<double> I(n, n);
  I.setIdentity();
  Eigen::SparseMatrix<double> A = I - theta * Eigen::SparseMatrix<double>(*lap_);
  A.makeCompressed();
  auto lu = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
  lu->analyzePattern(A);
  lu->factorize(A);
  if (lu->info() != Eigen::Success)
    throw SolverFailure("step 1: sparse factorization failed: " + lu->lastErrorMessage());
  auto& ref = *lu;
  lu_.emplace(theta, std::move(lu));
  return ref;
}

StageSolver::Iterative& StageSolver::iterative(double theta) {
  auto it = it_.find(theta);
  if (it != it_.end()) return *it->second.second;
  const int n = space_->n_nodes();
  SparseMatrix I(n, n);
  I.setIdentity();
  auto& entry = it_[theta];
  entry.first = I - theta * (*lap_);
  entry.first.makeCompressed();
  entry.second = std::make_unique<Iterative>();
  entry.second->setTolerance(cfg_.linear_tol);
  entry.second->setMaxIterations(2000);
  entry.second->compute(entry.first);
  return *entry.second;
}

Field StageSolver::step1(const StageRHS& rhs, const Field& T_m) {
  const double c = medium_->constants().c;
  Field b = rhs.rhs1 - c * medium_->cv_tilde().cwiseProduct(T_m);
  if (rhs.theta == 0.0) return b;
  if (space_->n_nodes() > cfg_.direct_limit) {
    Iterative& solver = iterative(rhs.theta);
    Field x = solver.solveWithGuess(b, b);
    if (solver.info() == Eigen::Success) return x;
  }
  const auto& lu = factor(rhs.theta);
  Field x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw SolverFailure("step 1: sparse solve failed");
  return x;
}

void StageSolver::step2(const StageRHS& rhs, const Field& ra, const Field& sigma_t,
                        const Field& T_guess, Field& rho, Field& T, int* newton_iters) const {
  const int n = space_->n_nodes();
  const double c = medium_->constants().c;
  const double kappa = medium_->planck_coefficient();
  const double e2 = medium_->eps_tilde() * medium_->eps_tilde();
  const Field& cv = medium_->cv_tilde();
  rho.resize(n);
  T.resize(n);
  int worst = 0;
  for (int i = 0; i < n; ++i) {
    const double ts = rhs.tau * sigma_t(i);
    const double beta = c * cv(i) + e2 * cv(i) / ts;
    const double r = ra(i) + rhs.rhs2(i) / ts;
    NewtonResult nr = solve_local(kappa, beta, r, T_guess(i), cfg_.newton_tol, cfg_.max_newton);
    worst = std::max(worst, nr.iterations);
    const double t = nr.T;
    const double tp = std::max(t, 0.0);
    T(i) = t;
    rho(i) = kappa * tp * tp * tp * tp + (e2 * cv(i) * t - rhs.rhs2(i)) / ts;
  }
  if (newton_iters) *newton_iters = worst;
}

StageResult StageSolver::solve(const StageRHS& rhs, const Field& rho_guess, const Field& T_guess) {
  if (!(rhs.tau > 0.0)) throw InvalidParameter("stage solve needs tau > 0");
  StageResult res;
  Field T_m = T_guess;
  Field rho_prev = rho_guess;
  Field sigma_fixed = medium_->sigma_tilde(T_guess);
  Field rho, T;
  for (int m = 1; m <= cfg_.max_picard; ++m) {
    res.sigma_t = cfg_.lagged_opacity ? medium_->sigma_tilde(T_m) : sigma_fixed;
    Field rho1 = step1(rhs, T_m);
    Field ra = rhs.rhs1;
    if (rhs.theta != 0.0) ra += rhs.theta * ((*lap_) * rho1);
    int nit = 0;
    step2(rhs, ra, res.sigma_t, T_m, rho, T, &nit);
    res.max_newton = std::max(res.max_newton, nit);
    double d = space_->l2_norm(rho - rho_prev);
    res.history.push_back(d);
    res.iterations = m;
    if (!std::isfinite(d)) break;
    if (d < cfg_.delta) {
      res.rho = std::move(rho);
      res.T = std::move(T);
      return res;
    }
    rho_prev = rho;
    T_m = T;
  }
  std::ostringstream os;
  os << "Picard iteration did not converge in " << res.iterations << " iterations (last increment "
     << (res.history.empty() ? 0.0 : res.history.back()) << ")";
  throw SolverFailure(os.str(), res.history);
}

}  // namespace grt
