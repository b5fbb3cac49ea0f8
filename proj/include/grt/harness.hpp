#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grt/simulation.hpp"

namespace grt {

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

// u_coarse - u_fine at the nodes of the coarse space. The fine field is
// evaluated as the average of its one-sided limits where a coarse node sits
// on a fine face. L1 is the quadrature-weighted integral over the domain.
ErrorNorms coarse_fine_error(const Field& u_coarse, const DGSpace& coarse, const Field& u_fine,
                             const DGSpace& fine);

struct ConvergenceRow {
  int N = 0;
  ErrorNorms T;
  ErrorNorms rho;
  std::optional<double> order_l1;    // on T, against the previous row
  std::optional<double> order_linf;
  std::optional<double> rho_order_l1;
  std::optional<double> rho_order_linf;
};

struct ConvergenceReport {
  std::string label;
  int k = 0;
  double eps = 0.0;
  std::vector<ConvergenceRow> rows;  // one per resolution that has a finer partner
};

double observed_order(double e_coarse, double e_fine);

// One row per resolution (cells per axis): the run at N against the run at
// 2N. Resolutions must double; the partner of the finest one is run too.
ConvergenceReport self_convergence(const BenchmarkSpec& spec, const std::vector<int>& resolutions);

// |E(after) - E(before) + outflow|
double conservation_residual(double energy_before, double energy_after, double outflow = 0.0);

// Leftmost point where the nodal values cross 'threshold', by linear
// interpolation between consecutive nodes of a 1D field.
std::optional<double> front_position(const Field& T, const DGSpace& space, double threshold = 0.1);

// Plain-text table in the layout of the reference error tables.
std::string format_table(const std::vector<ConvergenceReport>& reports);
std::string format_csv(const std::vector<ConvergenceReport>& reports);

}  // namespace grt
