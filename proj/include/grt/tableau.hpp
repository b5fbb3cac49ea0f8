#pragma once

#include <Eigen/Dense>
#include <string>

namespace grt {

// IMEX double Butcher tableau over stages 0..s. The explicit matrix is
// strictly lower triangular; the implicit one has ARS structure (zero first
// row and column).
struct ButcherTableau {
  std::string name;
  int s = 0;
  Eigen::MatrixXd explicit_a;  // (s+1) x (s+1)
  Eigen::MatrixXd implicit_a;
  Eigen::VectorXd explicit_b;
  Eigen::VectorXd implicit_b;
  Eigen::VectorXd explicit_c;
  Eigen::VectorXd implicit_c;

  bool validate_gsa(double tol = 1e-14) const;
  bool is_ars(double tol = 1e-14) const;
};

ButcherTableau tableau_imex1();
ButcherTableau tableau_ars443();
ButcherTableau tableau_by_name(const std::string& name);

}  // namespace grt
