#include "grt/tableau.hpp"

#include <cmath>

#include "grt/error.hpp"

namespace grt {

namespace {

void finish(ButcherTableau& t) {
  const int n = t.s + 1;
  t.explicit_c.resize(n);
  t.implicit_c.resize(n);
  for (int i = 0; i < n; ++i) {
    t.explicit_c(i) = t.explicit_a.row(i).head(i).sum();
    t.implicit_c(i) = t.implicit_a.row(i).head(i + 1).sum();
  }
}

}  // namespace

bool ButcherTableau::validate_gsa(double tol) const {
  if (std::abs(explicit_c(s) - 1.0) > tol || std::abs(implicit_c(s) - 1.0) > tol) return false;
  for (int j = 0; j <= s; ++j) {
    if (std::abs(implicit_a(s, j) - implicit_b(j)) > tol) return false;
    if (std::abs(explicit_a(s, j) - explicit_b(j)) > tol) return false;
  }
  return true;
}

bool ButcherTableau::is_ars(double tol) const {
  for (int j = 0; j <= s; ++j)
    if (std::abs(implicit_a(0, j)) > tol || std::abs(implicit_a(j, 0)) > tol) return false;
  for (int i = 1; i <= s; ++i)
    if (std::abs(implicit_a(i, i)) <= tol) return false;
  for (int i = 0; i <= s; ++i)
    for (int j = i; j <= s; ++j)
      if (std::abs(explicit_a(i, j)) > tol) return false;
  return true;
}

ButcherTableau tableau_imex1() {
  ButcherTableau t;
  t.name = "imex1";
  t.s = 1;
  t.explicit_a = Eigen::MatrixXd::Zero(2, 2);
  t.implicit_a = Eigen::MatrixXd::Zero(2, 2);
  t.explicit_a(1, 0) = 1.0;
  t.implicit_a(1, 1) = 1.0;
  t.explicit_b = Eigen::Vector2d(1.0, 0.0);
  t.implicit_b = Eigen::Vector2d(0.0, 1.0);
  finish(t);
  return t;
}

ButcherTableau tableau_ars443() {
  ButcherTableau t;
  t.name = "ars443";
  t.s = 4;
  t.explicit_a = Eigen::MatrixXd::Zero(5, 5);
  t.implicit_a = Eigen::MatrixXd::Zero(5, 5);
  auto& E = t.explicit_a;
  E(1, 0) = 1.0 / 2.0;
  E(2, 0) = 11.0 / 18.0;
  E(2, 1) = 1.0 / 18.0;
  E(3, 0) = 5.0 / 6.0;
  E(3, 1) = -5.0 / 6.0;
  E(3, 2) = 1.0 / 2.0;
  E(4, 0) = 1.0 / 4.0;
  E(4, 1) = 7.0 / 4.0;
  E(4, 2) = 3.0 / 4.0;
  E(4, 3) = -7.0 / 4.0;
  auto& I = t.implicit_a;
  I(1, 1) = 1.0 / 2.0;
  I(2, 1) = 1.0 / 6.0;
  I(2, 2) = 1.0 / 2.0;
  I(3, 1) = -1.0 / 2.0;
  I(3, 2) = 1.0 / 2.0;
  I(3, 3) = 1.0 / 2.0;
  I(4, 1) = 3.0 / 2.0;
  I(4, 2) = -3.0 / 2.0;
  I(4, 3) = 1.0 / 2.0;
  I(4, 4) = 1.0 / 2.0;
  t.explicit_b = E.row(4).transpose();
  t.implicit_b = I.row(4).transpose();
  finish(t);
  return t;
}

ButcherTableau tableau_by_name(const std::string& name) {
  if (name == "imex1") return tableau_imex1();
  if (name == "ars443") return tableau_ars443();
  throw InvalidParameter("unknown tableau '" + name + "'");
}

}  // namespace grt
