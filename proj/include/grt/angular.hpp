#pragma once

#include <array>
#include <span>
#include <vector>

namespace grt {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_rule(int n);

// Discrete ordinates. In 1D the direction is (mu, 0); in 2D (zeta, eta).
struct AngularQuadrature {
  int dim = 1;
  std::vector<std::array<double, 2>> ordinates;
  std::vector<double> weights;
  double sphere_measure = 2.0;

  std::size_t size() const { return weights.size(); }
  double component(std::size_t m, int axis) const { return ordinates[m][axis]; }
};

AngularQuadrature gauss_legendre(int n);
AngularQuadrature legendre_chebyshev(int n_l, int n_c);

// (1/|Omega|) sum_m w_m values_m
double angular_average(std::span<const double> values, const AngularQuadrature& quad);

}  // namespace grt
