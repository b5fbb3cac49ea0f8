#include "grt/angular.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "grt/error.hpp"

namespace grt {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int j = 2; j <= n; ++j) {
    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule gauss_rule(int n) {
  if (n < 1) throw InvalidParameter("gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double dp = legendre(n, x).second;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

AngularQuadrature gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("gauss_legendre: n must be positive");
  GaussRule rule = gauss_rule(n);
  AngularQuadrature q;
  q.dim = 1;
  q.sphere_measure = 2.0;
  for (int i = 0; i < n; ++i) {
    q.ordinates.push_back({rule.nodes[i], 0.0});
    q.weights.push_back(rule.weights[i]);
  }
  return q;
}

AngularQuadrature legendre_chebyshev(int n_l, int n_c) {
  if (n_l < 1 || n_c < 1) throw InvalidParameter("legendre_chebyshev: counts must be positive");
  GaussRule rule = gauss_rule(n_l);
  AngularQuadrature q;
  q.dim = 2;
  q.sphere_measure = 2.0 * std::numbers::pi;
  for (int i = 0; i < n_l; ++i) {
    double mu = 0.5 * (rule.nodes[i] + 1.0);
    double wmu = 0.5 * rule.weights[i];
    double s = std::sqrt(1.0 - mu * mu);
    for (int j = 1; j <= n_c; ++j) {
      double phi = (2.0 * j - 1.0) * std::numbers::pi / n_c;
      q.ordinates.push_back({s * std::cos(phi), s * std::sin(phi)});
      q.weights.push_back(wmu * 2.0 * std::numbers::pi / n_c);
    }
  }
  return q;
}

double angular_average(std::span<const double> values, const AngularQuadrature& quad) {
  if (values.size() != quad.size())
    throw InvalidParameter("angular_average: value count does not match ordinate count");
  double s = 0.0;
  for (std::size_t m = 0; m < values.size(); ++m) s += quad.weights[m] * values[m];
  return s / quad.sphere_measure;
}

}  // namespace grt
