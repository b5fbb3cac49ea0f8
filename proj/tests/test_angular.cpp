#include <cmath>
#include <vector>

#include "doctest.h"
#include "grt/angular.hpp"
#include "grt/error.hpp"

using namespace grt;

TEST_CASE("two-point Gauss rule") {
  GaussRule r = gauss_rule(2);
  REQUIRE(r.nodes.size() == 2);
  CHECK(std::abs(std::abs(r.nodes[0]) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(r.nodes[0] + r.nodes[1]) < 1e-15);
  CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Gauss-Legendre ordinates integrate monomials to degree 15") {
  AngularQuadrature q = gauss_legendre(8);
  CHECK(q.size() == 8);
  CHECK(q.sphere_measure == 2.0);
  for (int k = 0; k <= 15; ++k) {
    double s = 0.0;
    for (std::size_t m = 0; m < q.size(); ++m) s += q.weights[m] * std::pow(q.component(m, 0), k);
    double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(s - exact) < 1e-13);
  }
  std::vector<double> mu, mu2;
  for (std::size_t m = 0; m < q.size(); ++m) {
    mu.push_back(q.component(m, 0));
    mu2.push_back(q.component(m, 0) * q.component(m, 0));
  }
  CHECK(std::abs(angular_average(mu, q)) < 1e-15);
  CHECK(std::abs(angular_average(mu2, q) - 1.0 / 3.0) < 1e-14);
  std::vector<double> ones(q.size(), 4.5);
  CHECK(angular_average(ones, q) == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("Legendre-Chebyshev second moments") {
  AngularQuadrature q = legendre_chebyshev(8, 4);
  CHECK(q.size() == 32);
  double wsum = 0.0;
  for (double w : q.weights) wsum += w;
  CHECK(std::abs(wsum - q.sphere_measure) < 1e-13);
  for (int ax = 0; ax < 2; ++ax) {
    std::vector<double> v1, v2;
    for (std::size_t m = 0; m < q.size(); ++m) {
      v1.push_back(q.component(m, ax));
      v2.push_back(q.component(m, ax) * q.component(m, ax));
    }
    CHECK(std::abs(angular_average(v1, q)) < 1e-13);
    CHECK(std::abs(angular_average(v2, q) - 1.0 / 3.0) < 1e-13);
  }
  // <zeta eta> vanishes by azimuthal symmetry for any size.
  for (int nl : {2, 4, 6}) {
    AngularQuadrature r = legendre_chebyshev(nl, 3);
    std::vector<double> z;
    for (std::size_t m = 0; m < r.size(); ++m) z.push_back(r.component(m, 0) * r.component(m, 1));
    CHECK(std::abs(angular_average(z, r)) < 1e-13);
  }
}

TEST_CASE("angular quadrature errors") {
  CHECK_THROWS_AS(gauss_rule(0), InvalidParameter);
  CHECK_THROWS_AS(gauss_legendre(0), InvalidParameter);
  CHECK_THROWS_AS(legendre_chebyshev(8, 0), InvalidParameter);
  AngularQuadrature q = gauss_legendre(4);
  std::vector<double> v(3, 1.0);
  CHECK_THROWS_AS(angular_average(v, q), InvalidParameter);
}
