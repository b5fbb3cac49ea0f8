#include <cmath>
#include <numbers>

#include "doctest.h"
#include "grt/error.hpp"
#include "grt/physics.hpp"
#include "grt/problems.hpp"

using namespace grt;

TEST_CASE("Planckian and radiative temperature") {
  Field T(3);
  T << 0.0, 1.0, -0.5;
  DiagnosticCounters cnt;
  Field phi = planck(T, {1.0, 1.0}, 2.0, &cnt);
  CHECK(phi(0) == 0.0);
  CHECK(phi(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi(2) == 0.0);
  CHECK(cnt.negative_temperature == 1);
  Field one = Field::Ones(1);
  CHECK(planck(one, PhysicalConstants{}, 2.0)(0) == doctest::Approx(0.01372 * 29.98 / 2.0).epsilon(1e-15));
  CHECK(std::abs(planck(one, PhysicalConstants{}, 2.0)(0) - 0.205663) < 1e-6);

  Field Ts = Field::LinSpaced(7, 0.05, 1.3);
  PhysicalConstants pc;
  Field tr = radiative_temperature(planck(Ts, pc, 4 * std::numbers::pi), pc, 4 * std::numbers::pi);
  CHECK((tr - Ts).cwiseAbs().maxCoeff() < 1e-13);
  Field rho(2);
  rho << 0.0, -1.0;
  DiagnosticCounters c2;
  Field z = radiative_temperature(rho, pc, 2.0, &c2);
  CHECK(z(0) == 0.0);
  CHECK(z(1) == 0.0);
  CHECK(c2.negative_density == 1);
}

TEST_CASE("accuracy data is in equilibrium") {
  BenchmarkSpec s = accuracy_1d();
  DGSpace sp(s.mesh(), s.k);
  AngularQuadrature q = s.quadrature();
  Medium m(sp, s.material, s.constants, s.scaling, q.sphere_measure);
  InitialFields f = initial_fields(s, sp, q, m);
  Field tr = radiative_temperature(f.rho, s.constants, q.sphere_measure);
  for (int i = 0; i < sp.n_nodes(); ++i) {
    double x = sp.node_position(i)[0];
    CHECK(std::abs(tr(i) - (0.8 + 0.1 * std::sin(x))) < 1e-13);
  }
  CHECK(initial_temperature(s.initial, std::numbers::pi, 0.0) == doctest::Approx(0.8));
  CHECK(std::pow(initial_temperature(s.initial, 0.0, 0.0), 4) == doctest::Approx(0.4096).epsilon(1e-15));
}

TEST_CASE("opacity laws") {
  Region r;
  r.law = OpacityLaw::Constant;
  r.kappa = 2000.0;
  CHECK(r.opacity(0.3) == 2000.0);
  r.law = OpacityLaw::PowerLaw;
  r.kappa = 300.0;
  CHECK(r.opacity(1.0) == doctest::Approx(300.0));
  double big = r.opacity(1e-6);
  CHECK(std::isfinite(big));
  CHECK(big == doctest::Approx(3e20).epsilon(1e-12));
  CHECK(r.opacity(0.0) == doctest::Approx(3e20).epsilon(1e-12));
  CHECK(std::isfinite(big / 1e4 * 1e3));
}

TEST_CASE("material map of the tophat problem") {
  BenchmarkSpec s = tophat();
  CHECK(s.material.region_at({3.5, 0.0}, 2) != 0);
  CHECK(s.material.regions[s.material.region_at({3.5, 0.0}, 2)].kappa == 2000.0);
  CHECK(s.material.region_at({2.75, 0.0}, 2) == 0);
  CHECK(s.material.region_at({0.25, 0.0}, 2) == 0);
  CHECK(s.material.region_at({1.0, -1.0}, 2) != 0);
  CHECK(s.material.region_at({6.75, 0.0}, 2) == 0);
  MaterialModel empty;
  CHECK_THROWS_AS(empty.region_at({0.0, 0.0}, 2), ConfigurationError);
}

TEST_CASE("penalization weight") {
  CHECK(penalization_weight(0.0, 0.1) == 1.0);
  CHECK(penalization_weight(0.01, 0.125) == doctest::Approx(std::exp(-0.08)));
  CHECK(penalization_weight(0.1, 0.1) > penalization_weight(0.2, 0.1));
  CHECK(penalization_weight(0.1, 0.2) > penalization_weight(0.1, 0.1));
  CHECK_THROWS_AS(penalization_weight(0.1, 0.0), InvalidParameter);
  ScalingParameters sc{1.0, 1e4};
  CHECK(sc.eps_tilde() == doctest::Approx(0.01));
  ScalingParameters bad{1.0, 0.0};
  CHECK_THROWS_AS(bad.eps_tilde(), InvalidParameter);
}
