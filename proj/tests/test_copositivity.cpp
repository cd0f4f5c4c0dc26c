#include "extlab/copositivity.hpp"

#include <doctest.h>

using namespace extlab;

TEST_CASE("bump lattice and its form matrices") {
  BumpLattice L = make_bump_lattice(2, 3, 0.8, 0.6);
  CHECK(L.size() == 9);
  GridPtr g = build_sphere_grid(2, 64);
  DirectionSet K = cap_set(g, Vec3::UnitX(), 0.5);
  Eigen::MatrixXd P = xray_form_matrix(L, midpoint_set(K));
  Eigen::MatrixXd Q = c2_form_matrix(L, K);
  CHECK((P - P.transpose()).norm() < 1e-12 * P.norm());
  CHECK((Q - Q.transpose()).norm() < 1e-12 * Q.norm());
  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(9, 0.2, 1.0);
  Weight w = L.weight(c);
  QuadraticGapReport r = quadratic_gap(midpoint_set(K), 0.0, w, false);
  CHECK(c.dot(P * c) == doctest::Approx(r.xray_sq).epsilon(1e-10));
}

TEST_CASE("quadratic gap kernel route agrees") {
  BumpLattice L = make_bump_lattice(2, 2, 0.8, 0.6);
  GridPtr g = build_sphere_grid(2, 64);
  DirectionSet K = cap_set(g, Vec3::UnitY(), 0.4);
  QuadraticGapReport r = quadratic_gap(K, 0.5, L.weight(Eigen::VectorXd::Ones(4)), true);
  CHECK(r.kernel_discrepancy < 1e-6 * std::max(1.0, std::abs(r.kernel_form)));
  CHECK(r.gap == doctest::Approx(r.xray_sq - 0.5 * r.c2_sq));
}

TEST_CASE("Drury identity for a planar Gaussian") {
  GaussianMixture m;
  m.dim = 2;
  m.terms.push_back({1.0, Vec3(0.2, -0.1, 0.0), 0.8});
  DruryReport r = drury_identity(Weight(m, true), 64, 8.0, 256);
  CHECK(r.direct > 0.0);
  CHECK(r.discrepancy < 2e-2 * r.direct);
}

TEST_CASE("cone search returns a reproducible maximiser") {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(3, 3), Q = Eigen::MatrixXd::Identity(3, 3);
  P(0, 0) = 2.0;
  ConeSearchBudget b{2, 50, 200};
  ConeSearchReport a = cone_search_ratio(P, Q, b, 9), c = cone_search_ratio(P, Q, b, 9);
  CHECK(a.best == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(a.best == c.best);
}

TEST_CASE("Cantor midpoint measure grows geometrically") {
  BumpLattice L = make_bump_lattice(2, 3, 0.6, 0.5);
  CantorReport r = cantor_ratio(2, 2048, kPi / 2, L, {1, 20, 50}, 3);
  REQUIRE(r.rows.size() >= 2);
  CHECK(r.strictly_increasing);
  CHECK(r.c > 0.5);
}
