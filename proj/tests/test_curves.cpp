#include "extlab/curves.hpp"

#include <doctest.h>

using namespace extlab;

TEST_CASE("circle and ellipse geometry") {
  ConvexCurve c = ConvexCurve::circle(2.0, 0.0, kTwoPi);
  CHECK(c.closed());
  CHECK(c.length() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(c.curvature(0.7) == doctest::Approx(0.5));
  CHECK((c.normal(0.3) - Vec3(std::cos(0.3), std::sin(0.3), 0.0)).norm() < 1e-12);
  ConvexCurve e = ConvexCurve::ellipse(2.0, 1.0, 0.0, kTwoPi);
  CHECK(e.curvature(0.0) == doctest::Approx(2.0));
  CHECK(e.curvature(kPi / 2) == doctest::Approx(0.25));
  double w = 0.0;
  for (double q : e.weights()) w += q;
  CHECK(w == doctest::Approx(e.length()).epsilon(1e-10));
  CHECK(ConvexCurve::from_json(e.to_json()).curvature(1.0) == doctest::Approx(e.curvature(1.0)));
  ConvexCurve arc = ConvexCurve::circle(1.0, -1.0, 1.0);
  CHECK_FALSE(arc.canonical(2.0).has_value());
  CHECK(*c.canonical(kTwoPi + 0.5) == doctest::Approx(0.5));
}

TEST_CASE("chord geometry on the circle") {
  ConvexCurve c = ConvexCurve::circle(1.0, 0.0, kTwoPi);
  // Tangent at u parallel to the chord u'u'' means u bisects the arc.
  CHECK(midpoint_param(c, 0.2, 1.0) == doctest::Approx(0.6));
  auto pp = collision_param(c, 0.6, 0.2);
  REQUIRE(pp.has_value());
  CHECK(*pp == doctest::Approx(1.0));
  CHECK(curve_M(c, 0.4, 0.4) == doctest::Approx(1.0));
}

TEST_CASE("Jacobians agree with finite differences") {
  ConvexCurve e = ConvexCurve::ellipse(2.0, 1.0, 0.0, kTwoPi);
  for (auto [su, sp] : {std::pair{0.3, 0.9}, std::pair{1.7, 2.2}, std::pair{4.0, 3.1}}) {
    CurveJacobians a = curve_jacobians(e, su, sp), b = curve_jacobians_fd(e, su, sp);
    CHECK(a.J == doctest::Approx(b.J).epsilon(1e-5));
    CHECK(a.Jt == doctest::Approx(b.Jt).epsilon(1e-5));
  }
}

TEST_CASE("curve invariants") {
  CurveInvariants circ = curve_invariants(ConvexCurve::circle(1.0, 0.0, kTwoPi));
  CHECK(circ.min_curvature == doctest::Approx(1.0));
  CHECK(circ.max_curvature == doctest::Approx(1.0));
  CurveInvariants ell = curve_invariants(ConvexCurve::ellipse(2.0, 1.0, 0.0, kTwoPi));
  CHECK(ell.Q_bounded);
  CHECK(ell.Q == doctest::Approx(8.0).epsilon(1e-2));
}

TEST_CASE("curve bump systems and Moyal identity") {
  ConvexCurve c = ConvexCurve::ellipse(2.0, 1.0, 0.0, kTwoPi);
  CurveSystem sys = make_curve_bumps(c, {0.5, 2.0, 4.0}, 0.6, {Vec3::Zero(), Vec3(1.0, 0.0, 0.0), Vec3(0.0, 0.5, 0.0)});
  REQUIRE(sys.size() == 3);
  CHECK((sys.gram - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);

  ConvexCurve arc = ConvexCurve::ellipse(2.0, 1.0, -1.0, 1.0);
  CurveSystem bumps = make_curve_bumps(arc, {-0.5, 0.4}, 0.4, {Vec3::Zero(), Vec3(1.0, 0.0, 0.0)});
  REQUIRE(bumps.size() == 2);
  CurveMoyalReport self = curve_moyal(arc, bumps.fns[0], bumps.fns[0], bumps.fns[0], bumps.fns[0]);
  CHECK(self.discrepancy < 1e-6);
  CHECK(self.formula.real() >= 1.0);
  CurveMoyalReport cross = curve_moyal(arc, bumps.fns[0], bumps.fns[1], bumps.fns[0], bumps.fns[1]);
  CHECK(std::abs(cross.phase_space - cross.formula) < 1e-6 * std::abs(cross.formula));

  // Closed curves: every chord has two parallel tangents, so phase space counts each pair twice.
  CurveMoyalReport closed = curve_moyal(c, sys.fns[0], sys.fns[0], sys.fns[0], sys.fns[0]);
  CHECK(closed.phase_space.real() == doctest::Approx(2.0 * closed.formula.real()).epsilon(5e-2));
}

TEST_CASE("scaled curves") {
  ConvexCurve c = ConvexCurve::circle(1.0, 0.0, kTwoPi).scaled(3.0);
  CHECK(c.length() == doctest::Approx(6.0 * kPi).epsilon(1e-12));
  CHECK(c.curvature(1.0) == doctest::Approx(1.0 / 3.0));
}
