#include "extlab/discretization.hpp"

#include <doctest.h>

using namespace extlab;

TEST_CASE("sphere rule integrates polynomials exactly") {
  GridPtr g = build_sphere_grid(3, 12, 24);
  double area = 0.0, z2 = 0.0, x4 = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    area += g->qweights[k];
    z2 += g->qweights[k] * std::pow(g->nodes[k].z(), 2);
    x4 += g->qweights[k] * std::pow(g->nodes[k].x(), 4);
  }
  CHECK(area == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(z2 == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
  CHECK(x4 == doctest::Approx(4.0 * kPi / 5.0).epsilon(1e-12));
}

TEST_CASE("circle rule and antipodes") {
  GridPtr c = build_sphere_grid(2, 64);
  double len = 0.0;
  for (double q : c->qweights) len += q;
  CHECK(len == doctest::Approx(kTwoPi));
  GridPtr s = build_sphere_grid(3, 8, 16);
  for (int k = 0; k < static_cast<int>(s->size()); ++k) {
    int a = s->antipode(k);
    REQUIRE(a >= 0);
    CHECK((s->nodes[static_cast<std::size_t>(a)] + s->nodes[static_cast<std::size_t>(k)]).norm() < 1e-12);
  }
}

TEST_CASE("cap measure converges to the spherical cap area") {
  double r = 0.7, exact = kTwoPi * (1.0 - std::cos(r));
  double e16 = std::abs(cap_set(build_sphere_grid(3, 16, 32), Vec3::UnitZ(), r).measure - exact);
  double e64 = std::abs(cap_set(build_sphere_grid(3, 64, 128), Vec3::UnitZ(), r).measure - exact);
  CHECK(e64 < e16);
  CHECK(e64 / exact < 0.05);
}

TEST_CASE("midpoint set of a cap contains the cap and stays near it") {
  GridPtr g = build_sphere_grid(3, 24, 48);
  DirectionSet K = cap_set(g, Vec3(0.1, 0.2, 1.0).normalized(), 0.5);
  DirectionSet M = midpoint_set(K);
  CHECK(is_subset(K, M));
  CHECK(M.measure < 2.5 * K.measure);
}

TEST_CASE("midpoint set of two antipodal-free caps contains the middle direction") {
  GridPtr g = build_sphere_grid(3, 24, 48);
  Vec3 a(std::sin(0.8), 0.0, std::cos(0.8)), b(-std::sin(0.8), 0.0, std::cos(0.8));
  DirectionSet K = cap_union(g, {a, b}, {0.15, 0.15});
  DirectionSet M = midpoint_set(K);
  CHECK(M.contains(g->nearest(Vec3::UnitZ())));
}

TEST_CASE("set algebra") {
  GridPtr g = build_sphere_grid(3, 8, 16);
  DirectionSet f = full_set(g), e = empty_set(g);
  CHECK(f.measure == doctest::Approx(4.0 * kPi));
  CHECK(e.measure == 0.0);
  CHECK(is_subset(e, f));
  CHECK_FALSE(is_subset(f, e));
  CHECK(set_union(e, f).measure == doctest::Approx(f.measure));
  DirectionSet back = DirectionSet::from_json(f.to_json(), g);
  CHECK(back.mask == f.mask);
}

TEST_CASE("Cantor arcs lose a third of their measure per generation") {
  GridPtr c = build_sphere_grid(2, 4096);
  double m0 = cantor_direction_set(c, 0, 0.0, 0.5 * kPi).measure;
  double m2 = cantor_direction_set(c, 2, 0.0, 0.5 * kPi).measure;
  CHECK(m2 / m0 == doctest::Approx(4.0 / 9.0).epsilon(0.02));
  CHECK_THROWS_AS(cantor_direction_set(build_sphere_grid(2, 32), 5, 0.0, 0.5 * kPi), ResolutionError);
}

TEST_CASE("antipodal separation on the circle") {
  GridPtr c = build_sphere_grid(2, 128);
  DirectionSet quarter = cap_set(c, Vec3::UnitX(), 0.5);
  CHECK_NOTHROW(require_antipodal_separation(quarter));
  DirectionSet wide = cap_set(c, Vec3::UnitX(), 1.8);
  CHECK_THROWS_AS(require_antipodal_separation(wide), DomainError);
}

TEST_CASE("box grid coordinates") {
  BoxGrid b{1, 8.0, 128};
  CHECK(b.step() == doctest::Approx(1.0 / 16.0));
  CHECK(b.coord(0) == doctest::Approx(-4.0));
  CHECK(b.coord(64) == doctest::Approx(0.0));
  TangentFrame f = tangent_frame(Vec3(0.3, -0.4, 0.5).normalized(), 3);
  CHECK(std::abs(f.e1.dot(f.e2)) < 1e-14);
  CHECK(std::abs(f.e1.dot(Vec3(0.3, -0.4, 0.5).normalized())) < 1e-14);
}
