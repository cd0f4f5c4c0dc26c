#include "extlab/systems.hpp"

#include <doctest.h>

using namespace extlab;

TEST_CASE("real harmonics are orthonormal on an exact rule") {
  GridPtr g = build_sphere_grid(3, 10, 20);
  CHECK(real_harmonic(0, 0, Vec3::UnitX()) == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)));
  OrthonormalSystem sys = make_harmonics(g, {0, 1, 2, 3});
  CHECK(sys.size() == 16);
  CHECK(sys.gram_deviation() < 1e-12);
  CHECK(sys.support.measure == doctest::Approx(4.0 * kPi));
  CHECK_THROWS_AS(make_harmonics(build_sphere_grid(3, 4, 8), {6}), ResolutionError);
}

TEST_CASE("wavepackets on disjoint caps") {
  GridPtr g = build_sphere_grid(3, 24, 48);
  OrthonormalSystem sys = make_wavepackets(g, {Vec3::UnitZ(), -Vec3::UnitZ()}, {0.4, 0.4},
                                           {Vec3(1.0, 0.0, 0.0), Vec3(0.0, 2.0, 0.0)});
  CHECK(sys.gram_deviation() < 1e-12);
  CHECK_THROWS_AS(make_wavepackets(g, {Vec3::UnitZ(), Vec3(0.1, 0.0, 1.0)}, {0.4, 0.4}, {Vec3::Zero(), Vec3::Zero()}),
                  DomainError);
}

TEST_CASE("Gram-Schmidt drops dependent inputs") {
  GridPtr g = build_sphere_grid(3, 12, 24);
  SphereFn a = cap_bump(Vec3::UnitX(), 0.8);
  SphereFn b = [a](const Vec3& w) { return 2.0 * a(w); };
  SphereFn c = cap_bump(Vec3::UnitY(), 0.8, Vec3(0.0, 0.0, 1.0));
  OrthonormalSystem sys = orthonormalize(g, {a, b, c});
  CHECK(sys.size() == 2);
  CHECK(sys.dropped == std::vector<int>{1});
  CHECK(check_almost_orthonormal(sys) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("DFT systems on the torus are complete on K") {
  std::vector<int> K{1, 4, 5, 9, 12};
  TorusSystem s = make_dft_system(16, K, 77);
  CHECK(s.gram_deviation() < 1e-12);
  for (int v = 0; v < 16; ++v) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < s.hat.rows(); ++j) total += std::norm(s.hat(j, v));
    CHECK(total == doctest::Approx(static_cast<double>(K.size())));
  }
  CHECK_THROWS_AS(make_dft_system(8, {9}), DomainError);
}

TEST_CASE("cap bumps vanish outside their cap") {
  SphereFn f = cap_bump(Vec3::UnitZ(), 0.5);
  CHECK(std::abs(f(Vec3::UnitZ())) == doctest::Approx(1.0));
  CHECK(std::abs(f(Vec3(std::sin(0.6), 0.0, std::cos(0.6)))) == 0.0);
}
