#include "extlab/transforms.hpp"

#include <doctest.h>

using namespace extlab;

namespace {

Weight gauss3(double c, const Vec3& a, double s) {
  GaussianMixture m;
  m.dim = 3;
  m.terms.push_back({c, a, s});
  return Weight(m, c >= 0.0);
}

}  // namespace

TEST_CASE("Fourier transform of a Gaussian term") {
  Vec3 a(0.3, -0.2, 0.5);
  double c = 1.7, s = 0.8;
  Weight w = gauss3(c, a, s);
  Vec3 xi(0.4, 0.1, -0.7);
  cd expect = c * std::pow(s, 3) * std::exp(-kPi * s * s * xi.squaredNorm()) * fourier_kernel(a.dot(xi));
  CHECK(std::abs(fourier_weight(w, xi) - expect) < 1e-14);
  CHECK(w.total_mass() == doctest::Approx(c * std::pow(s, 3)));
}

TEST_CASE("X-ray and Radon transforms of a Gaussian term") {
  Vec3 a(0.3, -0.2, 0.5);
  double c = 1.3, s = 0.9;
  Weight w = gauss3(c, a, s);
  Vec3 om = Vec3(1.0, 2.0, -0.5).normalized();
  Vec3 aperp = a - a.dot(om) * om;
  TangentFrame f = tangent_frame(om, 3);
  Vec3 v = 0.3 * f.e1 - 0.6 * f.e2;
  CHECK(xray(w, om, v) == doctest::Approx(c * s * std::exp(-kPi * (v - aperp).squaredNorm() / (s * s))));
  CHECK(xray_plane_l2sq(w, om) == doctest::Approx(c * c * std::pow(s, 4) / 2.0));
  CHECK(radon0(w, om) == doctest::Approx(c * s * s * std::exp(-kPi * std::pow(a.dot(om), 2) / (s * s))));
  PhaseGrid P{3, 5.0, 64};
  double quad = radon0_quadrature([&](const Vec3& x) { return w.eval(x); }, om, 3, P);
  CHECK(quad == doctest::Approx(radon0(w, om)).epsilon(1e-6));
}

TEST_CASE("X-ray norm over the full sphere from the plane closed form") {
  Weight w = gauss3(1.0, Vec3::Zero(), 1.0);
  GridPtr g = build_sphere_grid(3, 8, 16);
  CHECK(xray_l2sq(w, full_set(g)) == doctest::Approx(4.0 * kPi / 2.0));
  PhaseGrid P{3, 4.0, 48};
  XrayNormReport r = xray_norm(w, full_set(g), P, 2.0);
  REQUIRE(r.closed_form.has_value());
  CHECK(r.value == doctest::Approx(*r.closed_form).epsilon(1e-6));
}

TEST_CASE("extension of the surface measure") {
  GridPtr g = build_sphere_grid(3, 64, 128);
  SurfaceFunction one = SurfaceFunction::from_callable(g, [](const Vec3&) -> cd { return 1.0; });
  for (double r : {0.1, 0.75, 3.3, 9.0}) {
    Vec3 x = r * Vec3(0.2, 0.9, -0.4).normalized();
    CHECK(std::abs(extension_at(one, x) - 2.0 * std::sin(kTwoPi * r) / r) < 1e-9);
  }
  std::vector<double> ones(g->size(), 1.0);
  CHECK(x0_adjoint(*g, ones, Vec3(0.0, 2.0, 0.0)) == doctest::Approx(2.0 / 4.0));
}

TEST_CASE("line transform of space-time mixtures") {
  GaussianMixture m;
  m.dim = 2;
  m.terms.push_back({0.8, vec2(0.5, -1.0), 1.3});
  m.terms.push_back({-0.4, vec2(-1.0, 2.0), 0.9});
  Weight w(m);
  auto f = [&](double x, double t) { return w.eval(vec2(x, t)); };
  for (auto [x, v] : {std::pair{0.3, 0.7}, std::pair{-1.2, -2.5}, std::pair{2.0, 0.0}})
    CHECK(rho_adjoint(w, x, v) == doctest::Approx(rho_adjoint_quadrature(f, x, v)).epsilon(1e-8));
}

TEST_CASE("Schrodinger evolution of a Gaussian") {
  BoxGrid freq{1, 8.0, 256};
  BoxGrid space{1, 32.0, 256};
  std::vector<cd> uhat(freq.size());
  for (int k = 0; k < freq.points; ++k) uhat[static_cast<std::size_t>(k)] = std::exp(-kPi * freq.coord(k) * freq.coord(k));
  double t = 1.5;
  SchrodingerField f = schrodinger_evolve(freq, uhat, t, space);
  SchrodingerPropagator prop(freq, space);
  SchrodingerField g = prop.evolve(uhat, t);
  for (std::size_t i = 0; i < f.x.size(); i += 17) {
    double x = f.x[i];
    double expect = std::exp(-2.0 * kPi * x * x / (1.0 + t * t)) / std::sqrt(1.0 + t * t);
    CHECK(std::norm(f.u[i]) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(std::abs(f.u[i] - g.u[i]) < 1e-12);
  }
}

TEST_CASE("fractional Laplacian norms") {
  Weight w = gauss3(1.0, Vec3(0.2, 0.0, 0.1), 0.9);
  double s = 0.9;
  CHECK(frac_laplacian_l2sq(w, 0.0) == doctest::Approx(std::pow(s, 3) / std::pow(2.0, 1.5)).epsilon(1e-8));
  FracLaplacianReport r = frac_laplacian_norm(w, -0.25, 2.0);
  CHECK(r.value * r.value == doctest::Approx(frac_laplacian_l2sq(w, -0.25)).epsilon(1e-2));
  CHECK_THROWS_AS(frac_laplacian_norm(w, 0.5, 2.0), DomainError);
}

TEST_CASE("autocorrelation of a Gaussian term") {
  double c = 1.2, s = 0.7;
  Weight w = gauss3(c, Vec3(0.4, 0.1, -0.3), s);
  Weight ac = autocorrelate(w);
  for (const Vec3& x : {Vec3(0.0, 0.0, 0.0), Vec3(0.3, -0.5, 0.2)}) {
    double expect = c * c * std::pow(s, 3) / std::pow(2.0, 1.5) * std::exp(-kPi * x.squaredNorm() / (2.0 * s * s));
    CHECK(ac.eval(x) == doctest::Approx(expect));
  }
}

TEST_CASE("surface functions") {
  GridPtr g = build_sphere_grid(3, 10, 20);
  SphereFn f = [](const Vec3& w) -> cd { return cd(w.x(), w.z()); };
  SurfaceFunction s = SurfaceFunction::from_callable(g, f);
  CHECK(s.norm() * s.norm() == doctest::Approx(8.0 * kPi / 3.0));
  SurfaceFunction t = s.tilde();
  for (std::size_t k = 0; k < g->size(); k += 7) CHECK(std::abs(t.values[k] - std::conj(f(-g->nodes[k]))) < 1e-14);
}

TEST_CASE("weight serialisation and sign checks") {
  GaussianMixture m;
  m.dim = 3;
  m.terms.push_back({0.5, Vec3(1.0, 0.0, 0.0), 0.4});
  Weight w(m, true);
  Weight back = Weight::from_json(w.to_json());
  CHECK(back.eval(Vec3(0.9, 0.1, 0.0)) == doctest::Approx(w.eval(Vec3(0.9, 0.1, 0.0))));
  m.terms.push_back({-1.0, Vec3::Zero(), 0.4});
  CHECK_THROWS(Weight(m, true));
}
