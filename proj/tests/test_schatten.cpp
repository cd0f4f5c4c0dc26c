#include "extlab/schatten.hpp"

#include <doctest.h>

using namespace extlab;

namespace {

Weight blob(int dim, double c, const Vec3& a, double s) {
  GaussianMixture m;
  m.dim = dim;
  m.terms.push_back({c, a, s});
  return Weight(m, c >= 0.0);
}

}  // namespace

TEST_CASE("sphere kernel: Hilbert-Schmidt norm and trace") {
  GridPtr g = build_sphere_grid(3, 10, 20);
  DirectionSet K = cap_set(g, Vec3::UnitZ(), 0.9);
  Weight w = blob(3, 1.4, Vec3(0.2, -0.1, 0.3), 0.7);
  KernelMatrix A = assemble_sphere_kernel(w, K);
  CHECK(A.hermitian);
  CHECK(A.dim() == static_cast<Eigen::Index>(A.nodes.size()));
  double hs = schatten_norm(A, 2.0);
  CHECK(hs * hs == doctest::Approx(c2_double_sum_sphere(w, K)).epsilon(1e-10));
  double s3 = std::pow(0.7, 3);
  CHECK(schatten_norm(A, 1.0) == doctest::Approx(1.4 * s3 * K.measure).epsilon(1e-10));
  Eigen::VectorXd eig = spectrum(A);
  CHECK(eig.minCoeff() > -1e-10);
  CHECK(schatten_norm_from_spectrum(eig, 4.0) <= hs + 1e-12);
}

TEST_CASE("kernel quadratic form matches the weighted extension energy") {
  GridPtr g = build_sphere_grid(3, 10, 20);
  DirectionSet K = full_set(g);
  Weight w = blob(3, 1.0, Vec3::Zero(), 1.0);
  KernelMatrix A = assemble_sphere_kernel(w, K);
  SurfaceFunction one = SurfaceFunction::from_callable(g, [](const Vec3&) { return cd(1.0); });
  // int |E1|^2 w for w = e^{-pi|x|^2}, computed by radial quadrature of 4 sin^2(2 pi r)/r^2.
  double expect = 0.0;
  int n = 4000;
  double rmax = 6.0, h = rmax / n;
  for (int i = 0; i < n; ++i) {
    double r = (i + 0.5) * h;
    double e = 4.0 * kPi * std::sin(kTwoPi * r) / (kTwoPi * r);
    expect += e * e * std::exp(-kPi * r * r) * 4.0 * kPi * r * r * h;
  }
  CHECK(kernel_quadratic_form(A, one) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("paraboloid kernel") {
  std::vector<double> freqs;
  for (int k = 0; k < 24; ++k) freqs.push_back(-1.5 + k * 0.125);
  Weight w = blob(2, 1.0, Vec3(0.1, 0.0, 0.0), 0.8);
  KernelMatrix A = assemble_paraboloid_kernel(w, freqs, 0.125);
  double hs = schatten_norm(A, 2.0);
  CHECK(hs * hs == doctest::Approx(c2_double_sum_paraboloid(w, freqs, 0.125)).epsilon(1e-10));
  CHECK(schatten_norm(A, 1.0) == doctest::Approx(0.64 * 24 * 0.125).epsilon(1e-10));
}

TEST_CASE("Schatten norms of a known spectrum") {
  Eigen::VectorXd eig(3);
  eig << 3.0, -4.0, 0.0;
  CHECK(schatten_norm_from_spectrum(eig, 2.0) == doctest::Approx(5.0));
  CHECK(schatten_norm_from_spectrum(eig, 1.0) == doctest::Approx(7.0));
  CHECK(schatten_norm_from_spectrum(eig, std::numeric_limits<double>::infinity()) == doctest::Approx(4.0));
}

TEST_CASE("trace pairing of a density operator") {
  GridPtr g = build_sphere_grid(3, 12, 24);
  OrthonormalSystem sys = make_harmonics(g, {0, 1});
  DensityOperator gamma{&sys, {1.0, 0.5, 0.25, 0.125}};
  CHECK(gamma.l2() == doctest::Approx(std::sqrt(1.0 + 0.25 + 0.0625 + 0.015625)));
  TracePairingReport r = trace_pairing(blob(3, 1.0, Vec3(0.1, 0.2, 0.0), 0.9), gamma);
  CHECK(r.discrepancy < 1e-3 * std::abs(r.kernel));
}
