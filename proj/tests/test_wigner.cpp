#include "extlab/wigner.hpp"

#include <doctest.h>

#include <random>

using namespace extlab;

namespace {

std::vector<cd> gaussian_samples(const BoxGrid& g, double a, double xi) {
  std::vector<cd> u(g.size());
  for (int i = 0; i < g.points; ++i) {
    double x = g.coord(i);
    u[static_cast<std::size_t>(i)] = std::pow(2.0, 0.25) * std::exp(-kPi * (x - a) * (x - a)) * std::conj(fourier_kernel(xi * x));
  }
  return u;
}

}  // namespace

TEST_CASE("Wigner function of the standard Gaussian") {
  BoxGrid g{1, 8.0, 128};
  ClassicalWigner W = classical_wigner(g, gaussian_samples(g, 0.0, 0.0));
  CHECK(W.max_imag() < 1e-12);
  for (int ix : {W.nx / 2, W.nx / 2 + 5, W.nx / 2 - 9})
    for (int iv : {W.nv / 2, W.nv / 2 + 3, W.nv / 2 - 11}) {
      double x = W.x(ix), v = W.v(iv);
      CHECK(W.at(ix, iv).real() == doctest::Approx(2.0 * std::exp(-kTwoPi * (x * x + v * v))).epsilon(1e-9));
    }
}

TEST_CASE("classical Moyal identity") {
  BoxGrid g{1, 8.0, 128};
  auto f1 = gaussian_samples(g, 0.5, 1.0), f2 = gaussian_samples(g, -0.3, 0.2);
  auto g1 = gaussian_samples(g, 0.1, -0.7), g2 = gaussian_samples(g, 0.0, 0.4);
  MoyalReport m = moyal_classical(g, f1, f2, g1, g2);
  CHECK(m.discrepancy < 1e-10);
  MoyalReport self = moyal_classical(g, f1, f1, f1, f1);
  CHECK(self.phase_space.real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("velocity average transports the density") {
  BoxGrid freq{1, 4.0, 128};
  BoxGrid space{1, 32.0, 128};
  std::vector<cd> uhat(freq.size());
  for (int k = 0; k < freq.points; ++k) {
    double xi = freq.coord(k);
    uhat[static_cast<std::size_t>(k)] = std::exp(-kPi * (xi - 0.3) * (xi - 0.3) * 4.0);
  }
  auto u0 = schrodinger_evolve(freq, uhat, 0.0, space).u;
  ClassicalWigner W = classical_wigner(space, u0);
  double t = 2.0;
  auto rho = velocity_average(W, t);
  BoxGrid half{1, space.side, 2 * space.points};
  auto ut = schrodinger_evolve(freq, uhat, t, half).u;
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    worst = std::max(worst, std::abs(rho[i] - std::norm(ut[i])));
    peak = std::max(peak, std::norm(ut[i]));
  }
  CHECK(worst < 1e-6 * peak);
}

TEST_CASE("spherical Moyal: hemisphere case and random quadruples") {
  GridPtr g = build_sphere_grid(3, 16, 32);
  SphereFn cap = cap_bump(Vec3::UnitZ(), 1.0);
  double n2 = std::pow(SurfaceFunction::from_callable(g, cap).norm(), 2);
  SphericalMoyalReport h = moyal_spherical(cap, cap, cap, cap, g);
  CHECK(h.phase_space.real() / (n2 * n2) == doctest::Approx(0.5).epsilon(1e-2));
  std::mt19937_64 rng(5);
  SphereFn f[4];
  for (auto& fn : f) fn = random_smooth_function(rng, 3, 2, 2.0, 4.0);
  SphericalMoyalReport r = moyal_spherical(f[0], f[1], f[2], f[3], g);
  CHECK(r.discrepancy < 1e-3 * std::abs(r.formula));
}

TEST_CASE("adjoint X-ray transform of the spherical Wigner function") {
  SphereFn cap = cap_bump(Vec3(0.2, 0.1, 1.0), 0.9, Vec3(0.3, 0.0, -0.2));
  SurfaceFunction fine = SurfaceFunction::from_callable(build_sphere_grid(3, 48, 96), cap);
  GridPtr outer = build_sphere_grid(3, 24, 48);
  Vec3 x(0.4, -0.3, 0.6);
  CHECK(adjoint_xray_wigner(cap, *outer, x) == doctest::Approx(std::norm(extension_at(fine, x))).epsilon(2e-3));
}

TEST_CASE("kernel L of a harmonic system") {
  OrthonormalSystem sys = make_harmonics(build_sphere_grid(3, 12, 24), {0, 1});
  KernelLReport L = kernel_L(sys);
  CHECK(L.L.rows() == static_cast<Eigen::Index>(sys.size()));
  CHECK(std::isfinite(L.schur_bound));
  CHECK(L.reduction_gap < 1e-8);
}
