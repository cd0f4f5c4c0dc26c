#pragma once

#include "extlab/systems.hpp"

namespace extlab {

// Phase-space samples of a d=1 Wigner distribution on a product (x, v) grid.
struct ClassicalWigner {
  double x0 = 0.0, dx = 1.0;
  int nx = 0;
  double v0 = 0.0, dv = 1.0;
  int nv = 0;
  std::vector<cd> values;  // index ix * nv + iv

  cd at(int ix, int iv) const { return values[static_cast<std::size_t>(ix) * nv + iv]; }
  double x(int ix) const { return x0 + ix * dx; }
  double v(int iv) const { return v0 + iv * dv; }
  double cell() const { return dx * dv; }
  double max_imag() const;
};

// Band-limited interpolation onto the half-step grid (length 2N, same origin).
std::vector<cd> upsample2(const std::vector<cd>& u);

// W(f,g)(x,v) = int f(x+y/2) conj(g(x-y/2)) e^{-2 pi i v y} dy for samples on a d=1 grid.
ClassicalWigner classical_wigner(const BoxGrid& grid, const std::vector<cd>& f, const std::vector<cd>& g);
ClassicalWigner classical_wigner(const BoxGrid& grid, const std::vector<cd>& u);

cd phase_inner(const ClassicalWigner& a, const ClassicalWigner& b);

struct MoyalReport {
  cd phase_space = 0.0;
  cd product = 0.0;
  double discrepancy = 0.0;
};

MoyalReport moyal_classical(const BoxGrid& grid, const std::vector<cd>& f1, const std::vector<cd>& f2,
                            const std::vector<cd>& g1, const std::vector<cd>& g2);

// rho W (x, t) = int W(x + t v, v) dv on the Wigner x grid (spectral shift in x).
std::vector<double> velocity_average(const ClassicalWigner& W, double t);

// Discrete transform of samples: uhat(xi_k) = h sum_i u(x_i) e^{-2 pi i x_i xi_k} on a target grid.
std::vector<cd> fourier_samples(const BoxGrid& grid, const std::vector<cd>& u, const BoxGrid& target);

// Polar product rule on the open hemisphere around a direction.
struct HemisphereRule {
  int n_c = 24;    // Gauss-Legendre in omega.omega' (n=3) or in angle (n=2)
  int n_phi = 48;  // uniform azimuth (n=3)
};

struct LocalNodes {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  std::vector<double> cosines;  // omega . omega' > 0
};

LocalNodes hemisphere_nodes(const Vec3& omega, int dim, const HemisphereRule& rule);

// W_S(g1,g2)(omega, v) for each v (v perpendicular to omega), integrating both hemispheres.
std::vector<cd> spherical_wigner(const SphereFn& g1, const SphereFn& g2, int dim, const Vec3& omega,
                                 const std::vector<Vec3>& vs, const HemisphereRule& rule = {});

// (X* W(g,g))(x) = int W(g,g)(omega, x - (x.omega) omega) d sigma(omega) over the grid.
double adjoint_xray_wigner(const SphereFn& g, const SphereGrid& outer, const Vec3& x,
                           const HemisphereRule& rule = {});

struct SphericalMoyalReport {
  cd phase_space = 0.0;  // Plancherel in v, quadrature in (omega, omega')
  cd formula = 0.0;      // double-integral formula
  double discrepancy = 0.0;
};

SphericalMoyalReport moyal_spherical(const SphereFn& f1, const SphereFn& f2, const SphereFn& g1,
                                     const SphereFn& g2, GridPtr grid, const HemisphereRule& rule = {});

// The double-integral side of the identity for functions sampled on an antipodally symmetric grid.
cd moyal_formula(const SurfaceFunction& f1, const SurfaceFunction& f2, const SurfaceFunction& g1,
                 const SurfaceFunction& g2);

struct KernelLReport {
  Eigen::MatrixXd L;
  Eigen::MatrixXd reduced;  // n=3 inner-product form
  double schur_bound = 0.0;
  double reduction_gap = 0.0;
};

KernelLReport kernel_L(const OrthonormalSystem& sys);

}  // namespace extlab
