#pragma once

#include "extlab/systems.hpp"

namespace extlab {

struct KernelMatrix {
  Eigen::MatrixXcd A;
  std::vector<int> nodes;       // sphere node indices (sphere kernels)
  std::vector<double> freqs;    // frequency nodes (paraboloid kernels)
  bool hermitian = true;

  Eigen::Index dim() const { return A.rows(); }
};

// A_jk = sqrt(q_j q_k) w^(omega_k - omega_j) restricted to K; h*Ah = int |E(g)|^2 w with h = sqrt(q) g.
KernelMatrix assemble_sphere_kernel(const Weight& w, const DirectionSet& K);

// A_jk = cell * w^(xi_j - xi_k, (xi_j^2 - xi_k^2)/2) for a (x,t) mixture; convention of schrodinger_evolve.
KernelMatrix assemble_paraboloid_kernel(const Weight& w, const std::vector<double>& freqs, double cell);

Eigen::VectorXd spectrum(const KernelMatrix& A);
// p = infinity gives the spectral radius.
double schatten_norm(const KernelMatrix& A, double p);
double schatten_norm_from_spectrum(const Eigen::VectorXd& eig, double p);

// sum over K x K of q q |w^(theta - omega)|^2, without forming the matrix.
double c2_double_sum_sphere(const Weight& w, const DirectionSet& K);
// sum over freqs^2 of cell^2 |w^(xi - eta, (xi^2 - eta^2)/2)|^2.
double c2_double_sum_paraboloid(const Weight& w, const std::vector<double>& freqs, double cell);

// h* A h for node values g on the full grid.
double kernel_quadratic_form(const KernelMatrix& A, const SurfaceFunction& g);

struct TracePairingReport {
  double spatial = 0.0;  // Gauss-Hermite spatial quadrature of sum lambda_j |E g_j|^2 w
  double kernel = 0.0;   // Tr(A gamma)
  double discrepancy = 0.0;
};

// Mixtures only; the spatial route uses a per-term tensor Gauss-Hermite rule.
TracePairingReport trace_pairing(const Weight& w, const DensityOperator& gamma, int hermite_nodes = 24);

}  // namespace extlab
