#pragma once

#include "extlab/transforms.hpp"

#include <random>

namespace extlab {

// Real orthonormal spherical harmonic on S^2 (m < 0: sine branch).
double real_harmonic(int l, int m, const Vec3& omega);

struct OrthonormalSystem {
  GridPtr grid;
  std::vector<SurfaceFunction> members;
  // Off-grid evaluators in the same order; empty when only node values exist.
  std::vector<SphereFn> callables;
  Eigen::MatrixXcd gram;
  double tol = 1e-8;
  DirectionSet support;
  nlohmann::json descriptor = nlohmann::json::object();
  std::vector<int> dropped;  // indices of rejected raw inputs

  std::size_t size() const { return members.size(); }
  double gram_deviation() const;
  bool has_callables() const { return callables.size() == members.size() && !members.empty(); }
  void certify();  // recompute gram/support, throw when deviation exceeds tol
};

// Modulated normalized cap indicators; the caps are snapped to grid nodes.
OrthonormalSystem make_wavepackets(GridPtr grid, const std::vector<Vec3>& centers,
                                   const std::vector<double>& radii,
                                   const std::vector<Vec3>& modulations);

OrthonormalSystem make_harmonics(GridPtr grid, const std::vector<int>& degrees);

// Gram-Schmidt against the quadrature inner product (two passes); rank-deficient inputs are dropped.
OrthonormalSystem orthonormalize(GridPtr grid, const std::vector<SphereFn>& raw, double pivot = 1e-8);
OrthonormalSystem orthonormalize(GridPtr grid, const std::vector<std::vector<cd>>& raw, double pivot = 1e-8);

// sup_k sum_j |G_jk|^2.
double check_almost_orthonormal(const Eigen::MatrixXcd& gram);
double check_almost_orthonormal(const OrthonormalSystem& sys);

// Functions on Z_N supported on a frequency subset K, with their discrete transforms.
struct TorusSystem {
  int N = 0;
  std::vector<int> K;
  Eigen::MatrixXcd coeffs;  // row j: g_j(k) for k in K
  Eigen::MatrixXcd hat;     // row j: ghat_j(v) = sum_k g_j(k) e^{-2 pi i k v / N}, v = 0..N-1

  std::size_t size() const { return static_cast<std::size_t>(coeffs.rows()); }
  double gram_deviation() const;
};

// Exponentials on K (complete on l^2(K)); optionally mixed by a seeded random unitary.
TorusSystem make_dft_system(int N, const std::vector<int>& K, std::uint64_t mix_seed = 0);

struct DensityOperator {
  const OrthonormalSystem* system = nullptr;
  std::vector<double> lambda;
  double l2() const;
};

// Random smooth amplitudes: sums of modulated spherical Gaussian bumps.
SphereFn random_smooth_function(std::mt19937_64& rng, int dim, int bumps = 3, double kappa_min = 2.0,
                                double kappa_max = 8.0);

// Smooth bump supported in the cap of the given angular radius.
SphereFn cap_bump(const Vec3& center, double radius, const Vec3& modulation = Vec3::Zero());

}  // namespace extlab
