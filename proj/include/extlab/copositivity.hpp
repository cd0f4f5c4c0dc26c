#pragma once

#include "extlab/schatten.hpp"

#include <json.hpp>

namespace extlab {

// Nonnegative weights w = sum_b c_b exp(-pi |x - a_b|^2 / width^2), c >= 0.
struct BumpLattice {
  int dim = 2;
  std::vector<Vec3> centers;
  double width = 0.5;

  std::size_t size() const { return centers.size(); }
  Weight weight(const Eigen::VectorXd& c) const;
};

// per_axis^dim bumps on a centred cubic lattice.
BumpLattice make_bump_lattice(int dim, int per_axis, double spacing, double width);

// Gram matrices of the lattice: the X-ray form over E and the C^2 form over K.
Eigen::MatrixXd xray_form_matrix(const BumpLattice& L, const DirectionSet& E);
Eigen::MatrixXd c2_form_matrix(const BumpLattice& L, const DirectionSet& K);

struct QuadraticGapReport {
  double xray_sq = 0.0;   // ||Xw||^2 over K
  double c2_sq = 0.0;     // ||E_K^* w E_K||_{C^2}^2
  double gap = 0.0;       // xray_sq - c * c2_sq
  double kernel_form = 0.0;
  double kernel_discrepancy = 0.0;
};

// Operator form against the kernel form int (X0^* 1_K - c |E 1_K|^2) (w * w~).
QuadraticGapReport quadratic_gap(const DirectionSet& K, double c, const Weight& w, bool kernel_check = true,
                                 int hermite_nodes = 20);

struct DruryReport {
  double direct = 0.0;         // ||Xw||_4^4 over S^1 x R
  double pair = 0.0;           // twice the pair-kernel integral
  double excluded = 0.0;       // share contributed by the near-diagonal region
  double discrepancy = 0.0;
};

// n = 2 mixtures; pairs on a points^2 grid of the given side, near-diagonal handled in polar form.
DruryReport drury_identity(const Weight& w, int points = 64, double side = 8.0, int directions = 512);

struct QuarticTraceReport {
  double eigen = 0.0;       // sum lambda^4 on the grid nodes of the arc
  double quadrature = 0.0;  // 4-fold Gauss-Legendre integral over the same arc
  double discrepancy = 0.0;
  int nodes = 0;
};

// K is the arc made of grid nodes first..first+count-1 of an S^1 grid.
QuarticTraceReport quartic_trace(const Weight& w, GridPtr circle, int first, int count, int gl_nodes = 40);

struct QuarticGapReport {
  double xray4 = 0.0;  // ||Xw||_4^4 over K
  double trace4 = 0.0; // Tr |A|^4
  double gap = 0.0;
};

QuarticGapReport quartic_gap(const DirectionSet& K, double c, const Weight& w, int v_points = 256,
                             double v_radius = 6.0);

struct ConeSearchBudget {
  int starts = 4;
  int iterations = 200;
  int probes = 10000;
};

struct ConeSearchReport {
  std::string form;
  double best = 0.0;
  Eigen::VectorXd witness;  // lattice coefficients; empty when nothing beat the zero probe
  double reevaluated = 0.0;
  int starts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  bool violation = false;

  nlohmann::json to_json(const BumpLattice& L) const;
};

// Minimise the quadratic gap on the simplex of lattice coefficients.
ConeSearchReport cone_search_quadratic(const DirectionSet& K, double c, const BumpLattice& L,
                                       const ConeSearchBudget& budget, std::uint64_t seed);

// Minimise the quartic gap (n = 2).
ConeSearchReport cone_search_quartic(const DirectionSet& K, double c, const BumpLattice& L,
                                     const ConeSearchBudget& budget, std::uint64_t seed);

// Maximise x^T P x / x^T Q x over x >= 0 (P, Q symmetric, Q positive on the cone).
ConeSearchReport cone_search_ratio(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                                   const ConeSearchBudget& budget, std::uint64_t seed);

struct CantorGeneration {
  int generation = 0;
  double measure_K = 0.0;
  double measure_mid = 0.0;
  double measure_ratio = 0.0;
  double max_ratio = 0.0;  // cone maximum of the midpoint-set form over the K form
};

struct CantorReport {
  std::vector<CantorGeneration> rows;
  double c = 0.0;  // min over generations of measure_ratio / (3/2)^N
  bool strictly_increasing = false;
};

CantorReport cantor_ratio(int max_generation, int nodes, double base_arc, const BumpLattice& L,
                          const ConeSearchBudget& budget, std::uint64_t seed);

}  // namespace extlab
