#pragma once

#include "extlab/discretization.hpp"

#include <optional>
#include <variant>

namespace extlab {

struct GaussTerm {
  double coeff = 1.0;
  Vec3 center = Vec3::Zero();
  double width = 1.0;  // term is coeff * exp(-pi |x - center|^2 / width^2)
};

struct GaussianMixture {
  int dim = 3;
  std::vector<GaussTerm> terms;
};

struct GridSampled {
  BoxGrid grid;
  std::vector<double> values;
};

class Weight {
 public:
  Weight() = default;
  explicit Weight(GaussianMixture m, bool nonnegative = false);
  explicit Weight(GridSampled g, bool nonnegative = false);

  int dim() const;
  bool is_mixture() const { return std::holds_alternative<GaussianMixture>(data_); }
  const GaussianMixture& mixture() const;
  const GridSampled& samples() const;
  bool nonnegative() const { return nonnegative_; }

  double eval(const Vec3& x) const;
  double total_mass() const;

  nlohmann::json to_json() const;
  static Weight from_json(const nlohmann::json& j);

 private:
  void verify_nonnegative() const;
  std::variant<GaussianMixture, GridSampled> data_;
  bool nonnegative_ = false;
};

Weight scaled(const Weight& w, double lambda);
Weight combine(const Weight& a, double ca, const Weight& b, double cb);

struct SurfaceFunction {
  GridPtr grid;
  std::vector<cd> values;
  DirectionSet support;

  static SurfaceFunction from_values(GridPtr grid, std::vector<cd> values, double zero_tol = 1e-14);
  static SurfaceFunction from_callable(GridPtr grid, const SphereFn& f, double zero_tol = 1e-14);
  // g~(w) = conj(g(-w)); requires an antipodally symmetric rule.
  SurfaceFunction tilde() const;
  cd inner(const SurfaceFunction& other) const;  // <this, other> with quadrature weights
  double norm() const;
};

// sum_k q_k g_k e^{-2 pi i x.w_k}
std::vector<cd> extension(const SurfaceFunction& g, const std::vector<Vec3>& X);
cd extension_at(const SurfaceFunction& g, const Vec3& x);

cd fourier_weight(const Weight& w, const Vec3& xi);

double xray(const Weight& w, const Vec3& omega, const Vec3& v);

// Integral over the hyperplane orthogonal to omega of |Xw(omega, .)|^2 (closed form, mixtures).
double xray_plane_l2sq(const Weight& w, const Vec3& omega);

struct XrayNormReport {
  double value = 0.0;      // (sum q cellarea |Xw|^p)^{1/p}
  double tail_fraction = 0.0;
  std::optional<double> closed_form;  // p = 2, mixtures
};

XrayNormReport xray_norm(const Weight& w, const DirectionSet& E, const PhaseGrid& P, double p,
                         double tail_tol = 1e-6);

// ||Xw||_{L^2(E)}^2 via closed-form plane integrals per node.
double xray_l2sq(const Weight& w, const DirectionSet& E);

// Integral of f over the hyperplane orthogonal to omega.
double radon0(const Weight& f, const Vec3& omega);
double radon0_quadrature(const std::function<double(const Vec3&)>& f, const Vec3& omega, int dim,
                         const PhaseGrid& P);

// |x|^{-(n-1)} (f(x^) + f(-x^)) with nearest-node lookup.
double x0_adjoint(const SphereGrid& grid, const std::vector<double>& f, const Vec3& x);

// rho* w (x, v) = int w(x - t v, t) dt; space-time mixture with the last coordinate as time.
double rho_adjoint(const Weight& w, double x, double v);
// Same for an arbitrary space-time field (d=1), by Gauss-Legendre after t = tan(theta).
double rho_adjoint_quadrature(const std::function<double(double, double)>& w, double x, double v,
                              int nodes = 400);

struct SchrodingerField {
  std::vector<double> x;
  std::vector<cd> u;
};

// d = 1. u(x,t) = int exp(2 pi i (x xi + t xi^2 / 2)) uhat(xi) dxi, which solves
// 4 pi i du/dt = d^2u/dx^2 and transports the Wigner function with unit speed.
SchrodingerField schrodinger_evolve(const BoxGrid& freq, const std::vector<cd>& uhat, double t,
                                    const BoxGrid& space, bool check_aliasing = true);

// Same evolution with the spatial synthesis matrix cached for repeated times.
class SchrodingerPropagator {
 public:
  SchrodingerPropagator(const BoxGrid& freq, const BoxGrid& space);
  SchrodingerField evolve(const std::vector<cd>& uhat, double t, bool check_aliasing = true) const;
  const BoxGrid& freq() const { return freq_; }
  const BoxGrid& space() const { return space_; }

 private:
  BoxGrid freq_, space_;
  Eigen::MatrixXcd synth_;  // e^{2 pi i x_i xi_k}
};

// || F^{-1}[(2 pi |xi|)^{2s} w^] ||_p for a mixture in R^3.
struct FracLaplacianReport {
  double value = 0.0;
  double tail_fraction = 0.0;
};
FracLaplacianReport frac_laplacian_norm(const Weight& w, double s, double p);
// Plancherel form for p = 2: int (2 pi |xi|)^{4s} |w^|^2.
double frac_laplacian_l2sq(const Weight& w, double s);

// w * w~ with w~(x) = w(-x).
Weight autocorrelate(const Weight& w);

}  // namespace extlab
