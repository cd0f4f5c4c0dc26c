#pragma once

#include "extlab/copositivity.hpp"
#include "extlab/curves.hpp"
#include "extlab/result.hpp"
#include "extlab/wigner.hpp"

#include <json.hpp>

#include <optional>

namespace extlab {

// ---------------------------------------------------------------- verification primitives

enum class MidpointVariant { Diamond, Star, Undirected };

struct TheoremSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// sum_j (int |E g_j|^2 w)^2 through the kernel, against ||Xw||^2 over the chosen midpoint set.
TheoremSides sphere_theorem_sides(const OrthonormalSystem& sys, const Weight& w, MidpointVariant variant);

DirectionSet theorem_direction_set(const OrthonormalSystem& sys, MidpointVariant variant);

ExperimentResult verify_sphere_theorem(const OrthonormalSystem& sys, const std::vector<Weight>& weights,
                                       MidpointVariant variant, double tol);

// d = 1 Schrodinger data: orthonormal frequency profiles and their Wigner supports.
struct SchrodingerSetup {
  BoxGrid freq;   // frequency grid carrying uhat_j
  BoxGrid space;  // spatial grid for u_j(., t)
  std::vector<std::vector<cd>> uhat;
  std::vector<std::vector<cd>> u0;
  std::vector<ClassicalWigner> wigner;
  std::vector<std::uint8_t> support;  // union of thresholded, dilated Wigner supports
};

SchrodingerSetup make_schrodinger_setup(int members, int points = 256, double freq_side = 4.0);

// Same data viewed through the Fourier transform: uhat_j become initial data on the frequency grid.
struct SwappedSetup {
  BoxGrid grid;
  std::vector<ClassicalWigner> wigner;
  std::vector<std::uint8_t> support;
};
SwappedSetup make_swapped_setup(const SchrodingerSetup& s);

struct SchrodingerSides {
  double lhs = 0.0;        // space-time quadrature of |u_j|^2 w
  double lhs_phase = 0.0;  // through <W_j, rho* w>
  double rhs = 0.0;        // ||rho* w||^2 on the support set
};

SchrodingerSides schrodinger_sides(const SchrodingerSetup& s, const SchrodingerPropagator& prop, const Weight& w);
// The swapped run with rho* w'(x, v) = rho* w(-v, x).
SchrodingerSides swapped_sides(const SwappedSetup& s, const Weight& w);

ExperimentResult verify_schrodinger_theorem(const SchrodingerSetup& setup, const std::vector<Weight>& weights,
                                            double tol);

// int int phi(w' - w'') g(w') g(w'') against int g1<>g2 R0 phi.
struct TomographicSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
TomographicSides tomographic_sides_indicator(const DirectionSet& K, const Weight& phi);
TomographicSides tomographic_sides_bilinear(const SphereFn& g1, const SphereFn& g2, GridPtr grid, const Weight& phi);

ExperimentResult verify_tomographic_weak(const std::vector<DirectionSet>& sets, const std::vector<Weight>& phis,
                                         double tol);

// R^{n-1} int |E g (R x)|^2 w(x) dx divided by int |g|^2 Xw(., 0), for n = 3, harmonic g, radial w.
struct RadialWeight {
  enum class Kind { Gaussian, Bump } kind = Kind::Gaussian;
  double scale = 1.0;
  double eval(double r) const;
  double support() const;
};
double agmon_hormander_ratio(const std::vector<double>& shell_energy, const RadialWeight& w, double R);

ExperimentResult verify_agmon_hormander(const std::vector<std::vector<double>>& shells,
                                        const std::vector<RadialWeight>& weights, const std::vector<double>& Rs,
                                        double tol);

ExperimentResult verify_interpolant(const OrthonormalSystem& sys, const std::vector<Weight>& weights,
                                    const std::vector<double>& ps, double tol);

struct TorusReverseSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
TorusReverseSides torus_reverse_sides(const TorusSystem& sys, const std::vector<double>& weight, double p);

ExperimentResult verify_reverse(const TorusSystem& sys, const std::vector<std::vector<double>>& weights,
                                const std::vector<double>& ps, double tol);

ExperimentResult verify_stein_autocorrelation(GridPtr grid, const std::vector<SphereFn>& gs,
                                              const std::vector<Weight>& weights, double constant_bound,
                                              std::uint64_t seed);

// ---------------------------------------------------------------- experiment catalog

struct ExperimentContext {
  nlohmann::json params;  // defaults merged with overrides
  std::uint64_t seed = 0;
  double tol = 0.05;
};

using ExperimentFn = std::function<ExperimentResult(const ExperimentContext&)>;

struct ExperimentInfo {
  std::string id;
  std::string anchor;
  std::string summary;
  double default_tol = 0.05;
  nlohmann::json defaults;
  ExperimentFn run;
};

const std::vector<ExperimentInfo>& experiment_catalog();
const ExperimentInfo* find_experiment(const std::string& id);

// Merge overrides into defaults; unknown keys or type changes raise SchemaError.
nlohmann::json merge_params(const ExperimentInfo& info, const nlohmann::json& overrides);

ExperimentResult run_experiment(const std::string& id, const nlohmann::json& overrides, std::uint64_t seed,
                                std::optional<double> tol = std::nullopt);

// Per-experiment seed derived from the suite seed and the id.
std::uint64_t derive_seed(std::uint64_t suite_seed, const std::string& id);

// ---------------------------------------------------------------- reports

std::string format_number(double v);
std::string trials_csv(const ExperimentResult& r, bool header = true);
nlohmann::json summary_json(const ExperimentResult& r);

}  // namespace extlab
