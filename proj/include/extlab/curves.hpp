#pragma once

#include "extlab/result.hpp"
#include "extlab/transforms.hpp"

#include <optional>

namespace extlab {

using CurveFn = std::function<cd(double)>;

class ConvexCurve {
 public:
  enum class Family { Circle, Ellipse, QuarticGraph };

  static ConvexCurve circle(double radius, double s0, double s1, int nodes = 256);
  static ConvexCurve ellipse(double a, double b, double s0, double s1, int nodes = 256);
  static ConvexCurve quartic_graph(double t0, double t1, int nodes = 256);
  static ConvexCurve from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  ConvexCurve scaled(double lambda) const;
  ConvexCurve with_nodes(int nodes) const;

  Family family() const { return family_; }
  bool closed() const { return closed_; }
  double s0() const { return s0_; }
  double s1() const { return s1_; }

  Vec3 position(double s) const;
  Vec3 velocity(double s) const;
  Vec3 normal(double s) const;  // unit outward
  double speed(double s) const { return velocity(s).norm(); }
  double curvature(double s) const;
  // Wrap into the parameter domain; nullopt when an open curve does not contain s.
  std::optional<double> canonical(double s) const;

  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& weights() const { return weights_; }  // arclength quadrature
  std::size_t size() const { return params_.size(); }
  double length() const;

 private:
  void build_nodes(int count);
  Family family_ = Family::Circle;
  double a_ = 1.0, b_ = 1.0;
  double scale_ = 1.0;
  double s0_ = 0.0, s1_ = kTwoPi;
  bool closed_ = true;
  std::vector<double> params_, weights_;
};

// Parameter of u'' = R_u u' (chord u'u'' parallel to the tangent at u); nullopt if it leaves the curve.
std::optional<double> collision_param(const ConvexCurve& c, double s_u, double s_p);
Vec3 collision_point(const ConvexCurve& c, double s_u, double s_p);

// Parameter of the point u whose tangent is parallel to the chord u'u''.
double midpoint_param(const ConvexCurve& c, double s_p, double s_pp);

struct CurveJacobians {
  double J = 0.0;
  double Jt = 0.0;
  double M = 0.0;
};

CurveJacobians curve_jacobians(const ConvexCurve& c, double s_u, double s_p);
// Finite-difference versions of J and Jt from their measure-change definitions.
CurveJacobians curve_jacobians_fd(const ConvexCurve& c, double s_u, double s_p, double h = 1e-5);
// M(u', u'') with u between them; equals 1 on the diagonal.
double curve_M(const ConvexCurve& c, double s_p, double s_pp);

struct CurveInvariants {
  double Q = 0.0;
  bool Q_bounded = true;
  double Lambda = 0.0;
  double min_curvature = 0.0, max_curvature = 0.0;
};

// Lambda over node pairs whose normals are at most pi - delta0 apart.
CurveInvariants curve_invariants(const ConvexCurve& c, double delta0 = 0.1, int samples = 160);

struct CurveSystem {
  std::vector<std::vector<cd>> values;  // on curve nodes
  std::vector<CurveFn> fns;
  Eigen::MatrixXcd gram;
  std::vector<std::uint8_t> support;
  std::size_t size() const { return values.size(); }
};

// Orthonormalized modulated smooth bumps on the curve.
CurveSystem make_curve_bumps(const ConvexCurve& c, const std::vector<double>& centers, double halfwidth,
                             const std::vector<Vec3>& modulations);

cd curve_extension(const ConvexCurve& c, const std::vector<cd>& g, const Vec3& x);
std::vector<cd> curve_wigner(const ConvexCurve& c, const CurveFn& g1, const CurveFn& g2, double s_u,
                             const std::vector<Vec3>& vs);
double curve_adjoint_xray_wigner(const ConvexCurve& c, const CurveFn& g, const Vec3& x);

struct CurveMoyalReport {
  cd phase_space = 0.0;
  cd formula = 0.0;
  double discrepancy = 0.0;
};

CurveMoyalReport curve_moyal(const ConvexCurve& c, const CurveFn& f1, const CurveFn& f2, const CurveFn& g1,
                             const CurveFn& g2);

std::vector<std::uint8_t> curve_midpoint_set(const ConvexCurve& c, const std::vector<std::uint8_t>& K,
                                             int dilation = 1);

struct CurveTheoremSide {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Kernel route for sum_j (int |E g_j|^2 w)^2 and the X-ray norm over the midpoint set.
CurveTheoremSide curve_theorem_sides(const ConvexCurve& c, const CurveSystem& sys, const Weight& w);

ExperimentResult curve_wigner_and_theorem(const ConvexCurve& c, const CurveSystem& sys,
                                          const std::vector<Weight>& weights, double tol,
                                          double delta0 = 0.1);

}  // namespace extlab
