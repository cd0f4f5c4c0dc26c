#include "extlab/curves.hpp"

#include <chrono>

namespace extlab {

namespace {

double wedge(const Vec3& a, const Vec3& b) { return a.x() * b.y() - a.y() * b.x(); }

double wrap_pi(double d) {
  d = std::fmod(d + kPi, kTwoPi);
  if (d < 0) d += kTwoPi;
  return d - kPi;
}

template <class F>
double bisect(F f, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ConvexCurve ConvexCurve::circle(double radius, double s0, double s1, int nodes) {
  if (!(radius > 0.0) || !(s1 > s0)) throw DomainError("circle: invalid radius or interval");
  ConvexCurve c;
  c.family_ = Family::Circle;
  c.a_ = c.b_ = radius;
  c.s0_ = s0;
  c.s1_ = s1;
  c.closed_ = s1 - s0 >= kTwoPi - 1e-12;
  if (c.closed_) c.s1_ = s0 + kTwoPi;
  c.build_nodes(nodes);
  return c;
}

ConvexCurve ConvexCurve::ellipse(double a, double b, double s0, double s1, int nodes) {
  if (!(a > 0.0 && b > 0.0) || !(s1 > s0)) throw DomainError("ellipse: invalid semi-axes or interval");
  ConvexCurve c;
  c.family_ = Family::Ellipse;
  c.a_ = a;
  c.b_ = b;
  c.s0_ = s0;
  c.s1_ = s1;
  c.closed_ = s1 - s0 >= kTwoPi - 1e-12;
  if (c.closed_) c.s1_ = s0 + kTwoPi;
  c.build_nodes(nodes);
  return c;
}

ConvexCurve ConvexCurve::quartic_graph(double t0, double t1, int nodes) {
  if (!(t1 > t0)) throw DomainError("quartic_graph: invalid interval");
  ConvexCurve c;
  c.family_ = Family::QuarticGraph;
  c.s0_ = t0;
  c.s1_ = t1;
  c.closed_ = false;
  c.build_nodes(nodes);
  return c;
}

nlohmann::json ConvexCurve::to_json() const {
  static const char* names[] = {"circle", "ellipse", "quartic_graph"};
  return {{"family", names[static_cast<int>(family_)]}, {"a", a_}, {"b", b_}, {"scale", scale_},
          {"s0", s0_}, {"s1", s1_}, {"nodes", params_.size()}};
}

ConvexCurve ConvexCurve::from_json(const nlohmann::json& j) {
  try {
    std::string f = j.at("family").get<std::string>();
    int nodes = j.value("nodes", 256);
    double s0 = j.value("s0", 0.0), s1 = j.value("s1", kTwoPi);
    ConvexCurve c;
    if (f == "circle") c = circle(j.value("a", 1.0), s0, s1, nodes);
    else if (f == "ellipse") c = ellipse(j.at("a").get<double>(), j.at("b").get<double>(), s0, s1, nodes);
    else if (f == "quartic_graph") c = quartic_graph(s0, s1, nodes);
    else throw SchemaError("unknown curve family '" + f + "'");
    double sc = j.value("scale", 1.0);
    return sc == 1.0 ? c : c.scaled(sc);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("curve: ") + e.what());
  }
}

ConvexCurve ConvexCurve::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("scaled: factor must be positive");
  ConvexCurve c = *this;
  c.scale_ *= lambda;
  c.build_nodes(static_cast<int>(params_.size()));
  return c;
}

ConvexCurve ConvexCurve::with_nodes(int nodes) const {
  ConvexCurve c = *this;
  c.build_nodes(nodes);
  return c;
}

void ConvexCurve::build_nodes(int count) {
  if (count < 4) throw DomainError("curve: too few nodes");
  params_.clear();
  weights_.clear();
  if (closed_) {
    double h = kTwoPi / count;
    for (int k = 0; k < count; ++k) {
      double s = s0_ + k * h;
      params_.push_back(s);
      weights_.push_back(h * speed(s));
    }
    return;
  }
  std::vector<double> x, w;
  gauss_legendre(count, s0_, s1_, x, w);
  for (std::size_t k = 0; k < x.size(); ++k) {
    params_.push_back(x[k]);
    weights_.push_back(w[k] * speed(x[k]));
  }
}

Vec3 ConvexCurve::position(double s) const {
  switch (family_) {
    case Family::Circle:
    case Family::Ellipse: return scale_ * vec2(a_ * std::cos(s), b_ * std::sin(s));
    case Family::QuarticGraph: return scale_ * vec2(s, s * s * s * s);
  }
  return Vec3::Zero();
}

Vec3 ConvexCurve::velocity(double s) const {
  switch (family_) {
    case Family::Circle:
    case Family::Ellipse: return scale_ * vec2(-a_ * std::sin(s), b_ * std::cos(s));
    case Family::QuarticGraph: return scale_ * vec2(1.0, 4.0 * s * s * s);
  }
  return Vec3::Zero();
}

Vec3 ConvexCurve::normal(double s) const {
  Vec3 v = velocity(s);
  return vec2(v.y(), -v.x()).normalized();
}

double ConvexCurve::curvature(double s) const {
  switch (family_) {
    case Family::Circle:
    case Family::Ellipse: {
      double d = a_ * a_ * std::sin(s) * std::sin(s) + b_ * b_ * std::cos(s) * std::cos(s);
      return a_ * b_ / (std::pow(d, 1.5) * scale_);
    }
    case Family::QuarticGraph: {
      double d = 1.0 + 16.0 * std::pow(s, 6);
      return 12.0 * s * s / (std::pow(d, 1.5) * scale_);
    }
  }
  return 0.0;
}

std::optional<double> ConvexCurve::canonical(double s) const {
  if (closed_) {
    double d = std::fmod(s - s0_, kTwoPi);
    if (d < 0) d += kTwoPi;
    return s0_ + d;
  }
  double eps = 1e-12 * std::max(1.0, s1_ - s0_);
  if (s < s0_ - eps || s > s1_ + eps) return std::nullopt;
  return std::clamp(s, s0_, s1_);
}

double ConvexCurve::length() const {
  double L = 0.0;
  for (double w : weights_) L += w;
  return L;
}

std::optional<double> collision_param(const ConvexCurve& c, double s_u, double s_p) {
  if (std::abs(s_p - s_u) < 1e-14) return s_u;
  Vec3 N = c.normal(s_u);
  Vec3 up = c.position(s_p);
  auto phi = [&](double s) { return (c.position(s) - up).dot(N); };
  double lo, hi;
  if (c.closed()) {
    double d = wrap_pi(s_p - s_u);
    if (d > 0) {
      lo = s_u - kPi;
      hi = s_u;
    } else {
      lo = s_u;
      hi = s_u + kPi;
    }
  } else {
    if (s_p > s_u) {
      lo = c.s0();
      hi = s_u;
    } else {
      lo = s_u;
      hi = c.s1();
    }
  }
  // phi is monotone on [lo, hi], positive at s_u and at most zero at the far end when a root exists
  double far = (lo == s_u) ? hi : lo;
  double ffar = phi(far);
  if (ffar > 0.0) return std::nullopt;
  double r = bisect(phi, far, s_u, ffar);
  return c.canonical(r);
}

Vec3 collision_point(const ConvexCurve& c, double s_u, double s_p) {
  auto r = collision_param(c, s_u, s_p);
  if (!r) throw DomainError("collision_point: no partner on the curve (normal-arc hypothesis violated)");
  return c.position(*r);
}

double midpoint_param(const ConvexCurve& c, double s_p, double s_pp) {
  double a = s_p, b = s_pp;
  if (c.closed()) b = s_p + wrap_pi(s_pp - s_p);
  Vec3 chord = c.position(b) - c.position(a);
  auto psi = [&](double s) { return c.normal(s).dot(chord); };
  double fa = psi(a);
  return bisect(psi, a, b, fa);
}

CurveJacobians curve_jacobians(const ConvexCurve& c, double s_u, double s_p) {
  auto spp = collision_param(c, s_u, s_p);
  if (!spp) throw DomainError("curve_jacobians: no collision partner");
  Vec3 u1 = c.position(s_p), u2 = c.position(*spp);
  double chord = (u2 - u1).norm();
  if (chord < 1e-12) throw DomainError("curve_jacobians: degenerate pair (u'' = u')");
  Vec3 N = c.normal(s_u), N1 = c.normal(s_p), N2 = c.normal(*spp);
  double d = std::abs(wedge(N, N2));
  CurveJacobians r;
  r.J = chord * c.curvature(s_u) / d;
  r.Jt = std::abs(wedge(N1, N2)) / d;
  r.M = chord * c.curvature(s_u) / std::abs(wedge(N1, N2));
  return r;
}

CurveJacobians curve_jacobians_fd(const ConvexCurve& c, double s_u, double s_p, double h) {
  auto part = [&](double su, double sp) {
    auto r = collision_param(c, su, sp);
    if (!r) throw DomainError("curve_jacobians_fd: no collision partner");
    return *r;
  };
  double spp = part(s_u, s_p);
  double a = part(s_u + h, s_p), b = part(s_u - h, s_p);
  if (c.closed()) a = spp + wrap_pi(a - spp), b = spp + wrap_pi(b - spp);
  double dspp = (a - b) / (2 * h);
  CurveJacobians r;
  r.J = c.speed(spp) * std::abs(dspp) / c.speed(s_u);
  auto xi = [&](double sp) { return Vec3(c.position(sp) - c.position(part(s_u, sp))); };
  Vec3 dxi = (xi(s_p + h) - xi(s_p - h)) / (2 * h);
  r.Jt = dxi.norm() / c.speed(s_p);
  r.M = r.J / r.Jt;
  return r;
}

double curve_M(const ConvexCurve& c, double s_p, double s_pp) {
  double gap = c.closed() ? std::abs(wrap_pi(s_pp - s_p)) : std::abs(s_pp - s_p);
  if (gap < 1e-9) return 1.0;
  double su = midpoint_param(c, s_p, s_pp);
  Vec3 u1 = c.position(s_p), u2 = c.position(s_pp);
  return (u2 - u1).norm() * c.curvature(su) / std::abs(wedge(c.normal(s_p), c.normal(s_pp)));
}

CurveInvariants curve_invariants(const ConvexCurve& c, double delta0, int samples) {
  CurveInvariants r;
  r.min_curvature = std::numeric_limits<double>::infinity();
  for (double s : c.params()) {
    double k = c.curvature(s);
    r.min_curvature = std::min(r.min_curvature, k);
    r.max_curvature = std::max(r.max_curvature, k);
  }
  r.Q_bounded = r.min_curvature > 1e-9 * r.max_curvature;
  r.Q = r.Q_bounded ? r.max_curvature / r.min_curvature : std::numeric_limits<double>::infinity();
  std::vector<double> ss;
  double span = c.s1() - c.s0();
  for (int i = 0; i < samples; ++i)
    ss.push_back(c.closed() ? c.s0() + span * i / samples : c.s0() + span * i / (samples - 1));
  double best = 0.0;
  for (std::size_t i = 0; i < ss.size(); ++i)
    for (std::size_t j = i + 1; j < ss.size(); ++j) {
      double ang = std::acos(std::clamp(c.normal(ss[i]).dot(c.normal(ss[j])), -1.0, 1.0));
      if (ang > kPi - delta0) continue;
      best = std::max(best, curve_M(c, ss[i], ss[j]));
    }
  r.Lambda = std::sqrt(std::max(best, 1.0));
  return r;
}

CurveSystem make_curve_bumps(const ConvexCurve& c, const std::vector<double>& centers, double halfwidth,
                             const std::vector<Vec3>& modulations) {
  if (centers.size() != modulations.size()) throw DomainError("make_curve_bumps: argument lengths differ");
  std::vector<CurveFn> raw;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    double c0 = centers[j];
    Vec3 m = modulations[j];
    bool closed = c.closed();
    raw.push_back([&c, c0, m, halfwidth, closed](double s) -> cd {
      double d = closed ? wrap_pi(s - c0) : s - c0;
      double t = d / halfwidth;
      if (std::abs(t) >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - t * t)) * fourier_kernel(m.dot(c.position(s)));
    });
  }
  const auto& P = c.params();
  const auto& W = c.weights();
  std::size_t n = P.size(), m = raw.size();
  std::vector<std::vector<cd>> vals(m, std::vector<cd>(n));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < n; ++k) vals[r][k] = raw[r](P[k]);
  auto ip = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
    CAccumulator acc;
    for (std::size_t k = 0; k < n; ++k) acc.add(W[k] * a[k] * std::conj(b[k]));
    return acc.value();
  };
  CurveSystem sys;
  std::vector<std::vector<cd>> coeff;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<cd> v = vals[r];
    std::vector<cd> cf(m, 0.0);
    cf[r] = 1.0;
    double n0 = std::sqrt(ip(v, v).real());
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < sys.values.size(); ++i) {
        cd p = ip(v, sys.values[i]);
        for (std::size_t k = 0; k < n; ++k) v[k] -= p * sys.values[i][k];
        for (std::size_t s = 0; s < m; ++s) cf[s] -= p * coeff[i][s];
      }
    double n1 = std::sqrt(ip(v, v).real());
    if (n0 == 0.0 || n1 < 1e-8 * n0) continue;
    for (auto& x : v) x /= n1;
    for (auto& x : cf) x /= n1;
    sys.values.push_back(v);
    coeff.push_back(cf);
    sys.fns.push_back([cf, raw](double s) -> cd {
      cd acc = 0.0;
      for (std::size_t r = 0; r < raw.size(); ++r)
        if (cf[r] != 0.0) acc += cf[r] * raw[r](s);
      return acc;
    });
  }
  auto q = static_cast<Eigen::Index>(sys.values.size());
  sys.gram.resize(q, q);
  for (Eigen::Index i = 0; i < q; ++i)
    for (Eigen::Index j = 0; j < q; ++j)
      sys.gram(i, j) = ip(sys.values[static_cast<std::size_t>(i)], sys.values[static_cast<std::size_t>(j)]);
  sys.support.assign(n, 0);
  for (const auto& v : sys.values)
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(v[k]) > 1e-14) sys.support[k] = 1;
  return sys;
}

cd curve_extension(const ConvexCurve& c, const std::vector<cd>& g, const Vec3& x) {
  CAccumulator acc;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (g[k] != 0.0) acc.add(c.weights()[k] * g[k] * fourier_kernel(x.dot(c.position(c.params()[k]))));
  return acc.value();
}

namespace {

// J(u,u') with its diagonal limit 2.
double jacobian_J(const ConvexCurve& c, double s_u, double s_p, double s_pp) {
  Vec3 u1 = c.position(s_p), u2 = c.position(s_pp);
  double chord = (u2 - u1).norm();
  if (chord < 1e-10 * std::max(1.0, c.length())) return 2.0;
  return chord * c.curvature(s_u) / std::abs(wedge(c.normal(s_u), c.normal(s_pp)));
}

double jacobian_Jt(const ConvexCurve& c, double s_u, double s_p, double s_pp) {
  Vec3 u1 = c.position(s_p), u2 = c.position(s_pp);
  if ((u2 - u1).norm() < 1e-10 * std::max(1.0, c.length())) return 2.0;
  return std::abs(wedge(c.normal(s_p), c.normal(s_pp))) / std::abs(wedge(c.normal(s_u), c.normal(s_pp)));
}

}  // namespace

std::vector<cd> curve_wigner(const ConvexCurve& c, const CurveFn& g1, const CurveFn& g2, double s_u,
                             const std::vector<Vec3>& vs) {
  std::vector<cd> amp;
  std::vector<Vec3> dir;
  for (std::size_t k = 0; k < c.size(); ++k) {
    double sp = c.params()[k];
    cd a = g1(sp);
    if (a == 0.0) continue;
    auto spp = collision_param(c, s_u, sp);
    if (!spp) continue;
    cd b = g2(*spp);
    if (b == 0.0) continue;
    amp.push_back(c.weights()[k] * a * std::conj(b) * jacobian_J(c, s_u, sp, *spp));
    dir.push_back(c.position(sp) - c.position(*spp));
  }
  std::vector<cd> out(vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    CAccumulator acc;
    for (std::size_t i = 0; i < amp.size(); ++i) acc.add(amp[i] * fourier_kernel(dir[i].dot(vs[j])));
    out[j] = acc.value();
  }
  return out;
}

double curve_adjoint_xray_wigner(const ConvexCurve& c, const CurveFn& g, const Vec3& x) {
  Accumulator acc;
  for (std::size_t k = 0; k < c.size(); ++k) {
    double su = c.params()[k];
    Vec3 N = c.normal(su);
    Vec3 v = x - x.dot(N) * N;
    acc.add(c.weights()[k] * curve_wigner(c, g, g, su, {v})[0].real());
  }
  return acc.value();
}

CurveMoyalReport curve_moyal(const ConvexCurve& c, const CurveFn& f1, const CurveFn& f2, const CurveFn& g1,
                             const CurveFn& g2) {
  const auto& P = c.params();
  const auto& W = c.weights();
  std::size_t n = P.size();
  CAccumulator ps;
  for (std::size_t i = 0; i < n; ++i) {
    double su = P[i];
    CAccumulator inner;
    for (std::size_t k = 0; k < n; ++k) {
      double sp = P[k];
      auto spp = collision_param(c, su, sp);
      if (!spp) continue;
      cd Ff = f1(sp) * std::conj(f2(*spp));
      cd Fg = g1(sp) * std::conj(g2(*spp));
      if (Ff == 0.0 || Fg == 0.0) continue;
      double J = jacobian_J(c, su, sp, *spp), Jt = jacobian_Jt(c, su, sp, *spp);
      inner.add(W[k] * Ff * std::conj(Fg) * J * J / Jt);
    }
    ps.add(W[i] * inner.value());
  }
  std::vector<cd> a(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = f1(P[k]) * std::conj(g1(P[k]));
    b[k] = std::conj(f2(P[k])) * g2(P[k]);
  }
  CAccumulator fm;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0.0) continue;
      fm.add(W[i] * W[j] * a[i] * b[j] * curve_M(c, P[i], P[j]));
    }
  }
  CurveMoyalReport r;
  r.phase_space = ps.value();
  r.formula = fm.value();
  r.discrepancy = std::abs(r.phase_space - r.formula) / std::max(std::abs(r.formula), 1e-300);
  return r;
}

std::vector<std::uint8_t> curve_midpoint_set(const ConvexCurve& c, const std::vector<std::uint8_t>& K,
                                             int dilation) {
  const auto& P = c.params();
  std::size_t n = P.size();
  std::vector<std::uint8_t> Kd(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!K[k]) continue;
    for (int d = -dilation; d <= dilation; ++d) {
      long idx = static_cast<long>(k) + d;
      if (c.closed()) idx = (idx % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n);
      if (idx >= 0 && idx < static_cast<long>(n)) Kd[static_cast<std::size_t>(idx)] = 1;
    }
  }
  auto nearest = [&](double s) {
    auto it = std::lower_bound(P.begin(), P.end(), s);
    std::size_t i = static_cast<std::size_t>(it - P.begin());
    if (i >= n) return c.closed() && std::abs(s - (c.s0() + kTwoPi)) < std::abs(s - P[n - 1]) ? std::size_t{0} : n - 1;
    if (i == 0) return std::size_t{0};
    return (std::abs(P[i] - s) < std::abs(P[i - 1] - s)) ? i : i - 1;
  };
  std::vector<std::uint8_t> out(n, 0);
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < n; ++k)
    if (K[k]) members.push_back(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (K[i]) {
      out[i] = 1;
      continue;
    }
    for (std::size_t k : members) {
      auto spp = collision_param(c, P[i], P[k]);
      if (spp && Kd[nearest(*spp)]) {
        out[i] = 1;
        break;
      }
    }
  }
  return out;
}

CurveTheoremSide curve_theorem_sides(const ConvexCurve& c, const CurveSystem& sys, const Weight& w) {
  const auto& P = c.params();
  const auto& W = c.weights();
  std::vector<std::size_t> nodes;
  for (std::size_t k = 0; k < P.size(); ++k)
    if (sys.support[k]) nodes.push_back(k);
  auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd A(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = j; k < m; ++k) {
      std::size_t a = nodes[static_cast<std::size_t>(j)], b = nodes[static_cast<std::size_t>(k)];
      cd v = std::sqrt(W[a] * W[b]) * fourier_weight(w, c.position(P[b]) - c.position(P[a]));
      A(j, k) = v;
      A(k, j) = std::conj(v);
    }
  CurveTheoremSide r;
  Accumulator lhs;
  for (const auto& g : sys.values) {
    Eigen::VectorXcd h(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      std::size_t a = nodes[static_cast<std::size_t>(j)];
      h(j) = std::sqrt(W[a]) * g[a];
    }
    double v = h.dot(A * h).real();
    lhs.add(v * v);
  }
  r.lhs = lhs.value();
  auto mid = curve_midpoint_set(c, sys.support);
  Accumulator rhs;
  for (std::size_t k = 0; k < P.size(); ++k)
    if (mid[k]) rhs.add(W[k] * xray_plane_l2sq(w, c.normal(P[k])));
  r.rhs = rhs.value();
  return r;
}

ExperimentResult curve_wigner_and_theorem(const ConvexCurve& c, const CurveSystem& sys,
                                          const std::vector<Weight>& weights, double tol, double delta0) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  CurveInvariants inv = curve_invariants(c, delta0);
  double L2 = inv.Lambda * inv.Lambda;
  res.metadata["Lambda"] = inv.Lambda;
  res.metadata["Q"] = inv.Q_bounded ? nlohmann::json(inv.Q) : nlohmann::json("unbounded");
  res.metadata["curve"] = c.to_json();
  if (sys.size() == 0) throw DomainError("curve_wigner_and_theorem: empty system");
  double gdev = (sys.gram - Eigen::MatrixXcd::Identity(sys.gram.rows(), sys.gram.cols())).cwiseAbs().maxCoeff();
  res.add_check("orthonormal system", gdev <= 1e-8);

  const CurveFn& g0 = sys.fns[0];
  // Errors are measured against ||g||_1^2, the sup of |E g|^2.
  double l1 = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) l1 += c.weights()[k] * std::abs(sys.values[0][k]);
  for (const Vec3& x : {vec2(0.3, -0.2), vec2(-1.1, 0.7), vec2(2.0, 1.5)}) {
    double lhs = curve_adjoint_xray_wigner(c, g0, x);
    double rhs = std::norm(curve_extension(c, sys.values[0], x));
    res.add("phase-space representation", std::abs(lhs - rhs), 1e-3 * l1 * l1, VerdictMode::Forward, 0.0);
  }
  {
    // Orthonormal members: the product of norms is 1.
    std::size_t j1 = sys.size() > 1 ? 1 : 0;
    auto m1 = curve_moyal(c, g0, g0, g0, g0);
    res.add("moyal f=g", m1.phase_space.real(), m1.formula.real(), VerdictMode::Identity, 1e-2);
    auto m2 = curve_moyal(c, g0, g0, sys.fns[j1], sys.fns[j1]);
    res.add("moyal f,g", std::abs(m2.phase_space - m2.formula), 1e-2, VerdictMode::Forward, 0.0);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    auto s = curve_theorem_sides(c, sys, weights[i]);
    double r = safe_ratio(s.lhs, s.rhs, VerdictMode::Forward);
    best = std::max(best, r);
    res.add("theorem vs Lambda^2", s.lhs, s.rhs * (L2 + tol), VerdictMode::Forward, 0.0);
  }
  res.metadata["best_constant"] = best;
  res.metadata["Lambda_squared"] = L2;
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace extlab
