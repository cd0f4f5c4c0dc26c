#include "extlab/copositivity.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace extlab {

Weight BumpLattice::weight(const Eigen::VectorXd& c) const {
  GaussianMixture m;
  m.dim = dim;
  for (std::size_t b = 0; b < centers.size(); ++b) {
    double cb = c(static_cast<Eigen::Index>(b));
    if (cb == 0.0) continue;
    if (cb < 0.0) throw DomainError("BumpLattice: negative coefficient");
    m.terms.push_back({cb, centers[b], width});
  }
  return Weight(std::move(m), true);
}

BumpLattice make_bump_lattice(int dim, int per_axis, double spacing, double width) {
  if (dim < 2 || dim > 3 || per_axis < 1) throw DomainError("make_bump_lattice: bad shape");
  BumpLattice L;
  L.dim = dim;
  L.width = width;
  double off = 0.5 * (per_axis - 1) * spacing;
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j) {
      if (dim == 2) {
        L.centers.push_back(vec2(i * spacing - off, j * spacing - off));
        continue;
      }
      for (int k = 0; k < per_axis; ++k)
        L.centers.emplace_back(i * spacing - off, j * spacing - off, k * spacing - off);
    }
  return L;
}

Eigen::MatrixXd xray_form_matrix(const BumpLattice& L, const DirectionSet& E) {
  const SphereGrid& G = *E.grid;
  auto B = static_cast<Eigen::Index>(L.size());
  int n = L.dim;
  double s2 = L.width * L.width;
  double sig = 2.0 * s2;
  double pref = s2 * std::pow(s2 * s2 / sig, 0.5 * (n - 1));
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(B, B);
  std::vector<Vec3> ap(L.size());
  for (int k : E.members()) {
    const Vec3& om = G.nodes[static_cast<std::size_t>(k)];
    double q = G.qweights[static_cast<std::size_t>(k)];
    for (std::size_t b = 0; b < L.size(); ++b) ap[b] = L.centers[b] - L.centers[b].dot(om) * om;
    for (Eigen::Index a = 0; a < B; ++a)
      for (Eigen::Index b = a; b < B; ++b) {
        double v = q * pref *
                   std::exp(-kPi * (ap[static_cast<std::size_t>(a)] - ap[static_cast<std::size_t>(b)]).squaredNorm() / sig);
        Q(a, b) += v;
        if (b != a) Q(b, a) += v;
      }
  }
  return Q;
}

Eigen::MatrixXd c2_form_matrix(const BumpLattice& L, const DirectionSet& K) {
  const SphereGrid& G = *K.grid;
  auto B = static_cast<Eigen::Index>(L.size());
  int n = L.dim;
  double s2 = L.width * L.width;
  double s2n = std::pow(L.width, 2 * n);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(B, B);
  Eigen::VectorXcd z(B);
  auto mem = K.members();
  for (int i : mem)
    for (int j : mem) {
      auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
      Vec3 xi = G.nodes[ii] - G.nodes[jj];
      double amp = G.qweights[ii] * G.qweights[jj] * s2n * std::exp(-2.0 * kPi * s2 * xi.squaredNorm());
      for (Eigen::Index b = 0; b < B; ++b) z(b) = fourier_kernel(L.centers[static_cast<std::size_t>(b)].dot(xi));
      T.noalias() += amp * (z * z.adjoint());
    }
  return T.real();
}

// ------------------------------------------------------------------ quadratic gap

QuadraticGapReport quadratic_gap(const DirectionSet& K, double c, const Weight& w, bool kernel_check,
                                 int hermite_nodes) {
  if (!w.is_mixture()) throw DomainError("quadratic_gap: mixture weights only");
  QuadraticGapReport r;
  r.xray_sq = xray_l2sq(w, K);
  r.c2_sq = c2_double_sum_sphere(w, K);
  r.gap = r.xray_sq - c * r.c2_sq;
  if (!kernel_check) return r;

  const SphereGrid& G = *K.grid;
  Weight ac = autocorrelate(w);
  Accumulator line;
  for (int k : K.members())
    line.add(G.qweights[static_cast<std::size_t>(k)] * xray(ac, G.nodes[static_cast<std::size_t>(k)], Vec3::Zero()));

  std::vector<cd> ind(G.size(), 0.0);
  for (int k : K.members()) ind[static_cast<std::size_t>(k)] = 1.0;
  SurfaceFunction one = SurfaceFunction::from_values(K.grid, ind);
  std::vector<double> hx, hw;
  gauss_hermite(hermite_nodes, hx, hw);
  int n = G.dim;
  Accumulator spatial;
  for (const auto& t : ac.mixture().terms) {
    double sc = t.width / std::sqrt(kPi);
    Accumulator term;
    for (std::size_t a = 0; a < hx.size(); ++a)
      for (std::size_t b = 0; b < hx.size(); ++b) {
        if (n == 2) {
          Vec3 x = t.center + sc * vec2(hx[a], hx[b]);
          term.add(hw[a] * hw[b] * std::norm(extension_at(one, x)));
          continue;
        }
        for (std::size_t d = 0; d < hx.size(); ++d) {
          Vec3 x = t.center + sc * Vec3(hx[a], hx[b], hx[d]);
          term.add(hw[a] * hw[b] * hw[d] * std::norm(extension_at(one, x)));
        }
      }
    spatial.add(t.coeff * std::pow(sc, n) * term.value());
  }
  r.kernel_form = line.value() - c * spatial.value();
  double scale = std::max(std::abs(r.xray_sq), std::abs(c * r.c2_sq));
  r.kernel_discrepancy = scale > 0.0 ? std::abs(r.kernel_form - r.gap) / scale : 0.0;
  return r;
}

// ------------------------------------------------------------------ Drury

namespace {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double xray4_line_integral(const Weight& w, const Vec3& om, double V, int points) {
  TangentFrame fr = tangent_frame(om, 2);
  double dv = 2.0 * V / points;
  Accumulator acc;
  for (int i = 0; i < points; ++i) {
    double x = xray(w, om, (-V + (i + 0.5) * dv) * fr.e1);
    acc.add(x * x * x * x);
  }
  return acc.value() * dv;
}

double mixture_extent(const Weight& w) {
  double R = 0.0;
  for (const auto& t : w.mixture().terms) R = std::max(R, t.center.norm() + 7.0 * t.width);
  return R;
}

}  // namespace

DruryReport drury_identity(const Weight& w, int points, double side, int directions) {
  if (!w.is_mixture() || w.dim() != 2) throw DomainError("drury_identity: n=2 mixtures only");
  DruryReport r;
  double V = mixture_extent(w);
  Accumulator direct;
  for (int k = 0; k < directions; ++k) {
    double th = kTwoPi * k / directions;
    direct.add(xray4_line_integral(w, vec2(std::cos(th), std::sin(th)), V, 1024));
  }
  r.direct = direct.value() * kTwoPi / directions;

  double h = side / points;
  double rho0 = 2.0 * h, rho1 = 6.0 * h;
  auto chi = [&](double rr) { return 1.0 - smooth_step((rr - rho0) / (rho1 - rho0)); };
  std::vector<Vec3> pts;
  std::vector<double> vals;
  double peak = 0.0;
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) {
      Vec3 x = vec2(-0.5 * side + (i + 0.5) * h, -0.5 * side + (j + 0.5) * h);
      double v = w.eval(x);
      peak = std::max(peak, std::abs(v));
      pts.push_back(x);
      vals.push_back(v);
    }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (std::abs(vals[k]) > 1e-15 * peak) idx.push_back(k);

  Accumulator far;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Vec3& x1 = pts[idx[a]];
    Accumulator row;
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Vec3& x2 = pts[idx[b]];
      Vec3 y = x2 - x1;
      double rr = y.norm();
      if (rr < rho0) continue;
      double cut = 1.0 - chi(rr);
      Vec3 om = y / rr;
      double X = xray(w, om, x1 - x1.dot(om) * om);
      row.add(vals[idx[b]] * X * X * cut / rr);
    }
    far.add(2.0 * vals[idx[a]] * row.value());
  }
  double far_total = far.value() * h * h * h * h;

  // Near-diagonal region in polar coordinates about x1: the 1/r factor cancels against r dr.
  const int n_theta = 64;
  std::vector<double> g0, w0, g1, w1;
  gauss_legendre(12, 0.0, rho0, g0, w0);
  gauss_legendre(16, rho0, rho1, g1, w1);
  std::vector<double> rn, rw;
  for (std::size_t i = 0; i < g0.size(); ++i) rn.push_back(g0[i]), rw.push_back(w0[i]);
  for (std::size_t i = 0; i < g1.size(); ++i) rn.push_back(g1[i]), rw.push_back(w1[i] * chi(g1[i]));
  Accumulator near;
  for (std::size_t a : idx) {
    const Vec3& x1 = pts[a];
    Accumulator ang;
    for (int k = 0; k < n_theta; ++k) {
      double th = kTwoPi * k / n_theta;
      Vec3 om = vec2(std::cos(th), std::sin(th));
      double X = xray(w, om, x1 - x1.dot(om) * om);
      double rad = 0.0;
      for (std::size_t i = 0; i < rn.size(); ++i) rad += rw[i] * w.eval(x1 + rn[i] * om);
      ang.add(X * X * rad);
    }
    near.add(vals[a] * ang.value());
  }
  double near_total = near.value() * h * h * kTwoPi / n_theta;
  double P = far_total + near_total;
  r.pair = 2.0 * P;
  r.excluded = P != 0.0 ? near_total / P : 0.0;
  r.discrepancy = std::abs(r.pair - r.direct) / std::max(std::abs(r.direct), 1e-300);
  return r;
}

QuarticTraceReport quartic_trace(const Weight& w, GridPtr circle, int first, int count, int gl_nodes) {
  if (circle->dim != 2) throw DomainError("quartic_trace: needs an S^1 grid");
  int M = static_cast<int>(circle->size());
  if (count < 1 || count > M) throw DomainError("quartic_trace: bad arc");
  DirectionSet K = empty_set(circle);
  for (int i = 0; i < count; ++i) K.mask[static_cast<std::size_t>((first + i) % M)] = 1;
  K.recompute_measure();
  QuarticTraceReport r;
  r.nodes = count;
  Eigen::VectorXd eig = spectrum(assemble_sphere_kernel(w, K));
  Accumulator e4;
  for (Eigen::Index i = 0; i < eig.size(); ++i) e4.add(std::pow(eig(i), 4));
  r.eigen = e4.value();

  double h = kTwoPi / M;
  double th0 = std::atan2(circle->nodes[static_cast<std::size_t>(first)].y(),
                          circle->nodes[static_cast<std::size_t>(first)].x());
  std::vector<double> t, tw;
  gauss_legendre(gl_nodes, th0 - 0.5 * h, th0 - 0.5 * h + count * h, t, tw);
  auto m = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXcd B(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      auto jj = static_cast<std::size_t>(j), kk = static_cast<std::size_t>(k);
      Vec3 a = vec2(std::cos(t[jj]), std::sin(t[jj])), b = vec2(std::cos(t[kk]), std::sin(t[kk]));
      B(j, k) = std::sqrt(tw[jj] * tw[kk]) * fourier_weight(w, b - a);
    }
  Eigen::MatrixXcd B2 = B * B;
  r.quadrature = B2.squaredNorm();
  r.discrepancy = std::abs(r.eigen - r.quadrature) / std::max(std::abs(r.quadrature), 1e-300);
  return r;
}

QuarticGapReport quartic_gap(const DirectionSet& K, double c, const Weight& w, int v_points, double v_radius) {
  if (K.grid->dim != 2) throw DomainError("quartic_gap: n=2 only");
  QuarticGapReport r;
  Accumulator x4;
  for (int k : K.members())
    x4.add(K.grid->qweights[static_cast<std::size_t>(k)] *
           xray4_line_integral(w, K.grid->nodes[static_cast<std::size_t>(k)], v_radius, v_points));
  r.xray4 = x4.value();
  Eigen::VectorXd eig = spectrum(assemble_sphere_kernel(w, K));
  Accumulator e4;
  for (Eigen::Index i = 0; i < eig.size(); ++i) e4.add(std::pow(eig(i), 4));
  r.trace4 = e4.value();
  r.gap = r.xray4 - c * r.trace4;
  return r;
}

// ------------------------------------------------------------------ cone search

namespace {

Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
  std::vector<double> u(y.data(), y.data() + y.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  return (y.array() - theta).max(0.0).matrix();
}

struct SimplexProblem {
  std::function<double(const Eigen::VectorXd&)> f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

// Minimise f on the unit simplex. The zero vector is the baseline probe with value zero_value.
ConeSearchReport simplex_minimise(const SimplexProblem& P, Eigen::Index dim, const ConeSearchBudget& budget,
                                  std::uint64_t seed, double zero_value) {
  ConeSearchReport r;
  r.seed = seed;
  r.best = zero_value;
  r.starts = budget.starts;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_int_distribution<Eigen::Index> pick(0, dim - 1);
  auto consider = [&](const Eigen::VectorXd& x) {
    double v = P.f(x);
    if (std::isfinite(v) && v < r.best) {
      r.best = v;
      r.witness = x;
    }
  };
  for (int p = 0; p < budget.probes; ++p) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    int kind = p % 3;
    if (kind == 0) {
      for (Eigen::Index i = 0; i < dim; ++i) x(i) = expo(rng);
    } else {
      int nz = kind == 1 ? 1 : 3;
      for (int t = 0; t < nz; ++t) x(pick(rng)) += expo(rng);
    }
    x /= x.sum();
    consider(x);
  }
  for (int s = 0; s < budget.starts; ++s) {
    Eigen::VectorXd x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = expo(rng);
    x /= x.sum();
    double fx = P.f(x);
    double step = 1.0;
    for (int it = 0; it < budget.iterations; ++it) {
      Eigen::VectorXd g = P.grad(x);
      double gn = g.norm();
      if (!(gn > 0.0)) break;
      bool moved = false;
      for (int ls = 0; ls < 30; ++ls) {
        Eigen::VectorXd y = project_simplex(x - (step / gn) * g);
        double fy = P.f(y);
        if (fy < fx) {
          x = y;
          fx = fy;
          step *= 1.5;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      ++r.iterations;
      if (!moved) break;
    }
    consider(x);
  }
  if (r.witness.size() > 0) r.reevaluated = P.f(r.witness);
  else r.reevaluated = zero_value;
  return r;
}

}  // namespace

nlohmann::json ConeSearchReport::to_json(const BumpLattice& L) const {
  nlohmann::json j = {{"form", form}, {"best", best}, {"reevaluated", reevaluated}, {"starts", starts},
                      {"iterations", iterations}, {"seed", seed}, {"violation", violation}};
  if (witness.size() > 0) j["witness"] = L.weight(witness).to_json();
  else j["witness"] = nullptr;
  return j;
}

ConeSearchReport cone_search_quadratic(const DirectionSet& K, double c, const BumpLattice& L,
                                       const ConeSearchBudget& budget, std::uint64_t seed) {
  Eigen::MatrixXd G = xray_form_matrix(L, K) - c * c2_form_matrix(L, K);
  SimplexProblem P;
  P.f = [&G](const Eigen::VectorXd& x) { return x.dot(G * x); };
  P.grad = [&G](const Eigen::VectorXd& x) { return Eigen::VectorXd(2.0 * (G * x)); };
  ConeSearchReport r = simplex_minimise(P, G.rows(), budget, seed, 0.0);
  r.form = "quadratic";
  r.violation = r.best < 0.0;
  return r;
}

ConeSearchReport cone_search_quartic(const DirectionSet& K, double c, const BumpLattice& L,
                                     const ConeSearchBudget& budget, std::uint64_t seed) {
  if (K.grid->dim != 2 || L.dim != 2) throw DomainError("cone_search_quartic: n=2 only");
  const SphereGrid& G = *K.grid;
  auto mem = K.members();
  auto B = static_cast<Eigen::Index>(L.size());
  auto m = static_cast<Eigen::Index>(mem.size());
  const int vp = 128;
  double V = 0.0;
  for (const auto& a : L.centers) V = std::max(V, a.norm());
  V += 7.0 * L.width;
  double dv = 2.0 * V / vp;
  // X-ray of each bump on the (node, v) grid, pre-multiplied by the fourth root of the cell weight.
  Eigen::MatrixXd XG(m * vp, B);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vec3& om = G.nodes[static_cast<std::size_t>(mem[static_cast<std::size_t>(k)])];
    double cw = std::pow(G.qweights[static_cast<std::size_t>(mem[static_cast<std::size_t>(k)])] * dv, 0.25);
    TangentFrame fr = tangent_frame(om, 2);
    for (int i = 0; i < vp; ++i) {
      Vec3 v = (-V + (i + 0.5) * dv) * fr.e1;
      for (Eigen::Index b = 0; b < B; ++b) {
        Vec3 a = L.centers[static_cast<std::size_t>(b)];
        Vec3 ap = a - a.dot(om) * om;
        XG(k * vp + i, b) = cw * L.width * std::exp(-kPi * (v - ap).squaredNorm() / (L.width * L.width));
      }
    }
  }
  std::vector<Eigen::MatrixXcd> Ab;
  for (Eigen::Index b = 0; b < B; ++b) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(B);
    e(b) = 1.0;
    Ab.push_back(assemble_sphere_kernel(L.weight(e), K).A);
  }
  auto assemble = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index b = 0; b < B; ++b)
      if (x(b) != 0.0) A += x(b) * Ab[static_cast<std::size_t>(b)];
    return A;
  };
  SimplexProblem P;
  P.f = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd X = XG * x;
    Eigen::MatrixXcd A = assemble(x);
    return X.array().pow(4).sum() - c * (A * A).squaredNorm();
  };
  P.grad = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd X = XG * x;
    Eigen::VectorXd g = 4.0 * (XG.transpose() * X.array().pow(3).matrix());
    Eigen::MatrixXcd A = assemble(x);
    Eigen::MatrixXcd A3 = A * A * A;
    for (Eigen::Index b = 0; b < B; ++b)
      g(b) -= c * 4.0 * (A3 * Ab[static_cast<std::size_t>(b)]).trace().real();
    return g;
  };
  ConeSearchReport r = simplex_minimise(P, B, budget, seed, 0.0);
  r.form = "quartic";
  r.violation = r.best < 0.0;
  return r;
}

ConeSearchReport cone_search_ratio(const Eigen::MatrixXd& Pm, const Eigen::MatrixXd& Qm,
                                   const ConeSearchBudget& budget, std::uint64_t seed) {
  SimplexProblem P;
  P.f = [&](const Eigen::VectorXd& x) {
    double den = x.dot(Qm * x);
    return den > 0.0 ? -x.dot(Pm * x) / den : std::numeric_limits<double>::infinity();
  };
  P.grad = [&](const Eigen::VectorXd& x) {
    double den = x.dot(Qm * x);
    double rat = x.dot(Pm * x) / den;
    return Eigen::VectorXd(-2.0 * (Pm * x - rat * (Qm * x)) / den);
  };
  ConeSearchReport r = simplex_minimise(P, Pm.rows(), budget, seed, 0.0);
  r.form = "ratio";
  r.best = -r.best;
  r.reevaluated = -r.reevaluated;
  return r;
}

CantorReport cantor_ratio(int max_generation, int nodes, double base_arc, const BumpLattice& L,
                          const ConeSearchBudget& budget, std::uint64_t seed) {
  GridPtr grid = build_sphere_grid(2, nodes);
  CantorReport rep;
  rep.c = std::numeric_limits<double>::infinity();
  for (int N = 1; N <= max_generation; ++N) {
    DirectionSet K = cantor_direction_set(grid, N, 0.0, base_arc);
    DirectionSet mid = midpoint_set(K);
    CantorGeneration row;
    row.generation = N;
    row.measure_K = K.measure;
    row.measure_mid = mid.measure;
    row.measure_ratio = mid.measure / K.measure;
    ConeSearchReport cs =
        cone_search_ratio(xray_form_matrix(L, mid), xray_form_matrix(L, K), budget, seed + static_cast<std::uint64_t>(N));
    row.max_ratio = cs.best;
    rep.rows.push_back(row);
    rep.c = std::min(rep.c, row.measure_ratio / std::pow(1.5, N));
  }
  rep.strictly_increasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].max_ratio > rep.rows[i - 1].max_ratio)) rep.strictly_increasing = false;
  return rep;
}

}  // namespace extlab
