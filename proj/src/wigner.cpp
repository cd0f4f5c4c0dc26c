#include "extlab/wigner.hpp"

#include <fftw3.h>

#include <mutex>

namespace extlab {

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// In-place complex DFT; sign = FFTW_FORWARD (e^{-2 pi i}) or FFTW_BACKWARD.
void dft(std::vector<cd>& a, int sign) {
  int n = static_cast<int>(a.size());
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

double ClassicalWigner::max_imag() const {
  double m = 0.0;
  for (const auto& c : values) m = std::max(m, std::abs(c.imag()));
  return m;
}

std::vector<cd> upsample2(const std::vector<cd>& u) {
  std::size_t n = u.size();
  if (n % 2 != 0 || n == 0) throw DomainError("upsample2: even sample count required");
  std::vector<cd> spec = u;
  dft(spec, FFTW_FORWARD);
  std::vector<cd> pad(2 * n, 0.0);
  for (std::size_t k = 0; k < n / 2; ++k) pad[k] = spec[k];
  for (std::size_t k = n / 2 + 1; k < n; ++k) pad[n + k] = spec[k];
  pad[n / 2] = 0.5 * spec[n / 2];
  pad[2 * n - n / 2] = 0.5 * spec[n / 2];
  dft(pad, FFTW_BACKWARD);
  for (auto& x : pad) x /= static_cast<double>(n);
  return pad;
}

ClassicalWigner classical_wigner(const BoxGrid& grid, const std::vector<cd>& f, const std::vector<cd>& g) {
  if (grid.dim != 1) throw DomainError("classical_wigner: d=1 grids only");
  if (f.size() != grid.size() || g.size() != grid.size())
    throw DomainError("classical_wigner: sample count mismatch");
  auto ff = upsample2(f);
  auto gg = upsample2(g);
  int M = static_cast<int>(ff.size());
  int P = 2 * M;
  double h = grid.step();
  ClassicalWigner W;
  W.nx = M;
  W.dx = 0.5 * h;
  W.x0 = -0.5 * grid.side;
  W.nv = P;
  W.dv = 1.0 / (P * h);
  W.v0 = -0.5 / h;
  W.values.assign(static_cast<std::size_t>(M) * P, 0.0);
  std::vector<cd> buf(static_cast<std::size_t>(P));
  for (int m = 0; m < M; ++m) {
    std::fill(buf.begin(), buf.end(), cd(0.0));
    int K = std::min(m, M - 1 - m);
    for (int k = -K; k <= K; ++k) {
      cd a = h * ff[static_cast<std::size_t>(m + k)] * std::conj(gg[static_cast<std::size_t>(m - k)]);
      if (k & 1) a = -a;
      buf[static_cast<std::size_t>((k + P) % P)] = a;
    }
    dft(buf, FFTW_FORWARD);
    std::copy(buf.begin(), buf.end(), W.values.begin() + static_cast<std::ptrdiff_t>(m) * P);
  }
  return W;
}

ClassicalWigner classical_wigner(const BoxGrid& grid, const std::vector<cd>& u) {
  ClassicalWigner W = classical_wigner(grid, u, u);
  return W;
}

cd phase_inner(const ClassicalWigner& a, const ClassicalWigner& b) {
  if (a.values.size() != b.values.size()) throw DomainError("phase_inner: grids differ");
  CAccumulator acc;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc.add(a.values[i] * std::conj(b.values[i]));
  return acc.value() * a.cell();
}

MoyalReport moyal_classical(const BoxGrid& grid, const std::vector<cd>& f1, const std::vector<cd>& f2,
                            const std::vector<cd>& g1, const std::vector<cd>& g2) {
  auto ip = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
    CAccumulator acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * std::conj(b[i]));
    return acc.value() * grid.step();
  };
  MoyalReport r;
  r.phase_space = phase_inner(classical_wigner(grid, f1, f2), classical_wigner(grid, g1, g2));
  r.product = ip(f1, g1) * std::conj(ip(f2, g2));
  r.discrepancy = std::abs(r.phase_space - r.product);
  return r;
}

std::vector<double> velocity_average(const ClassicalWigner& W, double t) {
  int len = 2 * W.nx;
  std::vector<double> out(static_cast<std::size_t>(W.nx), 0.0);
  std::vector<cd> col(static_cast<std::size_t>(len));
  double period = len * W.dx;
  for (int l = 0; l < W.nv; ++l) {
    double shift = t * W.v(l);
    double peak = 0.0;
    for (int m = 0; m < W.nx; ++m) peak = std::max(peak, std::abs(W.at(m, l)));
    if (peak == 0.0) continue;
    std::fill(col.begin(), col.end(), cd(0.0));
    for (int m = 0; m < W.nx; ++m) col[static_cast<std::size_t>(m)] = W.at(m, l).real();
    dft(col, FFTW_FORWARD);
    for (int k = 0; k < len; ++k) {
      int ks = k < len / 2 ? k : k - len;
      if (ks == -len / 2) {
        col[static_cast<std::size_t>(k)] *= std::cos(kPi * len * shift / period);
        continue;
      }
      col[static_cast<std::size_t>(k)] *= std::polar(1.0, kTwoPi * ks * shift / period);
    }
    dft(col, FFTW_BACKWARD);
    for (int m = 0; m < W.nx; ++m) out[static_cast<std::size_t>(m)] += col[static_cast<std::size_t>(m)].real() / len * W.dv;
  }
  return out;
}

std::vector<cd> fourier_samples(const BoxGrid& grid, const std::vector<cd>& u, const BoxGrid& target) {
  std::vector<cd> out(target.size());
  for (int k = 0; k < target.points; ++k) {
    double xi = target.coord(k);
    CAccumulator acc;
    for (int i = 0; i < grid.points; ++i) acc.add(u[static_cast<std::size_t>(i)] * fourier_kernel(grid.coord(i) * xi));
    out[static_cast<std::size_t>(k)] = acc.value() * grid.step();
  }
  return out;
}

// ---------------------------------------------------------------- spherical

LocalNodes hemisphere_nodes(const Vec3& omega, int dim, const HemisphereRule& rule) {
  LocalNodes ln;
  TangentFrame fr = tangent_frame(omega, dim);
  std::vector<double> x, w;
  if (dim == 2) {
    gauss_legendre(rule.n_c, -0.5 * kPi, 0.5 * kPi, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      ln.nodes.push_back(std::cos(x[i]) * omega + std::sin(x[i]) * fr.e1);
      ln.weights.push_back(w[i]);
      ln.cosines.push_back(std::cos(x[i]));
    }
    return ln;
  }
  gauss_legendre(rule.n_c, 0.0, 1.0, x, w);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double c = x[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < rule.n_phi; ++j) {
      double phi = kTwoPi * (j + 0.5) / rule.n_phi;
      ln.nodes.push_back(c * omega + s * (std::cos(phi) * fr.e1 + std::sin(phi) * fr.e2));
      ln.weights.push_back(w[i] * kTwoPi / rule.n_phi);
      ln.cosines.push_back(c);
    }
  }
  return ln;
}

std::vector<cd> spherical_wigner(const SphereFn& g1, const SphereFn& g2, int dim, const Vec3& omega,
                                 const std::vector<Vec3>& vs, const HemisphereRule& rule) {
  LocalNodes ln = hemisphere_nodes(omega, dim, rule);
  double pref = std::pow(2.0, dim - 2);
  // both hemispheres: omega' and -omega'
  std::vector<cd> amp;
  std::vector<Vec3> dir;
  for (std::size_t i = 0; i < ln.nodes.size(); ++i) {
    for (int s = 0; s < 2; ++s) {
      Vec3 wp = s == 0 ? ln.nodes[i] : Vec3(-ln.nodes[i]);
      Vec3 rw = reflect(omega, wp);
      cd a = g1(wp) * std::conj(g2(rw));
      if (a == 0.0) continue;
      amp.push_back(pref * ln.weights[i] * std::pow(ln.cosines[i], dim - 2) * a);
      dir.push_back(wp - rw);
    }
  }
  std::vector<cd> out(vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    CAccumulator acc;
    for (std::size_t i = 0; i < amp.size(); ++i) acc.add(amp[i] * fourier_kernel(dir[i].dot(vs[j])));
    out[j] = acc.value();
  }
  return out;
}

double adjoint_xray_wigner(const SphereFn& g, const SphereGrid& outer, const Vec3& x, const HemisphereRule& rule) {
  Accumulator acc;
  for (std::size_t k = 0; k < outer.size(); ++k) {
    const Vec3& om = outer.nodes[k];
    Vec3 v = x - x.dot(om) * om;
    acc.add(outer.qweights[k] * spherical_wigner(g, g, outer.dim, om, {v}, rule)[0].real());
  }
  return acc.value();
}

SphericalMoyalReport moyal_spherical(const SphereFn& f1, const SphereFn& f2, const SphereFn& g1,
                                     const SphereFn& g2, GridPtr grid, const HemisphereRule& rule) {
  int n = grid->dim;
  auto tilde = [](const SphereFn& f) { return [f](const Vec3& w) { return std::conj(f(-w)); }; };
  SphereFn tf1 = tilde(f1), tf2 = tilde(f2), tg1 = tilde(g1), tg2 = tilde(g2);
  double pref = std::pow(2.0, n - 3);
  CAccumulator outer;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    const Vec3& om = grid->nodes[k];
    LocalNodes ln = hemisphere_nodes(om, n, rule);
    CAccumulator inner;
    for (std::size_t i = 0; i < ln.nodes.size(); ++i) {
      const Vec3& wp = ln.nodes[i];
      Vec3 rw = reflect(om, wp);
      cd Ff = f1(wp) * std::conj(f2(rw)) + tf2(wp) * std::conj(tf1(rw));
      cd Fg = g1(wp) * std::conj(g2(rw)) + tg2(wp) * std::conj(tg1(rw));
      if (Ff == 0.0 || Fg == 0.0) continue;
      inner.add(ln.weights[i] * std::pow(ln.cosines[i], 2 * n - 5) * Ff * std::conj(Fg));
    }
    outer.add(grid->qweights[k] * pref * inner.value());
  }
  SphericalMoyalReport r;
  r.phase_space = outer.value();
  r.formula = moyal_formula(SurfaceFunction::from_callable(grid, f1, 0.0), SurfaceFunction::from_callable(grid, f2, 0.0),
                            SurfaceFunction::from_callable(grid, g1, 0.0), SurfaceFunction::from_callable(grid, g2, 0.0));
  r.discrepancy = std::abs(r.phase_space - r.formula);
  return r;
}

namespace {

// int a(w') int b(w) |w + w'|^{n-3} dsigma dsigma on the grid; coincident antipodes skipped for n=2.
cd double_integral(const SphereGrid& G, const std::vector<cd>& a, const std::vector<cd>& b) {
  if (G.dim == 3) {
    CAccumulator sa, sb;
    for (std::size_t k = 0; k < G.size(); ++k) {
      sa.add(G.qweights[k] * a[k]);
      sb.add(G.qweights[k] * b[k]);
    }
    return sa.value() * sb.value();
  }
  CAccumulator acc;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (b[j] == 0.0) continue;
      double d = (G.nodes[i] + G.nodes[j]).norm();
      if (d < 1e-12) continue;
      acc.add(G.qweights[i] * G.qweights[j] * a[i] * b[j] / d);
    }
  }
  return acc.value();
}

}  // namespace

cd moyal_formula(const SurfaceFunction& f1, const SurfaceFunction& f2, const SurfaceFunction& g1,
                 const SurfaceFunction& g2) {
  const SphereGrid& G = *f1.grid;
  SurfaceFunction tg1 = g1.tilde(), tg2 = g2.tilde();
  std::size_t m = G.size();
  std::vector<cd> a1(m), b1(m), a2(m), b2(m);
  for (std::size_t k = 0; k < m; ++k) {
    a1[k] = f1.values[k] * std::conj(g1.values[k]);
    b1[k] = std::conj(f2.values[k]) * g2.values[k];
    a2[k] = f1.values[k] * std::conj(tg2.values[k]);
    b2[k] = std::conj(f2.values[k]) * tg1.values[k];
  }
  double pref = std::pow(2.0, -(G.dim - 2));
  return pref * (double_integral(G, a1, b1) + double_integral(G, a2, b2));
}

KernelLReport kernel_L(const OrthonormalSystem& sys) {
  const SphereGrid& G = *sys.grid;
  auto m = static_cast<Eigen::Index>(sys.size());
  KernelLReport r;
  r.L = Eigen::MatrixXd::Zero(m, m);
  std::vector<SurfaceFunction> tildes;
  for (const auto& g : sys.members) tildes.push_back(g.tilde());
  std::size_t nn = G.size();
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& gj = sys.members[static_cast<std::size_t>(j)].values;
      const auto& gk = sys.members[static_cast<std::size_t>(k)].values;
      const auto& tk = tildes[static_cast<std::size_t>(k)].values;
      std::vector<cd> a1(nn), b1(nn), a2(nn), b2(nn);
      for (std::size_t i = 0; i < nn; ++i) {
        a1[i] = gj[i] * std::conj(gk[i]);
        b1[i] = std::conj(gj[i]) * gk[i];
        a2[i] = gj[i] * std::conj(tk[i]);
        b2[i] = std::conj(gj[i]) * tk[i];
      }
      r.L(j, k) = (double_integral(G, a1, b1) + double_integral(G, a2, b2)).real();
    }
  if (G.dim == 3) {
    r.reduced = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index k = 0; k < m; ++k) {
        const auto& gj = sys.members[static_cast<std::size_t>(j)];
        r.reduced(j, k) = std::norm(gj.inner(sys.members[static_cast<std::size_t>(k)])) +
                          std::norm(gj.inner(tildes[static_cast<std::size_t>(k)]));
      }
    r.reduction_gap = (r.L - r.reduced).cwiseAbs().maxCoeff();
  }
  for (Eigen::Index j = 0; j < m; ++j) r.schur_bound = std::max(r.schur_bound, r.L.row(j).cwiseAbs().sum());
  return r;
}

}  // namespace extlab
