#include "extlab/harness.hpp"

#include <chrono>
#include <cstdio>
#include <limits>
#include <random>

namespace extlab {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// ---------------------------------------------------------------- sphere theorem

DirectionSet theorem_direction_set(const OrthonormalSystem& sys, MidpointVariant variant) {
  switch (variant) {
    case MidpointVariant::Diamond: return midpoint_set(sys.support);
    case MidpointVariant::Star: {
      DirectionSet out = empty_set(sys.grid);
      for (const auto& g : sys.members) out = set_union(out, midpoint_set(g.support));
      out.tag = "custom";
      return out;
    }
    case MidpointVariant::Undirected: {
      DirectionSet d = midpoint_set(sys.support);
      DirectionSet out = d;
      for (int k : d.members()) {
        int a = sys.grid->antipode(k);
        if (a < 0) throw DomainError("theorem_direction_set: grid is not antipodally symmetric");
        out.mask[static_cast<std::size_t>(a)] = 1;
      }
      out.recompute_measure();
      return out;
    }
  }
  return sys.support;
}

TheoremSides sphere_theorem_sides(const OrthonormalSystem& sys, const Weight& w, MidpointVariant variant) {
  TheoremSides s;
  KernelMatrix A = assemble_sphere_kernel(w, sys.support);
  Accumulator lhs;
  for (const auto& g : sys.members) {
    double v = kernel_quadratic_form(A, g);
    lhs.add(v * v);
  }
  s.lhs = lhs.value();
  s.rhs = xray_l2sq(w, theorem_direction_set(sys, variant));
  return s;
}

ExperimentResult verify_sphere_theorem(const OrthonormalSystem& sys, const std::vector<Weight>& weights,
                                       MidpointVariant variant, double tol) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  if (sys.grid->dim == 2) require_antipodal_separation(sys.support);
  res.add_check("system orthonormal", sys.gram_deviation() <= sys.tol);
  if (variant == MidpointVariant::Star) {
    double worst = 0.0;
    for (std::size_t j = 0; j < sys.size(); ++j) {
      SurfaceFunction t = sys.members[j].tilde();
      for (std::size_t k = 0; k < sys.size(); ++k)
        if (k != j) worst = std::max(worst, std::abs(sys.members[k].inner(t)));
    }
    res.metadata["max_tilde_overlap"] = worst;
    res.add_check("tilde-orthogonality", worst <= 1e-10);
  }
  DirectionSet E = theorem_direction_set(sys, variant);
  res.metadata["measure_K"] = sys.support.measure;
  res.metadata["measure_E"] = E.measure;
  for (const auto& w : weights) {
    TheoremSides s = sphere_theorem_sides(sys, w, variant);
    res.add("sphere theorem", s.lhs, s.rhs, VerdictMode::Forward, tol);
  }
  res.wall_seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------- Schrodinger

namespace {

std::vector<std::uint8_t> wigner_support(const std::vector<ClassicalWigner>& ws) {
  const ClassicalWigner& W0 = ws.front();
  std::size_t n = W0.values.size();
  std::vector<std::uint8_t> raw(n, 0);
  for (const auto& W : ws) {
    double peak = 0.0;
    for (const auto& v : W.values) peak = std::max(peak, std::abs(v));
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(W.values[k]) > 1e-8 * peak) raw[k] = 1;
  }
  std::vector<std::uint8_t> out(n, 0);
  for (int ix = 0; ix < W0.nx; ++ix)
    for (int iv = 0; iv < W0.nv; ++iv) {
      if (!raw[static_cast<std::size_t>(ix) * W0.nv + iv]) continue;
      for (int dx = -1; dx <= 1; ++dx)
        for (int dv = -1; dv <= 1; ++dv) {
          int a = ix + dx, b = iv + dv;
          if (a >= 0 && a < W0.nx && b >= 0 && b < W0.nv) out[static_cast<std::size_t>(a) * W0.nv + b] = 1;
        }
    }
  return out;
}

}  // namespace

SchrodingerSetup make_schrodinger_setup(int members, int points, double freq_side) {
  SchrodingerSetup s;
  s.freq = BoxGrid{1, freq_side, points};
  s.space = BoxGrid{1, points / freq_side, points};
  double h = s.freq.step();
  std::vector<std::vector<cd>> basis;
  for (int j = 0; j < members; ++j) {
    std::vector<cd> v(static_cast<std::size_t>(points), 0.0);
    for (int k = 0; k < points; ++k) {
      double xi = s.freq.coord(k);
      if (std::abs(xi) < 1.0) v[static_cast<std::size_t>(k)] = std::pow(xi, j) * std::exp(-1.0 / (1.0 - xi * xi));
    }
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        cd p = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) p += h * v[k] * std::conj(b[k]);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= p * b[k];
      }
    double nrm = 0.0;
    for (const auto& c : v) nrm += h * std::norm(c);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-10) throw DomainError("make_schrodinger_setup: dependent profiles");
    for (auto& c : v) c /= nrm;
    basis.push_back(v);
  }
  s.uhat = basis;
  SchrodingerPropagator prop(s.freq, s.space);
  for (const auto& u : s.uhat) {
    s.u0.push_back(prop.evolve(u, 0.0).u);
    s.wigner.push_back(classical_wigner(s.space, s.u0.back()));
  }
  s.support = wigner_support(s.wigner);
  return s;
}

SwappedSetup make_swapped_setup(const SchrodingerSetup& s) {
  SwappedSetup w;
  w.grid = s.freq;
  for (const auto& u : s.uhat) w.wigner.push_back(classical_wigner(s.freq, u));
  w.support = wigner_support(w.wigner);
  return w;
}

SchrodingerSides schrodinger_sides(const SchrodingerSetup& s, const SchrodingerPropagator& prop, const Weight& w) {
  const auto& mix = w.mixture();
  if (mix.dim != 2) throw DomainError("schrodinger_sides: expects a (x,t) mixture");
  std::size_t J = s.uhat.size();
  std::vector<Accumulator> direct(J);
  double hx = s.space.step();
  std::vector<double> gt, gw;
  for (const auto& term : mix.terms) {
    double a = term.center[0], b = term.center[1], sw = term.width;
    gauss_legendre(24, b - 4.0 * sw, b + 4.0 * sw, gt, gw);
    for (std::size_t q = 0; q < gt.size(); ++q) {
      double tf = std::exp(-kPi * (gt[q] - b) * (gt[q] - b) / (sw * sw));
      for (std::size_t j = 0; j < J; ++j) {
        SchrodingerField f = prop.evolve(s.uhat[j], gt[q]);
        Accumulator row;
        for (std::size_t i = 0; i < f.x.size(); ++i)
          row.add(std::norm(f.u[i]) * std::exp(-kPi * (f.x[i] - a) * (f.x[i] - a) / (sw * sw)));
        direct[j].add(term.coeff * gw[q] * tf * row.value() * hx);
      }
    }
  }
  SchrodingerSides out;
  Accumulator lhs, lhs_phase, rhs;
  const ClassicalWigner& W0 = s.wigner.front();
  std::vector<Accumulator> pair(J);
  for (int ix = 0; ix < W0.nx; ++ix)
    for (int iv = 0; iv < W0.nv; ++iv) {
      std::size_t k = static_cast<std::size_t>(ix) * W0.nv + iv;
      if (!s.support[k]) continue;
      double r = rho_adjoint(w, W0.x(ix), W0.v(iv));
      rhs.add(r * r);
      for (std::size_t j = 0; j < J; ++j) pair[j].add(s.wigner[j].values[k].real() * r);
    }
  for (std::size_t j = 0; j < J; ++j) {
    double d = direct[j].value();
    double p = pair[j].value() * W0.cell();
    lhs.add(d * d);
    lhs_phase.add(p * p);
  }
  out.lhs = lhs.value();
  out.lhs_phase = lhs_phase.value();
  out.rhs = rhs.value() * W0.cell();
  return out;
}

SchrodingerSides swapped_sides(const SwappedSetup& s, const Weight& w) {
  std::size_t J = s.wigner.size();
  const ClassicalWigner& W0 = s.wigner.front();
  std::vector<Accumulator> pair(J);
  Accumulator rhs;
  for (int ix = 0; ix < W0.nx; ++ix)
    for (int iv = 0; iv < W0.nv; ++iv) {
      std::size_t k = static_cast<std::size_t>(ix) * W0.nv + iv;
      if (!s.support[k]) continue;
      double r = rho_adjoint(w, -W0.v(iv), W0.x(ix));
      rhs.add(r * r);
      for (std::size_t j = 0; j < J; ++j) pair[j].add(s.wigner[j].values[k].real() * r);
    }
  SchrodingerSides out;
  Accumulator lhs;
  for (std::size_t j = 0; j < J; ++j) {
    double p = pair[j].value() * W0.cell();
    lhs.add(p * p);
  }
  out.lhs = out.lhs_phase = lhs.value();
  out.rhs = rhs.value() * W0.cell();
  return out;
}

ExperimentResult verify_schrodinger_theorem(const SchrodingerSetup& setup, const std::vector<Weight>& weights,
                                            double tol) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  SchrodingerPropagator prop(setup.freq, setup.space);
  SwappedSetup sw = make_swapped_setup(setup);
  for (const auto& w : weights) {
    SchrodingerSides a = schrodinger_sides(setup, prop, w);
    res.add("schrodinger theorem", a.lhs, a.rhs, VerdictMode::Forward, tol);
    SchrodingerSides b = swapped_sides(sw, w);
    res.add("fourier-swapped theorem", b.lhs, b.rhs, VerdictMode::Forward, tol);
    double ra = safe_ratio(a.lhs, a.rhs, VerdictMode::Identity);
    double rb = safe_ratio(b.lhs, b.rhs, VerdictMode::Identity);
    res.add("swapped ratio agreement", rb, ra, VerdictMode::Identity, 1e-2);
    res.add("transport identity", a.lhs_phase, a.lhs, VerdictMode::Identity, 1e-3);
  }
  res.wall_seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------- tomographic lemma

TomographicSides tomographic_sides_indicator(const DirectionSet& K, const Weight& phi) {
  const SphereGrid& G = *K.grid;
  auto mem = K.members();
  TomographicSides s;
  Accumulator lhs;
  for (int i : mem)
    for (int j : mem) {
      auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
      lhs.add(G.qweights[a] * G.qweights[b] * phi.eval(G.nodes[a] - G.nodes[b]));
    }
  s.lhs = lhs.value();
  DirectionSet mid = midpoint_set(K);
  Accumulator rhs;
  for (int k : mid.members())
    rhs.add(G.qweights[static_cast<std::size_t>(k)] * radon0(phi, G.nodes[static_cast<std::size_t>(k)]));
  s.rhs = rhs.value();
  return s;
}

TomographicSides tomographic_sides_bilinear(const SphereFn& g1, const SphereFn& g2, GridPtr grid, const Weight& phi) {
  const SphereGrid& G = *grid;
  std::size_t n = G.size();
  std::vector<double> v1(n), v2(n);
  for (std::size_t k = 0; k < n; ++k) {
    v1[k] = g1(G.nodes[k]).real();
    v2[k] = g2(G.nodes[k]).real();
    if (v1[k] < -1e-14 || v2[k] < -1e-14) throw DomainError("tomographic_sides: amplitudes must be nonnegative");
  }
  TomographicSides s;
  Accumulator lhs;
  for (std::size_t a = 0; a < n; ++a) {
    if (v1[a] == 0.0) continue;
    for (std::size_t b = 0; b < n; ++b)
      if (v2[b] != 0.0) lhs.add(G.qweights[a] * G.qweights[b] * v1[a] * v2[b] * phi.eval(G.nodes[a] - G.nodes[b]));
  }
  s.lhs = lhs.value();
  Accumulator rhs;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& om = G.nodes[k];
    double best = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      if (v1[a] == 0.0) continue;
      double d = om.dot(G.nodes[a]);
      if (d < 0.0) continue;
      best = std::max(best, v1[a] * g2(reflect(om, G.nodes[a])).real());
    }
    if (best > 0.0) rhs.add(G.qweights[k] * best * radon0(phi, om));
  }
  s.rhs = rhs.value();
  return s;
}

ExperimentResult verify_tomographic_weak(const std::vector<DirectionSet>& sets, const std::vector<Weight>& phis,
                                         double tol) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  for (std::size_t i = 0; i < sets.size() && i < phis.size(); ++i) {
    TomographicSides s = tomographic_sides_indicator(sets[i], phis[i]);
    res.add("weak form, indicator", s.lhs, s.rhs, VerdictMode::Forward, tol);
  }
  res.wall_seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------- Agmon-Hormander

double RadialWeight::eval(double r) const {
  if (kind == Kind::Gaussian) return std::exp(-kPi * r * r / (scale * scale));
  if (r >= scale) return 0.0;
  double u = 1.0 - r * r / (scale * scale);
  return u * u * u;
}

double RadialWeight::support() const { return kind == Kind::Gaussian ? 6.0 * scale : scale; }

double agmon_hormander_ratio(const std::vector<double>& shell_energy, const RadialWeight& w, double R) {
  double rmax = w.support();
  int panels = static_cast<int>(std::ceil(8.0 * R * rmax)) + 8;
  std::vector<double> x, wt;
  gauss_legendre(8, x, wt);
  double hp = rmax / panels;
  Accumulator num, line;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < x.size(); ++i) {
      double r = (p + 0.5 * (x[i] + 1.0)) * hp;
      double q = 0.5 * hp * wt[i];
      double wr = w.eval(r);
      line.add(q * wr);
      double z = kTwoPi * R * r;
      double acc = 0.0;
      for (std::size_t l = 0; l < shell_energy.size(); ++l) {
        if (shell_energy[l] == 0.0) continue;
        double j = std::sph_bessel(static_cast<unsigned>(l), z);
        acc += shell_energy[l] * j * j;
      }
      num.add(q * wr * r * r * acc);
    }
  double energy = 0.0;
  for (double e : shell_energy) energy += e;
  double lhs = R * R * 16.0 * kPi * kPi * num.value();
  double phi = energy * 2.0 * line.value();
  return lhs / phi;
}

ExperimentResult verify_agmon_hormander(const std::vector<std::vector<double>>& shells,
                                        const std::vector<RadialWeight>& weights, const std::vector<double>& Rs,
                                        double tol) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  std::size_t P = std::min(shells.size(), weights.size());
  if (P == 0 || Rs.size() < 2) throw DomainError("verify_agmon_hormander: need pairs and at least two radii");
  std::vector<double> last;
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < P; ++i) {
    std::vector<double> seq;
    for (double R : Rs) seq.push_back(agmon_hormander_ratio(shells[i], weights[i], R));
    table.push_back(seq);
    res.add("cauchy step at largest R", seq.back(), seq[seq.size() - 2], VerdictMode::Identity, tol);
    last.push_back(seq.back());
    std::vector<double> tripled = shells[i];
    for (double& e : tripled) e *= 3.0;
    res.add("homogeneity in |g|^2", agmon_hormander_ratio(tripled, weights[i], Rs.back()), seq.back(),
            VerdictMode::Identity, 1e-12);
  }
  double mean = 0.0;
  for (double v : last) mean += v;
  mean /= static_cast<double>(last.size());
  for (double v : last) res.add("pair agreement at largest R", v, mean, VerdictMode::Identity, tol);
  res.metadata["ratios"] = table;
  res.metadata["radii"] = Rs;
  res.metadata["common_constant"] = mean;
  res.metadata["reference_constant_2pi_pow"] = std::pow(kTwoPi, -4.0);
  res.metadata["note"] = "kernel exp(-2 pi i x.xi); the limit constant is 1 in this normalization";
  res.wall_seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------- interpolant

ExperimentResult verify_interpolant(const OrthonormalSystem& sys, const std::vector<Weight>& weights,
                                    const std::vector<double>& ps, double tol) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  const double c3 = 4.0 * kPi * kPi;
  double envelope = std::max(sys.support.measure, c3);
  res.metadata["envelope"] = envelope;
  nlohmann::json constants = nlohmann::json::object();
  DirectionSet full = full_set(sys.grid);
  for (const auto& w : weights) {
    KernelMatrix A = assemble_sphere_kernel(w, sys.support);
    std::vector<double> a;
    for (const auto& g : sys.members) a.push_back(kernel_quadratic_form(A, g));
    double l2 = frac_laplacian_l2sq(w, -0.25);
    res.add("X-ray norm vs Riesz potential constant", xray_l2sq(w, full) / l2, c3, VerdictMode::Identity, 1e-2);
    for (double p : ps) {
      Accumulator lhs;
      for (double v : a) lhs.add(std::pow(std::abs(v), p));
      std::string key = format_number(p);
      if (p == 1.0) {
        if (!w.nonnegative()) throw DomainError("verify_interpolant: the p=1 route needs a nonnegative weight");
        double l1 = w.total_mass();
        res.add("p=1 Bessel route", lhs.value(), sys.support.measure * l1, VerdictMode::Forward, tol);
        constants[key] = std::max(constants.value(key, 0.0), lhs.value() / l1);
        continue;
      }
      if (p == 2.0) {
        FracLaplacianReport fr = frac_laplacian_norm(w, -0.25, 2.0);
        res.add("Riesz potential grid vs Plancherel", fr.value * fr.value, l2, VerdictMode::Identity, 1e-2);
        res.add("p=2 theorem constant", lhs.value(), c3 * l2, VerdictMode::Forward, tol);
        constants[key] = std::max(constants.value(key, 0.0), lhs.value() / l2);
        continue;
      }
      double s = -0.5 * (1.0 - 1.0 / p);
      double rhs = std::pow(frac_laplacian_norm(w, s, p).value, p);
      res.add("interpolant envelope", lhs.value(), envelope * rhs, VerdictMode::Forward, 0.0);
      constants[key] = std::max(constants.value(key, 0.0), lhs.value() / rhs);
    }
  }
  res.metadata["best_constants"] = constants;
  res.wall_seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------- reverse inequalities

TorusReverseSides torus_reverse_sides(const TorusSystem& sys, const std::vector<double>& weight, double p) {
  auto N = static_cast<std::size_t>(sys.N);
  if (weight.size() != N) throw DomainError("torus_reverse_sides: weight length must equal N");
  TorusReverseSides s;
  Accumulator lhs;
  for (Eigen::Index j = 0; j < sys.hat.rows(); ++j) {
    Accumulator a;
    for (std::size_t v = 0; v < N; ++v) a.add(std::norm(sys.hat(j, static_cast<Eigen::Index>(v))) * weight[v]);
    lhs.add(std::pow(a.value() / sys.N, p));
  }
  s.lhs = lhs.value();
  Accumulator rhs;
  for (double x : weight) rhs.add(std::pow(x, p));
  s.rhs = static_cast<double>(sys.K.size()) * rhs.value() / sys.N;
  return s;
}

ExperimentResult verify_reverse(const TorusSystem& sys, const std::vector<std::vector<double>>& weights,
                                const std::vector<double>& ps, double tol) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.add_check("complete system", sys.size() == sys.K.size() && sys.gram_deviation() <= 1e-12);
  for (double p : ps)
    for (const auto& w : weights) {
      TorusReverseSides s = torus_reverse_sides(sys, w, p);
      if (p == 1.0) res.add("p=1 completeness identity", s.lhs, s.rhs, VerdictMode::Identity, 1e-12);
      else res.add("reverse inequality p=" + format_number(p), s.lhs, s.rhs, VerdictMode::Reverse, tol);
    }
  res.wall_seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------- autocorrelation weights

ExperimentResult verify_stein_autocorrelation(GridPtr grid, const std::vector<SphereFn>& gs,
                                              const std::vector<Weight>& weights, double constant_bound,
                                              std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  DirectionSet full = full_set(grid);
  double best = 0.0;
  for (std::size_t i = 0; i < gs.size() && i < weights.size(); ++i) {
    const Weight& w = weights[i];
    if (!w.nonnegative()) throw DomainError("verify_stein_autocorrelation: weights must be nonnegative");
    Weight ac = autocorrelate(w);
    for (int d = 0; d < 3; ++d) {
      Vec3 om(nd(rng), nd(rng), nd(rng));
      om.normalize();
      TangentFrame fr = tangent_frame(om, 3);
      double peak = xray(ac, om, Vec3::Zero());
      double worst = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < 8; ++k) {
        Vec3 v = nd(rng) * fr.e1 + nd(rng) * fr.e2;
        worst = std::max(worst, xray(ac, om, v));
      }
      res.add("peak at the origin", worst, peak, VerdictMode::Forward, 1e-12);
    }
    SurfaceFunction g = SurfaceFunction::from_callable(grid, gs[i]);
    KernelMatrix A = assemble_sphere_kernel(ac, full);
    double lhs = kernel_quadratic_form(A, g);
    Accumulator rhs;
    for (std::size_t k = 0; k < grid->size(); ++k)
      if (g.values[k] != 0.0) rhs.add(grid->qweights[k] * std::norm(g.values[k]) * xray_plane_l2sq(w, grid->nodes[k]));
    double c = safe_ratio(lhs, rhs.value(), VerdictMode::Forward);
    best = std::max(best, c);
    res.add("autocorrelation weight constant", lhs, constant_bound * rhs.value(), VerdictMode::Forward, 0.0);
  }
  res.metadata["best_constant"] = best;
  res.metadata["constant_bound"] = constant_bound;
  res.wall_seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------- reports

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trials_csv(const ExperimentResult& r, bool header) {
  std::string out;
  if (header) out += "experiment,trial,lhs,rhs,ratio,verdict\n";
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const Trial& t = r.trials[i];
    std::string label = t.label;
    for (char& c : label)
      if (c == ',' || c == '\n' || c == '"') c = ';';
    out += r.id + "," + std::to_string(i) + ":" + label + "," + format_number(t.lhs) + "," + format_number(t.rhs) +
           "," + format_number(t.ratio) + "," + (t.pass ? "PASS" : "FAIL") + "\n";
  }
  return out;
}

nlohmann::json summary_json(const ExperimentResult& r) {
  nlohmann::json j;
  j["experiment"] = r.id;
  j["trials"] = r.trials.size();
  j["max_ratio"] = r.max_ratio();
  j["verdict"] = r.verdict() ? "PASS" : "FAIL";
  return j;
}

}  // namespace extlab
