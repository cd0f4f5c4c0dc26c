#include "extlab/harness.hpp"

#include <chrono>
#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace extlab {

namespace {

using json = nlohmann::json;

Vec3 random_unit(std::mt19937_64& rng, int dim = 3) {
  std::normal_distribution<double> nd;
  Vec3 v(nd(rng), nd(rng), dim == 3 ? nd(rng) : 0.0);
  return v.normalized();
}

Vec3 random_in_ball(std::mt19937_64& rng, double radius, int dim = 3) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  return radius * std::pow(ud(rng), 1.0 / dim) * random_unit(rng, dim);
}

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

int uniform_int(std::mt19937_64& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

Weight random_mixture(std::mt19937_64& rng, int dim, int terms, double radius, double wmin, double wmax,
                      bool signed_coeffs) {
  GaussianMixture m;
  m.dim = dim;
  for (int t = 0; t < terms; ++t) {
    double c = signed_coeffs ? uniform(rng, -1.0, 1.0) : uniform(rng, 0.2, 1.0);
    m.terms.push_back({c, random_in_ball(rng, radius, dim), uniform(rng, wmin, wmax)});
  }
  return Weight(std::move(m), !signed_coeffs);
}

Weight single_gaussian(int dim, const Vec3& center, double width, double coeff = 1.0) {
  GaussianMixture m;
  m.dim = dim;
  m.terms.push_back({coeff, center, width});
  return Weight(std::move(m), coeff >= 0.0);
}

Weight zero_weight(int dim) {
  GaussianMixture m;
  m.dim = dim;
  return Weight(std::move(m), true);
}

// Orthonormalized cap bumps with random centres, radii and modulations.
OrthonormalSystem random_bump_system(GridPtr grid, std::mt19937_64& rng, int count, double rmin, double rmax,
                                     double mod) {
  std::vector<SphereFn> raw;
  for (int j = 0; j < count; ++j)
    raw.push_back(cap_bump(random_unit(rng), uniform(rng, rmin, rmax), random_in_ball(rng, mod)));
  return orthonormalize(grid, raw);
}

// Rotation about the z axis; maps a product grid with n_phi azimuths onto itself when angle = k 2pi/n_phi.
Eigen::Matrix3d z_rotation(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
}

std::vector<Vec3> fibonacci_points(int n) {
  std::vector<Vec3> out;
  double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double r = std::sqrt(1.0 - z * z);
    out.emplace_back(r * std::cos(golden * i), r * std::sin(golden * i), z);
  }
  return out;
}

// ------------------------------------------------------------ classical Moyal

std::vector<cd> random_packet(const BoxGrid& g, std::mt19937_64& rng) {
  std::vector<cd> u(g.size(), 0.0);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 3; ++t) {
    cd amp(nd(rng), nd(rng));
    double a = uniform(rng, -1.5, 1.5), s = uniform(rng, 0.5, 1.0), xi = uniform(rng, -2.0, 2.0);
    for (int i = 0; i < g.points; ++i) {
      double x = g.coord(i);
      u[static_cast<std::size_t>(i)] += amp * std::exp(-kPi * (x - a) * (x - a) / (s * s)) * std::conj(fourier_kernel(xi * x));
    }
  }
  return u;
}

double l2sq(const BoxGrid& g, const std::vector<cd>& u) {
  Accumulator acc;
  for (const auto& c : u) acc.add(std::norm(c));
  return acc.value() * g.step();
}

ExperimentResult run_classical_moyal(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  BoxGrid g{1, ctx.params["side"].get<double>(), ctx.params["points"].get<int>()};
  double budget = ctx.params["relative_budget"].get<double>();
  ExperimentResult res;
  for (int t = 0; t < ctx.params["pairs"].get<int>(); ++t) {
    auto f = random_packet(g, rng), h = random_packet(g, rng);
    MoyalReport m = moyal_classical(g, f, f, h, h);
    res.add("moyal pair", m.discrepancy, budget * l2sq(g, f) * l2sq(g, h), VerdictMode::Forward, 0.0);
  }
  std::vector<cd> gauss(g.size());
  for (int i = 0; i < g.points; ++i) gauss[static_cast<std::size_t>(i)] = std::pow(2.0, 0.25) * std::exp(-kPi * g.coord(i) * g.coord(i));
  MoyalReport m = moyal_classical(g, gauss, gauss, gauss, gauss);
  res.add("gaussian self pairing", m.phase_space.real(), 1.0, VerdictMode::Identity, budget);

  // Disjoint frequency bands give an orthogonal pair.
  std::vector<cd> lo(g.size()), hi(g.size());
  for (int i = 0; i < g.points; ++i) {
    double x = g.coord(i), env = std::exp(-kPi * x * x / 1.5);
    lo[static_cast<std::size_t>(i)] = env * std::conj(fourier_kernel(-2.0 * x));
    hi[static_cast<std::size_t>(i)] = env * std::conj(fourier_kernel(2.0 * x));
  }
  m = moyal_classical(g, lo, lo, hi, hi);
  res.add("orthogonal pair", std::abs(m.phase_space), budget * l2sq(g, lo) * l2sq(g, hi), VerdictMode::Forward, 0.0);

  // Fourier invariance: the pairing is unchanged when both data are transformed.
  auto f = random_packet(g, rng), h = random_packet(g, rng);
  BoxGrid dual{1, g.points / g.side, g.points};
  auto fh = fourier_samples(g, f, dual), hh = fourier_samples(g, h, dual);
  cd direct = phase_inner(classical_wigner(g, f), classical_wigner(g, h));
  cd swapped = phase_inner(classical_wigner(dual, fh), classical_wigner(dual, hh));
  res.add("fourier invariance", std::abs(direct - swapped), budget * l2sq(g, f) * l2sq(g, h), VerdictMode::Forward, 0.0);

  // Velocity marginal at t = 0 recovers |f|^2 on the half-step grid.
  ClassicalWigner W = classical_wigner(g, f);
  auto rho = velocity_average(W, 0.0);
  auto up = upsample2(f);
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    worst = std::max(worst, std::abs(rho[i] - std::norm(up[i])));
    peak = std::max(peak, std::norm(up[i]));
  }
  res.add("velocity marginal", worst, budget * peak, VerdictMode::Forward, 0.0);
  res.metadata["grid"] = {{"points", g.points}, {"side", g.side}};
  return res;
}

// ------------------------------------------------------------ spherical Moyal

ExperimentResult run_spherical_moyal(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  GridPtr grid = build_sphere_grid(3, ctx.params["n_theta"].get<int>(), ctx.params["n_phi"].get<int>());
  double rel = ctx.params["relative_tol"].get<double>();
  HemisphereRule rule{ctx.params["rule_nodes"].get<int>(), 2 * ctx.params["rule_nodes"].get<int>()};
  ExperimentResult res;
  for (int t = 0; t < ctx.params["quadruples"].get<int>(); ++t) {
    SphereFn f[4];
    for (auto& fn : f) fn = random_smooth_function(rng, 3, 2, 2.0, 5.0);
    SphericalMoyalReport m = moyal_spherical(f[0], f[1], f[2], f[3], grid, rule);
    double scale = std::max(std::abs(m.formula), 1e-300);
    res.add("phase space vs formula", m.discrepancy, rel * scale, VerdictMode::Forward, 0.0);
  }
  // Amplitude supported in the open upper hemisphere.
  SphereFn cap = cap_bump(Vec3::UnitZ(), 1.2);
  SurfaceFunction s = SurfaceFunction::from_callable(grid, cap);
  double n2 = s.norm() * s.norm();
  SphericalMoyalReport m = moyal_spherical(cap, cap, cap, cap, grid, rule);
  res.add("hemisphere self pairing", m.phase_space.real() / (n2 * n2), 0.5, VerdictMode::Identity, rel);

  // |E g|^2 against the adjoint X-ray transform of W(g, g).
  int outer_n = ctx.params["outer_n_theta"].get<int>();
  GridPtr outer = build_sphere_grid(3, outer_n, 2 * outer_n);
  SurfaceFunction gs = SurfaceFunction::from_callable(build_sphere_grid(3, 48, 96), cap);
  for (int k = 0; k < 3; ++k) {
    Vec3 x = random_in_ball(rng, 1.5);
    double direct = std::norm(extension_at(gs, x));
    double adj = adjoint_xray_wigner(cap, *outer, x, rule);
    res.add("adjoint X-ray of Wigner", adj, direct, VerdictMode::Identity, rel);
  }
  OrthonormalSystem sys = random_bump_system(grid, rng, 4, 0.3, 0.6, 1.0);
  KernelLReport L = kernel_L(sys);
  res.metadata["schur_bound"] = L.schur_bound;
  res.metadata["reduction_gap"] = L.reduction_gap;
  res.add("kernel L reduction", L.reduction_gap, rel, VerdictMode::Forward, 0.0);
  return res;
}

// ------------------------------------------------------------ Bessel pointwise bound

ExperimentResult run_bessel_pointwise(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  GridPtr grid = build_sphere_grid(3, ctx.params["n_theta"].get<int>(), ctx.params["n_phi"].get<int>());
  int points = ctx.params["points"].get<int>();
  double radius = ctx.params["radius"].get<double>();
  double tol = ctx.params["slack"].get<double>();
  ExperimentResult res;

  std::vector<Vec3> centers = fibonacci_points(10);
  std::vector<double> radii(10, 0.3);
  std::vector<Vec3> mods;
  for (int j = 0; j < 10; ++j) mods.push_back(random_in_ball(rng, 3.0));
  OrthonormalSystem packets = make_wavepackets(grid, centers, radii, mods);

  std::vector<SphereFn> hs;
  for (int l = 0; l <= 3 && hs.size() < 10; ++l)
    for (int m = -l; m <= l && hs.size() < 10; ++m) hs.push_back([l, m](const Vec3& w) -> cd { return real_harmonic(l, m, w); });
  OrthonormalSystem harm = orthonormalize(grid, hs);

  std::vector<Vec3> X;
  for (int i = 0; i < points; ++i) X.push_back(random_in_ball(rng, radius));
  for (const auto* sys : {&packets, &harm}) {
    std::vector<double> total(X.size(), 0.0);
    for (const auto& g : sys->members) {
      auto e = extension(g, X);
      for (std::size_t i = 0; i < X.size(); ++i) total[i] += std::norm(e[i]);
    }
    double sup = *std::max_element(total.begin(), total.end());
    res.add(sys == &packets ? "wavepackets sup" : "harmonics sup", sup, sys->support.measure, VerdictMode::Forward, tol);
  }
  return res;
}

// ------------------------------------------------------------ sphere theorem

double cap_slack(GridPtr grid, const Weight& w) {
  DirectionSet K = cap_set(grid, Vec3(0.3, 0.2, 1.0).normalized(), 0.5);
  return xray_l2sq(w, midpoint_set(K)) / xray_l2sq(w, K) - 1.0;
}

ExperimentResult run_sphere_theorem(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  int nt = p["n_theta"].get<int>(), np = p["n_phi"].get<int>();
  GridPtr grid = build_sphere_grid(3, nt, np);
  ExperimentResult res;
  auto draw_weight = [&] {
    return random_mixture(rng, 3, 3, p["weight_radius"].get<double>(), 0.4, 1.5, true);
  };
  double best = 0.0;
  for (int t = 0; t < p["trials"].get<int>(); ++t) {
    int size = uniform_int(rng, 1, p["max_size"].get<int>());
    OrthonormalSystem sys = random_bump_system(grid, rng, size, 0.3, 0.7, 3.0);
    Weight w = draw_weight();
    TheoremSides s = sphere_theorem_sides(sys, w, MidpointVariant::Diamond);
    Trial& tr = res.add("midpoint-set variant", s.lhs, s.rhs, VerdictMode::Forward, ctx.tol);
    best = std::max(best, tr.ratio);
    if (t < p["rotation_checks"].get<int>()) {
      // Rotate system and weight by whole azimuth steps so the grid maps to itself.
      Eigen::Matrix3d R = z_rotation(kTwoPi * uniform_int(rng, 1, np - 1) / np);
      std::vector<std::vector<cd>> vals;
      for (const auto& g : sys.members) {
        std::vector<cd> v(grid->size());
        for (std::size_t k = 0; k < v.size(); ++k)
          v[k] = g.values[static_cast<std::size_t>(grid->nearest(R.transpose() * grid->nodes[k]))];
        vals.push_back(v);
      }
      OrthonormalSystem rs = orthonormalize(grid, vals);
      GaussianMixture m = w.mixture();
      for (auto& term : m.terms) term.center = R * term.center;
      TheoremSides r = sphere_theorem_sides(rs, Weight(m), MidpointVariant::Diamond);
      res.add("rotation invariance", safe_ratio(r.lhs, r.rhs, VerdictMode::Identity),
              safe_ratio(s.lhs, s.rhs, VerdictMode::Identity), VerdictMode::Identity, 1e-6);
    }
  }
  res.metadata["best_ratio_midpoint"] = best;

  // Star variant: disjoint caps in the upper hemisphere, so tilde-orthogonality holds.
  for (int t = 0; t < p["star_trials"].get<int>(); ++t) {
    std::vector<SphereFn> raw;
    double phase = uniform(rng, 0.0, kTwoPi);
    for (int j = 0; j < 3; ++j) {
      double az = phase + kTwoPi * j / 3.0;
      Vec3 c(std::sin(0.6) * std::cos(az), std::sin(0.6) * std::sin(az), std::cos(0.6));
      raw.push_back(cap_bump(c, 0.35, random_in_ball(rng, 3.0)));
    }
    OrthonormalSystem sys = orthonormalize(grid, raw);
    ExperimentResult sub = verify_sphere_theorem(sys, {draw_weight()}, MidpointVariant::Star, ctx.tol);
    for (auto& tr : sub.trials) res.trials.push_back(tr);
  }
  for (int t = 0; t < p["undirected_trials"].get<int>(); ++t) {
    OrthonormalSystem sys = random_bump_system(grid, rng, uniform_int(rng, 1, 4), 0.3, 0.7, 3.0);
    TheoremSides s = sphere_theorem_sides(sys, draw_weight(), MidpointVariant::Undirected);
    res.add("undirected variant", s.lhs, s.rhs, VerdictMode::Forward, ctx.tol);
  }
  {
    OrthonormalSystem sys = random_bump_system(grid, rng, 3, 0.3, 0.7, 3.0);
    TheoremSides s = sphere_theorem_sides(sys, zero_weight(3), MidpointVariant::Diamond);
    res.add_check("zero weight", s.lhs == 0.0 && s.rhs == 0.0);
  }
  {
    // Wavepacket with a weight laid along its tube; E g concentrates on the line through -mod along c.
    int tn = p["tube_n_theta"].get<int>();
    GridPtr fine = build_sphere_grid(3, tn, 2 * tn);
    Vec3 c = Vec3(0.2, -0.3, 1.0).normalized();
    Vec3 mod(0.5, 0.3, -0.2);
    double width = p["tube_width"].get<double>();
    OrthonormalSystem sys = make_wavepackets(fine, {c}, {p["tube_cap"].get<double>()}, {mod});
    GaussianMixture m;
    m.dim = 3;
    for (int k = -2; k <= 2; ++k) m.terms.push_back({1.0, -mod + width * k * c, width});
    Weight w(m, true);
    TheoremSides s = sphere_theorem_sides(sys, w, MidpointVariant::Diamond);
    double r = safe_ratio(s.lhs, s.rhs, VerdictMode::Forward);
    res.metadata["tube_aligned_ratio"] = r;
    res.add_check("tube-aligned ratio in (0.1, 1]", r > 0.1 && r <= 1.0 + ctx.tol);
    TheoremSides s3 = sphere_theorem_sides(sys, scaled(w, 3.0), MidpointVariant::Diamond);
    res.add("homogeneity", safe_ratio(s3.lhs, s3.rhs, VerdictMode::Identity), r, VerdictMode::Identity, 1e-10);
  }
  {
    // Mesh refinement: the discrete midpoint-set slack for a convex cap shrinks with the grid gap.
    Weight w = single_gaussian(3, Vec3(0.3, -0.2, 0.4), 0.8);
    std::vector<double> slack;
    json levels = json::array();
    for (int k : p["refinement_levels"].get<std::vector<int>>()) {
      slack.push_back(cap_slack(build_sphere_grid(3, k, 2 * k), w));
      levels.push_back({{"n_theta", k}, {"slack", slack.back()}});
    }
    for (std::size_t i = 1; i < slack.size(); ++i)
      res.add("mesh refinement halves slack", slack[i] / slack[i - 1], 0.5, VerdictMode::Identity, 0.4);
    res.metadata["refinement"] = levels;
  }
  res.metadata["grid"] = {{"n_theta", nt}, {"n_phi", np}};
  return res;
}

// ------------------------------------------------------------ Schrodinger theorem

ExperimentResult run_schrodinger_theorem(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  SchrodingerSetup setup = make_schrodinger_setup(p["members"].get<int>(), p["points"].get<int>(),
                                                  p["freq_side"].get<double>());
  std::vector<Weight> weights;
  for (int t = 0; t < p["trials"].get<int>(); ++t) {
    GaussianMixture m;
    m.dim = 2;
    int terms = uniform_int(rng, 1, 3);
    for (int k = 0; k < terms; ++k)
      m.terms.push_back({uniform(rng, -1.0, 1.0), vec2(uniform(rng, -6.0, 6.0), uniform(rng, -4.0, 4.0)),
                         uniform(rng, 1.0, 2.5)});
    weights.push_back(Weight(m));
  }
  ExperimentResult res = verify_schrodinger_theorem(setup, weights, ctx.tol);

  SchrodingerPropagator prop(setup.freq, setup.space);
  SchrodingerSides z = schrodinger_sides(setup, prop, zero_weight(2));
  res.add_check("zero weight", z.lhs == 0.0 && z.rhs == 0.0);

  // Closed-form rho* of the transformed weight against direct line quadrature.
  int checks = p["adjoint_checks"].get<int>();
  double worst = 0.0;
  for (int k = 0; k < checks; ++k) {
    const Weight& w = weights[static_cast<std::size_t>(k) % weights.size()];
    auto wprime = [&w](double y, double tau) {
      if (tau == 0.0) return 0.0;
      return w.eval(vec2(y / tau, -1.0 / tau)) / (tau * tau);
    };
    double x = uniform(rng, -1.0, 1.0), v = uniform(rng, -3.0, 3.0);
    double closed = rho_adjoint(w, -v, x);
    double quad = rho_adjoint_quadrature(wprime, x, v, 800);
    double scale = std::max(1e-3, std::abs(closed));
    worst = std::max(worst, std::abs(closed - quad) / scale);
  }
  res.add("transformed weight line transform", worst, 1e-6, VerdictMode::Forward, 0.0);
  res.metadata["members"] = setup.uhat.size();
  double cells = 0;
  for (auto b : setup.support) cells += b;
  res.metadata["support_fraction"] = cells / static_cast<double>(setup.support.size());
  return res;
}

// ------------------------------------------------------------ torus reverse

ExperimentResult run_torus_reverse(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  int N = p["N"].get<int>();
  std::vector<int> all(static_cast<std::size_t>(N));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<int> K(all.begin(), all.begin() + N / 2);
  std::sort(K.begin(), K.end());
  TorusSystem sys = make_dft_system(N, K, rng());
  auto draw = [&] {
    std::vector<double> w(static_cast<std::size_t>(N));
    for (auto& x : w) x = std::pow(uniform(rng, 0.0, 1.0), 3.0) * (uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : 1.0);
    return w;
  };
  std::vector<std::vector<double>> eq, rev;
  for (int t = 0; t < p["identity_trials"].get<int>(); ++t) eq.push_back(draw());
  for (int t = 0; t < p["reverse_trials"].get<int>(); ++t) rev.push_back(draw());
  double q = p["p"].get<double>();
  ExperimentResult res = verify_reverse(sys, eq, {1.0}, 1e-12);
  ExperimentResult r2 = verify_reverse(sys, rev, {q}, 1e-12);
  for (auto& t : r2.trials) res.trials.push_back(t);

  // Spike on the plain exponentials: both sides in closed form.
  TorusSystem plain;
  plain.N = N;
  plain.K = K;
  auto kk = static_cast<Eigen::Index>(K.size());
  plain.coeffs = Eigen::MatrixXcd::Identity(kk, kk);
  plain.hat.resize(kk, N);
  for (Eigen::Index j = 0; j < kk; ++j)
    for (int v = 0; v < N; ++v)
      plain.hat(j, v) = fourier_kernel(static_cast<double>(K[static_cast<std::size_t>(j)] * v % N) / N);
  std::vector<double> spike(static_cast<std::size_t>(N), 0.0);
  spike[5] = 2.0;
  TorusReverseSides s = torus_reverse_sides(plain, spike, q);
  double k = static_cast<double>(K.size());
  res.add("spike lhs closed form", s.lhs, k * std::pow(2.0 / N, q), VerdictMode::Identity, 1e-12);
  res.add("spike rhs closed form", s.rhs, k * std::pow(2.0, q) / N, VerdictMode::Identity, 1e-12);
  res.add("spike reverse", s.lhs, s.rhs, VerdictMode::Reverse, 1e-12);

  // Local sphere variant: complete orthonormal basis on the nodes of a cap, weight on lattice points in a ball.
  GridPtr grid = build_sphere_grid(3, p["local_n_theta"].get<int>(), 2 * p["local_n_theta"].get<int>());
  DirectionSet cap = cap_set(grid, Vec3::UnitZ(), p["local_cap"].get<double>());
  auto nodes = cap.members();
  auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd gauss(m, m);
  std::normal_distribution<double> nd;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) gauss(i, j) = nd(rng);
  Eigen::MatrixXd U = Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ();
  std::vector<SurfaceFunction> basis;
  for (Eigen::Index j = 0; j < m; ++j) {
    std::vector<cd> v(grid->size(), 0.0);
    for (Eigen::Index i = 0; i < m; ++i) {
      auto node = static_cast<std::size_t>(nodes[static_cast<std::size_t>(i)]);
      v[node] = U(i, j) / std::sqrt(grid->qweights[node]);
    }
    basis.push_back(SurfaceFunction::from_values(grid, v, 0.0));
  }
  double R = p["local_radius"].get<double>(), step = p["local_step"].get<double>();
  std::vector<Vec3> X;
  int half = static_cast<int>(std::floor(R / step));
  for (int a = -half; a <= half; ++a)
    for (int b = -half; b <= half; ++b)
      for (int c = -half; c <= half; ++c) {
        Vec3 x(a * step, b * step, c * step);
        if (x.norm() <= R) X.push_back(x);
      }
  double cell = step * step * step;
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < p["local_trials"].get<int>(); ++t) {
    std::vector<double> w(X.size());
    for (auto& x : w) x = std::pow(uniform(rng, 0.0, 1.0), 2.0);
    Accumulator lhs, wp;
    std::size_t supp = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      wp.add(cell * std::pow(w[i], q));
      if (w[i] > 0.0) ++supp;
    }
    for (const auto& g : basis) {
      auto e = extension(g, X);
      Accumulator a;
      for (std::size_t i = 0; i < X.size(); ++i) a.add(cell * w[i] * std::norm(e[i]));
      lhs.add(std::pow(a.value(), q));
    }
    double bound = std::pow(cap.measure, q) * std::pow(cell * static_cast<double>(supp), q - 1.0) * wp.value();
    res.add("local sphere reverse", lhs.value(), bound, VerdictMode::Reverse, 1e-12);
    best = std::min(best, lhs.value() / (std::pow(R, -(1.0 - q) * 2.0) * wp.value()));
  }
  res.metadata["local_constant_vs_R_factor"] = best;
  res.metadata["K"] = K;
  return res;
}

// ------------------------------------------------------------ pointwise domination

ExperimentResult run_pointwise_domination(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  GridPtr grid = build_sphere_grid(3, p["n_theta"].get<int>(), p["n_phi"].get<int>());
  SurfaceFunction one = SurfaceFunction::from_callable(grid, [](const Vec3&) -> cd { return 1.0; });
  std::vector<double> ones(grid->size(), 1.0);
  double lo = p["min_radius"].get<double>(), hi = p["max_radius"].get<double>();
  double oracle_tol = p["oracle_tol"].get<double>();
  ExperimentResult res;
  double worst_dom = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < p["points"].get<int>(); ++i) {
    double r = lo * std::pow(hi / lo, uniform(rng, 0.0, 1.0));
    Vec3 x = r * random_unit(rng);
    double quad = std::norm(extension_at(one, x));
    double dom = 2.0 * x0_adjoint(*grid, ones, x);
    worst_dom = std::max(worst_dom, quad / dom);
    res.add("domination", quad, dom, VerdictMode::Forward, 1e-9);
    if (r <= 10.0) {
      double closed = 2.0 * std::sin(kTwoPi * r) / r;
      double err = std::abs(extension_at(one, x).real() - closed);
      double envelope = std::min(4.0 * kPi, 2.0 / r);
      worst_oracle = std::max(worst_oracle, err / envelope);
      res.add("closed form", err, oracle_tol * envelope, VerdictMode::Forward, 0.0);
    }
  }
  res.metadata["max_domination_ratio"] = worst_dom;
  res.metadata["max_oracle_error"] = worst_oracle;
  return res;
}

// ------------------------------------------------------------ Drury identity

ExperimentResult run_drury(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  double tol = p["relative_tol"].get<double>();
  ExperimentResult res;
  json excluded = json::array();
  for (int t = 0; t < p["weights"].get<int>(); ++t) {
    Weight w = random_mixture(rng, 2, 2, 1.0, 0.5, 1.0, false);
    DruryReport d = drury_identity(w, p["points"].get<int>(), p["side"].get<double>());
    res.add("pair kernel vs direct", d.pair, d.direct, VerdictMode::Identity, tol);
    excluded.push_back(d.excluded);
  }
  res.metadata["near_region_share"] = excluded;
  GridPtr circle = build_sphere_grid(2, p["circle_nodes"].get<int>());
  for (int count : p["arc_nodes"].get<std::vector<int>>()) {
    Weight w = random_mixture(rng, 2, 2, 1.0, 0.5, 1.0, false);
    QuarticTraceReport q = quartic_trace(w, circle, uniform_int(rng, 0, circle->n_phi - 1), count);
    res.add("quartic trace eigen vs quadrature", q.eigen, q.quadrature, VerdictMode::Identity, tol);
  }
  // Exploratory: quartic co-positivity gap on a quarter arc.
  DirectionSet arc = empty_set(circle);
  for (int k = 0; k < circle->n_phi / 4; ++k) arc.mask[static_cast<std::size_t>(k)] = 1;
  arc.recompute_measure();
  BumpLattice L = make_bump_lattice(2, 3, 0.8, 0.6);
  ConeSearchBudget budget{2, 60, 500};
  ConeSearchReport cs = cone_search_quartic(arc, p["quartic_c"].get<double>(), L, budget, rng());
  res.metadata["quartic_cone_search"] = cs.to_json(L);
  return res;
}

// ------------------------------------------------------------ tomographic weak form

ExperimentResult run_tomographic(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  GridPtr grid = build_sphere_grid(3, p["n_theta"].get<int>(), p["n_phi"].get<int>());
  std::vector<DirectionSet> sets;
  std::vector<Weight> phis;
  int twocap = 0;
  for (int t = 0; t < p["trials"].get<int>(); ++t) {
    int caps = 1 + t % 3;
    if (caps == 2) ++twocap;
    std::vector<Vec3> c;
    std::vector<double> r;
    for (int k = 0; k < caps; ++k) {
      c.push_back(random_unit(rng));
      r.push_back(uniform(rng, 0.2, 0.6));
    }
    sets.push_back(cap_union(grid, c, r));
    phis.push_back(random_mixture(rng, 3, uniform_int(rng, 1, 2), 0.5, 0.4, 1.2, false));
  }
  ExperimentResult res = verify_tomographic_weak(sets, phis, ctx.tol);
  res.metadata["two_cap_trials"] = twocap;
  for (int t = 0; t < p["bilinear_trials"].get<int>(); ++t) {
    SphereFn g1 = cap_bump(random_unit(rng), uniform(rng, 0.3, 0.6));
    SphereFn g2 = cap_bump(random_unit(rng), uniform(rng, 0.3, 0.6));
    Weight phi = random_mixture(rng, 3, 1, 0.5, 0.4, 1.2, false);
    TomographicSides s = tomographic_sides_bilinear(g1, g2, grid, phi);
    res.add("weak form, bilinear", s.lhs, s.rhs, VerdictMode::Forward, ctx.tol);
  }
  TomographicSides z = tomographic_sides_indicator(empty_set(grid), single_gaussian(3, Vec3::Zero(), 0.8));
  res.add_check("zero amplitude", z.lhs == 0.0 && z.rhs == 0.0);
  return res;
}

// ------------------------------------------------------------ curves

ExperimentResult run_curves(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  ExperimentResult res;
  const double cross_tol = p["cross_tol"].get<double>();

  // Quarter circle against the S^1 implementation.
  {
    int nodes = p["circle_nodes"].get<int>();
    ConvexCurve arc = ConvexCurve::circle(1.0, 0.0, 0.5 * kPi, nodes);
    GridPtr s1 = build_sphere_grid(2, 4 * nodes);
    auto angle_fn = [](const CurveFn& f) -> SphereFn {
      return [f](const Vec3& w) -> cd {
        double a = std::atan2(w.y(), w.x());
        if (a < 0.0 || a > 0.5 * kPi) return 0.0;
        return f(a);
      };
    };
    CurveFn f[4];
    for (int k = 0; k < 4; ++k) {
      double c = uniform(rng, 0.3, 1.2), m = uniform(rng, -2.0, 2.0);
      f[k] = [c, m](double s) -> cd {
        double t = (s - c) / 0.6;
        if (std::abs(t) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - t * t)) * std::polar(1.0, m * s);
      };
    }
    CurveMoyalReport cm = curve_moyal(arc, f[0], f[1], f[2], f[3]);
    SurfaceFunction sf[4];
    for (int k = 0; k < 4; ++k) sf[k] = SurfaceFunction::from_callable(s1, angle_fn(f[k]));
    cd ref = 2.0 * moyal_formula(sf[0], sf[1], sf[2], sf[3]);
    res.add("circle moyal vs S^1", std::abs(cm.formula - ref), cross_tol * std::abs(ref), VerdictMode::Forward, 0.0);
    std::vector<Vec3> vs;
    double su = 0.7;
    Vec3 om = arc.normal(su);
    Vec3 tan(-om.y(), om.x(), 0.0);
    for (int k = -3; k <= 3; ++k) vs.push_back(0.4 * k * tan);
    auto wc = curve_wigner(arc, f[0], f[0], su, vs);
    auto ws = spherical_wigner(angle_fn(f[0]), angle_fn(f[0]), 2, om, vs, HemisphereRule{256, 1});
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      num = std::max(num, std::abs(wc[i] - 2.0 * ws[i]));
      den = std::max(den, std::abs(wc[i]));
    }
    res.add("circle wigner vs S^1", num, cross_tol * den, VerdictMode::Forward, 0.0);
  }
  // Circle Jacobians in closed form.
  {
    ConvexCurve c = ConvexCurve::circle(1.0, 0.0, kTwoPi);
    for (int k = 0; k < 5; ++k) {
      double su = uniform(rng, 0.0, kTwoPi), d = uniform(rng, 0.1, 1.4);
      CurveJacobians J = curve_jacobians(c, su, su + d);
      res.add("circle J", J.J, 2.0, VerdictMode::Identity, 1e-10);
      res.add("circle J~", J.Jt, 2.0 * std::abs(std::cos(d)), VerdictMode::Identity, 1e-10);
      res.add("circle M", J.M, 1.0 / std::abs(std::cos(d)), VerdictMode::Identity, 1e-10);
    }
  }
  // Ellipse invariants, finite differences, involution.
  double a = p["ellipse_a"].get<double>(), b = p["ellipse_b"].get<double>();
  ConvexCurve ell = ConvexCurve::ellipse(a, b, 0.0, kTwoPi);
  CurveInvariants inv = curve_invariants(ell);
  res.add("ellipse curvature quotient", inv.Q, std::pow(a / b, 3.0), VerdictMode::Identity, 1e-6);
  double fd_worst = 0.0, inv_worst = 0.0, res_worst = 0.0;
  int pairs = p["fd_pairs"].get<int>();
  for (int k = 0; k < pairs; ++k) {
    double su = uniform(rng, 0.0, kTwoPi), d = uniform(rng, 0.05, 1.2) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    double sp = su + d;
    auto spp = collision_param(ell, su, sp);
    if (!spp) continue;
    CurveJacobians J = curve_jacobians(ell, su, sp), F = curve_jacobians_fd(ell, su, sp);
    fd_worst = std::max({fd_worst, std::abs(J.J - F.J) / std::abs(J.J), std::abs(J.Jt - F.Jt) / std::max(1e-3, std::abs(J.Jt))});
    auto back = collision_param(ell, su, *spp);
    double diff = back ? std::abs(std::remainder(*back - sp, kTwoPi)) : 1.0;
    inv_worst = std::max(inv_worst, diff);
    Vec3 chord = ell.position(*spp) - ell.position(sp);
    Vec3 t = ell.velocity(su).normalized();
    res_worst = std::max(res_worst, std::abs(chord.x() * t.y() - chord.y() * t.x()) / chord.norm());
  }
  res.add("jacobian finite differences", fd_worst, 1e-5, VerdictMode::Forward, 0.0);
  res.add("collision involution", inv_worst, 1e-10, VerdictMode::Forward, 0.0);
  res.add("chord parallel to tangent", res_worst, 1e-10, VerdictMode::Forward, 0.0);

  // Ellipse-suite theorem with four bumps on an arc.
  double s0 = p["arc"][0].get<double>(), s1 = p["arc"][1].get<double>();
  ConvexCurve arc = ConvexCurve::ellipse(a, b, s0, s1, p["curve_nodes"].get<int>());
  std::vector<double> centers;
  std::vector<Vec3> mods;
  for (int j = 0; j < 4; ++j) {
    centers.push_back(s0 + (s1 - s0) * (j + 0.5) / 4.0);
    mods.push_back(vec2(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)));
  }
  double halfwidth = 0.3 * (s1 - s0);
  CurveSystem sys = make_curve_bumps(arc, centers, halfwidth, mods);
  std::vector<Weight> weights;
  for (int t = 0; t < p["weights"].get<int>(); ++t) weights.push_back(random_mixture(rng, 2, 2, 2.0, 0.5, 1.5, false));
  ExperimentResult sub = curve_wigner_and_theorem(arc, sys, weights, ctx.tol);
  for (auto& tr : sub.trials) res.trials.push_back(tr);
  for (auto it = sub.metadata.begin(); it != sub.metadata.end(); ++it) res.metadata[it.key()] = it.value();
  CurveTheoremSide z = curve_theorem_sides(arc, sys, zero_weight(2));
  res.add_check("zero weight", z.lhs == 0.0 && z.rhs == 0.0);

  // Isotropic scaling.
  double lambda = p["scale"].get<double>();
  ConvexCurve big = arc.scaled(lambda);
  std::vector<Vec3> smods;
  for (const auto& m : mods) smods.push_back(m / lambda);
  CurveSystem bsys = make_curve_bumps(big, centers, halfwidth, smods);
  for (std::size_t t = 0; t < std::min<std::size_t>(3, weights.size()); ++t) {
    GaussianMixture m = weights[t].mixture();
    for (auto& term : m.terms) {
      term.center /= lambda;
      term.width /= lambda;
    }
    CurveTheoremSide u = curve_theorem_sides(arc, sys, weights[t]);
    CurveTheoremSide v = curve_theorem_sides(big, bsys, Weight(m, true));
    res.add("scaling invariance", safe_ratio(v.lhs, v.rhs, VerdictMode::Identity), safe_ratio(u.lhs, u.rhs, VerdictMode::Identity),
            VerdictMode::Identity, 1e-6);
  }
  return res;
}

// ------------------------------------------------------------ Cantor sets

ExperimentResult run_cantor(const ExperimentContext& ctx) {
  const json& p = ctx.params;
  BumpLattice L = make_bump_lattice(2, p["lattice"].get<int>(), p["spacing"].get<double>(), p["width"].get<double>());
  ConeSearchBudget budget{p["starts"].get<int>(), p["iterations"].get<int>(), p["probes"].get<int>()};
  CantorReport r = cantor_ratio(p["generations"].get<int>(), p["nodes"].get<int>(), p["base_arc"].get<double>(), L,
                                budget, ctx.seed);
  ExperimentResult res;
  json rows = json::array();
  double c_floor = p["c_floor"].get<double>();
  for (const auto& g : r.rows) {
    rows.push_back({{"generation", g.generation}, {"measure_K", g.measure_K}, {"measure_mid", g.measure_mid},
                    {"measure_ratio", g.measure_ratio}, {"max_ratio", g.max_ratio}});
    res.add("measure growth N=" + std::to_string(g.generation), g.measure_ratio,
            c_floor * std::pow(1.5, g.generation), VerdictMode::Reverse, 0.0);
  }
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    res.add("cone ratio increases N=" + std::to_string(r.rows[i].generation), r.rows[i].max_ratio,
            r.rows[i - 1].max_ratio * (1.0 + 1e-9), VerdictMode::Reverse, 0.0);
  res.add_check("strictly increasing", r.strictly_increasing);
  res.metadata["generations"] = rows;
  res.metadata["c"] = r.c;
  res.metadata["c_floor"] = c_floor;
  return res;
}

// ------------------------------------------------------------ Agmon-Hormander

ExperimentResult run_agmon_hormander(const ExperimentContext& ctx) {
  const json& p = ctx.params;
  std::vector<std::vector<double>> shells = p["shells"].get<std::vector<std::vector<double>>>();
  std::vector<RadialWeight> ws;
  for (const auto& w : p["weights"]) {
    RadialWeight r;
    r.kind = w["kind"].get<std::string>() == "bump" ? RadialWeight::Kind::Bump : RadialWeight::Kind::Gaussian;
    r.scale = w["scale"].get<double>();
    ws.push_back(r);
  }
  return verify_agmon_hormander(shells, ws, p["radii"].get<std::vector<double>>(), ctx.tol);
}

// ------------------------------------------------------------ interpolant

ExperimentResult run_interpolant(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  GridPtr grid = build_sphere_grid(3, p["n_theta"].get<int>(), p["n_phi"].get<int>());
  OrthonormalSystem sys = random_bump_system(grid, rng, p["members"].get<int>(), 0.3, 0.6, 2.0);
  std::vector<Weight> ws;
  for (int t = 0; t < p["weights"].get<int>(); ++t) ws.push_back(random_mixture(rng, 3, 2, 1.5, 0.6, 1.2, false));
  ExperimentResult res = verify_interpolant(sys, ws, p["ps"].get<std::vector<double>>(), ctx.tol);
  KernelMatrix A = assemble_sphere_kernel(zero_weight(3), sys.support);
  double z = 0.0;
  for (const auto& g : sys.members) z += std::abs(kernel_quadratic_form(A, g));
  res.add_check("zero weight", z == 0.0);
  return res;
}

// ------------------------------------------------------------ autocorrelation weights

ExperimentResult run_stein(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  GridPtr grid = build_sphere_grid(3, p["n_theta"].get<int>(), p["n_phi"].get<int>());
  std::vector<SphereFn> gs;
  std::vector<Weight> ws;
  for (int t = 0; t < p["pairs"].get<int>(); ++t) {
    gs.push_back(random_smooth_function(rng, 3, 2, 2.0, 6.0));
    ws.push_back(random_mixture(rng, 3, 2, 1.0, 0.5, 1.2, false));
  }
  ExperimentResult res = verify_stein_autocorrelation(grid, gs, ws, p["constant_bound"].get<double>(), rng());
  ExperimentResult z = verify_stein_autocorrelation(grid, {[](const Vec3&) -> cd { return 0.0; }}, {ws.front()}, 1.0, 1);
  res.add_check("zero amplitude", z.trials.back().lhs == 0.0);
  return res;
}

// ------------------------------------------------------------ quadratic co-positivity

ExperimentResult run_quadratic_gap(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  GridPtr grid = build_sphere_grid(3, p["n_theta"].get<int>(), p["n_phi"].get<int>());
  DirectionSet full = full_set(grid);
  double c = p["c"].get<double>();
  ExperimentResult res;
  BumpLattice L = make_bump_lattice(3, p["lattice"].get<int>(), p["spacing"].get<double>(), p["width"].get<double>());
  for (int t = 0; t < p["kernel_checks"].get<int>(); ++t) {
    Weight w = random_mixture(rng, 3, 2, 1.0, 0.5, 1.0, false);
    QuadraticGapReport q = quadratic_gap(full, c, w);
    res.add("operator vs kernel form", q.kernel_form, q.gap, VerdictMode::Identity, 1e-2);
  }
  ConeSearchBudget budget{p["starts"].get<int>(), p["iterations"].get<int>(), p["probes"].get<int>()};
  ConeSearchReport cs = cone_search_quadratic(full, c, L, budget, rng());
  res.metadata["cone_search"] = cs.to_json(L);
  res.add_check("no co-positivity violation on the full sphere", !cs.violation);
  return res;
}

// ------------------------------------------------------------ Schatten chain

ExperimentResult run_schatten_chain(const ExperimentContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const json& p = ctx.params;
  GridPtr grid = build_sphere_grid(3, p["n_theta"].get<int>(), p["n_phi"].get<int>());
  ExperimentResult res;
  for (int t = 0; t < p["trials"].get<int>(); ++t) {
    OrthonormalSystem sys = random_bump_system(grid, rng, uniform_int(rng, 2, 5), 0.3, 0.6, 2.0);
    Weight w = random_mixture(rng, 3, 2, 1.5, 0.5, 1.2, true);
    KernelMatrix A = assemble_sphere_kernel(w, sys.support);
    double hs = schatten_norm(A, 2.0);
    res.add("Hilbert-Schmidt vs double sum", hs * hs, c2_double_sum_sphere(w, sys.support), VerdictMode::Identity, 1e-10);
    cd tr = A.A.trace();
    double mass = 0.0;
    for (const auto& term : w.mixture().terms) mass += term.coeff * std::pow(term.width, 3);
    res.add("trace", tr.real(), mass * sys.support.measure, VerdictMode::Identity, 1e-10);
    Accumulator lhs;
    for (const auto& g : sys.members) {
      double v = kernel_quadratic_form(A, g);
      lhs.add(v * v);
    }
    res.add("orthonormal diagonal vs Hilbert-Schmidt", lhs.value(), hs * hs, VerdictMode::Forward, 1e-10);
    res.add("Hilbert-Schmidt vs X-ray norm", hs * hs, xray_l2sq(w, midpoint_set(sys.support)), VerdictMode::Forward,
            ctx.tol);
    DensityOperator gamma{&sys, {}};
    for (std::size_t j = 0; j < sys.size(); ++j) gamma.lambda.push_back(uniform(rng, -1.0, 1.0));
    TracePairingReport tp = trace_pairing(w, gamma);
    res.add("trace pairing", tp.kernel, tp.spatial, VerdictMode::Identity, 1e-3);
  }
  std::vector<double> freqs;
  int nf = p["paraboloid_nodes"].get<int>();
  for (int k = 0; k < nf; ++k) freqs.push_back(-1.0 + 2.0 * (k + 0.5) / nf);
  Weight w = random_mixture(rng, 2, 2, 2.0, 0.8, 1.5, true);
  KernelMatrix P = assemble_paraboloid_kernel(w, freqs, 2.0 / nf);
  double hs = schatten_norm(P, 2.0);
  res.add("paraboloid Hilbert-Schmidt", hs * hs, c2_double_sum_paraboloid(w, freqs, 2.0 / nf), VerdictMode::Identity, 1e-10);
  return res;
}

json grid_params(int nt, int np) { return {{"n_theta", nt}, {"n_phi", np}}; }

json merged(json a, const json& b) {
  for (auto it = b.begin(); it != b.end(); ++it) a[it.key()] = it.value();
  return a;
}

std::vector<ExperimentInfo> build_catalog() {
  std::vector<ExperimentInfo> c;
  c.push_back({"classical_moyal", "Moyal identity for the classical Wigner transform",
               "phase-space pairing of d=1 Wigner distributions against products of inner products", 1e-6,
               {{"points", 128}, {"side", 8.0}, {"pairs", 20}, {"relative_budget", 1e-6}}, run_classical_moyal});
  c.push_back({"spherical_moyal", "Moyal-type identity for the spherical Wigner transform",
               "hemisphere quadrature of the spherical Wigner pairing against the double-integral formula", 1e-2,
               merged(grid_params(16, 32), {{"quadruples", 10}, {"relative_tol", 1e-2}, {"rule_nodes", 24}, {"outer_n_theta", 24}}), run_spherical_moyal});
  c.push_back({"bessel_pointwise", "uniform pointwise bound from Bessel's inequality",
               "sup of the summed extension intensities against the measure of K", 0.02,
               merged(grid_params(24, 48), {{"points", 1000}, {"radius", 10.0}, {"slack", 0.02}}),
               run_bessel_pointwise});
  c.push_back({"sphere_theorem", "orthonormal Mizohata-Takeuchi bound on the sphere",
               "signed weights, midpoint-set X-ray norm, star and undirected variants, mesh refinement", 0.05,
               merged(grid_params(24, 48), {{"trials", 100}, {"max_size", 8}, {"weight_radius", 2.0},
                                            {"rotation_checks", 3}, {"star_trials", 10}, {"undirected_trials", 10},
                                            {"refinement_levels", {16, 32, 64}},
                                            {"tube_n_theta", 32}, {"tube_cap", 0.5}, {"tube_width", 1.5}}),
               run_sphere_theorem});
  c.push_back({"schrodinger_theorem", "orthonormal bound for the Schrodinger propagator",
               "space-time weights against the line transform on the Wigner support, with Fourier-swapped rerun",
               0.05, {{"members", 4}, {"points", 256}, {"freq_side", 4.0}, {"trials", 50}, {"adjoint_checks", 40}},
               run_schrodinger_theorem});
  c.push_back({"torus_reverse", "reverse inequality for complete systems",
               "Parseval identity at p=1 and the p<1 reverse bound on Z_N, plus a local sphere variant", 1e-12,
               {{"N", 64}, {"p", 0.5}, {"identity_trials", 20}, {"reverse_trials", 50}, {"local_n_theta", 8},
                {"local_cap", 0.8}, {"local_radius", 2.0}, {"local_step", 0.5}, {"local_trials", 5}},
               run_torus_reverse});
  c.push_back({"pointwise_domination", "full-sphere pointwise domination by the adjoint restricted Radon transform",
               "|sigma^|^2 against 2 X0* 1 and the closed-form extension of the surface measure", 1e-4,
               merged(grid_params(256, 512), {{"points", 1000}, {"min_radius", 0.1}, {"max_radius", 50.0},
                                              {"oracle_tol", 1e-4}}),
               run_pointwise_domination});
  c.push_back({"drury_identity", "Drury's L4 identity for the X-ray transform in the plane",
               "direct L4 norm against the pair-kernel route; quartic Schatten trace two ways", 2e-2,
               {{"weights", 10}, {"points", 64}, {"side", 8.0}, {"relative_tol", 2e-2}, {"circle_nodes", 256},
                {"arc_nodes", {12, 24, 40}}, {"quartic_c", 0.5}},
               run_drury});
  c.push_back({"tomographic_weak", "sup-autocorrelation lemma, weak form",
               "double sphere quadrature against the restricted Radon transform on midpoint sets", 0.05,
               merged(grid_params(24, 48), {{"trials", 100}, {"bilinear_trials", 10}}), run_tomographic});
  c.push_back({"curves", "convex curves: collision map, Jacobians and the curve theorem",
               "circle cross-checks, ellipse invariants, curve Moyal and the Lambda^2 bound", 0.05,
               {{"circle_nodes", 256}, {"ellipse_a", 2.0}, {"ellipse_b", 1.0}, {"fd_pairs", 1000},
                {"arc", {-1.0, 1.0}}, {"curve_nodes", 256}, {"weights", 10}, {"scale", 2.5}, {"cross_tol", 1e-3}},
               run_curves});
  c.push_back({"cantor_ratio", "midpoint sets of Cantor-type arcs",
               "cone maximum of the midpoint-set form over the K form across generations", 0.0,
               {{"generations", 4}, {"nodes", 2048}, {"base_arc", 0.5 * kPi}, {"lattice", 7}, {"spacing", 0.6},
                {"width", 0.5}, {"starts", 4}, {"iterations", 200}, {"probes", 2000}, {"c_floor", 0.9}},
               run_cantor});
  c.push_back({"agmon_hormander", "Agmon-Hormander asymptotic for extension intensities",
               "R^2-scaled intensities against the line integrals of radial weights as R grows", 0.1,
               {{"shells", {{4.0 * kPi}, {0.0, 1.0, 0.25}, {1.0, 0.0, 0.0, 0.5}}},
                {"weights", {{{"kind", "gaussian"}, {"scale", 1.0}}, {{"kind", "bump"}, {"scale", 1.5}},
                             {{"kind", "gaussian"}, {"scale", 0.7}}}},
                {"radii", {8.0, 16.0, 32.0, 64.0}}},
               run_agmon_hormander});
  c.push_back({"interpolant", "interpolation between the Bessel bound and the L2 theorem",
               "power sums of intensities against fractional-Laplacian norms for p in [1,2]", 0.05,
               merged(grid_params(16, 32), {{"members", 4}, {"weights", 6}, {"ps", {1.0, 1.25, 1.5, 1.75, 2.0}}}),
               run_interpolant});
  c.push_back({"stein_autocorrelation", "autocorrelation weights and Stein's conjecture",
               "peak-at-origin of X(w*w~) and the plane-L2 bound with an empirical constant", 0.0,
               merged(grid_params(16, 32), {{"pairs", 20}, {"constant_bound", 2.0}}), run_stein});
  c.push_back({"quadratic_gap", "quadratic co-positivity on the full sphere",
               "projected-gradient search for nonnegative weights beating the X-ray form", 1e-2,
               merged(grid_params(8, 16), {{"c", 0.5}, {"lattice", 3}, {"spacing", 0.8}, {"width", 0.6},
                                           {"kernel_checks", 3}, {"starts", 4}, {"iterations", 200}, {"probes", 2000}}),
               run_quadratic_gap});
  c.push_back({"schatten_chain", "Hilbert-Schmidt form of the extension-restriction operator",
               "C2 norm three ways, trace, trace pairing and the paraboloid kernel", 0.05,
               merged(grid_params(16, 32), {{"trials", 5}, {"paraboloid_nodes", 48}}), run_schatten_chain});
  return c;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog = build_catalog();
  return catalog;
}

const ExperimentInfo* find_experiment(const std::string& id) {
  for (const auto& e : experiment_catalog())
    if (e.id == id) return &e;
  return nullptr;
}

nlohmann::json merge_params(const ExperimentInfo& info, const nlohmann::json& overrides) {
  nlohmann::json out = info.defaults;
  if (overrides.is_null()) return out;
  if (!overrides.is_object()) throw SchemaError(info.id + ".params: expected an object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (!out.contains(it.key())) throw SchemaError(info.id + ".params." + it.key() + ": unknown parameter");
    const auto& def = out[it.key()];
    bool numeric = def.is_number() && it.value().is_number();
    if (!numeric && def.type() != it.value().type())
      throw SchemaError(info.id + ".params." + it.key() + ": expected " + def.type_name());
    if (def.is_number_integer() && !it.value().is_number_integer())
      throw SchemaError(info.id + ".params." + it.key() + ": expected an integer");
    out[it.key()] = it.value();
  }
  return out;
}

ExperimentResult run_experiment(const std::string& id, const nlohmann::json& overrides, std::uint64_t seed,
                                std::optional<double> tol) {
  const ExperimentInfo* info = find_experiment(id);
  if (!info) throw SchemaError("unknown experiment '" + id + "'");
  ExperimentContext ctx;
  ctx.params = merge_params(*info, overrides);
  ctx.seed = seed;
  ctx.tol = tol.value_or(info->default_tol);
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult r = info->run(ctx);
  r.id = id;
  r.seed = seed;
  r.metadata["params"] = ctx.params;
  r.metadata["tolerance"] = ctx.tol;
  r.metadata["anchor"] = info->anchor;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::uint64_t derive_seed(std::uint64_t suite_seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  // splitmix64 finaliser over the combination
  std::uint64_t z = suite_seed + 0x9e3779b97f4a7c15ull * (h | 1ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace extlab
