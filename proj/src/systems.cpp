#include "extlab/systems.hpp"

namespace extlab {

double real_harmonic(int l, int m, const Vec3& omega) {
  if (l < 0 || std::abs(m) > l) throw DomainError("real_harmonic: need |m| <= l");
  double z = std::clamp(omega.z(), -1.0, 1.0);
  double theta = std::acos(z);
  double phi = std::atan2(omega.y(), omega.x());
  unsigned am = static_cast<unsigned>(std::abs(m));
  double y = std::sph_legendre(static_cast<unsigned>(l), am, theta);
  if (m == 0) return y;
  // undo the Condon-Shortley phase so that all branches share a sign convention
  double cs = (am % 2 == 1) ? -1.0 : 1.0;
  return m > 0 ? std::sqrt(2.0) * cs * y * std::cos(am * phi) : std::sqrt(2.0) * cs * y * std::sin(am * phi);
}

double OrthonormalSystem::gram_deviation() const {
  if (gram.size() == 0) return 0.0;
  Eigen::MatrixXcd d = gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  return d.cwiseAbs().maxCoeff();
}

void OrthonormalSystem::certify() {
  auto m = static_cast<Eigen::Index>(members.size());
  gram.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      gram(i, j) = members[static_cast<std::size_t>(i)].inner(members[static_cast<std::size_t>(j)]);
  support = empty_set(grid);
  for (const auto& f : members)
    for (std::size_t k = 0; k < f.values.size(); ++k)
      if (f.support.mask[k]) support.mask[k] = 1;
  support.recompute_measure();
  if (gram_deviation() > tol)
    throw DomainError("orthonormal system: Gram deviation " + std::to_string(gram_deviation()) +
                      " exceeds tolerance");
}

OrthonormalSystem make_wavepackets(GridPtr grid, const std::vector<Vec3>& centers,
                                   const std::vector<double>& radii,
                                   const std::vector<Vec3>& modulations) {
  if (centers.size() != radii.size() || centers.size() != modulations.size())
    throw DomainError("make_wavepackets: argument lengths differ");
  OrthonormalSystem sys;
  sys.grid = grid;
  sys.descriptor = {{"kind", "wavepackets"}, {"count", centers.size()}};
  std::vector<std::uint8_t> used(grid->size(), 0);
  for (std::size_t j = 0; j < centers.size(); ++j) {
    DirectionSet cap = cap_set(grid, centers[j].normalized(), radii[j]);
    if (cap.measure <= 0.0) throw ResolutionError("make_wavepackets: cap contains no grid node");
    for (std::size_t k = 0; k < used.size(); ++k) {
      if (cap.mask[k] && used[k]) throw DomainError("make_wavepackets: caps overlap on the grid");
      used[k] |= cap.mask[k];
    }
    double amp = 1.0 / std::sqrt(cap.measure);
    Vec3 mod = modulations[j];
    std::vector<cd> v(grid->size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (cap.mask[k]) v[k] = amp * fourier_kernel(mod.dot(grid->nodes[k]));
    sys.members.push_back(SurfaceFunction::from_values(grid, std::move(v), 0.0));
    auto mask = cap.mask;
    sys.callables.push_back([grid, mask, amp, mod](const Vec3& w) -> cd {
      int k = grid->nearest(w);
      return mask[static_cast<std::size_t>(k)] ? amp * fourier_kernel(mod.dot(w)) : cd(0.0);
    });
  }
  sys.certify();
  return sys;
}

OrthonormalSystem make_harmonics(GridPtr grid, const std::vector<int>& degrees) {
  if (grid->dim != 3) throw DomainError("make_harmonics: n=3 only");
  int lmax = 0;
  for (int l : degrees) lmax = std::max(lmax, l);
  if (grid->degree < 2 * lmax)
    throw ResolutionError("make_harmonics: grid exactness degree " + std::to_string(grid->degree) +
                          " below twice the maximal degree");
  OrthonormalSystem sys;
  sys.grid = grid;
  sys.tol = 1e-10;
  sys.descriptor = {{"kind", "harmonics"}, {"degrees", degrees}};
  for (int l : degrees)
    for (int m = -l; m <= l; ++m) {
      SphereFn f = [l, m](const Vec3& w) -> cd { return real_harmonic(l, m, w); };
      sys.members.push_back(SurfaceFunction::from_callable(grid, f, 0.0));
      sys.callables.push_back(f);
    }
  sys.certify();
  return sys;
}

namespace {

// Shared Gram-Schmidt; returns coefficient rows mapping raw inputs to accepted members.
std::vector<std::vector<cd>> gram_schmidt(GridPtr grid, std::vector<std::vector<cd>>& vals, double pivot,
                                          std::vector<int>& kept, std::vector<int>& dropped) {
  auto ip = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
    CAccumulator acc;
    for (std::size_t k = 0; k < a.size(); ++k) acc.add(grid->qweights[k] * a[k] * std::conj(b[k]));
    return acc.value();
  };
  std::size_t m = vals.size();
  std::vector<std::vector<cd>> basis;
  std::vector<std::vector<cd>> coeff;  // coeff[i][r]: member i = sum_r coeff[i][r] raw_r
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<cd> v = vals[r];
    std::vector<cd> c(m, 0.0);
    c[r] = 1.0;
    double n0 = std::sqrt(std::max(0.0, ip(v, v).real()));
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < basis.size(); ++i) {
        cd p = ip(v, basis[i]);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= p * basis[i][k];
        for (std::size_t s = 0; s < m; ++s) c[s] -= p * coeff[i][s];
      }
    double n1 = std::sqrt(std::max(0.0, ip(v, v).real()));
    if (n0 == 0.0 || n1 < pivot * n0) {
      dropped.push_back(static_cast<int>(r));
      continue;
    }
    for (auto& x : v) x /= n1;
    for (auto& x : c) x /= n1;
    basis.push_back(std::move(v));
    coeff.push_back(std::move(c));
    kept.push_back(static_cast<int>(r));
  }
  vals = std::move(basis);
  return coeff;
}

}  // namespace

OrthonormalSystem orthonormalize(GridPtr grid, const std::vector<std::vector<cd>>& raw, double pivot) {
  std::vector<std::vector<cd>> vals = raw;
  for (const auto& v : vals)
    if (v.size() != grid->size()) throw DomainError("orthonormalize: value count does not match grid");
  std::vector<int> kept, dropped;
  gram_schmidt(grid, vals, pivot, kept, dropped);
  OrthonormalSystem sys;
  sys.grid = grid;
  sys.dropped = dropped;
  sys.descriptor = {{"kind", "orthonormalized"}, {"inputs", raw.size()}, {"dropped", dropped}};
  for (auto& v : vals) sys.members.push_back(SurfaceFunction::from_values(grid, std::move(v)));
  sys.certify();
  return sys;
}

OrthonormalSystem orthonormalize(GridPtr grid, const std::vector<SphereFn>& raw, double pivot) {
  std::vector<std::vector<cd>> vals;
  for (const auto& f : raw) {
    std::vector<cd> v(grid->size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid->nodes[k]);
    vals.push_back(std::move(v));
  }
  std::vector<int> kept, dropped;
  auto coeff = gram_schmidt(grid, vals, pivot, kept, dropped);
  OrthonormalSystem sys;
  sys.grid = grid;
  sys.dropped = dropped;
  sys.descriptor = {{"kind", "orthonormalized"}, {"inputs", raw.size()}, {"dropped", dropped}};
  for (std::size_t i = 0; i < vals.size(); ++i) {
    sys.members.push_back(SurfaceFunction::from_values(grid, std::move(vals[i])));
    auto c = coeff[i];
    auto fns = raw;
    sys.callables.push_back([c, fns](const Vec3& w) -> cd {
      cd acc = 0.0;
      for (std::size_t r = 0; r < fns.size(); ++r)
        if (c[r] != 0.0) acc += c[r] * fns[r](w);
      return acc;
    });
  }
  sys.certify();
  return sys;
}

double check_almost_orthonormal(const Eigen::MatrixXcd& gram) {
  double best = 0.0;
  for (Eigen::Index k = 0; k < gram.cols(); ++k) best = std::max(best, gram.col(k).cwiseAbs2().sum());
  return best;
}

double check_almost_orthonormal(const OrthonormalSystem& sys) { return check_almost_orthonormal(sys.gram); }

double TorusSystem::gram_deviation() const {
  Eigen::MatrixXcd g = coeffs * coeffs.adjoint();
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

TorusSystem make_dft_system(int N, const std::vector<int>& K, std::uint64_t mix_seed) {
  if (N <= 0 || K.empty()) throw DomainError("make_dft_system: empty lattice or frequency set");
  for (int k : K)
    if (k < 0 || k >= N) throw DomainError("make_dft_system: frequency outside the lattice");
  TorusSystem s;
  s.N = N;
  s.K = K;
  auto m = static_cast<Eigen::Index>(K.size());
  s.coeffs.resize(m, m);
  double amp = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index r = 0; r < m; ++r)
      s.coeffs(j, r) = amp * std::polar(1.0, kTwoPi * static_cast<double>(j * r) / static_cast<double>(m));
  if (mix_seed != 0) {
    std::mt19937_64 rng(mix_seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd Z(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) Z(i, j) = cd(nd(rng), nd(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ();
    s.coeffs = Q * s.coeffs;
  }
  s.hat.resize(m, N);
  for (Eigen::Index j = 0; j < m; ++j)
    for (int v = 0; v < N; ++v) {
      CAccumulator acc;
      for (Eigen::Index r = 0; r < m; ++r) {
        long kv = static_cast<long>(K[static_cast<std::size_t>(r)]) * v % N;
        acc.add(s.coeffs(j, r) * fourier_kernel(static_cast<double>(kv) / N));
      }
      s.hat(j, v) = acc.value();
    }
  return s;
}

double DensityOperator::l2() const {
  double s = 0.0;
  for (double l : lambda) s += l * l;
  return std::sqrt(s);
}

SphereFn random_smooth_function(std::mt19937_64& rng, int dim, int bumps, double kappa_min, double kappa_max) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(kappa_min, kappa_max);
  struct Bump {
    cd amp;
    Vec3 center;
    double kappa;
    Vec3 mod;
  };
  std::vector<Bump> bs;
  for (int b = 0; b < bumps; ++b) {
    Bump x;
    x.amp = cd(nd(rng), nd(rng));
    x.center = Vec3(nd(rng), nd(rng), dim == 3 ? nd(rng) : 0.0).normalized();
    x.kappa = ud(rng);
    x.mod = 0.5 * Vec3(nd(rng), nd(rng), dim == 3 ? nd(rng) : 0.0);
    bs.push_back(x);
  }
  return [bs](const Vec3& w) -> cd {
    cd acc = 0.0;
    for (const auto& b : bs) acc += b.amp * std::exp(b.kappa * (w.dot(b.center) - 1.0)) * fourier_kernel(b.mod.dot(w));
    return acc;
  };
}

SphereFn cap_bump(const Vec3& center, double radius, const Vec3& modulation) {
  Vec3 c = center.normalized();
  return [c, radius, modulation](const Vec3& w) -> cd {
    double th = std::acos(std::clamp(w.dot(c), -1.0, 1.0)) / radius;
    if (th >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - th * th)) * fourier_kernel(modulation.dot(w));
  };
}

}  // namespace extlab
