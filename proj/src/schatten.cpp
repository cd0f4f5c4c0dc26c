#include "extlab/schatten.hpp"

#include <limits>

namespace extlab {

KernelMatrix assemble_sphere_kernel(const Weight& w, const DirectionSet& K) {
  const SphereGrid& G = *K.grid;
  KernelMatrix km;
  km.nodes = K.members();
  auto m = static_cast<Eigen::Index>(km.nodes.size());
  km.A.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    auto nj = static_cast<std::size_t>(km.nodes[static_cast<std::size_t>(j)]);
    for (Eigen::Index k = j; k < m; ++k) {
      auto nk = static_cast<std::size_t>(km.nodes[static_cast<std::size_t>(k)]);
      cd v = std::sqrt(G.qweights[nj] * G.qweights[nk]) * fourier_weight(w, G.nodes[nk] - G.nodes[nj]);
      km.A(j, k) = v;
      km.A(k, j) = std::conj(v);
    }
  }
  return km;
}

KernelMatrix assemble_paraboloid_kernel(const Weight& w, const std::vector<double>& freqs, double cell) {
  if (w.dim() != 2) throw DomainError("assemble_paraboloid_kernel: expects a (x,t) weight");
  KernelMatrix km;
  km.freqs = freqs;
  auto m = static_cast<Eigen::Index>(freqs.size());
  km.A.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = j; k < m; ++k) {
      double a = freqs[static_cast<std::size_t>(j)], b = freqs[static_cast<std::size_t>(k)];
      cd v = cell * fourier_weight(w, Vec3(a - b, 0.5 * (a * a - b * b), 0.0));
      km.A(j, k) = v;
      km.A(k, j) = std::conj(v);
    }
  return km;
}

Eigen::VectorXd spectrum(const KernelMatrix& A) {
  if (A.dim() == 0) return Eigen::VectorXd();
  double herm = (A.A - A.A.adjoint()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, A.A.cwiseAbs().maxCoeff());
  if (herm > 1e-12 * scale) throw DomainError("schatten: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A.A, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double schatten_norm_from_spectrum(const Eigen::VectorXd& eig, double p) {
  if (eig.size() == 0) return 0.0;
  if (std::isinf(p)) return eig.cwiseAbs().maxCoeff();
  if (!(p > 0.0)) throw DomainError("schatten_norm: exponent must be positive");
  Accumulator acc;
  for (Eigen::Index i = 0; i < eig.size(); ++i) acc.add(std::pow(std::abs(eig(i)), p));
  return std::pow(acc.value(), 1.0 / p);
}

double schatten_norm(const KernelMatrix& A, double p) { return schatten_norm_from_spectrum(spectrum(A), p); }

double c2_double_sum_sphere(const Weight& w, const DirectionSet& K) {
  const SphereGrid& G = *K.grid;
  auto mem = K.members();
  Accumulator acc;
  for (int a : mem)
    for (int b : mem) {
      auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
      acc.add(G.qweights[ia] * G.qweights[ib] * std::norm(fourier_weight(w, G.nodes[ia] - G.nodes[ib])));
    }
  return acc.value();
}

double c2_double_sum_paraboloid(const Weight& w, const std::vector<double>& freqs, double cell) {
  Accumulator acc;
  for (double a : freqs)
    for (double b : freqs) acc.add(cell * cell * std::norm(fourier_weight(w, Vec3(a - b, 0.5 * (a * a - b * b), 0.0))));
  return acc.value();
}

double kernel_quadratic_form(const KernelMatrix& A, const SurfaceFunction& g) {
  const SphereGrid& G = *g.grid;
  Eigen::VectorXcd h(A.dim());
  for (Eigen::Index i = 0; i < A.dim(); ++i) {
    auto k = static_cast<std::size_t>(A.nodes[static_cast<std::size_t>(i)]);
    h(i) = std::sqrt(G.qweights[k]) * g.values[k];
  }
  return h.dot(A.A * h).real();
}

TracePairingReport trace_pairing(const Weight& w, const DensityOperator& gamma, int hermite_nodes) {
  if (gamma.system == nullptr) throw DomainError("trace_pairing: density operator has no system");
  const OrthonormalSystem& sys = *gamma.system;
  if (gamma.lambda.size() != sys.size()) throw DomainError("trace_pairing: coefficient count mismatch");
  const auto& mix = w.mixture();
  if (mix.dim != 3 || sys.grid->dim != 3) throw DomainError("trace_pairing: n=3 only");
  TracePairingReport r;
  KernelMatrix A = assemble_sphere_kernel(w, sys.support);
  Accumulator kern;
  for (std::size_t j = 0; j < sys.size(); ++j)
    if (gamma.lambda[j] != 0.0) kern.add(gamma.lambda[j] * kernel_quadratic_form(A, sys.members[j]));
  r.kernel = kern.value();

  std::vector<double> hx, hw;
  gauss_hermite(hermite_nodes, hx, hw);
  Accumulator spat;
  for (const auto& t : mix.terms) {
    // x = a + s y / sqrt(pi): e^{-pi |x-a|^2 / s^2} dx = (s/sqrt(pi))^3 e^{-|y|^2} dy
    double sc = t.width / std::sqrt(kPi);
    Accumulator term;
    for (std::size_t a = 0; a < hx.size(); ++a)
      for (std::size_t b = 0; b < hx.size(); ++b)
        for (std::size_t c = 0; c < hx.size(); ++c) {
          Vec3 x = t.center + sc * Vec3(hx[a], hx[b], hx[c]);
          double dens = 0.0;
          for (std::size_t j = 0; j < sys.size(); ++j)
            if (gamma.lambda[j] != 0.0) dens += gamma.lambda[j] * std::norm(extension_at(sys.members[j], x));
          term.add(hw[a] * hw[b] * hw[c] * dens);
        }
    spat.add(t.coeff * sc * sc * sc * term.value());
  }
  r.spatial = spat.value();
  r.discrepancy = std::abs(r.spatial - r.kernel) / std::max(std::abs(r.kernel), 1e-300);
  return r;
}

}  // namespace extlab
