#include "extlab/transforms.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <map>
#include <mutex>
#include <random>

namespace extlab {

namespace {

double sqnorm_dim(const Vec3& x, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += x[d] * x[d];
  return s;
}

double interp_grid(const GridSampled& g, const Vec3& x) {
  const BoxGrid& b = g.grid;
  double h = b.step();
  std::array<int, 3> i0{};
  std::array<double, 3> fr{};
  for (int d = 0; d < b.dim; ++d) {
    double u = (x[d] + 0.5 * b.side) / h;
    if (u < 0.0 || u > b.points - 1) return 0.0;
    int i = std::min(static_cast<int>(std::floor(u)), b.points - 2);
    i0[d] = i;
    fr[d] = u - i;
  }
  double acc = 0.0;
  int corners = 1 << b.dim;
  for (int c = 0; c < corners; ++c) {
    double wgt = 1.0;
    std::size_t flat = 0, stride = 1;
    for (int d = 0; d < b.dim; ++d) {
      int bit = (c >> d) & 1;
      wgt *= bit ? fr[d] : 1.0 - fr[d];
      flat += static_cast<std::size_t>(i0[d] + bit) * stride;
      stride *= static_cast<std::size_t>(b.points);
    }
    if (wgt != 0.0) acc += wgt * g.values[flat];
  }
  return acc;
}

}  // namespace

Weight::Weight(GaussianMixture m, bool nonnegative) : data_(std::move(m)), nonnegative_(nonnegative) {
  const auto& mm = std::get<GaussianMixture>(data_);
  if (mm.dim < 1 || mm.dim > 3) throw DomainError("Weight: mixture dimension must be 1..3");
  for (const auto& t : mm.terms)
    if (!(t.width > 0.0)) throw DomainError("Weight: mixture widths must be positive");
  if (nonnegative_) verify_nonnegative();
}

Weight::Weight(GridSampled g, bool nonnegative) : data_(std::move(g)), nonnegative_(nonnegative) {
  const auto& gg = std::get<GridSampled>(data_);
  if (gg.values.size() != gg.grid.size()) throw DomainError("Weight: sample count does not match grid");
  if (nonnegative_) verify_nonnegative();
}

int Weight::dim() const {
  return is_mixture() ? mixture().dim : samples().grid.dim;
}

const GaussianMixture& Weight::mixture() const {
  if (!is_mixture()) throw DomainError("Weight: not a Gaussian mixture");
  return std::get<GaussianMixture>(data_);
}

const GridSampled& Weight::samples() const {
  if (is_mixture()) throw DomainError("Weight: not grid sampled");
  return std::get<GridSampled>(data_);
}

double Weight::eval(const Vec3& x) const {
  if (is_mixture()) {
    const auto& m = mixture();
    double acc = 0.0;
    for (const auto& t : m.terms)
      acc += t.coeff * std::exp(-kPi * sqnorm_dim(x - t.center, m.dim) / (t.width * t.width));
    return acc;
  }
  return interp_grid(samples(), x);
}

double Weight::total_mass() const {
  if (is_mixture()) {
    const auto& m = mixture();
    double acc = 0.0;
    for (const auto& t : m.terms) acc += t.coeff * std::pow(t.width, m.dim);
    return acc;
  }
  const auto& g = samples();
  Accumulator a;
  for (double v : g.values) a.add(v);
  return a.value() * g.grid.cell_volume();
}

void Weight::verify_nonnegative() const {
  if (!is_mixture()) {
    for (double v : samples().values)
      if (v < -1e-12) throw DomainError("Weight: negative sample in a weight flagged nonnegative");
    return;
  }
  const auto& m = mixture();
  bool all_pos = true;
  for (const auto& t : m.terms) all_pos = all_pos && t.coeff >= 0.0;
  if (all_pos) return;
  std::mt19937_64 rng(12345);
  std::vector<Vec3> probes;
  for (const auto& t : m.terms) probes.push_back(t.center);
  for (const auto& t : m.terms) {
    std::normal_distribution<double> nd(0.0, t.width);
    for (int k = 0; k < 64; ++k) {
      Vec3 p = t.center;
      for (int d = 0; d < m.dim; ++d) p[d] += nd(rng);
      probes.push_back(p);
    }
  }
  for (const auto& p : probes)
    if (eval(p) < -1e-9) throw DomainError("Weight: mixture flagged nonnegative takes negative values");
}

nlohmann::json Weight::to_json() const {
  nlohmann::json j;
  j["nonnegative"] = nonnegative_;
  if (is_mixture()) {
    const auto& m = mixture();
    j["kind"] = "mixture";
    j["dim"] = m.dim;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : m.terms) {
      std::vector<double> c(t.center.data(), t.center.data() + m.dim);
      j["terms"].push_back({{"coeff", t.coeff}, {"center", c}, {"width", t.width}});
    }
  } else {
    const auto& g = samples();
    j["kind"] = "grid";
    j["dim"] = g.grid.dim;
    j["side"] = g.grid.side;
    j["points"] = g.grid.points;
    j["values"] = g.values;
  }
  return j;
}

Weight Weight::from_json(const nlohmann::json& j) {
  try {
    bool nn = j.value("nonnegative", false);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "mixture") {
      GaussianMixture m;
      m.dim = j.at("dim").get<int>();
      for (const auto& t : j.at("terms")) {
        GaussTerm gt;
        gt.coeff = t.at("coeff").get<double>();
        gt.width = t.at("width").get<double>();
        auto c = t.at("center").get<std::vector<double>>();
        if (static_cast<int>(c.size()) != m.dim) throw SchemaError("weight term center has wrong dimension");
        for (int d = 0; d < m.dim; ++d) gt.center[d] = c[static_cast<std::size_t>(d)];
        m.terms.push_back(gt);
      }
      return Weight(std::move(m), nn);
    }
    if (kind == "grid") {
      GridSampled g;
      g.grid.dim = j.at("dim").get<int>();
      g.grid.side = j.at("side").get<double>();
      g.grid.points = j.at("points").get<int>();
      g.values = j.at("values").get<std::vector<double>>();
      return Weight(std::move(g), nn);
    }
    throw SchemaError("unknown weight kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("weight: ") + e.what());
  }
}

Weight scaled(const Weight& w, double lambda) {
  if (w.is_mixture()) {
    GaussianMixture m = w.mixture();
    for (auto& t : m.terms) t.coeff *= lambda;
    return Weight(std::move(m), w.nonnegative() && lambda >= 0.0);
  }
  GridSampled g = w.samples();
  for (auto& v : g.values) v *= lambda;
  return Weight(std::move(g), w.nonnegative() && lambda >= 0.0);
}

Weight combine(const Weight& a, double ca, const Weight& b, double cb) {
  if (a.is_mixture() && b.is_mixture()) {
    if (a.dim() != b.dim()) throw DomainError("combine: dimension mismatch");
    GaussianMixture m;
    m.dim = a.dim();
    for (auto t : a.mixture().terms) {
      t.coeff *= ca;
      m.terms.push_back(t);
    }
    for (auto t : b.mixture().terms) {
      t.coeff *= cb;
      m.terms.push_back(t);
    }
    return Weight(std::move(m));
  }
  if (a.is_mixture() || b.is_mixture()) throw DomainError("combine: mixed weight kinds");
  const auto& ga = a.samples();
  const auto& gb = b.samples();
  if (ga.grid.dim != gb.grid.dim || ga.grid.points != gb.grid.points || ga.grid.side != gb.grid.side)
    throw DomainError("combine: grids differ");
  GridSampled g = ga;
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = ca * ga.values[i] + cb * gb.values[i];
  return Weight(std::move(g));
}

// ---------------------------------------------------------------- surface functions

SurfaceFunction SurfaceFunction::from_values(GridPtr grid, std::vector<cd> values, double zero_tol) {
  if (values.size() != grid->size()) throw DomainError("SurfaceFunction: value count does not match grid");
  SurfaceFunction f;
  f.grid = grid;
  f.support = empty_set(grid);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (std::abs(values[k]) > zero_tol) {
      f.support.mask[k] = 1;
    } else {
      values[k] = 0.0;
    }
  }
  f.support.recompute_measure();
  f.values = std::move(values);
  return f;
}

SurfaceFunction SurfaceFunction::from_callable(GridPtr grid, const SphereFn& fn, double zero_tol) {
  std::vector<cd> v(grid->size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(grid->nodes[k]);
  return from_values(std::move(grid), std::move(v), zero_tol);
}

SurfaceFunction SurfaceFunction::tilde() const {
  std::vector<cd> v(values.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    int a = grid->antipode(static_cast<int>(k));
    if (a < 0) throw DomainError("tilde: grid is not antipodally symmetric");
    v[k] = std::conj(values[static_cast<std::size_t>(a)]);
  }
  return from_values(grid, std::move(v), 0.0);
}

cd SurfaceFunction::inner(const SurfaceFunction& other) const {
  if (other.grid != grid) throw DomainError("inner: functions live on different grids");
  CAccumulator acc;
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] != 0.0 && other.values[k] != 0.0)
      acc.add(grid->qweights[k] * values[k] * std::conj(other.values[k]));
  return acc.value();
}

double SurfaceFunction::norm() const { return std::sqrt(std::max(0.0, inner(*this).real())); }

// ---------------------------------------------------------------- extension / Fourier

cd extension_at(const SurfaceFunction& g, const Vec3& x) {
  CAccumulator acc;
  const auto& G = *g.grid;
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (g.values[k] == 0.0) continue;
    acc.add(G.qweights[k] * g.values[k] * fourier_kernel(x.dot(G.nodes[k])));
  }
  return acc.value();
}

std::vector<cd> extension(const SurfaceFunction& g, const std::vector<Vec3>& X) {
  std::vector<cd> out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) out[i] = extension_at(g, X[i]);
  return out;
}

cd fourier_weight(const Weight& w, const Vec3& xi) {
  if (w.is_mixture()) {
    const auto& m = w.mixture();
    double xi2 = sqnorm_dim(xi, m.dim);
    CAccumulator acc;
    for (const auto& t : m.terms) {
      double s = t.width;
      double dot = 0.0;
      for (int d = 0; d < m.dim; ++d) dot += t.center[d] * xi[d];
      acc.add(t.coeff * std::pow(s, m.dim) * std::exp(-kPi * s * s * xi2) * fourier_kernel(dot));
    }
    return acc.value();
  }
  const auto& g = w.samples();
  CAccumulator acc;
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (g.values[k] == 0.0) continue;
    Vec3 x = g.grid.node(k);
    double dot = 0.0;
    for (int d = 0; d < g.grid.dim; ++d) dot += x[d] * xi[d];
    acc.add(g.values[k] * fourier_kernel(dot));
  }
  return acc.value() * g.grid.cell_volume();
}

// ---------------------------------------------------------------- X-ray family

double xray(const Weight& w, const Vec3& omega, const Vec3& v) {
  if (std::abs(v.dot(omega)) > 1e-10 * std::max(1.0, v.norm()))
    throw DomainError("xray: v is not perpendicular to omega");
  if (w.is_mixture()) {
    const auto& m = w.mixture();
    double acc = 0.0;
    for (const auto& t : m.terms) {
      Vec3 a = t.center;
      Vec3 aperp = a - a.dot(omega) * omega;
      acc += t.coeff * t.width * std::exp(-kPi * (v - aperp).squaredNorm() / (t.width * t.width));
    }
    return acc;
  }
  const auto& g = w.samples();
  double h = 0.5 * g.grid.step();
  double T = 0.5 * g.grid.side * std::sqrt(static_cast<double>(g.grid.dim)) + h;
  int steps = static_cast<int>(std::ceil(2.0 * T / h));
  double dt = 2.0 * T / steps;
  Accumulator acc;
  for (int i = 0; i < steps; ++i) {
    double t = -T + (i + 0.5) * dt;
    acc.add(interp_grid(g, v + t * omega));
  }
  return acc.value() * dt;
}

double xray_plane_l2sq(const Weight& w, const Vec3& omega) {
  const auto& m = w.mixture();
  int n = m.dim;
  Accumulator acc;
  std::vector<Vec3> ap;
  for (const auto& t : m.terms) ap.push_back(t.center - t.center.dot(omega) * omega);
  for (std::size_t i = 0; i < m.terms.size(); ++i) {
    for (std::size_t j = 0; j < m.terms.size(); ++j) {
      const auto& ti = m.terms[i];
      const auto& tj = m.terms[j];
      double si2 = ti.width * ti.width, sj2 = tj.width * tj.width;
      double sig = si2 + sj2;
      acc.add(ti.coeff * tj.coeff * ti.width * tj.width * std::pow(si2 * sj2 / sig, 0.5 * (n - 1)) *
              std::exp(-kPi * (ap[i] - ap[j]).squaredNorm() / sig));
    }
  }
  return acc.value();
}

double xray_l2sq(const Weight& w, const DirectionSet& E) {
  Accumulator acc;
  for (int k : E.members()) acc.add(E.grid->qweights[static_cast<std::size_t>(k)] *
                                    xray_plane_l2sq(w, E.grid->nodes[static_cast<std::size_t>(k)]));
  return acc.value();
}

XrayNormReport xray_norm(const Weight& w, const DirectionSet& E, const PhaseGrid& P, double p,
                         double tail_tol) {
  if (!(p > 0.0)) throw DomainError("xray_norm: exponent must be positive");
  const auto& G = *E.grid;
  if (P.dim != G.dim) throw DomainError("xray_norm: phase grid dimension mismatch");
  auto offs = P.offsets();
  double h = P.step();
  double edge = P.radius - 1.5 * h;
  Accumulator total, ring;
  for (int k : E.members()) {
    const Vec3& om = G.nodes[static_cast<std::size_t>(k)];
    TangentFrame fr = tangent_frame(om, G.dim);
    Accumulator node, node_ring;
    for (const auto& o : offs) {
      Vec3 v = o[0] * fr.e1 + o[1] * fr.e2;
      double val = std::pow(std::abs(xray(w, om, v)), p);
      node.add(val);
      if (std::max(std::abs(o[0]), std::abs(o[1])) > edge) node_ring.add(val);
    }
    double q = G.qweights[static_cast<std::size_t>(k)];
    total.add(q * node.value());
    ring.add(q * node_ring.value());
  }
  XrayNormReport r;
  double tot = total.value() * P.cell_area();
  r.tail_fraction = tot > 0.0 ? ring.value() * P.cell_area() / tot : 0.0;
  if (r.tail_fraction > tail_tol)
    throw ResolutionError("xray_norm: in-plane tail fraction " + std::to_string(r.tail_fraction) +
                          " exceeds tolerance; enlarge the phase-grid radius");
  r.value = std::pow(tot, 1.0 / p);
  if (p == 2.0 && w.is_mixture()) r.closed_form = std::sqrt(std::max(0.0, xray_l2sq(w, E)));
  return r;
}

double radon0(const Weight& f, const Vec3& omega) {
  const auto& m = f.mixture();
  double acc = 0.0;
  for (const auto& t : m.terms) {
    double d = t.center.dot(omega);
    acc += t.coeff * std::pow(t.width, m.dim - 1) * std::exp(-kPi * d * d / (t.width * t.width));
  }
  return acc;
}

double radon0_quadrature(const std::function<double(const Vec3&)>& f, const Vec3& omega, int dim,
                         const PhaseGrid& P) {
  TangentFrame fr = tangent_frame(omega, dim);
  Accumulator acc;
  for (const auto& o : P.offsets()) acc.add(f(o[0] * fr.e1 + o[1] * fr.e2));
  return acc.value() * P.cell_area();
}

double x0_adjoint(const SphereGrid& grid, const std::vector<double>& f, const Vec3& x) {
  double r = x.norm();
  if (r == 0.0) throw DomainError("x0_adjoint: singular at the origin");
  Vec3 u = x / r;
  double a = f[static_cast<std::size_t>(grid.nearest(u))];
  double b = f[static_cast<std::size_t>(grid.nearest(-u))];
  return std::pow(r, -(grid.dim - 1)) * (a + b);
}

double rho_adjoint(const Weight& w, double x, double v) {
  const auto& m = w.mixture();
  if (m.dim != 2) throw DomainError("rho_adjoint: expects a (x,t) mixture with d=1");
  double A = v * v + 1.0;
  double acc = 0.0;
  for (const auto& t : m.terms) {
    double y = x - t.center[0];
    double b = t.center[1];
    double B = y * v + b;
    double C = y * y + b * b;
    double s2 = t.width * t.width;
    acc += t.coeff * t.width / std::sqrt(A) * std::exp(-kPi / s2 * (C - B * B / A));
  }
  return acc;
}

double rho_adjoint_quadrature(const std::function<double(double, double)>& w, double x, double v,
                              int nodes) {
  // Composite Gauss-Legendre in theta with t = tan(theta).
  static thread_local std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(nodes);
  if (it == cache.end()) {
    std::vector<double> gx, gw;
    gauss_legendre(nodes, -0.5 * kPi, 0.5 * kPi, gx, gw);
    it = cache.emplace(nodes, std::make_pair(gx, gw)).first;
  }
  const auto& [gx, gw] = it->second;
  Accumulator acc;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    double c = std::cos(gx[i]);
    double t = std::tan(gx[i]);
    acc.add(gw[i] * w(x - t * v, t) / (c * c));
  }
  return acc.value();
}

// ---------------------------------------------------------------- Schrodinger

SchrodingerPropagator::SchrodingerPropagator(const BoxGrid& freq, const BoxGrid& space)
    : freq_(freq), space_(space) {
  if (freq.dim != 1 || space.dim != 1) throw DomainError("schrodinger_evolve: d=1 only");
  synth_.resize(space.points, freq.points);
  for (int i = 0; i < space.points; ++i)
    for (int k = 0; k < freq.points; ++k) synth_(i, k) = std::conj(fourier_kernel(space.coord(i) * freq.coord(k)));
}

SchrodingerField SchrodingerPropagator::evolve(const std::vector<cd>& uhat, double t, bool check_aliasing) const {
  if (uhat.size() != freq_.size()) throw DomainError("schrodinger_evolve: sample count mismatch");
  Eigen::VectorXcd mod(freq_.points);
  double hxi = freq_.step();
  for (int k = 0; k < freq_.points; ++k) {
    double xi = freq_.coord(k);
    mod(k) = uhat[static_cast<std::size_t>(k)] * std::conj(fourier_kernel(0.5 * t * xi * xi)) * hxi;
  }
  Eigen::VectorXcd u = synth_ * mod;
  SchrodingerField out;
  out.x.resize(static_cast<std::size_t>(space_.points));
  out.u.assign(u.data(), u.data() + u.size());
  for (int i = 0; i < space_.points; ++i) out.x[static_cast<std::size_t>(i)] = space_.coord(i);
  if (check_aliasing) {
    Accumulator m0, m1;
    for (const auto& c : uhat) m0.add(std::norm(c));
    for (const auto& c : out.u) m1.add(std::norm(c));
    double mass0 = m0.value() * hxi, mass1 = m1.value() * space_.step();
    if (std::abs(mass1 - mass0) > 1e-8 * std::max(mass0, 1e-300))
      throw ResolutionError("schrodinger_evolve: mass not conserved on the spatial grid (aliasing at t=" +
                            std::to_string(t) + ")");
  }
  return out;
}

SchrodingerField schrodinger_evolve(const BoxGrid& freq, const std::vector<cd>& uhat, double t,
                                    const BoxGrid& space, bool check_aliasing) {
  return SchrodingerPropagator(freq, space).evolve(uhat, t, check_aliasing);
}

// ---------------------------------------------------------------- fractional Laplacian

namespace {

// G(a, r) = int_{R^3} (2 pi |xi|)^a e^{-pi |xi|^2} e^{2 pi i x.xi} dxi with r = |x|.
class RieszProfile {
 public:
  explicit RieszProfile(double a) : a_(a) {
    using boost::math::tgamma;
    pre_ = std::pow(kTwoPi, a) * std::pow(kPi, -0.5 * a) * tgamma(1.5 + 0.5 * a) / tgamma(1.5);
    // 1/Gamma(-a/2) vanishes for a in {0, 2, 4, ...}: no algebraic tail
    bool pole = a >= 0.0 && std::floor(0.5 * a) == 0.5 * a;
    tail_ = pole ? 0.0 : std::pow(kTwoPi, a) * std::pow(kPi, -a - 1.5) * tgamma(1.5 + 0.5 * a) / tgamma(-0.5 * a);
    table_.resize(kCount + 1);
    for (int i = 0; i <= kCount; ++i) table_[static_cast<std::size_t>(i)] = exact(i * kStep);
  }

  double operator()(double r) const {
    if (a_ == 0.0) return std::exp(-kPi * r * r);
    if (r >= kMax) return asymptotic(r);
    double u = r / kStep;
    auto i = static_cast<std::size_t>(u);
    // cubic Lagrange on four neighbours
    std::size_t i0 = i == 0 ? 0 : i - 1;
    if (i0 + 3 > static_cast<std::size_t>(kCount)) i0 = static_cast<std::size_t>(kCount) - 3;
    double x = u - static_cast<double>(i0);
    double y0 = table_[i0], y1 = table_[i0 + 1], y2 = table_[i0 + 2], y3 = table_[i0 + 3];
    return y0 * (x - 1) * (x - 2) * (x - 3) / -6.0 + y1 * x * (x - 2) * (x - 3) / 2.0 +
           y2 * x * (x - 1) * (x - 3) / -2.0 + y3 * x * (x - 1) * (x - 2) / 6.0;
  }

  double tail_coefficient() const { return tail_; }

 private:
  double exact(double r) const {
    if (a_ == 0.0) return std::exp(-kPi * r * r);
    return pre_ * boost::math::hypergeometric_1F1(1.5 + 0.5 * a_, 1.5, -kPi * r * r);
  }
  double asymptotic(double r) const {
    double z = kPi * r * r;
    double a = 1.5 + 0.5 * a_, b = 1.5;
    double c1 = a * (1 + a - b) / z;
    double c2 = a * (a + 1) * (1 + a - b) * (2 + a - b) / (2 * z * z);
    return tail_ * std::pow(r, -(3.0 + a_)) * (1 + c1 + c2);
  }

  static constexpr double kMax = 24.0;
  static constexpr int kCount = 9600;
  static constexpr double kStep = kMax / kCount;
  double a_;
  double pre_ = 0.0, tail_ = 0.0;
  std::vector<double> table_;
};

const RieszProfile& riesz_profile(double a) {
  static std::mutex mu;
  static std::map<double, std::unique_ptr<RieszProfile>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[a];
  if (!slot) slot = std::make_unique<RieszProfile>(a);
  return *slot;
}

}  // namespace

FracLaplacianReport frac_laplacian_norm(const Weight& w, double s, double p) {
  const auto& m = w.mixture();
  if (m.dim != 3) throw DomainError("frac_laplacian_norm: n=3 mixtures only");
  if (!(s > -1.0 && s <= 0.0)) throw DomainError("frac_laplacian_norm: order must lie in (-1, 0]");
  if (!(p >= 1.0)) throw DomainError("frac_laplacian_norm: p must be at least 1");
  double a = 2.0 * s;
  if (a < 0.0 && !(p * (3.0 + a) > 3.0))
    throw DomainError("frac_laplacian_norm: field is not p-integrable for this (s, p)");
  const RieszProfile& prof = riesz_profile(a);
  double ext = 0.0, smax = 0.0;
  for (const auto& t : m.terms) {
    ext = std::max(ext, t.center.norm());
    smax = std::max(smax, t.width);
  }
  double R0 = ext + 4.0 * smax;
  if (a < 0.0) R0 = std::max(R0, 4.0 * (ext + smax));
  const int N = 48;
  double h = 2.0 * R0 / N;
  Accumulator acc;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        Vec3 x(-R0 + (i + 0.5) * h, -R0 + (j + 0.5) * h, -R0 + (k + 0.5) * h);
        if (a < 0.0 && x.norm() >= R0) continue;
        double f = 0.0;
        for (const auto& t : m.terms)
          f += t.coeff * std::pow(t.width, -a) * prof((x - t.center).norm() / t.width);
        acc.add(std::pow(std::abs(f), p));
      }
  double inner = acc.value() * h * h * h;
  double tail = 0.0;
  if (a < 0.0) {
    double mass = w.total_mass();
    double e = p * (3.0 + a) - 3.0;
    tail = 4.0 * kPi * std::pow(std::abs(prof.tail_coefficient() * mass), p) * std::pow(R0, -e) / e;
  }
  FracLaplacianReport r;
  double tot = inner + tail;
  r.tail_fraction = tot > 0.0 ? tail / tot : 0.0;
  r.value = std::pow(tot, 1.0 / p);
  return r;
}

double frac_laplacian_l2sq(const Weight& w, double s) {
  const auto& m = w.mixture();
  if (m.dim != 3) throw DomainError("frac_laplacian_l2sq: n=3 mixtures only");
  double a = 4.0 * s;
  if (!(a > -3.0)) throw DomainError("frac_laplacian_l2sq: multiplier not integrable at the origin");
  const RieszProfile& prof = riesz_profile(a);
  Accumulator acc;
  for (const auto& ti : m.terms)
    for (const auto& tj : m.terms) {
      double sig = std::sqrt(ti.width * ti.width + tj.width * tj.width);
      double sc = std::pow(ti.width * tj.width, 3) * std::pow(sig, -3.0 - a);
      acc.add(ti.coeff * tj.coeff * sc * prof((ti.center - tj.center).norm() / sig));
    }
  return acc.value();
}

Weight autocorrelate(const Weight& w) {
  if (!w.is_mixture()) throw DomainError("autocorrelate: grid-sampled weights are not supported");
  const auto& m = w.mixture();
  GaussianMixture out;
  out.dim = m.dim;
  for (const auto& ti : m.terms)
    for (const auto& tj : m.terms) {
      double si2 = ti.width * ti.width, sj2 = tj.width * tj.width;
      GaussTerm t;
      t.width = std::sqrt(si2 + sj2);
      t.center = ti.center - tj.center;
      t.coeff = ti.coeff * tj.coeff * std::pow(si2 * sj2 / (si2 + sj2), 0.5 * m.dim);
      out.terms.push_back(t);
    }
  return Weight(std::move(out), w.nonnegative());
}

}  // namespace extlab
