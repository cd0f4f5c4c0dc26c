#include "extlab/discretization.hpp"

#include <algorithm>
#include <numeric>

namespace extlab {

namespace {

void check_unit(const Vec3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10) throw DomainError(std::string(what) + ": input is not a unit vector");
}

}  // namespace

int SphereGrid::antipode(int k) const {
  if (antipode_map.empty()) return -1;
  return antipode_map[static_cast<std::size_t>(k)];
}

int SphereGrid::nearest(const Vec3& p) const {
  if (dim == 2) {
    double a = std::atan2(p.y(), p.x());
    if (a < 0) a += kTwoPi;
    int k = static_cast<int>(std::lround(a / (kTwoPi / n_phi))) % n_phi;
    return k;
  }
  Vec3 u = p.normalized();
  double phi = std::atan2(u.y(), u.x());
  if (phi < 0) phi += kTwoPi;
  // rings are ordered by increasing cos(theta)
  int lo = 0, hi = n_theta - 1;
  double z = u.z();
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (nodes[static_cast<std::size_t>(mid * n_phi)].z() < z)
      lo = mid;
    else
      hi = mid;
  }
  int best = -1;
  double best_dot = -2.0;
  int j0 = static_cast<int>(std::floor(phi / (kTwoPi / n_phi) - 0.5));
  for (int i = std::max(0, lo - 1); i <= std::min(n_theta - 1, hi + 1); ++i) {
    for (int dj = -1; dj <= 2; ++dj) {
      int j = ((j0 + dj) % n_phi + n_phi) % n_phi;
      int k = i * n_phi + j;
      double d = nodes[static_cast<std::size_t>(k)].dot(u);
      if (d > best_dot) {
        best_dot = d;
        best = k;
      }
    }
  }
  return best;
}

GridPtr build_sphere_grid(int n, int n_theta, int n_phi) {
  auto g = std::make_shared<SphereGrid>();
  g->dim = n;
  if (n == 2) {
    if (n_theta < 1) throw DomainError("build_sphere_grid: resolution must be positive");
    int N = n_theta;
    g->n_theta = 1;
    g->n_phi = N;
    g->nodes.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
      double a = kTwoPi * k / N;
      g->nodes.push_back(vec2(std::cos(a), std::sin(a)));
      g->qweights.push_back(kTwoPi / N);
    }
    g->degree = N - 1;
    g->angular_resolution = kTwoPi / N;
    if (N % 2 == 0) {
      g->antipode_map.resize(static_cast<std::size_t>(N));
      for (int k = 0; k < N; ++k) g->antipode_map[static_cast<std::size_t>(k)] = (k + N / 2) % N;
    }
    return g;
  }
  if (n != 3) throw DomainError("build_sphere_grid: unsupported dimension " + std::to_string(n));
  if (n_theta < 1) throw DomainError("build_sphere_grid: resolution must be positive");
  if (n_phi <= 0) n_phi = 2 * n_theta;
  g->n_theta = n_theta;
  g->n_phi = n_phi;
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  g->nodes.reserve(static_cast<std::size_t>(n_theta * n_phi));
  for (int i = 0; i < n_theta; ++i) {
    double ct = x[static_cast<std::size_t>(i)];
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_phi; ++j) {
      double ph = kTwoPi * (j + 0.5) / n_phi;
      g->nodes.emplace_back(st * std::cos(ph), st * std::sin(ph), ct);
      g->qweights.push_back(w[static_cast<std::size_t>(i)] * kTwoPi / n_phi);
    }
  }
  g->degree = std::min(2 * n_theta - 1, n_phi - 1);
  // Longest cell edge: ring spacing, pole gap, or equatorial phi spacing.
  double res = std::acos(std::clamp(x.back(), -1.0, 1.0));
  for (int i = 0; i + 1 < n_theta; ++i)
    res = std::max(res, std::acos(x[static_cast<std::size_t>(i)]) - std::acos(x[static_cast<std::size_t>(i + 1)]));
  res = std::max(res, kTwoPi / n_phi);
  g->angular_resolution = res;
  if (n_phi % 2 == 0) {
    g->antipode_map.resize(g->nodes.size());
    for (int i = 0; i < n_theta; ++i)
      for (int j = 0; j < n_phi; ++j)
        g->antipode_map[static_cast<std::size_t>(i * n_phi + j)] = (n_theta - 1 - i) * n_phi + (j + n_phi / 2) % n_phi;
  }
  return g;
}

double geodesic_distance(const Vec3& a, const Vec3& b) {
  // atan2 form stays accurate for nearly parallel inputs
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec3 reflect(const Vec3& omega, const Vec3& omega_p) {
  check_unit(omega, "reflect");
  check_unit(omega_p, "reflect");
  return 2.0 * omega.dot(omega_p) * omega - omega_p;
}

std::vector<int> DirectionSet::members() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) out.push_back(static_cast<int>(k));
  return out;
}

void DirectionSet::recompute_measure() {
  Accumulator acc;
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) acc.add(grid->qweights[k]);
  measure = acc.value();
}

nlohmann::json DirectionSet::to_json() const {
  nlohmann::json j;
  j["tag"] = tag;
  j["params"] = params;
  j["grid"] = {{"dim", grid->dim}, {"n_theta", grid->n_theta}, {"n_phi", grid->n_phi}};
  std::string bits;
  bits.reserve(mask.size());
  for (auto b : mask) bits.push_back(b ? '1' : '0');
  j["mask"] = bits;
  j["measure"] = measure;
  return j;
}

DirectionSet DirectionSet::from_json(const nlohmann::json& j, GridPtr grid) {
  DirectionSet d;
  d.grid = std::move(grid);
  d.tag = j.value("tag", std::string("custom"));
  d.params = j.value("params", nlohmann::json::object());
  std::string bits = j.at("mask").get<std::string>();
  if (bits.size() != d.grid->size()) throw SchemaError("direction set mask length does not match grid");
  d.mask.resize(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) d.mask[k] = bits[k] == '1';
  d.recompute_measure();
  return d;
}

DirectionSet full_set(GridPtr grid) {
  DirectionSet d;
  d.mask.assign(grid->size(), 1);
  d.grid = std::move(grid);
  d.tag = "full";
  d.recompute_measure();
  return d;
}

DirectionSet empty_set(GridPtr grid) {
  DirectionSet d;
  d.mask.assign(grid->size(), 0);
  d.grid = std::move(grid);
  d.tag = "custom";
  d.measure = 0.0;
  return d;
}

DirectionSet cap_set(GridPtr grid, const Vec3& center, double radius) {
  return cap_union(std::move(grid), {center}, {radius});
}

DirectionSet cap_union(GridPtr grid, const std::vector<Vec3>& centers, const std::vector<double>& radii) {
  if (centers.size() != radii.size()) throw DomainError("cap_union: centers/radii size mismatch");
  DirectionSet d = empty_set(grid);
  d.tag = "cap-union";
  nlohmann::json caps = nlohmann::json::array();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    Vec3 u = centers[c].normalized();
    caps.push_back({{"center", {u.x(), u.y(), u.z()}}, {"radius", radii[c]}});
    double cr = std::cos(radii[c]);
    for (std::size_t k = 0; k < grid->size(); ++k)
      if (grid->nodes[k].dot(u) >= cr - 1e-14) d.mask[k] = 1;
  }
  d.params["caps"] = caps;
  d.recompute_measure();
  return d;
}

DirectionSet set_union(const DirectionSet& a, const DirectionSet& b) {
  if (a.grid != b.grid) throw DomainError("set_union: sets live on different grids");
  DirectionSet d = a;
  d.tag = "custom";
  for (std::size_t k = 0; k < d.mask.size(); ++k) d.mask[k] = a.mask[k] | b.mask[k];
  d.recompute_measure();
  return d;
}

bool is_subset(const DirectionSet& a, const DirectionSet& b) {
  for (std::size_t k = 0; k < a.mask.size(); ++k)
    if (a.mask[k] && !b.mask[k]) return false;
  return true;
}

double default_eta(const SphereGrid& g) { return 2.0 * g.angular_resolution; }

DirectionSet midpoint_set(const DirectionSet& K) { return midpoint_set(K, default_eta(*K.grid)); }

DirectionSet midpoint_set(const DirectionSet& K, double eta) {
  const SphereGrid& g = *K.grid;
  if (eta < 2.0 * g.angular_resolution * (1.0 - 1e-9))
    throw ResolutionError("midpoint_set: eta below twice the grid resolution");
  DirectionSet out = K;
  out.tag = "custom";
  out.params = {{"source", K.tag}, {"eta", eta}};
  std::vector<int> mem = K.members();
  if (mem.empty()) return out;
  const double ceta = std::cos(eta);
  // Necessary condition: the node nearest to a candidate lies within eta + resolution of K.
  std::vector<std::uint8_t> near(g.size(), 0);
  const double cnear = std::cos(std::min(kPi, eta + 1.01 * g.angular_resolution));
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (K.mask[k]) {
      near[k] = 1;
      continue;
    }
    for (int m : mem)
      if (g.nodes[k].dot(g.nodes[static_cast<std::size_t>(m)]) >= cnear) {
        near[k] = 1;
        break;
      }
  }
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (K.mask[k]) continue;
    const Vec3& w = g.nodes[k];
    bool found = false;
    for (int a : mem) {
      const Vec3& wp = g.nodes[static_cast<std::size_t>(a)];
      double d = w.dot(wp);
      if (d < -1e-12) continue;
      Vec3 r = 2.0 * d * w - wp;
      if (!near[static_cast<std::size_t>(g.nearest(r))]) continue;
      for (int b : mem)
        if (r.dot(g.nodes[static_cast<std::size_t>(b)]) >= ceta) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (found) out.mask[k] = 1;
  }
  out.recompute_measure();
  return out;
}

DirectionSet cantor_direction_set(GridPtr grid, int generation, double start, double length) {
  if (grid->dim != 2) throw DomainError("cantor_direction_set: requires n=2");
  if (generation < 0) throw DomainError("cantor_direction_set: generation must be nonnegative");
  std::vector<std::pair<double, double>> arcs{{0.0, length}};
  for (int g = 0; g < generation; ++g) {
    std::vector<std::pair<double, double>> next;
    for (auto [a, b] : arcs) {
      double t = (b - a) / 3.0;
      next.emplace_back(a, a + t);
      next.emplace_back(b - t, b);
    }
    arcs.swap(next);
  }
  double arc_len = length / std::pow(3.0, generation);
  if (arc_len < 2.0 * grid->angular_resolution)
    throw ResolutionError("cantor_direction_set: arcs below grid resolution");
  DirectionSet d = empty_set(grid);
  d.tag = "cantor";
  d.params = {{"generation", generation}, {"start", start}, {"length", length}};
  for (std::size_t k = 0; k < grid->size(); ++k) {
    double a = std::atan2(grid->nodes[k].y(), grid->nodes[k].x()) - start;
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    for (auto [lo, hi] : arcs)
      if (a >= lo - 1e-12 && a <= hi + 1e-12) {
        d.mask[k] = 1;
        break;
      }
  }
  d.recompute_measure();
  return d;
}

double antipodal_separation(const DirectionSet& K) {
  std::vector<int> mem = K.members();
  double worst = kPi;
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i; j < mem.size(); ++j) {
      const Vec3& a = K.grid->nodes[static_cast<std::size_t>(mem[i])];
      const Vec3& b = K.grid->nodes[static_cast<std::size_t>(mem[j])];
      worst = std::min(worst, geodesic_distance(a, -b));
    }
  return worst;
}

void require_antipodal_separation(const DirectionSet& K, double delta0) {
  if (K.grid->dim != 2) return;
  double sep = antipodal_separation(K);
  if (sep <= delta0)
    throw DomainError("direction set has near-antipodal members (separation " + std::to_string(sep) + " rad)");
}

std::size_t BoxGrid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(points);
  return s;
}

Vec3 BoxGrid::node(std::size_t flat) const {
  Vec3 p = Vec3::Zero();
  for (int d = 0; d < dim; ++d) {
    p[d] = coord(static_cast<int>(flat % static_cast<std::size_t>(points)));
    flat /= static_cast<std::size_t>(points);
  }
  return p;
}

TangentFrame tangent_frame(const Vec3& omega, int dim) {
  TangentFrame f;
  if (dim == 2) {
    f.e1 = vec2(-omega.y(), omega.x());
    return f;
  }
  // Fixed reference axis; switch to e_x near the poles.
  Vec3 ref = std::abs(omega.z()) > 0.9 ? Vec3(1, 0, 0) : Vec3(0, 0, 1);
  f.e1 = (ref - ref.dot(omega) * omega).normalized();
  f.e2 = omega.cross(f.e1);
  return f;
}

std::vector<std::array<double, 2>> PhaseGrid::offsets() const {
  std::vector<std::array<double, 2>> out;
  double h = step();
  if (dim == 2) {
    for (int i = 0; i < points; ++i) out.push_back({-radius + (i + 0.5) * h, 0.0});
    return out;
  }
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) out.push_back({-radius + (i + 0.5) * h, -radius + (j + 0.5) * h});
  return out;
}

}  // namespace extlab
