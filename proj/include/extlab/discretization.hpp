#pragma once

#include "extlab/common.hpp"

#include <json.hpp>

#include <array>
#include <memory>

namespace extlab {

struct SphereGrid {
  int dim = 3;
  std::vector<Vec3> nodes;
  std::vector<double> qweights;
  double angular_resolution = 0.0;
  int degree = 0;  // polynomial exactness degree
  int n_theta = 0;
  int n_phi = 0;   // for S^1 this is the node count

  std::size_t size() const { return nodes.size(); }
  double total_measure() const { return dim == 2 ? kTwoPi : 4.0 * kPi; }
  // Index of the antipodal node, or -1 when the rule is not antipodally symmetric.
  int antipode(int k) const;
  int nearest(const Vec3& p) const;
  std::vector<int> antipode_map;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

// n=2: n_theta is the node count. n=3: Gauss-Legendre in cos(theta) times uniform phi.
GridPtr build_sphere_grid(int n, int n_theta, int n_phi = 0);

double geodesic_distance(const Vec3& a, const Vec3& b);

Vec3 reflect(const Vec3& omega, const Vec3& omega_p);

struct DirectionSet {
  GridPtr grid;
  std::vector<std::uint8_t> mask;
  double measure = 0.0;
  std::string tag = "custom";
  nlohmann::json params = nlohmann::json::object();

  bool contains(int k) const { return mask[static_cast<std::size_t>(k)] != 0; }
  std::vector<int> members() const;
  void recompute_measure();
  nlohmann::json to_json() const;
  static DirectionSet from_json(const nlohmann::json& j, GridPtr grid);
};

DirectionSet full_set(GridPtr grid);
DirectionSet empty_set(GridPtr grid);
DirectionSet cap_set(GridPtr grid, const Vec3& center, double radius);
DirectionSet cap_union(GridPtr grid, const std::vector<Vec3>& centers,
                       const std::vector<double>& radii);
DirectionSet set_union(const DirectionSet& a, const DirectionSet& b);
bool is_subset(const DirectionSet& a, const DirectionSet& b);

// Default eta is twice the angular resolution.
double default_eta(const SphereGrid& g);

// Geodesic midpoints (one-sided: the pair lies in the closed hemisphere around the node),
// dilated by eta.
DirectionSet midpoint_set(const DirectionSet& K, double eta);
DirectionSet midpoint_set(const DirectionSet& K);

// Middle-thirds construction on the arc [start, start+length] of S^1.
DirectionSet cantor_direction_set(GridPtr grid, int generation, double start, double length);

// Minimum angle between a member and the antipode of a member.
double antipodal_separation(const DirectionSet& K);
void require_antipodal_separation(const DirectionSet& K, double delta0 = 0.1);

struct BoxGrid {
  int dim = 1;
  double side = 1.0;
  int points = 1;

  double step() const { return side / points; }
  double cell_volume() const { return std::pow(step(), dim); }
  std::size_t size() const;
  double coord(int i) const { return -0.5 * side + i * step(); }
  Vec3 node(std::size_t flat) const;
};

struct TangentFrame {
  Vec3 e1 = Vec3::Zero();
  Vec3 e2 = Vec3::Zero();  // zero when n=2
};

TangentFrame tangent_frame(const Vec3& omega, int dim);

struct PhaseGrid {
  int dim = 3;
  double radius = 4.0;  // in-plane half width V
  int points = 32;      // points per axis M

  double step() const { return 2.0 * radius / points; }
  double cell_area() const { return std::pow(step(), dim - 1); }
  // In-plane offsets (cell midpoints), as coordinates in the frame.
  std::vector<std::array<double, 2>> offsets() const;
};

}  // namespace extlab
