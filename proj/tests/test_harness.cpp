#include "extlab/harness.hpp"

#include <doctest.h>

using namespace extlab;

namespace {

Weight blob(double c, const Vec3& a, double s) {
  GaussianMixture m;
  m.dim = 3;
  m.terms.push_back({c, a, s});
  return Weight(m, c >= 0.0);
}

}  // namespace

TEST_CASE("trial verdict modes") {
  ExperimentResult r;
  CHECK(r.add("fwd", 1.04, 1.0, VerdictMode::Forward, 0.05).pass);
  CHECK_FALSE(r.add("fwd-bad", 1.06, 1.0, VerdictMode::Forward, 0.05).pass);
  CHECK(r.add("rev", 0.96, 1.0, VerdictMode::Reverse, 0.05).pass);
  CHECK(r.add("id", 1.0, 1.0, VerdictMode::Identity, 0.0).pass);
  CHECK(safe_ratio(0.0, 0.0, VerdictMode::Forward) == 0.0);
  CHECK(safe_ratio(0.0, 0.0, VerdictMode::Identity) == 1.0);
  CHECK(r.add_check("flag", true).pass);
  CHECK_FALSE(r.verdict());
  CHECK(r.failures() == std::vector<std::string>{"fwd-bad"});
  CHECK(r.max_ratio() == doctest::Approx(1.06));
}

TEST_CASE("report serialisation") {
  ExperimentResult r;
  r.id = "demo";
  r.add("a, b\n\"c\"", 0.5, 2.0, VerdictMode::Forward, 0.0);
  std::string csv = trials_csv(r);
  CHECK(csv.rfind("experiment,trial,lhs,rhs,ratio,verdict\n", 0) == 0);
  CHECK(csv.find("demo,0:a; b;;c;,0.5,2,0.25,PASS") != std::string::npos);
  nlohmann::json s = summary_json(r);
  CHECK(s["experiment"] == "demo");
  CHECK(s["trials"] == 1);
  CHECK(s["max_ratio"].get<double>() == 0.25);
  CHECK(s["verdict"] == "PASS");
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("seed derivation is stable and id dependent") {
  CHECK(derive_seed(7, "curves") == derive_seed(7, "curves"));
  CHECK(derive_seed(7, "curves") != derive_seed(8, "curves"));
  CHECK(derive_seed(7, "curves") != derive_seed(7, "interpolant"));
}

TEST_CASE("catalog and parameter merging") {
  CHECK(experiment_catalog().size() >= 12);
  for (const auto& e : experiment_catalog()) CHECK_FALSE(e.anchor.empty());
  const ExperimentInfo* info = find_experiment("torus_reverse");
  REQUIRE(info);
  CHECK(find_experiment("nope") == nullptr);
  nlohmann::json merged = merge_params(*info, {{"N", 32}});
  CHECK(merged["N"] == 32);
  CHECK_THROWS_AS(merge_params(*info, {{"bogus", 1}}), SchemaError);
  CHECK_THROWS_AS(merge_params(*info, {{"N", "big"}}), SchemaError);
  CHECK_THROWS_AS(merge_params(*info, {{"N", 3.5}}), SchemaError);
}

TEST_CASE("sphere theorem on a harmonic system") {
  GridPtr g = build_sphere_grid(3, 12, 24);
  OrthonormalSystem sys = make_harmonics(g, {0, 1});
  std::vector<Weight> ws{blob(1.0, Vec3::Zero(), 1.0), blob(0.5, Vec3(0.5, 0.0, -0.3), 0.6)};
  ExperimentResult r = verify_sphere_theorem(sys, ws, MidpointVariant::Diamond, 0.05);
  CHECK(r.verdict());
  TheoremSides s = sphere_theorem_sides(sys, ws[0], MidpointVariant::Diamond);
  CHECK(s.lhs > 0.0);
  CHECK(s.lhs <= 1.05 * s.rhs);
}

TEST_CASE("direction sets for the theorem variants") {
  GridPtr g = build_sphere_grid(3, 12, 24);
  OrthonormalSystem sys = make_wavepackets(g, {Vec3::UnitZ()}, {0.5}, {Vec3::Zero()});
  DirectionSet d = theorem_direction_set(sys, MidpointVariant::Diamond);
  DirectionSet u = theorem_direction_set(sys, MidpointVariant::Undirected);
  CHECK(is_subset(d, u));
  CHECK(u.measure >= d.measure);
}

TEST_CASE("torus reverse inequality is an identity at p = 1") {
  TorusSystem sys = make_dft_system(32, {0, 3, 4, 10}, 11);
  std::vector<double> w(32);
  for (int v = 0; v < 32; ++v) w[static_cast<std::size_t>(v)] = 1.0 + 0.5 * std::sin(0.3 * v);
  TorusReverseSides s = torus_reverse_sides(sys, w, 1.0);
  CHECK(s.lhs == doctest::Approx(s.rhs).epsilon(1e-12));
  ExperimentResult r = verify_reverse(sys, {w}, {1.0, 0.5}, 1e-12);
  CHECK(r.verdict());
}

TEST_CASE("Agmon-Hormander ratio tends to one") {
  RadialWeight w{RadialWeight::Kind::Gaussian, 1.0};
  double r16 = agmon_hormander_ratio({1.0}, w, 16.0);
  double r64 = agmon_hormander_ratio({1.0}, w, 64.0);
  CHECK(std::abs(r64 - 1.0) < 0.1);
  CHECK(std::abs(r64 - 1.0) <= std::abs(r16 - 1.0) + 1e-3);
  RadialWeight bump{RadialWeight::Kind::Bump, 1.5};
  CHECK(bump.eval(2.0) == 0.0);
  CHECK(bump.eval(0.0) == doctest::Approx(1.0));
}

TEST_CASE("tomographic weak inequality for a cap indicator") {
  GridPtr g = build_sphere_grid(3, 12, 24);
  DirectionSet K = cap_set(g, Vec3::UnitX(), 0.6);
  TomographicSides s = tomographic_sides_indicator(K, blob(1.0, Vec3::Zero(), 0.8));
  CHECK(s.lhs > 0.0);
  CHECK(s.lhs <= 1.05 * s.rhs);
}

TEST_CASE("experiments run with reduced parameters") {
  ExperimentResult r = run_experiment("torus_reverse", {{"N", 16}, {"identity_trials", 3}, {"reverse_trials", 3},
                                                        {"local_trials", 1}}, 5);
  CHECK(r.verdict());
  CHECK(r.metadata.contains("params"));
  CHECK_THROWS_AS(run_experiment("nope", nlohmann::json::object(), 1), SchemaError);
}
