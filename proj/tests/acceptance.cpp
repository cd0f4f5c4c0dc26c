// Runs the bundled paper-suite twice and prints one PASS/FAIL line per acceptance criterion.
#include "extlab/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

using namespace extlab;
namespace fs = std::filesystem;

namespace {

struct Need {
  std::string label;  // substring of trial labels
  std::size_t count;
};

struct Criterion {
  int number;
  std::string title;
  std::string experiment;
  std::vector<Need> needs;
  double max_seconds = 0.0;  // 0: no runtime limit
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "classical Moyal identity", "classical_moyal", {{"moyal pair", 20}, {"gaussian self pairing", 1}}, 10.0},
      {2, "spherical Moyal identity", "spherical_moyal", {{"phase space vs formula", 10}, {"hemisphere self pairing", 1}},
       120.0},
      {3, "Bessel pointwise bound", "bessel_pointwise", {}, 0.0},
      {4, "sphere theorem", "sphere_theorem", {{"midpoint-set variant", 100}, {"mesh refinement halves slack", 1}}, 600.0},
      {5, "Schrodinger theorem", "schrodinger_theorem", {{"schrodinger theorem", 50}, {"swapped ratio agreement", 50}},
       0.0},
      {6, "torus completeness and reverse inequality", "torus_reverse",
       {{"p=1 completeness identity", 20}, {"reverse inequality p=", 50}}, 0.0},
      {7, "full-sphere pointwise domination", "pointwise_domination", {{"domination", 1}, {"closed form", 1}}, 0.0},
      {8, "Drury identity", "drury_identity", {{"pair kernel vs direct", 10}, {"quartic trace eigen vs quadrature", 1}},
       0.0},
      {9, "tomographic weak form", "tomographic_weak", {{"weak form, indicator", 100}}, 0.0},
      {10, "convex curves", "curves",
       {{"circle moyal vs S^1", 1}, {"circle J", 1}, {"ellipse curvature quotient", 1}, {"moyal f", 1},
        {"theorem vs Lambda^2", 1}},
       0.0},
      {11, "Cantor midpoint growth", "cantor_ratio", {{"cone ratio increases N=", 3}, {"measure growth N=", 4}}, 0.0},
      {12, "Agmon-Hormander limit", "agmon_hormander", {{"pair agreement at largest R", 1}}, 0.0},
  };

  fs::path config = fs::path(EXTLAB_CONFIG_DIR) / "paper_suite.json";
  RunConfig cfg = load_config(config);
  fs::path first = fresh_dir("extlab_acceptance_a"), second = fresh_dir("extlab_acceptance_b");

  auto t0 = std::chrono::steady_clock::now();
  SuiteOutcome run_a = run_suite(cfg, {std::nullopt, 1, first});
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  SuiteOutcome run_b = run_suite(cfg, {std::nullopt, 1, second});
  for (const auto& e : run_a.errors) std::printf("error: %s\n", e.c_str());

  std::map<std::string, const ExperimentResult*> by_id;
  for (const auto& r : run_a.results)
    if (!r.id.empty()) by_id[r.id] = &r;

  int failed = 0;
  auto report = [&](int n, const std::string& title, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", n, title.c_str(), detail.c_str());
    if (!ok) ++failed;
  };

  for (const auto& c : criteria) {
    auto it = by_id.find(c.experiment);
    if (it == by_id.end()) {
      report(c.number, c.title, false, c.experiment + " did not run");
      continue;
    }
    const ExperimentResult& r = *it->second;
    bool ok = r.verdict();
    std::string detail = "trials=" + std::to_string(r.trials.size()) + " max_ratio=" + format_number(r.max_ratio());
    for (const auto& need : c.needs) {
      std::size_t n = 0;
      for (const auto& t : r.trials) n += t.label.find(need.label) != std::string::npos;
      if (n < need.count) {
        ok = false;
        detail += "; only " + std::to_string(n) + " '" + need.label + "' trials";
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "; %.2fs", r.wall_seconds);
    detail += buf;
    if (c.max_seconds > 0.0 && r.wall_seconds >= c.max_seconds) {
      ok = false;
      detail += " over the runtime limit";
    }
    if (c.experiment == "cantor_ratio" && r.metadata.contains("c")) detail += "; c=" + r.metadata["c"].dump();
    if (c.experiment == "agmon_hormander" && r.metadata.contains("common_constant"))
      detail += "; constant=" + r.metadata["common_constant"].dump() +
                " reference=" + r.metadata["reference_constant_2pi_pow"].dump();
    for (const auto& f : r.failures()) detail += "; failed: " + f;
    report(c.number, c.title, ok, detail);
  }

  bool identical = run_a.exit_code == run_b.exit_code;
  std::size_t compared = 0;
  std::string mismatch;
  for (const auto& entry : fs::directory_iterator(first)) {
    std::string name = entry.path().filename().string();
    if (name == "timing.json") continue;  // wall-clock times
    ++compared;
    if (slurp(entry.path()) != slurp(second / name)) {
      identical = false;
      mismatch += " " + name;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu files compared, first run %.1fs", compared, total);
  report(13, "reproducibility and total runtime", identical && total < 1800.0 && compared > 0,
         std::string(buf) + (mismatch.empty() ? "" : "; differ:" + mismatch));

  std::printf("%d of 13 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
