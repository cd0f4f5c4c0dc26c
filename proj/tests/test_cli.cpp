#include "extlab/runner.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>

using namespace extlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("extlab_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string("\"") + EXTLAB_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string schema_message(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

const char* kTiny = R"({"suite": "tiny", "seed": 3, "experiments": [
  {"id": "torus_reverse", "params": {"N": 16, "identity_trials": 2, "reverse_trials": 2, "local_trials": 1}},
  {"id": "classical_moyal", "params": {"pairs": 2, "points": 64}}]})";

}  // namespace

TEST_CASE("malformed JSON reports line and column") {
  std::string msg = schema_message("{\n  \"experiments\": [\n    {\"id\": \"curves\",}\n  ]\n}");
  CHECK(msg.rfind("cfg.json:3:", 0) == 0);
  CHECK(msg.find("malformed JSON") != std::string::npos);
}

TEST_CASE("schema errors name the offending path") {
  CHECK(schema_message(R"({"experiments": [{"id": "curves", "extra": 1}]})").find("$.experiments[0].extra") !=
        std::string::npos);
  CHECK(schema_message(R"({"experiments": [{"id": "missing"}]})").find("$.experiments[0].id") != std::string::npos);
  CHECK(schema_message(R"({"experiments": [{"id": "curves"}, {"id": "curves"}]})").find("duplicate") !=
        std::string::npos);
  CHECK(schema_message(R"({"experiments": [{"id": "curves", "params": {"weights": "x"}}]})")
            .find("$.experiments[0]") != std::string::npos);
  CHECK(schema_message(R"({"seed": -1, "experiments": []})").find("$.seed") != std::string::npos);
  CHECK(schema_message(R"({"suite": "x"})").find("$.experiments") != std::string::npos);
  CHECK(schema_message(R"([1, 2])") == "$: expected an object");
}

TEST_CASE("bundled configs parse") {
  RunConfig paper = load_config(fs::path(EXTLAB_CONFIG_DIR) / "paper_suite.json");
  CHECK(paper.experiments.size() >= 12);
  CHECK(paper.suite == "paper-suite");
  CHECK_NOTHROW(load_config(fs::path(EXTLAB_CONFIG_DIR) / "smoke.json"));
}

TEST_CASE("seed precedence") {
  RunConfig cfg = parse_config(R"({"seed": 5, "experiments": [{"id": "curves"}, {"id": "interpolant", "seed": 99}]})");
  SuiteOptions opt;
  CHECK(experiment_seed(cfg, cfg.experiments[0], opt) == derive_seed(5, "curves"));
  CHECK(experiment_seed(cfg, cfg.experiments[1], opt) == 99);
  opt.seed_override = 8;
  CHECK(experiment_seed(cfg, cfg.experiments[0], opt) == derive_seed(8, "curves"));
}

TEST_CASE("run_suite writes deterministic artefacts") {
  RunConfig cfg = parse_config(kTiny);
  fs::path a = scratch("det_a"), b = scratch("det_b");
  SuiteOutcome ra = run_suite(cfg, {std::nullopt, 1, a});
  SuiteOutcome rb = run_suite(cfg, {std::nullopt, 2, b});
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  for (const char* f : {"torus_reverse.csv", "classical_moyal.csv", "summary.json", "torus_reverse.summary.json"})
    CHECK(slurp(a / f) == slurp(b / f));
  auto summary = nlohmann::json::parse(slurp(a / "summary.json"));
  REQUIRE(summary.size() == 2);
  CHECK(summary[0]["experiment"] == "torus_reverse");
  for (const auto& s : summary) {
    CHECK(s.size() == 4);
    CHECK(s.contains("max_ratio"));
  }
  CHECK(slurp(a / "classical_moyal.csv").rfind("experiment,trial,lhs,rhs,ratio,verdict\n", 0) == 0);
}

TEST_CASE("empty suite") {
  fs::path out = scratch("empty");
  SuiteOutcome r = run_suite(parse_config(R"({"experiments": []})"), {std::nullopt, 1, out});
  CHECK(r.exit_code == 0);
  CHECK(nlohmann::json::parse(slurp(out / "summary.json")).empty());
}

TEST_CASE("resolution failure gives exit code 3") {
  fs::path out = scratch("resolution");
  RunConfig cfg = parse_config(R"({"experiments": [{"id": "bessel_pointwise", "params": {"n_theta": 2, "n_phi": 4}}]})");
  SuiteOutcome r = run_suite(cfg, {std::nullopt, 1, out});
  CHECK(r.resolution_failure);
  CHECK(r.exit_code == 3);
}

TEST_CASE("command line exit codes") {
  fs::path dir = scratch("exe");
  fs::path log = dir / "log.txt";
  CHECK(run_cli("--list", log) == 0);
  std::string listing = slurp(log);
  CHECK(std::count(listing.begin(), listing.end(), '\n') >= 12);

  std::ofstream(dir / "bad.json") << "{\n  \"experiments\": [ {\"id\": 1,, } ]\n}\n";
  CHECK(run_cli("--config \"" + (dir / "bad.json").string() + "\"", log) == 2);
  CHECK(slurp(log).find("bad.json:2:") != std::string::npos);

  std::ofstream(dir / "unknown.json") << R"({"experiments": [{"id": "curves", "params": {"nodes_typo": 3}}]})";
  CHECK(run_cli("--config \"" + (dir / "unknown.json").string() + "\"", log) == 2);

  CHECK(run_cli("--jobs 0 --list", log) == 2);
  CHECK(run_cli("", log) == 2);

  std::ofstream(dir / "tiny.json") << kTiny;
  CHECK(run_cli("--config \"" + (dir / "tiny.json").string() + "\" --out \"" + (dir / "out").string() + "\"", log) ==
        0);
  CHECK(fs::exists(dir / "out" / "summary.json"));

  std::ofstream(dir / "res.json") << R"({"experiments": [{"id": "bessel_pointwise", "params": {"n_theta": 2, "n_phi": 4}}]})";
  CHECK(run_cli("--config \"" + (dir / "res.json").string() + "\" --out \"" + (dir / "res").string() + "\"", log) ==
        3);

  std::string env_cmd = "EXTLAB_OUT=\"" + (dir / "envout").string() + "\" ";
  int status = std::system((env_cmd + "\"" + EXTLAB_CLI + "\" --config \"" + (dir / "tiny.json").string() +
                            "\" > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir / "envout" / "summary.json"));
}
