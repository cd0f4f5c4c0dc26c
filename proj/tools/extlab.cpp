#include "extlab/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"extlab: numerical checks for orthonormal extension inequalities"};
  std::string config;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool list = false;
  app.add_option("--config", config, "experiment config (JSON)");
  app.add_option("--jobs", jobs, "experiments run concurrently")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "override the suite seed");
  app.add_option("--out", out, "output directory (fallback: $EXTLAB_OUT, then ./extlab_out)");
  app.add_flag("--list", list, "list the experiment catalog");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    std::cout << extlab::catalog_listing();
    return 0;
  }
  if (config.empty()) {
    std::cerr << "error: --config is required (or use --list)\n";
    return 2;
  }
  if (out.empty()) {
    const char* env = std::getenv("EXTLAB_OUT");
    out = env && *env ? env : "extlab_out";
  }

  extlab::RunConfig cfg;
  try {
    cfg = extlab::load_config(config);
  } catch (const extlab::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  }

  extlab::SuiteOptions opt;
  opt.jobs = jobs;
  opt.out_dir = out;
  if (*seed_opt) opt.seed_override = seed;

  extlab::SuiteOutcome res;
  try {
    res = extlab::run_suite(cfg, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& r : res.results) {
    if (r.id.empty()) continue;
    std::cout << (r.verdict() ? "PASS " : "FAIL ") << r.id << "  trials=" << r.trials.size()
              << "  max_ratio=" << extlab::format_number(r.max_ratio()) << "\n";
    for (const auto& f : r.failures()) std::cout << "    " << f << "\n";
  }
  for (const auto& e : res.errors) std::cerr << "error: " << e << "\n";
  return res.exit_code;
}
