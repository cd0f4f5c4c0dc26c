#include "extlab/runner.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace extlab {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  // nlohmann reports the 1-based count of bytes read up to the failure.
  std::size_t pos = byte == 0 ? 0 : byte - 1;
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::uint64_t read_seed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw SchemaError(path + ": expected a nonnegative integer");
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(path + "." + it.key() + ": unknown key");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto cut = msg.find("syntax error");
    throw SchemaError(source + ":" + line_col(text, e.byte) + ": malformed JSON (" +
                      (cut == std::string::npos ? msg : msg.substr(cut)) + ")");
  }
  if (!root.is_object()) throw SchemaError("$: expected an object");
  only_keys(root, {"suite", "seed", "experiments"}, "$");
  RunConfig cfg;
  if (root.contains("suite")) {
    if (!root["suite"].is_string()) throw SchemaError("$.suite: expected a string");
    cfg.suite = root["suite"].get<std::string>();
  }
  if (root.contains("seed")) cfg.seed = read_seed(root["seed"], "$.seed");
  if (!root.contains("experiments")) throw SchemaError("$.experiments: required");
  const json& list = root["experiments"];
  if (!list.is_array()) throw SchemaError("$.experiments: expected an array");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string path = "$.experiments[" + std::to_string(i) + "]";
    const json& e = list[i];
    if (!e.is_object()) throw SchemaError(path + ": expected an object");
    only_keys(e, {"id", "params", "tolerance", "seed"}, path);
    if (!e.contains("id") || !e["id"].is_string()) throw SchemaError(path + ".id: required string");
    ExperimentSpec spec;
    spec.id = e["id"].get<std::string>();
    const ExperimentInfo* info = find_experiment(spec.id);
    if (!info) throw SchemaError(path + ".id: unknown experiment '" + spec.id + "'");
    if (!seen.insert(spec.id).second) throw SchemaError(path + ".id: duplicate experiment '" + spec.id + "'");
    if (e.contains("params")) {
      if (!e["params"].is_object()) throw SchemaError(path + ".params: expected an object");
      spec.params = e["params"];
      try {
        merge_params(*info, spec.params);
      } catch (const SchemaError& err) {
        throw SchemaError(path + ": " + err.what());
      }
    }
    if (e.contains("tolerance")) {
      if (!e["tolerance"].is_number() || e["tolerance"].get<double>() < 0.0)
        throw SchemaError(path + ".tolerance: expected a nonnegative number");
      spec.tolerance = e["tolerance"].get<double>();
    }
    if (e.contains("seed")) spec.seed = read_seed(e["seed"], path + ".seed");
    cfg.experiments.push_back(std::move(spec));
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string() + ": cannot read config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::uint64_t experiment_seed(const RunConfig& cfg, const ExperimentSpec& spec, const SuiteOptions& opt) {
  if (spec.seed) return *spec.seed;
  std::uint64_t base = opt.seed_override ? *opt.seed_override : cfg.seed.value_or(0);
  return derive_seed(base, spec.id);
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

SuiteOutcome run_suite(const RunConfig& cfg, const SuiteOptions& opt) {
  SuiteOutcome out;
  std::size_t n = cfg.experiments.size();
  out.results.resize(n);
  std::vector<std::string> err(n);
  std::vector<char> resolution(n, 0);
  fs::create_directories(opt.out_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const ExperimentSpec& spec = cfg.experiments[i];
      try {
        ExperimentResult r = run_experiment(spec.id, spec.params, experiment_seed(cfg, spec, opt), spec.tolerance);
        write_atomic(opt.out_dir / (spec.id + ".csv"), trials_csv(r));
        write_atomic(opt.out_dir / (spec.id + ".summary.json"), summary_json(r).dump(2) + "\n");
        json meta = {{"experiment", r.id},
                     {"seed", r.seed},
                     {"suite", cfg.suite},
                     {"failures", r.failures()},
                     {"metadata", r.metadata}};
        write_atomic(opt.out_dir / (spec.id + ".meta.json"), meta.dump(2) + "\n");
        out.results[i] = std::move(r);
      } catch (const ResolutionError& e) {
        err[i] = spec.id + ": resolution: " + e.what();
        resolution[i] = 1;
      } catch (const std::exception& e) {
        err[i] = spec.id + ": " + e.what();
      }
    }
  };
  int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json summary = json::array();
  json timing = json::object();
  bool all_pass = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!err[i].empty()) {
      out.errors.push_back(err[i]);
      out.resolution_failure = out.resolution_failure || resolution[i];
      all_pass = false;
      continue;
    }
    summary.push_back(summary_json(out.results[i]));
    timing[out.results[i].id] = out.results[i].wall_seconds;
    all_pass = all_pass && out.results[i].verdict();
  }
  write_atomic(opt.out_dir / "summary.json", summary.dump(2) + "\n");
  write_atomic(opt.out_dir / "timing.json", timing.dump(2) + "\n");
  out.exit_code = out.resolution_failure ? 3 : (all_pass ? 0 : 1);
  return out;
}

std::string catalog_listing() {
  std::string s;
  char buf[512];
  for (const auto& e : experiment_catalog()) {
    std::snprintf(buf, sizeof buf, "%-22s tol=%-8g %s\n", e.id.c_str(), e.default_tol, e.anchor.c_str());
    s += buf;
  }
  return s;
}

}  // namespace extlab
