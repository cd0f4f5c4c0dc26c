#include "extlab/runner.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using nlohmann::json;

namespace {

json parse_or_null(const std::string& s) { return s.empty() ? json() : json::parse(s); }

std::string catalog_json() {
  json out = json::array();
  for (const auto& e : extlab::experiment_catalog())
    out.push_back({{"id", e.id}, {"anchor", e.anchor}, {"summary", e.summary}, {"default_tol", e.default_tol},
                   {"defaults", e.defaults}});
  return out.dump();
}

std::string run_experiment_json(const std::string& id, const std::string& params, std::uint64_t seed,
                                std::optional<double> tol) {
  extlab::ExperimentResult r = extlab::run_experiment(id, parse_or_null(params), seed, tol);
  json trials = json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"label", t.label}, {"lhs", t.lhs}, {"rhs", t.rhs}, {"ratio", t.ratio}, {"pass", t.pass}});
  json out = extlab::summary_json(r);
  out["seed"] = r.seed;
  out["trial_rows"] = trials;
  out["metadata"] = r.metadata;
  return out.dump();
}

int run_config(const std::string& path, const std::string& out, int jobs, std::optional<std::uint64_t> seed) {
  extlab::RunConfig cfg = extlab::load_config(path);
  extlab::SuiteOptions opt;
  opt.jobs = jobs;
  opt.out_dir = out;
  opt.seed_override = seed;
  return extlab::run_suite(cfg, opt).exit_code;
}

double xray_l2sq_cap(const std::string& weight, int n_theta, std::array<double, 3> center, double radius,
                     bool midpoint) {
  extlab::Weight w = extlab::Weight::from_json(json::parse(weight));
  auto grid = extlab::build_sphere_grid(3, n_theta, 2 * n_theta);
  extlab::DirectionSet K = extlab::cap_set(grid, extlab::Vec3(center[0], center[1], center[2]), radius);
  return extlab::xray_l2sq(w, midpoint ? extlab::midpoint_set(K) : K);
}

std::pair<double, double> torus_reverse(int N, const std::vector<int>& K, const std::vector<double>& weight,
                                        double p, std::uint64_t mix_seed) {
  auto s = extlab::torus_reverse_sides(extlab::make_dft_system(N, K, mix_seed), weight, p);
  return {s.lhs, s.rhs};
}

double agmon_hormander(const std::vector<double>& shells, const std::string& kind, double scale, double R) {
  extlab::RadialWeight w;
  if (kind == "bump")
    w.kind = extlab::RadialWeight::Kind::Bump;
  else if (kind == "gaussian")
    w.kind = extlab::RadialWeight::Kind::Gaussian;
  else
    throw std::invalid_argument("kind must be 'gaussian' or 'bump'");
  w.scale = scale;
  return extlab::agmon_hormander_ratio(shells, w, R);
}

std::pair<std::complex<double>, std::complex<double>> classical_moyal(double side,
                                                                      const std::vector<std::complex<double>>& f1,
                                                                      const std::vector<std::complex<double>>& f2,
                                                                      const std::vector<std::complex<double>>& g1,
                                                                      const std::vector<std::complex<double>>& g2) {
  extlab::BoxGrid grid{1, side, static_cast<int>(f1.size())};
  auto r = extlab::moyal_classical(grid, f1, f2, g1, g2);
  return {r.phase_space, r.product};
}

}  // namespace

PYBIND11_MODULE(_extlab, m) {
  m.doc() = "numerical checks for orthonormal extension inequalities";

  py::register_exception<extlab::SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<extlab::ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
  py::register_exception<extlab::DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("catalog_json", &catalog_json);
  m.def("run_experiment_json", &run_experiment_json, py::arg("id"), py::arg("params") = "", py::arg("seed") = 0,
        py::arg("tol") = std::nullopt, py::call_guard<py::gil_scoped_release>());
  m.def("run_config", &run_config, py::arg("path"), py::arg("out"), py::arg("jobs") = 1,
        py::arg("seed") = std::nullopt, py::call_guard<py::gil_scoped_release>());
  m.def("derive_seed", &extlab::derive_seed, py::arg("suite_seed"), py::arg("id"));
  m.def("xray_l2sq_cap", &xray_l2sq_cap, py::arg("weight"), py::arg("n_theta"), py::arg("center"),
        py::arg("radius"), py::arg("midpoint") = false);
  m.def("torus_reverse", &torus_reverse, py::arg("N"), py::arg("K"), py::arg("weight"), py::arg("p"),
        py::arg("mix_seed") = 0);
  m.def("agmon_hormander_ratio", &agmon_hormander, py::arg("shell_energy"), py::arg("kind"), py::arg("scale"),
        py::arg("R"));
  m.def("classical_moyal", &classical_moyal, py::arg("side"), py::arg("f1"), py::arg("f2"), py::arg("g1"),
        py::arg("g2"));
}
