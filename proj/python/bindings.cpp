// Python bindings for the solver: mesh construction, manifest-driven runs,
// convergence studies and the invariant self-test suite.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tmflow/run.hpp"
#include "tmflow/selfcheck.hpp"

namespace py = pybind11;
using namespace tmflow;

namespace {

py::dict table_to_dict(const ConvergenceTable& t) {
  py::list rows;
  for (const auto& r : t.rows) {
    py::dict d;
    d["inv_h"] = r.inv_h;
    d["uL2"] = r.uL2;
    d["pL2"] = r.pL2;
    d["wL2"] = r.wL2;
    d["TL2"] = r.TL2;
    d["uH1"] = r.uH1;
    d["wH1"] = r.wH1;
    d["TH1"] = r.TH1;
    d["time_s"] = r.time_s;
    rows.append(d);
  }
  py::list rates;
  for (const auto& k : t.rates()) {
    py::dict d;
    d["uL2"] = k.uL2;
    d["pL2"] = k.pL2;
    d["wL2"] = k.wL2;
    d["TL2"] = k.TL2;
    d["uH1"] = k.uH1;
    d["wH1"] = k.wH1;
    d["TH1"] = k.TH1;
    rates.append(d);
  }
  py::dict out;
  out["rows"] = rows;
  out["rates"] = rates;
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  std::fprintf(stderr, "[to_array] n=%zu v0=%g v1=%g a0=%g a1=%g\n", v.size(),
               v.empty() ? 0.0 : v[0], v.size() > 1 ? v[1] : 0.0,
               a.size() ? a.at(0) : 0.0, a.size() > 1 ? a.at(1) : 0.0);
  return a;
}

}  // namespace

PYBIND11_MODULE(tmflow, m) {
  m.doc() = "finite element solver for thermomicropolar flow "
            "(pressure-correction projection schemes)";

  py::class_<Mesh>(m, "Mesh")
      .def_property_readonly("dim", [](const Mesh& me) { return me.dim; })
      .def_property_readonly("n_vertices", &Mesh::n_vertices)
      .def_property_readonly("n_cells", &Mesh::n_cells)
      .def_property_readonly("h", [](const Mesh& me) { return me.h; });

  m.def(
      "build_structured_mesh",
      [](std::vector<double> lo, std::vector<double> hi, std::vector<int> n) {
        const int dim = static_cast<int>(lo.size());
        lo.resize(3, 0.0);
        hi.resize(3, 0.0);
        n.resize(3, 1);
        return build_structured_mesh({lo[0], lo[1], lo[2]}, {hi[0], hi[1], hi[2]},
                                     {n[0], n[1], n[2]}, dim);
      },
      py::arg("lo"), py::arg("hi"), py::arg("n"),
      "uniform simplicial mesh of an axis-aligned box");

  m.def("convergence_rate", &convergence_rate, py::arg("e_coarse"),
        py::arg("e_fine"), py::arg("h_coarse"), py::arg("h_fine"));

  m.def(
      "parse_manifest",
      [](const std::string& text) {
        RunManifest man = parse_manifest(text);
        py::dict d;
        d["scheme"] = man.scheme;
        d["dim"] = man.dim;
        d["elements"] = man.elements;
        d["preset"] = man.preset;
        d["manufactured"] = man.manufactured;
        d["n"] = man.n;
        d["out_dir"] = man.out_dir;
        d["defaults"] = man.applied_defaults;
        return d;
      },
      py::arg("text"), "validate a manifest and report the applied defaults");

  m.def(
      "solve_manifest",
      [](const std::string& text, const std::string& out_dir) {
        RunManifest man = parse_manifest(text);
        if (!out_dir.empty()) man.out_dir = out_dir;
        std::ostringstream log;
        TransientResult res = run_solve(man, log);
        py::dict d;
        d["steps"] = res.steps;
        d["t"] = res.state.t;
        d["div_residual_max"] = res.div_residual_max;
        d["u"] = to_array(res.state.u);
        d["p"] = to_array(res.state.p);
        d["w"] = to_array(res.state.w);
        d["T"] = to_array(res.state.T);
        d["log"] = log.str();
        return d;
      },
      py::arg("text"), py::arg("out_dir") = std::string(),
      "transient run from manifest text; returns the final coefficients");

  m.def(
      "convergence_study",
      [](const std::string& text, const std::string& out_dir) {
        RunManifest man = parse_manifest(text);
        if (!out_dir.empty()) man.out_dir = out_dir;
        std::ostringstream log;
        ConvergenceTable t = run_convergence(man, log);
        py::dict d = table_to_dict(t);
        d["log"] = log.str();
        return d;
      },
      py::arg("text"), py::arg("out_dir") = std::string(),
      "manufactured-solution study from manifest text");

  m.def("self_check", []() {
    py::list out;
    for (const auto& r : run_self_checks()) {
      py::dict d;
      d["name"] = r.name;
      d["pass"] = r.pass;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  });
}
