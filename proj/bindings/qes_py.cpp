#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qes/jacobi.hpp"
#include "qes/models.hpp"
#include "qes/pipeline.hpp"
#include "qes/sl2.hpp"
#include "qes/verify.hpp"

namespace py = pybind11;

namespace {

qes::ModelId model_id(const std::string& name) {
  auto id = qes::model_from_string(name);
  if (!id) throw py::value_error("unknown model '" + name + "'");
  return *id;
}

qes::HeunOperator heun_from_lists(const std::vector<double>& a, const std::vector<double>& b,
                                  const std::vector<double>& c) {
  if (a.size() != 5 || b.size() != 4 || c.size() != 3)
    throw py::value_error("expected coefficient lists of sizes 5, 4, 3");
  qes::HeunOperator h;
  std::copy(a.begin(), a.end(), h.a.begin());
  std::copy(b.begin(), b.end(), h.b.begin());
  std::copy(c.begin(), c.end(), h.c.begin());
  return h;
}

py::dict solve(const std::string& model, const py::dict& params, int n) {
  qes::ModelParams p;
  for (auto item : params)
    p.set(py::cast<std::string>(item.first), py::cast<double>(item.second));
  const qes::SolveReport rep = qes::solve_model(model_id(model), p, n);

  py::dict out;
  out["model"] = rep.model;
  out["n"] = rep.n;
  out["energy"] = rep.energy;
  out["eigenvalue_role"] = rep.eigenvalue_role;
  out["params"] = rep.params;
  out["derived"] = rep.derived;
  py::list values, pairs;
  for (const auto& e : rep.eigenpairs) {
    values.append(e.eigenvalue);
    py::dict d;
    d["eigenvalue"] = e.eigenvalue;
    d["poly"] = e.poly;
    d["physical"] = e.physical;
    d["admissible"] = e.admissible;
    d["degenerate"] = e.degenerate;
    d["reasons"] = e.reasons;
    d["outputs"] = e.outputs;
    if (!e.interpretation_name.empty()) {
      d["interpretation_name"] = e.interpretation_name;
      d["interpretation_value"] = e.interpretation_value;
    }
    pairs.append(d);
  }
  out["eigenvalues"] = values;
  out["eigenpairs"] = pairs;
  return out;
}

}  // namespace

PYBIND11_MODULE(_qes, m) {
  m.doc() = "quasi-exactly solvable spectra via Stackel-transformed sl(2) operators";
  m.attr("__version__") = qes::kToolVersion;

  m.def("models", [] {
    std::vector<std::string> names;
    for (qes::ModelId id : qes::all_models()) names.push_back(qes::to_string(id));
    return names;
  });

  m.def("solve", &solve, py::arg("model"), py::arg("params"), py::arg("n"),
        "Full pipeline: build, Jacobi matrix, eigensolve, interpretation.");

  m.def("solve_json", [](const std::string& model, const py::dict& params, int n) {
    qes::ModelParams p;
    for (auto item : params)
      p.set(py::cast<std::string>(item.first), py::cast<double>(item.second));
    return qes::report_to_json(qes::solve_model(model_id(model), p, n));
  });

  m.def("energy", [](const std::string& model, const py::dict& params, int n) {
    qes::ModelParams p;
    for (auto item : params)
      p.set(py::cast<std::string>(item.first), py::cast<double>(item.second));
    return qes::energy(model_id(model), p, n);
  });

  m.def(
      "check_algebraizable",
      [](const std::vector<double>& a, const std::vector<double>& b,
         const std::vector<double>& c, int n, double tol) {
        const auto cert = qes::check_algebraizable(heun_from_lists(a, b, c), n, tol);
        py::dict d;
        d["n"] = cert.n;
        d["residuals"] = cert.residuals;
        d["scale"] = cert.scale;
        d["passed"] = cert.passed;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n"),
      py::arg("tol") = qes::kDefaultAlgebraizationTol);

  m.def(
      "find_n",
      [](const std::vector<double>& a, const std::vector<double>& b,
         const std::vector<double>& c, int n_max) -> py::object {
        auto r = qes::find_n(heun_from_lists(a, b, c), n_max);
        if (!r) return py::none();
        return py::int_(*r);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n_max"));

  m.def(
      "jacobi_matrix",
      [](const std::vector<double>& a, const std::vector<double>& b,
         const std::vector<double>& c, int n) {
        const auto jm = qes::build_jacobi(heun_from_lists(a, b, c), n);
        std::vector<std::vector<double>> rows;
        for (int i = 0; i <= n; ++i) {
          std::vector<double> row;
          for (int j = 0; j <= n; ++j) row.push_back(jm.entry(i, j));
          rows.push_back(row);
        }
        return rows;
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n"));

  m.def(
      "characteristic_poly",
      [](const std::vector<double>& a, const std::vector<double>& b,
         const std::vector<double>& c, int n) {
        return qes::characteristic_poly(qes::build_jacobi(heun_from_lists(a, b, c), n))
            .coefficients();
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n"));

  m.def(
      "fd_spectrum",
      [](const std::string& model, const py::dict& params, int points, int k) {
        qes::ModelParams p;
        for (auto item : params)
          p.set(py::cast<std::string>(item.first), py::cast<double>(item.second));
        const qes::ModelId id = model_id(model);
        qes::Grid g = qes::Grid::fd_default(id);
        if (points > 0) g.points = points;
        return qes::fd_spectrum(id, p, g, k);
      },
      py::arg("model"), py::arg("params"), py::arg("points") = 0, py::arg("k") = 8);
}
