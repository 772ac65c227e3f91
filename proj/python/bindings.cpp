#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hillspec/asymptotics.hpp"
#include "hillspec/decay.hpp"
#include "hillspec/errors.hpp"
#include "hillspec/floquet.hpp"
#include "hillspec/galerkin.hpp"
#include "hillspec/io.hpp"

namespace py = pybind11;
using namespace hillspec;

namespace {

Parity parity_of(const std::string& s) {
  if (s == "periodic") return Parity::periodic;
  if (s == "antiperiodic") return Parity::antiperiodic;
  throw DomainError("parity must be 'periodic' or 'antiperiodic'");
}

py::dict table_dict(const SpectrumTable& t) {
  py::dict d;
  for (const char* name : {"periodic", "antiperiodic"}) {
    std::vector<double> values;
    for (const auto& e : t.of(parity_of(name))) values.push_back(e.lambda);
    d[name] = values;
  }
  return d;
}

SpectrumTable table_from(const py::dict& d) {
  SpectrumTable t;
  for (const char* name : {"periodic", "antiperiodic"}) {
    const Parity p = parity_of(name);
    const auto values = d[name].cast<std::vector<double>>();
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
      t.of(p).push_back(make_entry(p, i, values[i] - free_eigenvalue(p, i), 0.0));
    }
  }
  return t;
}

}  // namespace

PYBIND11_MODULE(_hillspec, m) {
  m.doc() = "Hill operator spectral toolkit";
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_AssertionError);

  py::class_<FourierPotential>(m, "FourierPotential")
      .def(py::init<>())
      .def_static("from_coefficients", &FourierPotential::from_coefficients, py::arg("table"))
      .def_property_readonly("degree", &FourierPotential::degree)
      .def_property_readonly("mean", &FourierPotential::mean)
      .def("coefficient", &FourierPotential::coefficient, py::arg("n"))
      .def("evaluate", &FourierPotential::evaluate, py::arg("x"))
      .def("table", &FourierPotential::table)
      .def("__repr__", [](const FourierPotential& q) {
        return "<FourierPotential degree=" + std::to_string(q.degree()) + ">";
      });

  m.def("l2_norm_squared", &l2_norm_squared, py::arg("q"));
  m.def("ingest_grid", [](const std::vector<double>& s) { return ingest_grid(s); }, py::arg("samples"));
  m.def("load_potential", [](const std::string& path) { return load_potential(path).potential; }, py::arg("path"));

  m.def(
      "integrate_floquet",
      [](const FourierPotential& q, double lambda, double tol) {
        const FloquetState s = integrate_floquet(q, lambda, tol);
        return py::make_tuple(s.y1, s.dy1, s.y2, s.dy2);
      },
      py::arg("q"), py::arg("lam"), py::arg("tol") = 1e-12, "(y1, y1', y2, y2') at x = 1");
  m.def("discriminant", &discriminant, py::arg("q"), py::arg("lam"), py::arg("tol") = 1e-12);

  m.def(
      "compute_spectrum",
      [](const FourierPotential& q, int count, double tol) {
        SpectrumOptions o;
        o.refine_tol = tol;
        return table_dict(compute_spectrum(q, count, o));
      },
      py::arg("q"), py::arg("count"), py::arg("tol") = 1e-10);
  m.def(
      "galerkin_spectrum",
      [](const FourierPotential& q, int count, int cutoff) { return table_dict(galerkin_spectrum(q, count, cutoff)); },
      py::arg("q"), py::arg("count"), py::arg("cutoff") = 0);
  m.def(
      "gap_table",
      [](const py::dict& spectrum) {
        std::vector<double> lengths;
        for (const auto& g : gap_table(table_from(spectrum)).entries) lengths.push_back(g.length);
        return lengths;
      },
      py::arg("spectrum"), "Gap lengths l_1, l_2, ... of a spectrum dict");
  m.def(
      "refine_pair_offsets",
      [](const FourierPotential& q, int pair, const std::string& parity) {
        return refine_pair_offsets(q, parity_of(parity), pair);
      },
      py::arg("q"), py::arg("m"), py::arg("parity") = "periodic");

  m.def(
      "a1_sum",
      [](const FourierPotential& q, int pair, const std::string& parity) {
        return a1_sum(q, DenominatorContext::at_unperturbed(parity_of(parity), pair));
      },
      py::arg("q"), py::arg("m"), py::arg("parity") = "periodic");
  m.def(
      "a2_sum",
      [](const FourierPotential& q, int pair, const std::string& parity) {
        return a2_sum(q, DenominatorContext::at_unperturbed(parity_of(parity), pair));
      },
      py::arg("q"), py::arg("m"), py::arg("parity") = "periodic");
  m.def(
      "a1_closed_form",
      [](const FourierPotential& q, int pair, const std::string& parity) {
        return a1_closed_form(q, pair, parity_of(parity));
      },
      py::arg("q"), py::arg("m"), py::arg("parity") = "periodic");

  m.def(
      "classify",
      [](const std::vector<double>& values, int n_min) {
        return to_string(classify(DecaySequence{n_min, values, 2}).classification);
      },
      py::arg("values"), py::arg("n_min"), "Decay class of s_n, n = n_min, n_min + 1, ...");
  m.def(
      "theorem1",
      [](const FourierPotential& q, int n_max) {
        const Theorem1Report r = theorem1_harness(q, n_max);
        py::dict d;
        d["gaps"] = to_string(r.gaps.classification);
        d["coefficients"] = to_string(r.coefficients.classification);
        d["holds"] = r.holds();
        return d;
      },
      py::arg("q"), py::arg("n_max"));
  m.def(
      "theorem2",
      [](const FourierPotential& q, int n0, double eps) {
        const Theorem2Report r = theorem2_harness(q, n0, eps);
        py::dict d;
        d["hypothesis_holds"] = r.hypothesis_holds;
        d["membership_holds"] = r.membership_holds;
        d["c0"] = r.c0.estimate;
        d["l2"] = r.l2.estimate;
        d["conclusion"] = r.conclusion;
        return d;
      },
      py::arg("q"), py::arg("n0"), py::arg("eps") = 1.0);
}
