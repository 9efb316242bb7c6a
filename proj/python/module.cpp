// Python bindings for the cylq core library.
#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cylq/core.hpp"
#include "cylq/kernel.hpp"
#include "cylq/limitshape.hpp"
#include "cylq/mcmc.hpp"
#include "cylq/moments.hpp"
#include "cylq/special.hpp"
#include "cylq/stats.hpp"
#include "cylq/transfer.hpp"
#include "cylq/verify.hpp"

namespace py = pybind11;
using namespace cylq;

PYBIND11_MODULE(_cylq, m) {
  m.doc() = "volume-weighted cylinder tilings: exact and asymptotic tools";

  py::class_<ModularData>(m, "ModularData")
      .def(py::init<double, int>(), py::arg("t"), py::arg("N"))
      .def_readonly("t", &ModularData::t)
      .def_readonly("N", &ModularData::N)
      .def_readonly("q", &ModularData::q)
      .def_readonly("beta", &ModularData::beta);

  // special functions
  m.def("theta1", &theta1, py::arg("z"), py::arg("t"));
  m.def("theta3", &theta3, py::arg("z"), py::arg("t"));
  m.def("q_pochhammer", &q_pochhammer, py::arg("z"), py::arg("t"));
  m.def("greens", &greens, py::arg("eta1"), py::arg("eta2"), py::arg("t"));

  // configurations
  py::class_<Partition>(m, "Partition")
      .def(py::init<>())
      .def(py::init<std::vector<int>>(), py::arg("parts"))
      .def("length", &Partition::length)
      .def("part", &Partition::part, py::arg("i"))
      .def("size", &Partition::size)
      .def("parts", &Partition::parts)
      .def(py::self == py::self)
      .def("__repr__", [](const Partition& p) {
        std::string s = "Partition([";
        for (int i = 0; i < p.length(); ++i)
          s += (i ? "," : "") + std::to_string(p.part(i));
        return s + "])";
      });
  py::class_<CylindricConfig>(m, "CylindricConfig")
      .def_readwrite("N", &CylindricConfig::N)
      .def_readwrite("shift", &CylindricConfig::shift)
      .def_readwrite("columns", &CylindricConfig::columns)
      .def("__repr__", [](const CylindricConfig& c) { return serialize(c); });
  m.def("validate", &validate, py::arg("config"));
  m.def("serialize", &serialize);
  m.def("deserialize", &deserialize);
  m.def("height", &height, py::arg("config"), py::arg("tau"), py::arg("x"));
  m.def("observable_F", &observable_F, py::arg("partition"), py::arg("r"));
  m.def("height_transform", &height_transform, py::arg("config"),
        py::arg("tau"), py::arg("r"));

  // limit shape
  m.def("liquid_lower_edge", &liquid_lower_edge, py::arg("t"));
  m.def("limit_shape_height", &limit_shape_height, py::arg("y"), py::arg("t"));
  m.def("dirichlet_energy", &dirichlet_energy, py::arg("t"));

  // moments
  py::class_<Slice>(m, "Slice")
      .def(py::init([](int tau, int k) { return Slice{tau, k}; }),
           py::arg("tau"), py::arg("k"))
      .def_readwrite("tau", &Slice::tau)
      .def_readwrite("k", &Slice::k);
  m.def("contour_moment", &contour_moment, py::arg("md"), py::arg("slices"),
        py::arg("rel_tol") = 1e-9, py::arg("max_nodes") = 2048);
  m.def("shift_mixed_moment", &shift_mixed_moment, py::arg("md"),
        py::arg("slices"), py::arg("u"));
  m.def("prelimit_mean", &prelimit_mean, py::arg("md"), py::arg("k"),
        py::arg("tau"));
  m.def("mean_asymptotic", &mean_asymptotic, py::arg("k"), py::arg("t"));
  m.def("greens_covariance", &greens_covariance, py::arg("k1"), py::arg("k2"),
        py::arg("tau1"), py::arg("tau2"), py::arg("t"));

  // kernel
  py::class_<KernelCache>(m, "KernelCache")
      .def(py::init<const ModularData&, double>(), py::arg("md"),
           py::arg("u"))
      .def("entry", &KernelCache::entry, py::arg("sigma"), py::arg("x"),
           py::arg("tau"), py::arg("y"))
      .def("correlation", &KernelCache::correlation, py::arg("points"));

  // sampling
  py::class_<BoxTruncation>(m, "BoxTruncation")
      .def(py::init([](int rows, int cols) {
             return BoxTruncation{rows, cols};
           }),
           py::arg("rows"), py::arg("cols"))
      .def_readwrite("rows", &BoxTruncation::rows)
      .def_readwrite("cols", &BoxTruncation::cols);
  py::class_<RunResult>(m, "RunResult")
      .def_readonly("samples", &RunResult::samples)
      .def_readonly("observable", &RunResult::observable)
      .def_readonly("autocorrelation_time", &RunResult::autocorrelation_time)
      .def_readonly("boundary_occupancy", &RunResult::boundary_occupancy);
  m.def("run_chain", &run_chain, py::arg("md"), py::arg("box"),
        py::arg("sweeps"), py::arg("burn_in"), py::arg("thinning"),
        py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  // verification
  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("id", &CriterionResult::id)
      .def_readonly("name", &CriterionResult::name)
      .def_readonly("pass_", &CriterionResult::pass)
      .def_readonly("detail", &CriterionResult::detail)
      .def_readonly("seconds", &CriterionResult::seconds);
  m.def("run_criterion", &run_criterion, py::arg("id"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("suite_criteria", &suite_criteria, py::arg("suite"));
}
