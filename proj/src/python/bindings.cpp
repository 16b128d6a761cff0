#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "facetint/flow3.hpp"
#include "facetint/multigraph.hpp"

namespace py = pybind11;
using namespace facetint;

PYBIND11_MODULE(_core, m) {
  m.doc() = "face colorings of drawings and nowhere-zero 3-flows";

  py::register_exception<invalid_input>(m, "InvalidInput");
  py::register_exception<guard_exceeded>(m, "GuardExceeded");

  py::class_<Edge>(m, "Edge")
      .def_readonly("id", &Edge::id)
      .def_readonly("u", &Edge::u)
      .def_readonly("v", &Edge::v)
      .def("is_loop", &Edge::is_loop);

  py::class_<Multigraph>(m, "Multigraph")
      .def(py::init<>())
      .def("add_vertex", &Multigraph::add_vertex)
      .def("add_edge", &Multigraph::add_edge)
      .def("has_vertex", &Multigraph::has_vertex)
      .def("has_edge", &Multigraph::has_edge)
      .def("edge", &Multigraph::edge, py::return_value_policy::copy)
      .def("vertices", &Multigraph::vertices)
      .def("edges", &Multigraph::edges)
      .def("vertex_count", &Multigraph::vertex_count)
      .def("edge_count", &Multigraph::edge_count)
      .def("degree", &Multigraph::degree)
      .def("incident_edges", &Multigraph::incident_edges)
      .def("is_connected", &Multigraph::is_connected)
      .def("component_count", &Multigraph::component_count)
      .def(py::self == py::self);

  py::class_<Orientation>(m, "Orientation")
      .def_readonly("graph", &Orientation::graph)
      .def_readonly("forward", &Orientation::forward)
      .def("tail", &Orientation::tail)
      .def("head", &Orientation::head)
      .def("excess", &Orientation::excess)
      .def("reversed", &Orientation::reversed);

  py::class_<Z3Flow>(m, "Z3Flow")
      .def_readonly("orientation", &Z3Flow::orientation)
      .def_readonly("value", &Z3Flow::value);

  m.def("bridges", &bridges);
  m.def("is_bipartite", &is_bipartite);
  m.def("mod3_orientation", &mod3_orientation);
  m.def("orientation_with_targets", &orientation_with_targets);
  m.def("nz3_flow", &nz3_flow);
  m.def("check_mod3", &check_mod3);
  m.def("check_flow", &check_flow);
  m.def("is_z3_connected", &is_z3_connected, py::arg("g"),
        py::arg("guard_vertices") = 10);
  m.def("complete_bipartite", &complete_bipartite);
  m.def("kmn_mod3_orientation", &kmn_mod3_orientation);
}
