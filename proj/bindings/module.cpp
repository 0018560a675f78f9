// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the latch calculus library.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "latchcalc/devices.hpp"
#include "latchcalc/fuzz.hpp"
#include "latchcalc/signal.hpp"
#include "latchcalc/solver.hpp"
#include "latchcalc/waveform.hpp"

namespace py = pybind11;
using namespace latchcalc;

namespace {

std::string repr_of(const Signal& s) {
  std::ostringstream out;
  out << s;
  return out.str();
}

}  // namespace

PYBIND11_MODULE(latchcalc, m) {
  m.doc() = "ideal latches and flip-flops over piecewise-constant boolean signals";

  // Translators run newest-first, so the base class goes in first and the
  // derived classes after it.
  py::register_exception<Error>(m, "LatchError", PyExc_RuntimeError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);
  py::register_exception<HorizonMismatchError>(m, "HorizonMismatchError", PyExc_ValueError);
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError", PyExc_ValueError);
  py::register_exception<InitError>(m, "InitError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "WaveformParseError", PyExc_ValueError);

  py::class_<Signal>(m, "Signal")
      .def(py::init(&Signal::from_toggles), py::arg("initial"), py::arg("toggles"),
           py::arg("horizon"))
      .def_static("constant", &Signal::constant, py::arg("value"), py::arg("horizon"))
      .def_static("pulse", &Signal::pulse, py::arg("lo"), py::arg("hi"), py::arg("horizon"))
      .def_static("from_samples", &Signal::from_samples, py::arg("initial"), py::arg("samples"),
                  py::arg("horizon"))
      .def_property_readonly("initial", &Signal::initial)
      .def_property_readonly("toggles", &Signal::toggles)
      .def_property_readonly("horizon", &Signal::horizon)
      .def("eval", &Signal::eval, py::arg("t"))
      .def("left_limit", &Signal::left_limit, py::arg("t"))
      .def("final_value", &Signal::final_value)
      .def("rising_edges", &Signal::rising_edges)
      .def("falling_edges", &Signal::falling_edges)
      .def("extend_horizon", &Signal::extend_horizon, py::arg("new_horizon"))
      .def("__call__", &Signal::eval, py::arg("t"))
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__invert__", [](const Signal& s) { return ~s; })
      .def("__and__", [](const Signal& a, const Signal& b) { return a & b; })
      .def("__or__", [](const Signal& a, const Signal& b) { return a | b; })
      .def("__xor__", [](const Signal& a, const Signal& b) { return a ^ b; })
      .def("__repr__", &repr_of);

  m.def("window_and", &window_and, py::arg("x"), py::arg("width"));

  py::class_<AdmissibilityViolation>(m, "AdmissibilityViolation")
      .def_readonly("time", &AdmissibilityViolation::time)
      .def_readonly("before_time_zero", &AdmissibilityViolation::before_time_zero);

  py::enum_<InitialConstraint>(m, "InitialConstraint")
      .value("Free", InitialConstraint::Free)
      .value("Forced0", InitialConstraint::Forced0)
      .value("Forced1", InitialConstraint::Forced1);

  py::class_<EdgeSchedule> schedule(m, "EdgeSchedule");
  py::enum_<EdgeSchedule::First>(schedule, "First")
      .value("RiseOfU", EdgeSchedule::First::RiseOfU)
      .value("RiseOfV", EdgeSchedule::First::RiseOfV);
  schedule.def_readonly("times", &EdgeSchedule::times)
      .def_readonly("starts_with", &EdgeSchedule::starts_with);

  py::class_<LatchSolution>(m, "LatchSolution")
      .def_readonly("x", &LatchSolution::x)
      .def_readonly("schedule", &LatchSolution::schedule)
      .def_readonly("initial_used", &LatchSolution::initial_used);

  py::enum_<SystemEquation>(m, "SystemEquation")
      .value("Rise", SystemEquation::Rise)
      .value("Fall", SystemEquation::Fall)
      .value("Admissible", SystemEquation::Admissible);

  py::class_<SystemFailure>(m, "SystemFailure")
      .def_readonly("time", &SystemFailure::time)
      .def_readonly("equation", &SystemFailure::equation);

  m.def("check_admissible", &check_admissible, py::arg("u"), py::arg("v"));
  m.def("initial_constraint", &initial_constraint, py::arg("u"), py::arg("v"));
  m.def("edge_schedule", &edge_schedule, py::arg("u"), py::arg("v"), py::arg("initial"));
  m.def("solve", &solve, py::arg("u"), py::arg("v"), py::arg("initial"));
  m.def("interval_oracle", &interval_oracle, py::arg("u"), py::arg("v"), py::arg("initial"));
  m.def("check_system", &check_system, py::arg("u"), py::arg("v"), py::arg("x"));
  m.def("check_characteristic", &check_characteristic, py::arg("u"), py::arg("v"), py::arg("x"));

  py::class_<InertialParams>(m, "InertialParams")
      .def(py::init([](Time rise, Time fall) {
             return InertialParams{rise, fall};
           }),
           py::arg("rise"), py::arg("fall"))
      .def_readwrite("rise", &InertialParams::rise)
      .def_readwrite("fall", &InertialParams::fall);

  py::class_<DeviceTrace>(m, "DeviceTrace")
      .def(py::init([](std::vector<std::pair<std::string, Signal>> inputs, Signal q,
                       std::optional<Signal> p) {
             return DeviceTrace{std::move(inputs), std::move(q), std::move(p)};
           }),
           py::arg("inputs"), py::arg("q"), py::arg("p") = std::nullopt)
      .def_readonly("inputs", &DeviceTrace::inputs)
      .def_readonly("q", &DeviceTrace::q)
      .def_readonly("p", &DeviceTrace::p);

  py::enum_<DeviceKind>(m, "DeviceKind")
      .value("CElement", DeviceKind::CElement)
      .value("RsLatch", DeviceKind::RsLatch)
      .value("ClockedRs", DeviceKind::ClockedRs)
      .value("DLatch", DeviceKind::DLatch)
      .value("EdgeRsFf", DeviceKind::EdgeRsFf)
      .value("DFf", DeviceKind::DFf)
      .value("JkFf", DeviceKind::JkFf)
      .value("JkFf3", DeviceKind::JkFf3)
      .value("TFf", DeviceKind::TFf);

  py::class_<DeviceFailure>(m, "DeviceFailure")
      .def_readonly("time", &DeviceFailure::time)
      .def_readonly("clause", &DeviceFailure::clause);

  m.def("c_element", &c_element, py::arg("inputs"), py::arg("initial"));
  m.def("rs_latch", &rs_latch, py::arg("r"), py::arg("s"), py::arg("initial"));
  m.def("clocked_rs", &clocked_rs, py::arg("r"), py::arg("s"), py::arg("c"), py::arg("initial"));
  m.def("d_latch", &d_latch, py::arg("d"), py::arg("c"), py::arg("initial"));
  m.def("edge_rs_ff", &edge_rs_ff, py::arg("r"), py::arg("s"), py::arg("c"), py::arg("init_p"),
        py::arg("init_q"));
  m.def("d_ff", &d_ff, py::arg("d"), py::arg("c"), py::arg("init_p"), py::arg("init_q"));
  m.def("jk_ff", &jk_ff, py::arg("j"), py::arg("k"), py::arg("c"), py::arg("init_p"),
        py::arg("init_q"));
  m.def("jk_ff_variant3", &jk_ff_variant3, py::arg("j"), py::arg("k"), py::arg("c"),
        py::arg("init_p"), py::arg("init_q"));
  m.def("t_ff", &t_ff, py::arg("c"), py::arg("init_p"), py::arg("init_q"));
  m.def("inertial_rs_latch", &inertial_rs_latch, py::arg("r"), py::arg("s"), py::arg("params"),
        py::arg("initial"));
  m.def("verify_device", &verify_device, py::arg("kind"), py::arg("trace"));

  py::class_<WaveformDoc>(m, "WaveformDoc")
      .def(py::init([](Time horizon) {
             return WaveformDoc{horizon, {}};
           }),
           py::arg("horizon"))
      .def_readonly("horizon", &WaveformDoc::horizon)
      .def_readonly("entries", &WaveformDoc::entries)
      .def("add", &WaveformDoc::add, py::arg("name"), py::arg("signal"))
      .def("find",
           [](const WaveformDoc& doc, const std::string& name) -> std::optional<Signal> {
             const Signal* hit = doc.find(name);
             if (hit == nullptr) {
               return std::nullopt;
             }
             return *hit;
           },
           py::arg("name"));

  m.def("valid_signal_name", &valid_signal_name, py::arg("name"));
  m.def("parse_waveforms", [](const std::string& text) { return parse_waveforms(text); },
        py::arg("text"));
  m.def("format_waveforms", &format_waveforms, py::arg("doc"));
  m.def("emit_vcd", &emit_vcd, py::arg("doc"));
}
