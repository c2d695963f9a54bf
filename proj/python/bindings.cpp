#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "theta_quartic/errors.hpp"
#include "theta_quartic/json_io.hpp"
#include "theta_quartic/pipeline.hpp"

namespace py = pybind11;
using namespace tq;

namespace {

std::vector<std::string> names(const std::vector<Characteristic>& chars) {
  std::vector<std::string> out;
  for (const Characteristic& m : chars) out.push_back(m.to_string());
  return out;
}

AronholdSystem pick_system(std::optional<int> index) {
  if (!index) return weber_example_system();
  const auto all = enumerate_aronhold();
  if (*index < 0 || *index >= static_cast<int>(all.size())) throw InputError("system_index must lie in [0, 288)");
  return all[*index];
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weber's formula for the bitangents of a genus-3 plane quartic";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<SpecialLocusError>(m, "SpecialLocusError", PyExc_ArithmeticError);
  py::register_exception<SingularSystemError>(m, "SingularSystemError", PyExc_ArithmeticError);
  py::register_exception<TruncationError>(m, "TruncationError", input_error.ptr());

  py::class_<Characteristic>(m, "Characteristic")
      .def(py::init<const Characteristic::Half&, const Characteristic::Half&>(), py::arg("mp"), py::arg("mpp"))
      .def_property_readonly("mp", &Characteristic::mp)
      .def_property_readonly("mpp", &Characteristic::mpp)
      .def("parity", &Characteristic::parity)
      .def("is_reduced", &Characteristic::is_reduced)
      .def("reduce",
           [](const Characteristic& c) {
             const Reduction r = reduce_characteristic(c);
             return py::make_tuple(r.reduced, r.sign);
           })
      .def("__add__", [](const Characteristic& a, const Characteristic& b) { return a + b; })
      .def("__eq__", [](const Characteristic& a, const Characteristic& b) { return a == b; })
      .def("__hash__", [](const Characteristic& c) { return std::hash<std::string>{}(c.to_string()); })
      .def("__str__", &Characteristic::to_string)
      .def("__repr__", [](const Characteristic& c) { return "Characteristic('" + c.to_string() + "')"; });

  m.def("all_characteristics", [] {
    std::vector<Characteristic> out;
    for (QuadForm q : all_forms()) out.emplace_back(q);
    return out;
  });
  m.def("aronhold_systems", [] {
    std::vector<std::vector<Characteristic>> out;
    for (const AronholdSystem& s : enumerate_aronhold()) {
      std::vector<Characteristic> forms;
      for (QuadForm q : s.forms()) forms.emplace_back(q);
      out.push_back(std::move(forms));
    }
    return out;
  });
  m.def("is_aronhold", [](const std::vector<Characteristic>& chars) {
    std::vector<QuadForm> forms;
    for (const Characteristic& c : chars) forms.push_back(c.to_form());
    return is_aronhold(forms);
  });

  m.def("validate_tau", [](const Matrix3c& tau) { return PeriodMatrix(tau).tau(); }, py::arg("tau"));
  m.def("random_tau", [](std::uint64_t seed) { return random_admissible_tau(seed).tau.tau(); }, py::arg("seed"));
  m.def(
      "theta",
      [](const Characteristic& c, const Matrix3c& tau, const Vector3c& z) { return theta(c, PeriodMatrix(tau), z); },
      py::arg("m"), py::arg("tau"), py::arg("z"));
  m.def(
      "theta_const", [](const Characteristic& c, const Matrix3c& tau) { return theta_const(c, PeriodMatrix(tau)); },
      py::arg("m"), py::arg("tau"));
  m.def(
      "grad_theta0", [](const Characteristic& c, const Matrix3c& tau) { return grad_theta0(c, PeriodMatrix(tau)); },
      py::arg("m"), py::arg("tau"));
  m.def(
      "special_locus_scan", [](const Matrix3c& tau) { return names(special_locus_scan(PeriodMatrix(tau))); },
      py::arg("tau"));

  m.def(
      "_bitangents_json",
      [](const Matrix3c& tau, std::optional<int> system_index, const EpsilonSigns& eps, double tol) {
        PipelineConfig cfg;
        cfg.system = pick_system(system_index);
        cfg.eps = eps;
        cfg.tol = tol;
        std::optional<PipelineResult> r;
        {
          py::gil_scoped_release release;
          r.emplace(run_pipeline(PeriodMatrix(tau), cfg));
        }
        json_io::json out = json_io::frame_to_json(*r);
        out["verify"] = json_io::report_to_json(*r);
        return out.dump();
      },
      py::arg("tau"), py::arg("system_index") = py::none(), py::arg("eps") = EpsilonSigns{1, 1, 1},
      py::arg("tol") = kDefaultBitangencyTolerance);
}
