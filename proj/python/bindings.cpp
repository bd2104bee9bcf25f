#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "entx/closed_form.hpp"
#include "entx/dynamics.hpp"
#include "entx/error.hpp"
#include "entx/measures.hpp"
#include "entx/model.hpp"
#include "entx/scan.hpp"

namespace py = pybind11;

namespace {

using CArray = py::array_t<entx::Complex, py::array::c_style | py::array::forcecast>;

CArray to_numpy(const entx::ComplexMatrix& m) {
  CArray out({m.dim(), m.dim()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

entx::ComplexMatrix from_numpy(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("expected a square 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return entx::ComplexMatrix(n, std::vector<entx::Complex>(a.data(), a.data() + n * n));
}

CArray state_to_numpy(const entx::PureState& psi) {
  CArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(entx::kFullDim)});
  std::copy(psi.amplitudes().begin(), psi.amplitudes().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_entx, m) {
  m.doc() = "Entanglement and energy in the two-pair qubit transfer model";

  py::register_exception<entx::Error>(m, "EntxError", PyExc_RuntimeError);

  py::class_<entx::SystemConfig>(m, "SystemConfig")
      .def(py::init([](double theta, double g_aA, double g_bB, double kappa_A, double kappa_B, double omega) {
             entx::SystemConfig cfg{theta, g_aA, g_bB, kappa_A, kappa_B, omega};
             cfg.validate();
             return cfg;
           }),
           py::arg("theta") = 0.0, py::arg("g_aA") = 1.0, py::arg("g_bB") = 1.0, py::arg("kappa_A") = 0.0,
           py::arg("kappa_B") = 0.0, py::arg("omega") = 1.0)
      .def_readwrite("theta", &entx::SystemConfig::theta)
      .def_readwrite("g_aA", &entx::SystemConfig::g_aA)
      .def_readwrite("g_bB", &entx::SystemConfig::g_bB)
      .def_readwrite("kappa_A", &entx::SystemConfig::kappa_A)
      .def_readwrite("kappa_B", &entx::SystemConfig::kappa_B)
      .def_readwrite("omega", &entx::SystemConfig::omega)
      .def("__repr__", [](const entx::SystemConfig& c) {
        std::ostringstream s;
        s << "SystemConfig(theta=" << c.theta << ", g_aA=" << c.g_aA << ", g_bB=" << c.g_bB
          << ", kappa_A=" << c.kappa_A << ", kappa_B=" << c.kappa_B << ", omega=" << c.omega << ")";
        return s.str();
      });

  py::class_<entx::XStateAB>(m, "XStateAB")
      .def(py::init<double, double, double, entx::Complex>(), py::arg("a"), py::arg("b"), py::arg("c"),
           py::arg("d"))
      .def_readwrite("a", &entx::XStateAB::a)
      .def_readwrite("b", &entx::XStateAB::b)
      .def_readwrite("c", &entx::XStateAB::c)
      .def_readwrite("d", &entx::XStateAB::d)
      .def("to_matrix", [](const entx::XStateAB& x) { return to_numpy(x.to_matrix()); })
      .def("is_physical", &entx::XStateAB::is_physical, py::arg("tol") = 1e-10);

  py::enum_<entx::DissipativeBranch>(m, "DissipativeBranch")
      .value("EqualWeight", entx::DissipativeBranch::EqualWeight)
      .value("GeneralTheta", entx::DissipativeBranch::GeneralTheta);

  m.def("build_hamiltonian", [](const entx::SystemConfig& c) { return to_numpy(entx::build_hamiltonian(c)); });
  m.def("build_h_ab", [](const entx::SystemConfig& c) { return to_numpy(entx::build_h_ab(c)); });
  m.def("initial_state", [](const entx::SystemConfig& c) { return state_to_numpy(entx::initial_state(c)); });
  m.def("jump_operators", [](const entx::SystemConfig& c) {
    std::vector<CArray> out;
    for (const auto& v : entx::jump_operators(c)) out.push_back(to_numpy(v));
    return out;
  });

  m.def("global_state", [](const entx::SystemConfig& c, double t) { return state_to_numpy(entx::global_state(c, t)); });
  m.def("unitary_elements", &entx::unitary_elements, py::arg("cfg"), py::arg("t"));
  m.def("dissipative_elements", &entx::dissipative_elements, py::arg("cfg"), py::arg("t"),
        py::arg("branch") = entx::DissipativeBranch::EqualWeight);
  m.def("frontier_negativity", &entx::frontier_negativity, py::arg("energy"));
  m.def("bound_residual", &entx::bound_residual, py::arg("negativity"), py::arg("energy"));

  m.def("partial_trace_to_ab", [](const CArray& rho) { return to_numpy(entx::partial_trace_to_ab(from_numpy(rho))); });
  m.def("partial_transpose_a", [](const CArray& rho) { return to_numpy(entx::partial_transpose_a(from_numpy(rho))); });
  m.def("negativity", [](const CArray& rho) { return entx::negativity(from_numpy(rho)); });
  m.def("energy", [](const CArray& rho, double omega) { return entx::energy(from_numpy(rho), omega); },
        py::arg("rho_ab"), py::arg("omega") = 1.0);
  m.def("xstate_observables", [](const entx::XStateAB& x) {
    const auto obs = entx::xstate_observables(x);
    return py::make_tuple(obs.negativity, obs.energy);
  });

  m.def("evolve_exact", [](const entx::SystemConfig& c, double t) {
    return state_to_numpy(entx::evolve_exact(entx::build_hamiltonian(c), entx::initial_state(c), t));
  }, py::arg("cfg"), py::arg("t"));

  m.def("propagate_lindblad", [](const entx::SystemConfig& c, double t_final, double dt, std::size_t stride,
                                 bool restrict_to_low_sector) {
    entx::PropagationPlan plan{t_final, dt > 0.0 ? dt : entx::default_time_step(c), entx::Method::RungeKutta4, stride};
    std::vector<std::pair<double, CArray>> out;
    for (const auto& s : entx::propagate_lindblad(c, plan, entx::LindbladOptions{restrict_to_low_sector}))
      out.emplace_back(s.t, to_numpy(s.rho));
    return out;
  }, py::arg("cfg"), py::arg("t_final"), py::arg("dt") = 0.0, py::arg("record_stride") = 1,
     py::arg("restrict_to_low_sector") = false);

  m.def("time_series", [](const entx::SystemConfig& c, double t_final, std::size_t samples, const std::string& engine) {
    entx::SweepSpec spec;
    spec.config = c;
    spec.t_final = t_final;
    spec.samples = samples;
    spec.engine = entx::parse_engine(engine);
    py::dict cols;
    std::vector<double> t, n, u, residual;
    for (const auto& r : entx::compute_trajectory(spec)) {
      t.push_back(r.t);
      n.push_back(r.N);
      u.push_back(r.U);
      residual.push_back(r.residual);
    }
    cols["t"] = py::array(py::cast(t));
    cols["N"] = py::array(py::cast(n));
    cols["U"] = py::array(py::cast(u));
    cols["residual"] = py::array(py::cast(residual));
    return cols;
  }, py::arg("cfg"), py::arg("t_final"), py::arg("samples") = 1001, py::arg("engine") = "closed");

  m.def("peak_negativity", [](const entx::SystemConfig& c, double t_final) {
    const auto p = entx::peak_negativity(c, t_final);
    return py::make_tuple(p.t, p.N);
  });
}
