// Copyright 2026 The xxosc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Matrices cross as 4x4 float64 NumPy arrays in the
// mode-wise ordering (x1, p1, x2, p2).

#include "xxosc/dynamics.hpp"
#include "xxosc/model.hpp"
#include "xxosc/phase_space.hpp"
#include "xxosc/states.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace xxosc;

namespace {

std::optional<DissipationSpec> dissipation_from(
    const std::optional<std::tuple<double, double, double, double>>& d) {
  if (!d) return std::nullopt;
  const auto [g1, g2, n1, n2] = *d;
  return DissipationSpec(g1, g2, n1, n2);
}

DissipationSpec required_dissipation(double g1, double g2, double n1, double n2) {
  return DissipationSpec(g1, g2, n1, n2);
}

}  // namespace

PYBIND11_MODULE(_xxosc, m) {
  m.doc() = "Covariance-level simulator for two x-x coupled quantum oscillators";
  m.attr("__version__") = XXOSC_VERSION;
  py::register_exception<NumericalInconsistency>(m, "NumericalInconsistency",
                                                 PyExc_ArithmeticError);

  m.def("symplectic_form", &symplectic_form);

  m.def("critical_coupling", [](double w1, double w2) {
    return critical_coupling(OscillatorPair(w1, w2, 0.0));
  }, py::arg("omega1"), py::arg("omega2"));

  m.def("classify_regime", [](double w1, double w2, double g) {
    return std::string(to_string(classify_regime(OscillatorPair(w1, w2, g))));
  }, py::arg("omega1"), py::arg("omega2"), py::arg("g"));

  m.def("hamiltonian", [](double w1, double w2, double g) {
    return build_hamiltonian(OscillatorPair(w1, w2, g)).modewise();
  }, py::arg("omega1"), py::arg("omega2"), py::arg("g"));

  m.def("normal_mode_energies_sq", [](double w1, double w2, double g) {
    const ModeEnergiesSq e = normal_mode_energies_sq(OscillatorPair(w1, w2, g));
    return std::make_tuple(e.plus, e.minus);
  }, py::arg("omega1"), py::arg("omega2"), py::arg("g"),
        "(E+^2, E-^2) from the closed-form expression.");

  m.def("symplectic_frequencies", [](double w1, double w2, double g) {
    const SymplecticFrequencies f =
        symplectic_frequencies(build_hamiltonian(OscillatorPair(w1, w2, g)));
    return std::make_tuple(f.nu_plus, f.nu_minus_sq);
  }, py::arg("omega1"), py::arg("omega2"), py::arg("g"),
        "(nu+, nu-^2) from the eigenvalues of Omega H.");

  m.def("diagonalizer_params", [](double w1, double w2, double g) {
    const DiagonalizerParams p = diagonalizer_params(OscillatorPair(w1, w2, g));
    return std::make_tuple(p.a, p.b);
  }, py::arg("omega1"), py::arg("omega2"), py::arg("g"));

  m.def("diagonalizing_symplectic", [](double w1, double w2, double g) {
    const OscillatorPair osc(w1, w2, g);
    return diagonalizing_symplectic(diagonalizer_params(osc), osc);
  }, py::arg("omega1"), py::arg("omega2"), py::arg("g"));

  m.def("hookian_reduce", [](double mass, double omega, double coupling) {
    const HookianReduction r = hookian_reduce({mass, omega, coupling});
    return std::make_tuple(r.omega0, r.G, r.g_effective);
  }, py::arg("mass"), py::arg("omega"), py::arg("coupling"),
        "(omega0, G, g_effective).");

  m.def("thermal_covariance", [](double eta1, double eta2) {
    return thermal_covariance(ThermalSpec(eta1, eta2)).matrix();
  }, py::arg("eta1"), py::arg("eta2"));

  m.def("seralian", [](const Mat4& s) { return seralian(CovarianceMatrix(s)); },
        py::arg("sigma"));
  m.def("log_negativity",
        [](const Mat4& s) { return log_negativity(CovarianceMatrix(s)); },
        py::arg("sigma"));
  m.def("purity", [](const Mat4& s) { return purity(CovarianceMatrix(s)); },
        py::arg("sigma"));

  m.def("evolve_unitary", [](const Mat4& s, double w1, double w2, double g, double t) {
    return evolve_unitary(CovarianceMatrix(s),
                          build_hamiltonian(OscillatorPair(w1, w2, g)), t)
        .matrix();
  }, py::arg("sigma"), py::arg("omega1"), py::arg("omega2"), py::arg("g"),
        py::arg("t"));

  m.def("evolve_dissipative",
        [](const Mat4& s, double w1, double w2, double g, double g1, double g2,
           double n1, double n2, double t) {
          return evolve_dissipative(CovarianceMatrix(s),
                                    build_hamiltonian(OscillatorPair(w1, w2, g)),
                                    required_dissipation(g1, g2, n1, n2), t)
              .matrix();
        },
        py::arg("sigma"), py::arg("omega1"), py::arg("omega2"), py::arg("g"),
        py::arg("gamma1"), py::arg("gamma2"), py::arg("nbar1"), py::arg("nbar2"),
        py::arg("t"));

  m.def("evolve_dissipative_rk4",
        [](const Mat4& s, double w1, double w2, double g, double g1, double g2,
           double n1, double n2, double t, double dt) {
          return evolve_dissipative_rk4(
                     CovarianceMatrix(s),
                     build_hamiltonian(OscillatorPair(w1, w2, g)),
                     required_dissipation(g1, g2, n1, n2), t, dt)
              .matrix();
        },
        py::arg("sigma"), py::arg("omega1"), py::arg("omega2"), py::arg("g"),
        py::arg("gamma1"), py::arg("gamma2"), py::arg("nbar1"), py::arg("nbar2"),
        py::arg("t"), py::arg("dt") = 1e-3);

  m.def("mach_zehnder_residual",
        py::overload_cast<double, double, double>(&mach_zehnder_residual),
        py::arg("omega"), py::arg("g"), py::arg("t"));

  m.def("trajectory",
        [](double w1, double w2, double g, double eta1, double eta2, double t_max,
           double dt,
           const std::optional<std::tuple<double, double, double, double>>& d) {
          const Trajectory traj = entanglement_trajectory(
              thermal_covariance(ThermalSpec(eta1, eta2)),
              build_hamiltonian(OscillatorPair(w1, w2, g)), dissipation_from(d),
              uniform_grid(t_max, dt));
          std::vector<double> t, en, delta, nu, pur;
          for (const TrajectoryRecord& r : traj.records) {
            t.push_back(r.t);
            en.push_back(r.log_negativity);
            delta.push_back(r.seralian);
            nu.push_back(r.nu_minus);
            pur.push_back(r.purity);
          }
          py::dict out;
          out["t"] = py::cast(t);
          out["E_N"] = py::cast(en);
          out["Delta"] = py::cast(delta);
          out["nu_minus"] = py::cast(nu);
          out["purity"] = py::cast(pur);
          out["truncated"] = traj.truncated;
          out["truncated_at"] =
              traj.truncated ? py::cast(traj.truncated_at) : py::none();
          return out;
        },
        py::arg("omega1"), py::arg("omega2"), py::arg("g"), py::arg("eta1"),
        py::arg("eta2"), py::arg("t_max"), py::arg("dt") = 0.01,
        py::arg("dissipation") = py::none(),
        "Observables on a uniform grid. `dissipation` is (gamma1, gamma2, "
        "nbar1, nbar2) or None.");

  m.def("death_time",
        [](double w1, double w2, double g, double eta1, double eta2, double g1,
           double g2, double n1, double n2, double t_max, double tol) {
          return death_time(thermal_covariance(ThermalSpec(eta1, eta2)),
                            build_hamiltonian(OscillatorPair(w1, w2, g)),
                            required_dissipation(g1, g2, n1, n2), t_max, tol);
        },
        py::arg("omega1"), py::arg("omega2"), py::arg("g"), py::arg("eta1"),
        py::arg("eta2"), py::arg("gamma1"), py::arg("gamma2"), py::arg("nbar1"),
        py::arg("nbar2"), py::arg("t_max"), py::arg("tol") = 1e-6);
}
