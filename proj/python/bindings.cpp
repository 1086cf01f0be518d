// Copyright 2026 The paramosc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

#include "paramosc/config.hpp"
#include "paramosc/constants.hpp"
#include "paramosc/protocols.hpp"
#include "paramosc/runner.hpp"
#include "paramosc/trap.hpp"
#include "paramosc/wigner.hpp"

namespace py = pybind11;
using namespace paramosc;

namespace {

TrapConfig trap_from(const std::tuple<double, double, double>& f) {
  return TrapConfig::from_hertz(std::get<0>(f), std::get<1>(f), std::get<2>(f));
}

double reference_xi() { return coupling_strength(IonSpecies::ytterbium171(), TrapConfig::reference()).xi; }

MeasurementModel model_from(double eta, std::optional<long> shots, std::uint64_t seed) {
  MeasurementModel m;
  m.eta = eta;
  m.shots = shots;
  m.seed = seed;
  m.validate();
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-ion parametric phonon coupling: states, dynamics and Wigner tomography";
  m.attr("__version__") = PARAMOSC_VERSION;

  py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "mode_params",
      [](std::tuple<double, double, double> trap_hz, bool bare) {
        const ModeParams p = mode_params(IonSpecies::ytterbium171(), trap_from(trap_hz),
                                         bare ? CouplingEvaluation::bare : CouplingEvaluation::resonance);
        py::dict d;
        d["omega_s_hz"] = constants::hertz(p.omega_s);
        d["omega_r_hz"] = constants::hertz(p.omega_r);
        d["z0_m"] = p.z0;
        d["xi_hz"] = constants::hertz(p.xi);
        d["splitting_hz"] = constants::hertz(2.0 * std::numbers::sqrt2 * p.xi);
        d["delta_hz"] = constants::hertz(p.delta);
        return d;
      },
      py::arg("trap_hz") = std::make_tuple(0.99e6, 0.90e6, 0.75e6), py::arg("bare") = false,
      "Mode frequencies, z0 and coupling for 171Yb+ at the given trap frequencies in Hz.");

  m.def(
      "state",
      [](const std::string& descriptor, int levels) {
        return StateDescriptor::parse(descriptor).build(FockDim(levels)).amplitudes();
      },
      py::arg("descriptor"), py::arg("levels") = 40, "Radial amplitudes for a state descriptor.");

  m.def(
      "wigner_oracle",
      [](const Vector& amplitudes, std::complex<double> alpha) {
        return wigner_oracle(StateVector::normalized(amplitudes), PhaseSpacePoint{alpha});
      },
      py::arg("amplitudes"), py::arg("alpha"));
  m.def("fock_wigner", &fock_wigner_closed_form, py::arg("n"), py::arg("r"));

  m.def(
      "crossing",
      [](std::vector<double> deltas_hz) {
        for (double& d : deltas_hz) d = constants::angular(d);
        const SpectrumBranch b = avoided_crossing_spectrum(deltas_hz, reference_xi());
        py::dict out;
        out["min_gap_hz"] = constants::hertz(b.min_gap);
        out["delta_at_min_hz"] = constants::hertz(b.delta_at_min);
        std::vector<double> lo, hi;
        for (std::size_t i = 0; i < b.lower.size(); ++i) {
          lo.push_back(constants::hertz(b.lower[i]));
          hi.push_back(constants::hertz(b.upper[i]));
        }
        out["branch0_hz"] = lo;
        out["branch1_hz"] = hi;
        return out;
      },
      py::arg("deltas_hz"), "K = 2 branches at the reference trap.");

  m.def(
      "oscillation",
      [](int n_initial, std::vector<double> hold_times_s) {
        OscillationSetup s;
        s.xi = reference_xi();
        s.n_initial = n_initial;
        s.hold_times = std::move(hold_times_s);
        const OscillationResult r = oscillation_experiment(s);
        py::dict out;
        out["frequency_hz"] = r.frequency_hz;
        out["max_transfer"] = r.max_transfer;
        std::vector<double> axial;
        for (const auto& row : r.rows) axial.push_back(row.p_axial);
        out["p_axial"] = axial;
        return out;
      },
      py::arg("n_initial"), py::arg("hold_times_s"));

  m.def(
      "parity",
      [](const std::string& descriptor, int radial, int axial, double eta, std::optional<long> shots,
         std::uint64_t seed) {
        const TwoModeSpace space(radial, axial);
        const ParityProtocol protocol(reference_xi(), adiabatic_sweep({}), space);
        const AdiabaticParity ap = adiabatic_parity(StateDescriptor::parse(descriptor).build(space.radial()), protocol,
                                                    model_from(eta, shots, seed));
        py::dict out;
        out["parity"] = ap.parity.parity;
        out["parity_exact"] = ap.parity.parity_exact;
        out["axial_distribution"] = ap.axial_distribution;
        out["min_ground_fidelity"] = ap.min_ground_fidelity;
        return out;
      },
      py::arg("descriptor"), py::arg("radial") = 40, py::arg("axial") = 22, py::arg("eta") = 1.0,
      py::arg("shots") = py::none(), py::arg("seed") = 1);

  m.def(
      "wigner_scan",
      [](const std::string& descriptor, std::vector<std::complex<double>> points, std::optional<int> radial,
         double eta, std::optional<long> shots, std::uint64_t seed, int threads) {
        const StateDescriptor state = StateDescriptor::parse(descriptor);
        const int levels = radial ? *radial : safe_radial_levels(state, points);
        const TwoModeSpace space(levels, auto_axial_levels(levels));
        const ParityProtocol protocol(reference_xi(), adiabatic_sweep({}), space);
        WignerScan scan;
        {
          py::gil_scoped_release release;
          scan = wigner_scan(state.build(space.radial()), points, protocol, model_from(eta, shots, seed), threads);
        }
        std::vector<double> w, w_exact;
        std::vector<unsigned> flags;
        for (const auto& p : scan.points) {
          w.push_back(p.wigner);
          w_exact.push_back(p.wigner_exact);
          flags.push_back(p.flags);
        }
        py::dict out;
        out["wigner"] = w;
        out["wigner_exact"] = w_exact;
        out["flags"] = flags;
        out["radial_levels"] = levels;
        return out;
      },
      py::arg("descriptor"), py::arg("points"), py::arg("radial") = py::none(), py::arg("eta") = 1.0,
      py::arg("shots") = py::none(), py::arg("seed") = 1, py::arg("threads") = 0);

  m.def("canonical_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
        py::arg("text"));
  m.def("config_hash", [](const std::string& text) { return config_hash(parse_config(text)); }, py::arg("text"));
  m.def(
      "run",
      [](const std::string& text) {
        const RunOutcome o = run_experiment(parse_config(text));
        return py::make_tuple(o.exit_code, o.files, o.summary);
      },
      py::arg("text"), "Run a config document; returns (exit_code, files, summary).");
}
