# Copyright 2026 The paramosc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import paramosc


def test_mode_params_reference_trap():
    p = paramosc.mode_params()
    assert p["splitting_hz"] == pytest.approx(2962.76, abs=0.01)
    assert p["z0_m"] == pytest.approx(2.0913413e-6, rel=1e-6)


def test_state_normalized():
    psi = np.asarray(paramosc.state("cat:1.2:0:plus", 30))
    assert np.vdot(psi, psi).real == pytest.approx(1.0, abs=1e-12)


def test_wigner_oracle_matches_fock_closed_form():
    psi = paramosc.state("fock:1", 20)
    assert paramosc.wigner_oracle(psi, 0.4 + 0.3j) == pytest.approx(paramosc.fock_wigner(1, 0.5), abs=1e-12)
    assert paramosc.fock_wigner(1, 0.0) == pytest.approx(-2 / math.pi)


def test_crossing_minimum_gap():
    out = paramosc.crossing([-1000.0, 0.0, 1000.0])
    assert out["min_gap_hz"] == pytest.approx(2962.76, abs=0.01)
    assert out["delta_at_min_hz"] == 0.0


def test_parity_of_fock_two():
    out = paramosc.parity("fock:2")
    assert out["parity_exact"] == pytest.approx(1.0, abs=0.02)
    assert out["axial_distribution"][1] > 0.99


def test_wigner_scan_origin():
    out = paramosc.wigner_scan("fock:1", [0j], radial=40)
    assert out["wigner_exact"][0] == pytest.approx(-2 / math.pi, abs=0.01)
    assert out["flags"][0] == 0


def test_config_round_trip():
    text = "[run]\nexperiment = crossing\n[crossing]\npoints = 11\n"
    canonical = paramosc.canonical_config(text)
    assert paramosc.canonical_config(canonical) == canonical
    assert paramosc.config_hash(canonical) == paramosc.config_hash(text)


def test_config_error_raised():
    with pytest.raises(paramosc.ConfigError):
        paramosc.canonical_config("[run]\nbogus = 1\n")
