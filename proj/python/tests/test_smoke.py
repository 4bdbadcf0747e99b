# Copyright 2026 The excitonfb Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import excitonfb as ef


def test_model_defaults():
    m = ef.ChainModel(10, 1.0)
    assert m.n_molecules == 10
    assert m.omega_cavity == 2.11
    assert m.kappa == 0.1
    assert m.gamma_d == m.gamma_r + m.gamma_nr
    assert m.omega_rabi == pytest.approx(1.0)
    assert ef.collective_rabi([0.5] * 4) == 2.0


def test_dipole_coupling_hand_value():
    m = ef.ChainModel(2, 0.0)
    m.spacing_nm = 10.0
    d = 36 * 3.33564e-30
    expected = 8.9875517923e9 * d * d / (10e-9) ** 3 / 1.602176634e-19
    assert ef.dipole_coupling(m, 1, 2) == pytest.approx(expected, rel=1e-12)
    assert ef.detuning_shift(m) == pytest.approx(expected, rel=1e-12)


def test_hamiltonian_is_hermitian():
    h = ef.hamiltonian(ef.ChainModel(5, 0.7))
    assert h.shape == (7, 7)
    np.testing.assert_allclose(h, h.conj().T, atol=1e-15)


def test_trace_preserving_generator():
    m = ef.ChainModel(3, 0.8)
    m.feedback.enabled = True
    m.feedback.eta = 0.6
    lv = ef.liouvillian(m)
    d = 5
    trace_row = sum(lv[i * (d + 1), :] for i in range(d))
    assert np.max(np.abs(trace_row)) < 1e-12


def test_two_level_steady_state():
    m = ef.ChainModel(1, 0.0)
    ss = ef.steady_state(m)
    assert ss.rho.shape == (3, 3)
    assert ss.rho[1, 1].real == pytest.approx(m.gamma_p / (m.gamma_p + m.gamma_d), rel=1e-10)
    assert ss.residual_norm <= 1e-10


def test_feedback_unitary():
    u = ef.feedback_unitary(4, 4, 0.5)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(6), atol=1e-14)
    assert u[0, 4] == -1j


def test_channel_decomposition():
    full, wc, nh = ef.channel_conductances(ef.ChainModel(10, 1.0))
    assert full.channel == ef.Channel.FULL
    assert min(wc.sigma_e, nh.sigma_e) < full.sigma_e < max(wc.sigma_e, nh.sigma_e)
    assert full.raw_value == -full.sigma_e


def test_sweep_and_csv_round_trip():
    t = ef.run_sweep(ef.ChainModel(4, 0.5), ef.SweepParameter.OMEGA_RABI, [0.2, 0.6, 1.0],
                     [ef.Channel.FULL, ef.Channel.NH])
    assert len(t.rows) == 6
    assert all(r.ok for r in t.rows)
    back = ef.SweepTable.from_csv(t.to_csv())
    assert [r.stat.mean for r in back.rows] == [r.stat.mean for r in t.rows]
    assert t.to_svg("x").count("<polyline") == 2


def test_disorder_is_seeded():
    m = ef.ChainModel(5, 0.5)
    a = ef.disorder_study(m, 0.2, 4, 11, [0.5])
    b = ef.disorder_study(m, 0.2, 4, 11, [0.5])
    assert [r.stat.mean for r in a.rows] == [r.stat.mean for r in b.rows]
    assert all(r.stat.count == 4 for r in a.rows)


def test_errors_are_translated():
    with pytest.raises(ef.NoCrossover):
        ef.find_crossover(ef.ChainModel(5, 1.0), 5, 5, 1.0)
    with pytest.raises(ef.ConfigError):
        ef.parse_config("experiment = omega_sweep\n[model]\nkapa = 1\n")
    with pytest.raises(ValueError):
        ef.ExcitationBasis(0)


def test_config_and_verify():
    c = ef.parse_config("experiment = disorder\n[model]\nn_molecules = 6\n")
    assert c.experiment == "disorder"
    assert c.model.n_molecules == 6
    assert dict(c.describe())["model.n_molecules"] == "6"
    results = ef.verify()
    assert results and all(r.passed for r in results)
    assert math.isfinite(sum(r.seconds for r in results))
