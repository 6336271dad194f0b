# Copyright 2026 The superrep Authors
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

from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

import superrep as sr


def kron_power(u, k):
    out = np.eye(1)
    for _ in range(k):
        out = np.kron(out, u)
    return out


def symmetric_projector(d, k):
    dim = d**k
    proj = np.zeros((dim, dim))
    for perm in permutations(range(k)):
        for idx in range(dim):
            digits = [(idx // d ** (k - 1 - i)) % d for i in range(k)]
            moved = [digits[p] for p in perm]
            target = sum(v * d ** (k - 1 - i) for i, v in enumerate(moved))
            proj[target, idx] += 1
    return proj / len(list(permutations(range(k))))


def test_measure_is_exact():
    rows = sr.schur_weyl_measure(4, 2)
    assert [r["weight"] for r in rows] == [Fraction(5, 16), Fraction(9, 16), Fraction(1, 8)]
    assert sum(r["dim_rep"] * r["mult"] for r in sr.schur_weyl_measure(6, 3)) == 3**6
    assert sr.entanglement_fidelity_rational(4, 2, 1) == Fraction(121, 256)


def test_big_integers_survive():
    # 40 boxes in two equal rows: Catalan number C_20
    assert sr.multiplicity([20, 20]) == 6564120420
    assert sr.multiplicity([60, 60]) == 1583850964596120042686772779038896


def test_symmetric_dimension_matches_projector_rank():
    for d, k in [(2, 3), (3, 2), (3, 3)]:
        rank = round(np.trace(symmetric_projector(d, k)))
        assert sr.dim_rep([k] + [0] * (d - 1)) == rank


def test_schur_basis_block_diagonalizes():
    basis = sr.schur_basis(3, 3)
    assert np.allclose(basis.conj().T @ basis, np.eye(27), atol=1e-10)
    u = sr.haar_unitary(3, 7)
    conj = basis.conj().T @ kron_power(u, 3) @ basis
    mask = np.zeros_like(conj, dtype=bool)
    for _, dim, mult, offset in sr.schur_blocks(3, 3):
        for m in range(mult):
            cols = [offset + r * mult + m for r in range(dim)]
            mask[np.ix_(cols, cols)] = True
    assert np.linalg.norm(conj[~mask]) < 1e-9


def test_encoder_and_network():
    enc = sr.TruncatedEncoder(4, 2, 1)
    assert enc.rank == 11
    assert enc.entanglement_fidelity() == pytest.approx(121 / 256, abs=1e-12)
    net = sr.ReplicationNetwork(2, 4, 1)
    assert net.ancilla_dim == 3
    rng = np.random.default_rng(1)
    psi = rng.normal(size=16) + 1j * rng.normal(size=16)
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())
    u = sr.haar_unitary(2, 3)
    big = kron_power(u, 4)
    out = net.apply(u, rho)
    target = big @ enc.apply(rho) @ big.conj().T
    assert np.abs(np.linalg.eigvalsh(out - target)).sum() < 1e-9


def test_generation_and_errors():
    rep = sr.generate_entangled(2, 4, 2, sr.haar_unitary(2, 5))
    assert rep["fidelity_exact"] == pytest.approx(121 / 256, abs=1e-9)
    with pytest.raises(sr.ResourceError):
        sr.generate_entangled(2, 12, 2, sr.haar_unitary(2, 5))
    with pytest.raises(ValueError):
        sr.min_ancilla_dim(2, 5, 1)
    assert sr.min_ancilla_dim(2, 4, 1) == 3


def test_teleport_rate():
    stats = sr.teleport_experiment(2, 4000, 11)
    assert abs(stats["rate"] - 0.25) < 3 * np.sqrt(0.25 * 0.75 / 4000)
    assert stats["min_success_fidelity"] == pytest.approx(1.0, abs=1e-9)
