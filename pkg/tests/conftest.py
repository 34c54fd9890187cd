"""Shared test helpers: independent oracles and random-instance generators.

Oracles here deliberately avoid the library's fast paths: dense matrices are
built by literal Kronecker products, ordering costs by direct permutation
enumeration, so library results are checked against a second route.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from permvqe.pauli import PauliSum, PauliTerm

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "src" / "permvqe" / "fixtures"

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_matrix(h: PauliSum) -> np.ndarray:
    """Reference dense realization: qubit 0 is the least significant bit."""
    dim = 1 << h.n_qubits
    total = np.zeros((dim, dim), dtype=complex)
    for term in h.terms:
        mat = np.array([[1.0]], dtype=complex)
        for letter in reversed(term.word):  # highest qubit outermost
            mat = np.kron(mat, PAULI_MATRICES[letter])
        total += term.coefficient * mat
    return total


def random_pauli_sum(rng: np.random.Generator, n_qubits: int, n_terms: int) -> PauliSum:
    terms = []
    for _ in range(n_terms):
        word = "".join(rng.choice(list("IXYZ"), size=n_qubits))
        terms.append(PauliTerm(n_qubits, word, float(rng.normal())))
    return PauliSum.from_terms(terms, n_qubits)


def random_state(rng: np.random.Generator, n_qubits: int) -> np.ndarray:
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return amps / np.linalg.norm(amps)


def random_integral_set(rng: np.random.Generator, n_spatial: int, n_electrons: int):
    from permvqe.fermion import IntegralSet

    one = rng.normal(size=(n_spatial, n_spatial))
    one = (one + one.T) / 2
    raw = rng.normal(size=(n_spatial,) * 4)
    two = np.zeros_like(raw)
    for perm in [
        (0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
        (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0),
    ]:
        two += raw.transpose(perm)
    two /= 8
    return IntegralSet(n_spatial, n_electrons, float(rng.normal()), one, two)


def enumerated_min_cost(matrix: np.ndarray, beta: float) -> float:
    """Exhaustive relabeling minimum, built from first principles."""
    import itertools

    n = matrix.shape[0]
    best = np.inf
    for perm in itertools.permutations(range(n)):
        total = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                total += abs(perm[i] - perm[j]) ** beta * matrix[i, j]
        best = min(best, total)
    return best


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)


def fixture_path(name: str) -> Path:
    path = FIXTURE_DIR / name
    if not path.exists():
        pytest.skip(f"fixture {name} not generated")
    return path
