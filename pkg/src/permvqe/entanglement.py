"""Mutual-information entanglement maps and the distance-weighted cost.

Entropies are in bits (base-2 logarithm). The base is a uniform scale on the
whole map and cannot change which permutation minimizes the cost, so the
convention keeping pairwise mutual information inside [0, 1] is used.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np

from .pauli import Permutation
from .simulator import StateVector, reduced_density_matrix

#: eigenvalues below this are treated as exact zeros in 0*log(0)
ENTROPY_EIGENVALUE_CUTOFF = 1e-12

#: a qubit counts as entangled when some row entry exceeds this; calibrated to
#: separate weak angular-correlation floors (~5e-3 bits for the reference
#: hydride fixture) from genuine couplings (>2e-2 bits)
ENTANGLED_THRESHOLD = 1e-2

LOG_BASE = 2


def entropy(rho: np.ndarray, trace_tol: float = 1e-8) -> float:
    """Von Neumann entropy -sum(lam * log2 lam) of a density matrix."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    tr = float(np.real(np.trace(rho)))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr} deviates from 1 beyond {trace_tol}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
        raise ValueError("density matrix is not Hermitian within tolerance")
    lams = np.linalg.eigvalsh(rho)
    lams = lams[lams > ENTROPY_EIGENVALUE_CUTOFF]
    return float(-np.sum(lams * np.log2(lams)))


@dataclass(frozen=True)
class EntanglementMap:
    """Symmetric n x n matrix of pairwise quantum mutual information."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.float64)
        if mat.shape != (self.n, self.n):
            raise ValueError(f"expected ({self.n}, {self.n}) matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.T)) > 1e-9:
            raise ValueError("entanglement map must be symmetric")
        if np.max(np.abs(np.diag(mat))) > 1e-9:
            raise ValueError("entanglement map must have zero diagonal")
        object.__setattr__(self, "matrix", mat)

    def entangled_qubits(self, threshold: float = ENTANGLED_THRESHOLD) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.matrix.max(axis=1) > threshold))

    def permuted(self, p: Permutation) -> "EntanglementMap":
        """Row/column relabeling: entry (i, j) moves to (p(i), p(j))."""
        if p.n != self.n:
            raise ValueError(f"permutation on {p.n} indices vs {self.n}-qubit map")
        out = np.zeros_like(self.matrix)
        idx = np.array(p.map)
        out[np.ix_(idx, idx)] = self.matrix
        return EntanglementMap(self.n, out)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "I": self.matrix.tolist(), "log_base": LOG_BASE}

    @classmethod
    def from_json_dict(cls, data: dict) -> "EntanglementMap":
        return cls(int(data["n"]), np.array(data["I"], dtype=np.float64))

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        for row in self.matrix:
            buf.write(",".join(repr(float(v)) for v in row) + "\n")
        return buf.getvalue()


def mutual_information_map(state: StateVector) -> EntanglementMap:
    """Pairwise I_ij = (S_i + S_j - S_ij) / 2 from exact partial traces."""
    n = state.n_qubits
    singles = [entropy(reduced_density_matrix(state, (i,))) for i in range(n)]
    mat = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            s_ij = entropy(reduced_density_matrix(state, (i, j)))
            mat[i, j] = mat[j, i] = 0.5 * (singles[i] + singles[j] - s_ij)
    return EntanglementMap(n, mat)


def tomography_measurement_count(n: int) -> int:
    """Operator measurements a hardware run would need for the full map."""
    return 15 * n * (n - 1) // 2


@dataclass(frozen=True)
class ConnectivityDistance:
    """Distance model d_ij with a power-law weight f(d) = d**beta."""

    kind: str = "linear"
    beta: float = 2.0

    def __post_init__(self):
        if self.kind != "linear":
            raise ValueError(f"unsupported connectivity kind {self.kind!r}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    def distances(self, n: int) -> np.ndarray:
        idx = np.arange(n)
        return np.abs(idx[:, None] - idx[None, :]).astype(np.float64)


def cost(emap: EntanglementMap, conn: ConnectivityDistance) -> float:
    """Long-range correlation cost sum_{i<j} d_ij**beta * I_ij."""
    d = conn.distances(emap.n)
    weights = np.where(d > 0, d**conn.beta, 0.0)
    return float(np.sum(np.triu(weights * emap.matrix, k=1)))
