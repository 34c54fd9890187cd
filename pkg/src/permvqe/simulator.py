"""Dense statevector engine.

Amplitudes are indexed with qubit 0 as the least significant bit of the basis
index. Gate application mutates a private copy; expectation values and reduced
density matrices are read-only and exact (partial traces, no sampling). Shot
noise and stochastic Pauli errors live in :func:`noisy_expectation`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - plain numpy fallback
    numba = None

from .pauli import PauliSum, Permutation

NORM_TOL = 1e-10

GATE_KINDS = ("ry", "rz", "x", "cnot", "cz", "givens")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"gate qubits must be distinct, got {self.qubits}")


def ry(qubit: int, theta: float) -> Gate:
    return Gate("ry", (qubit,), (float(theta),))


def rz(qubit: int, theta: float) -> Gate:
    return Gate("rz", (qubit,), (float(theta),))


def x(qubit: int) -> Gate:
    return Gate("x", (qubit,))


def cnot(control: int, target: int) -> Gate:
    return Gate("cnot", (control, target))


def cz(a: int, b: int) -> Gate:
    return Gate("cz", (a, b))


def givens(a: int, b: int, theta: float, phi: float = 0.0) -> Gate:
    """Two-parameter excitation-conserving entangler on qubits (a, b).

    Acts as the identity on |00> and |11>; on the span of {|01>, |10>} it is
    [[cos t, e^{i p} sin t], [e^{-i p} sin t, -cos t]] with |q_a q_b> ordering.
    """
    return Gate("givens", (a, b), (float(theta), float(phi)))


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over 2^n basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected {1 << self.n_qubits} amplitudes, got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 deviates from 1 by {abs(norm_sq - 1.0):.3e}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def computational_basis(cls, n_qubits: int, bits: Sequence[int]) -> "StateVector":
        if len(bits) != n_qubits:
            raise ValueError(f"expected {n_qubits} bits, got {len(bits)}")
        index = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bits must be 0/1, got {b}")
            index |= b << i
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n_qubits, amps)


def _check_qubits(n: int, qubits: Sequence[int]) -> None:
    for q in qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for n_qubits={n}")


def _apply_single(amps: np.ndarray, n: int, q: int, u: np.ndarray) -> None:
    view = amps.reshape(1 << (n - 1 - q), 2, 1 << q)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    view[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1


@lru_cache(maxsize=128)
def _pair_indices(n: int, a: int, b: int) -> tuple[np.ndarray, ...]:
    """Basis indices split by the bits of qubits (a, b): (i00, i01, i10, i11)."""
    idx = np.arange(1 << n)
    bit_a = (idx >> a) & 1
    bit_b = (idx >> b) & 1
    return tuple(
        idx[(bit_a == i) & (bit_b == j)] for i in (0, 1) for j in (0, 1)
    )


def _apply_gate(amps: np.ndarray, n: int, gate: Gate) -> None:
    _check_qubits(n, gate.qubits)
    if gate.kind == "ry":
        (q,), (theta,) = gate.qubits, gate.params
        c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
        _apply_single(amps, n, q, np.array([[c, -s], [s, c]], dtype=np.complex128))
    elif gate.kind == "rz":
        (q,), (theta,) = gate.qubits, gate.params
        view = amps.reshape(1 << (n - 1 - q), 2, 1 << q)
        view[:, 0, :] *= np.exp(-0.5j * theta)
        view[:, 1, :] *= np.exp(0.5j * theta)
    elif gate.kind == "x":
        (q,) = gate.qubits
        view = amps.reshape(1 << (n - 1 - q), 2, 1 << q)
        view[:, [0, 1], :] = view[:, [1, 0], :]
    elif gate.kind == "cnot":
        control, target = gate.qubits
        _, _, i10, i11 = _pair_indices(n, control, target)
        tmp = amps[i10].copy()
        amps[i10] = amps[i11]
        amps[i11] = tmp
    elif gate.kind == "cz":
        a, b = gate.qubits
        _, _, _, i11 = _pair_indices(n, a, b)
        amps[i11] *= -1.0
    elif gate.kind == "givens":
        a, b = gate.qubits
        theta, phi = gate.params
        _, i01, i10, _ = _pair_indices(n, a, b)
        c, s = math.cos(theta), math.sin(theta)
        a01 = amps[i01].copy()
        a10 = amps[i10]
        amps[i01] = c * a01 + s * np.exp(1j * phi) * a10
        amps[i10] = s * np.exp(-1j * phi) * a01 - c * a10
    else:  # pragma: no cover - guarded by Gate validation
        raise ValueError(f"unknown gate kind {gate.kind!r}")


def apply_circuit(state: StateVector, gates: Sequence[Gate]) -> StateVector:
    """Apply gates in order; returns a new normalized state."""
    amps = state.amplitudes.copy()
    for gate in gates:
        _apply_gate(amps, state.n_qubits, gate)
    return StateVector(state.n_qubits, amps)


class CircuitProgram:
    """Pre-resolved replay of a fixed gate layout for many parameter vectors.

    Compiled from (kind, qubits, parameter-slot) rows as produced by the
    ansatz template; index arrays and reshape factors are resolved once so the
    per-evaluation cost is the raw numpy arithmetic.
    """

    def __init__(self, n_qubits: int, ops: Sequence[tuple[str, tuple[int, ...], tuple[int, ...]]]):
        self.n_qubits = n_qubits
        self._ops = []
        for kind, qubits, slots in ops:
            _check_qubits(n_qubits, qubits)
            if kind in ("ry", "rz", "x"):
                q = qubits[0]
                shape = (1 << (n_qubits - 1 - q), 2, 1 << q)
                self._ops.append((kind, shape, slots))
            elif kind == "cnot":
                _, _, i10, i11 = _pair_indices(n_qubits, *qubits)
                self._ops.append((kind, (i10, i11), slots))
            elif kind == "cz":
                self._ops.append((kind, _pair_indices(n_qubits, *qubits)[3], slots))
            elif kind == "givens":
                _, i01, i10, _ = _pair_indices(n_qubits, *qubits)
                self._ops.append((kind, (i01, i10), slots))
            else:
                raise ValueError(f"unknown gate kind {kind!r}")

    def run(self, params: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
        """Amplitudes of the prepared state; ``out`` may be reused across calls."""
        if out is None:
            out = np.empty(1 << self.n_qubits, dtype=np.complex128)
        amps = out
        amps[:] = 0.0
        amps[0] = 1.0
        for kind, data, slots in self._ops:
            if kind == "ry":
                half = 0.5 * params[slots[0]]
                c, s = math.cos(half), math.sin(half)
                view = amps.reshape(data)
                a0 = view[:, 0, :].copy()
                a1 = view[:, 1, :]
                view[:, 0, :] = c * a0 - s * a1
                view[:, 1, :] = s * a0 + c * a1
            elif kind == "rz":
                half = 0.5 * params[slots[0]]
                view = amps.reshape(data)
                view[:, 0, :] *= complex(math.cos(half), -math.sin(half))
                view[:, 1, :] *= complex(math.cos(half), math.sin(half))
            elif kind == "cz":
                amps[data] *= -1.0
            elif kind == "x":
                view = amps.reshape(data)
                view[:, [0, 1], :] = view[:, [1, 0], :]
            elif kind == "cnot":
                i10, i11 = data
                tmp = amps[i10].copy()
                amps[i10] = amps[i11]
                amps[i11] = tmp
            else:
                i01, i10 = data
                theta, phi = params[slots[0]], params[slots[1]]
                c, s = math.cos(theta), math.sin(theta)
                phase = complex(math.cos(phi), math.sin(phi))
                a01 = amps[i01].copy()
                a10 = amps[i10]
                amps[i01] = c * a01 + s * phase * a10
                amps[i10] = s * np.conj(phase) * a01 - c * a10
        return amps


def permute_state(state: StateVector, p: Permutation) -> StateVector:
    """Relabel qubits of a state: the bit at qubit i moves to qubit p(i)."""
    n = state.n_qubits
    if p.n != n:
        raise ValueError(f"permutation on {p.n} indices vs {n}-qubit state")
    idx = np.arange(1 << n)
    new_idx = np.zeros_like(idx)
    for i in range(n):
        new_idx |= ((idx >> i) & 1) << p.map[i]
    out = np.empty_like(state.amplitudes)
    out[new_idx] = state.amplitudes
    return StateVector(n, out)


# ---------------------------------------------------------------------------
# Expectation values
# ---------------------------------------------------------------------------


if numba is not None:

    @numba.njit(cache=True)
    def _expectation_kernel(targets, weights, amps):  # pragma: no cover
        acc = 0.0
        n_groups, dim = targets.shape
        for k in range(n_groups):
            for b in range(dim):
                acc += (amps[targets[k, b]].conjugate() * weights[k, b] * amps[b]).real
        return acc


class _CompiledSum:
    """Gather/phase tables for fast <psi|H|psi> evaluation, grouped by x-mask."""

    def __init__(self, h: PauliSum):
        n = h.n_qubits
        idx = np.arange(1 << n)
        groups: dict[int, np.ndarray] = {}
        for term in h.terms:
            x_mask, zlike, n_y = term.masks()
            signs = 1.0 - 2.0 * (np.bitwise_count(idx & zlike) & 1).astype(np.float64)
            w = term.coefficient * (1j ** (n_y % 4)) * signs
            if x_mask in groups:
                groups[x_mask] = groups[x_mask] + w
            else:
                groups[x_mask] = w.astype(np.complex128)
        x_masks = sorted(groups)
        self.targets = np.vstack([idx ^ x for x in x_masks]) if x_masks else np.zeros((0, 1 << n), dtype=np.int64)
        self.weights = np.vstack([groups[x] for x in x_masks]) if x_masks else np.zeros((0, 1 << n), dtype=np.complex128)

    def expectation(self, amps: np.ndarray) -> float:
        if self.weights.shape[0] == 0:
            return 0.0
        if numba is not None:
            return float(_expectation_kernel(self.targets, self.weights, amps))
        gathered = np.conj(amps)[self.targets]
        gathered *= self.weights
        return float(np.real(gathered @ amps).sum())


def _compiled(h: PauliSum) -> _CompiledSum:
    cache = getattr(h, "_compiled_sum", None)
    if cache is None:
        cache = _CompiledSum(h)
        object.__setattr__(h, "_compiled_sum", cache)
    return cache


def expectation(state: StateVector, h: PauliSum) -> float:
    """Exact <psi|H|psi>; real because coefficients are real."""
    if state.n_qubits != h.n_qubits:
        raise ValueError(
            f"state on {state.n_qubits} qubits vs sum on {h.n_qubits} qubits"
        )
    return _compiled(h).expectation(state.amplitudes)


def expectation_amplitudes(amps: np.ndarray, h: PauliSum) -> float:
    """Expectation for a raw amplitude array (hot path, no norm validation)."""
    return _compiled(h).expectation(amps)


def reduced_density_matrix(state: StateVector, qubits: Sequence[int]) -> np.ndarray:
    """Partial-trace RDM of 1 or 2 qubits.

    For two qubits (i, j) the returned 4x4 matrix uses basis index 2*b_i + b_j,
    i.e. the first listed qubit is the more significant bit.
    """
    qubits = tuple(qubits)
    if len(qubits) not in (1, 2):
        raise ValueError(f"expected 1 or 2 qubits, got {len(qubits)}")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit indices {qubits}")
    n = state.n_qubits
    _check_qubits(n, qubits)
    tensor = state.amplitudes.reshape([2] * n)
    # axis of qubit q in the reshaped tensor is n - 1 - q
    front = np.moveaxis(tensor, [n - 1 - q for q in qubits], range(len(qubits)))
    k = len(qubits)
    mat = front.reshape(1 << k, 1 << (n - k))
    rho = mat @ mat.conj().T
    return (rho + rho.conj().T) / 2.0


# ---------------------------------------------------------------------------
# Shot-based estimation with stochastic Pauli errors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate Pauli error rates and the shot budget for word estimation.

    After every gate, each touched qubit independently suffers a uniformly
    random non-identity Pauli with probability p1 (one-qubit gates) or p2
    (per qubit of two-qubit gates).
    """

    p1: float
    p2: float
    shots: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p1 <= 1.0 or not 0.0 <= self.p2 <= 1.0:
            raise ValueError("error probabilities must lie in [0, 1]")
        if self.shots < 1:
            raise ValueError(f"shots must be positive, got {self.shots}")


_PAULI_1Q = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

_MAX_TRAJECTORY_POOL = 1024


class _CompiledWords:
    """Per-word gather masks and phase rows for single-word expectations."""

    def __init__(self, h: PauliSum):
        n = h.n_qubits
        idx = np.arange(1 << n)
        ident = "I" * n
        self.constant = 0.0
        coeffs = []
        by_mask: dict[int, list[tuple[int, np.ndarray]]] = {}
        w = 0
        for term in h.terms:
            if term.word == ident:
                self.constant += term.coefficient
                continue
            x_mask, zlike, n_y = term.masks()
            signs = 1.0 - 2.0 * (np.bitwise_count(idx & zlike) & 1).astype(np.float64)
            phase = (1j ** (n_y % 4)) * signs
            by_mask.setdefault(x_mask, []).append((w, phase))
            coeffs.append(term.coefficient)
            w += 1
        self.n_words = w
        self.coefficients = np.array(coeffs, dtype=np.float64)
        self.groups = [
            (x, np.array([i for i, _ in rows]), np.vstack([ph for _, ph in rows]))
            for x, rows in sorted(by_mask.items())
        ]
        self.index = idx

    def word_expectations(self, amps: np.ndarray) -> np.ndarray:
        """<psi|w|psi> for every non-identity word, in compiled order."""
        out = np.empty(self.n_words, dtype=np.float64)
        conj = np.conj(amps)
        for x_mask, word_ids, phases in self.groups:
            overlap = conj[self.index ^ x_mask] * amps
            out[word_ids] = np.real(phases @ overlap)
        return out


def _compiled_words(h: PauliSum) -> _CompiledWords:
    cache = getattr(h, "_compiled_words", None)
    if cache is None:
        cache = _CompiledWords(h)
        object.__setattr__(h, "_compiled_words", cache)
    return cache


def _error_sites(gates: Sequence[Gate], noise: NoiseModel) -> tuple[np.ndarray, np.ndarray, float]:
    """Flattened (gate index, qubit) error sites, their rates, and the
    probability that a trajectory suffers at least one error."""
    gate_ids = []
    qubits = []
    rates = []
    for g_idx, g in enumerate(gates):
        p = noise.p1 if len(g.qubits) == 1 else noise.p2
        for q in g.qubits:
            gate_ids.append(g_idx)
            qubits.append(q)
            rates.append(p)
    rates_arr = np.array(rates, dtype=np.float64)
    if rates_arr.size == 0 or np.all(rates_arr == 0.0):
        return np.array(gate_ids), np.array(qubits), 0.0
    if np.any(rates_arr >= 1.0):
        return np.array(gate_ids), np.array(qubits), 1.0
    p_err = float(-np.expm1(np.sum(np.log1p(-rates_arr))))
    return np.array(gate_ids), np.array(qubits), min(max(p_err, 0.0), 1.0)


def _noisy_trajectory(
    gates: Sequence[Gate],
    n: int,
    fires: np.ndarray,
    gate_ids: np.ndarray,
    site_qubits: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Simulate one trajectory with Pauli injections at the fired sites."""
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    fired_by_gate: dict[int, list[int]] = {}
    for site in np.flatnonzero(fires):
        fired_by_gate.setdefault(int(gate_ids[site]), []).append(int(site_qubits[site]))
    for g_idx, g in enumerate(gates):
        _apply_gate(amps, n, g)
        for q in fired_by_gate.get(g_idx, ()):
            _apply_single(amps, n, q, _PAULI_1Q[rng.integers(3)])
    return amps


def noisy_expectation(
    state_prep: Sequence[Gate],
    h: PauliSum,
    noise: NoiseModel,
    rng: np.random.Generator | None = None,
    pool_cap: int = _MAX_TRAJECTORY_POOL,
) -> tuple[float, float]:
    """Monte-Carlo estimate of <H> under per-gate Pauli noise and finite shots.

    Every non-identity Pauli word is estimated from ``noise.shots`` one-shot
    eigenvalue samples taken in the word's measurement basis; the mean is the
    coefficient-weighted combination and the standard error is propagated from
    the per-word binomial variance. Deterministic for a fixed seed. Error
    trajectories are drawn from a bounded pool that is shared across words
    within a single evaluation.
    """
    n = h.n_qubits
    _check_qubits(n, [q for g in state_prep for q in g.qubits])
    if rng is None:
        rng = np.random.default_rng(noise.seed)
    words = _compiled_words(h)
    gate_ids, site_qubits, p_err = _error_sites(state_prep, noise)
    rates = np.array(
        [noise.p1 if len(g.qubits) == 1 else noise.p2 for g in state_prep for _ in g.qubits]
    )

    clean = apply_circuit(StateVector.zero(n), state_prep).amplitudes
    e_clean = words.word_expectations(clean)

    pool_expectations = None
    n_pool = 0
    if p_err > 0.0:
        expected_err = noise.shots * p_err
        n_pool = int(min(pool_cap, max(8, math.ceil(expected_err))))
        pool_expectations = np.empty((n_pool, words.n_words), dtype=np.float64)
        for k in range(n_pool):
            while True:
                fires = rng.random(rates.size) < rates
                if fires.any():
                    break
            amps = _noisy_trajectory(state_prep, n, fires, gate_ids, site_qubits, rng)
            pool_expectations[k] = words.word_expectations(amps)

    shots = noise.shots
    estimates = np.empty(words.n_words, dtype=np.float64)
    for w in range(words.n_words):
        n_err = int(rng.binomial(shots, p_err)) if p_err > 0.0 else 0
        n_clean = shots - n_err
        p_plus = np.clip((1.0 + e_clean[w]) / 2.0, 0.0, 1.0)
        plus = int(rng.binomial(n_clean, p_plus)) if n_clean > 0 else 0
        if n_err > 0:
            counts = rng.multinomial(n_err, np.full(n_pool, 1.0 / n_pool))
            p_plus_pool = np.clip((1.0 + pool_expectations[:, w]) / 2.0, 0.0, 1.0)
            plus += int(rng.binomial(counts, p_plus_pool).sum())
        estimates[w] = (2.0 * plus - shots) / shots

    variances = np.maximum(0.0, 1.0 - estimates**2) / shots
    mean = words.constant + float(words.coefficients @ estimates)
    stderr = float(np.sqrt(np.sum(words.coefficients**2 * variances)))
    return mean, stderr
