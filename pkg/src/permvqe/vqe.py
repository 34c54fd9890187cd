"""Variational ground-state optimization and the outer permutation loop.

:func:`minimize` runs multi-start derivative-free optimization (COBYLA by
default, Nelder-Mead as a configurable fallback) of a layered ansatz against a
Pauli-sum Hamiltonian on the exact statevector. :func:`permvqe` iterates
optimize -> entanglement map -> reorder -> re-optimize until the proposed
relabeling stops paying off. :func:`delta_e_curve` produces energy-error rows
against the dense-diagonalization reference, optionally re-evaluated under a
shot/Pauli-error noise model.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
import scipy.optimize

try:
    import numba
except ImportError:  # pragma: no cover - plain numpy fallback
    numba = None

from . import ansatz as ansatz_mod
from .ansatz import AnsatzSpec
from .entanglement import ConnectivityDistance, EntanglementMap, cost, mutual_information_map
from .ordering import BRUTE_FORCE_CAP, OrderingResult, brute_force_order, fiedler_order
from .pauli import PauliSum, apply_permutation, ground_state
from .simulator import (
    CircuitProgram,
    NoiseModel,
    StateVector,
    apply_circuit,
    expectation,
    expectation_amplitudes,
    noisy_expectation,
)

HARTREE_TO_KCAL = 627.5094740631

OPTIMIZERS = ("cobyla", "nelder-mead")

#: relative cost improvement below this ends the outer loop
RELATIVE_COST_THRESHOLD = 0.01

#: maps with less total weighted correlation than this carry no usable signal
COST_FLOOR = 1e-9

#: trust-region radius at which the optimizer stops
OPTIMIZER_TOL = 1e-8


@dataclass(frozen=True)
class VqeConfig:
    ansatz: AnsatzSpec
    max_evals: int = 10000
    trials: int = 5
    seed: int = 0
    energy_tol: float = 1e-6
    optimizer: str = "cobyla"

    def __post_init__(self):
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be positive, got {self.max_evals}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(f"unknown optimizer {self.optimizer!r}; expected {OPTIMIZERS}")


@dataclass(frozen=True)
class VqeResult:
    energy: float
    params: np.ndarray
    evals_used: int
    trial_index: int
    stderr: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "energy": self.energy,
            "params": [float(v) for v in self.params],
            "evals_used": self.evals_used,
            "trial_index": self.trial_index,
            "stderr": self.stderr,
        }


if numba is not None:

    @numba.njit(cache=True)
    def _rotation_kernel(params, n, depth, with_rz, signs, start, amps):  # pragma: no cover
        dim = 1 << n
        for i in range(dim):
            amps[i] = 0.0
        amps[start] = 1.0
        k = 0
        for layer in range(depth + 1):
            for q in range(n):
                half = 0.5 * params[k + q]
                c = math.cos(half)
                s = math.sin(half)
                step = 1 << q
                for base in range(0, dim, step << 1):
                    for off in range(base, base + step):
                        a0 = amps[off]
                        a1 = amps[off + step]
                        amps[off] = c * a0 - s * a1
                        amps[off + step] = s * a0 + c * a1
            k += n
            if with_rz:
                for q in range(n):
                    half = 0.5 * params[k + q]
                    e0 = complex(math.cos(half), -math.sin(half))
                    e1 = complex(math.cos(half), math.sin(half))
                    step = 1 << q
                    for base in range(0, dim, step << 1):
                        for off in range(base, base + step):
                            amps[off] *= e0
                            amps[off + step] *= e1
                k += n
            if layer < depth:
                for i in range(dim):
                    amps[i] *= signs[i]
        return amps


class _RotationFamilyProgram:
    """Layer-batched replay of the ryrz/ry layout.

    Each rotation layer is applied as two half-register matrices built by
    Kronecker chains (one matmul per half), and each commuting-entangler
    ladder is a single precomputed diagonal sign flip, which keeps the numpy
    call count per evaluation independent of the qubit count. A jitted kernel
    replaces the numpy path when numba is importable.
    """

    def __init__(self, spec: AnsatzSpec):
        if spec.family not in ("ryrz", "ry"):
            raise ValueError("rotation-family program expects ryrz or ry")
        self.n = spec.n_qubits
        self.depth = spec.depth
        self.with_rz = spec.family == "ryrz"
        self.rot_per_layer = (2 if self.with_rz else 1) * self.n
        self.lo = self.n // 2
        self.hi = self.n - self.lo
        idx = np.arange(1 << self.n)
        adjacent = idx & (idx >> 1) & ((1 << (self.n - 1)) - 1)
        self.ladder_signs = 1.0 - 2.0 * (np.bitwise_count(adjacent) & 1).astype(np.float64)
        self.start = 0
        if spec.hf_bits is not None:
            for q, bit in enumerate(spec.hf_bits):
                self.start |= bit << q

    def _layer_matrices(self, params: np.ndarray, k: int) -> np.ndarray:
        n = self.n
        theta = params[k : k + n]
        c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
        mats = np.empty((n, 2, 2), dtype=np.complex128)
        mats[:, 0, 0] = c
        mats[:, 0, 1] = -s
        mats[:, 1, 0] = s
        mats[:, 1, 1] = c
        if self.with_rz:
            phase = np.exp(-0.5j * params[k + n : k + 2 * n])
            mats[:, 0, :] *= phase[:, None]
            mats[:, 1, :] *= np.conj(phase)[:, None]
        return mats

    @staticmethod
    def _kron2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        # broadcasting kron; np.kron's generic path is far slower on 2x2 blocks
        ra, ca = a.shape
        rb, cb = b.shape
        return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)

    def _apply_layer(self, amps: np.ndarray, mats: np.ndarray) -> np.ndarray:
        u_hi = mats[self.n - 1]
        for q in range(self.n - 2, self.lo - 1, -1):
            u_hi = self._kron2(u_hi, mats[q])
        block = amps.reshape(1 << self.hi, 1 << self.lo)
        if self.lo == 0:
            return (u_hi @ block).reshape(-1)
        u_lo = mats[self.lo - 1]
        for q in range(self.lo - 2, -1, -1):
            u_lo = self._kron2(u_lo, mats[q])
        return (u_hi @ block @ u_lo.T).reshape(-1)

    def run(self, params: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
        if numba is not None:
            if out is None:
                out = np.empty(1 << self.n, dtype=np.complex128)
            return _rotation_kernel(
                np.ascontiguousarray(params, dtype=np.float64),
                self.n, self.depth, self.with_rz, self.ladder_signs, self.start, out,
            )
        return self.run_numpy(params)

    def run_numpy(self, params: np.ndarray) -> np.ndarray:
        """Pure-numpy path, kept for cross-checking the jitted kernel."""
        amps = np.zeros(1 << self.n, dtype=np.complex128)
        amps[self.start] = 1.0
        k = 0
        for _ in range(self.depth):
            amps = self._apply_layer(amps, self._layer_matrices(params, k))
            k += self.rot_per_layer
            amps *= self.ladder_signs
        return self._apply_layer(amps, self._layer_matrices(params, k))


def _make_program(spec: AnsatzSpec):
    if spec.family in ("ryrz", "ry"):
        return _RotationFamilyProgram(spec)
    return CircuitProgram(spec.n_qubits, ansatz_mod.template(spec))


class _Objective:
    """Energy callback with best-seen tracking and optional early stop.

    The circuit layout is compiled once per trial; each call only replays the
    parameterized gate arithmetic. Once the target is reached the callback
    stops simulating and returns a flat penalty, which lets the optimizer wind
    down without raising through its Fortran layers; poisoned calls are not
    counted as evaluations.
    """

    _POISON = 1e30

    def __init__(self, h, spec, target=None, tol=0.0, noise=None, rng=None):
        self.h = h
        self.spec = spec
        self.target = target
        self.tol = tol
        self.noise = noise
        self.rng = rng
        self.evals = 0
        self.stopped = False
        self.best_fun = np.inf
        self.best_x = None
        self._program = _make_program(spec)
        self._scratch = np.empty(1 << spec.n_qubits, dtype=np.complex128)

    def __call__(self, params: np.ndarray) -> float:
        if self.stopped:
            return self._POISON
        if self.noise is None:
            amps = self._program.run(params, out=self._scratch)
            value = expectation_amplitudes(amps, self.h)
        else:
            value, _ = noisy_expectation(
                ansatz_mod.build(self.spec, params), self.h, self.noise, rng=self.rng
            )
        self.evals += 1
        if value < self.best_fun:
            self.best_fun = value
            self.best_x = np.array(params, dtype=np.float64)
        if self.target is not None and self.best_fun <= self.target + self.tol:
            self.stopped = True
        return value


def _run_optimizer(objective: _Objective, x0: np.ndarray, optimizer: str, max_evals: int) -> None:
    if x0.size == 0:
        objective(x0)
    elif optimizer == "cobyla":
        scipy.optimize.minimize(
            objective, x0, method="COBYLA", tol=OPTIMIZER_TOL,
            options={"maxiter": max_evals},
        )
    else:
        scipy.optimize.minimize(
            objective, x0, method="Nelder-Mead",
            options={"maxfev": max_evals, "xatol": OPTIMIZER_TOL, "fatol": 1e-12},
        )


def _single_trial(
    h: PauliSum,
    cfg: VqeConfig,
    trial: int,
    initial_params: np.ndarray | None,
    target_energy: float | None,
    noise: NoiseModel | None,
) -> tuple[float, np.ndarray, int]:
    rng = np.random.default_rng([cfg.seed, trial])
    if trial == 0 and initial_params is not None:
        x0 = np.asarray(initial_params, dtype=np.float64)
        if x0.shape != (ansatz_mod.parameter_count(cfg.ansatz),):
            raise ValueError("warm-start parameter vector does not match the ansatz")
    else:
        x0 = ansatz_mod.random_parameters(cfg.ansatz, rng)
    noise_rng = np.random.default_rng([noise.seed, cfg.seed, trial]) if noise else None
    objective = _Objective(
        h, cfg.ansatz, target=target_energy, tol=cfg.energy_tol, noise=noise, rng=noise_rng
    )
    _run_optimizer(objective, x0, cfg.optimizer, cfg.max_evals)
    best_x = objective.best_x if objective.best_x is not None else x0
    return objective.best_fun, best_x, objective.evals


def _trial_worker(args) -> tuple[int, float, np.ndarray, int]:
    h, cfg, trial, initial_params, target_energy, noise = args
    fun, x, evals = _single_trial(h, cfg, trial, initial_params, target_energy, noise)
    return trial, fun, x, evals


def minimize(
    h: PauliSum,
    cfg: VqeConfig,
    *,
    initial_params: np.ndarray | None = None,
    target_energy: float | None = None,
    noise: NoiseModel | None = None,
    workers: int = 1,
) -> VqeResult:
    """Best energy over independent optimizer restarts.

    Trial 0 starts from ``initial_params`` when given; all other trials draw
    start angles uniformly from [-pi, pi] with per-trial seeds, so results are
    reproducible for a fixed config regardless of worker scheduling. With
    ``target_energy`` set, trials stop early once the best energy is within
    ``cfg.energy_tol`` of it. A noise model makes the objective the
    shot-sampled noisy mean; the reported energy is then a fresh noisy
    evaluation at the best parameters.
    """
    if cfg.ansatz.n_qubits != h.n_qubits:
        raise ValueError(
            f"ansatz on {cfg.ansatz.n_qubits} qubits vs Hamiltonian on {h.n_qubits}"
        )
    results: list[tuple[int, float, np.ndarray, int]] = []
    if workers > 1 and cfg.trials > 1:
        tasks = [
            (h, cfg, t, initial_params, target_energy, noise) for t in range(cfg.trials)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_worker, tasks))
    else:
        for trial in range(cfg.trials):
            fun, x, evals = _single_trial(h, cfg, trial, initial_params, target_energy, noise)
            results.append((trial, fun, x, evals))
            if target_energy is not None and fun <= target_energy + cfg.energy_tol:
                break

    total_evals = sum(r[3] for r in results)
    best = min(results, key=lambda r: (r[1], r[0]))
    trial_index, _, best_x, _ = best
    if noise is None:
        gates = ansatz_mod.build(cfg.ansatz, best_x)
        energy = expectation(apply_circuit(StateVector.zero(h.n_qubits), gates), h)
        return VqeResult(float(energy), best_x, total_evals, trial_index)
    gates = ansatz_mod.build(cfg.ansatz, best_x)
    mean, stderr = noisy_expectation(
        gates, h, noise, rng=np.random.default_rng([noise.seed, cfg.seed, cfg.trials])
    )
    return VqeResult(float(mean), best_x, total_evals, trial_index, stderr=float(stderr))


def prepare_state(spec: AnsatzSpec, params: np.ndarray) -> StateVector:
    return apply_circuit(StateVector.zero(spec.n_qubits), ansatz_mod.build(spec, params))


def min_depth_to_exact(
    h: PauliSum,
    family: str,
    l_max: int,
    tol: float = 1e-6,
    *,
    trials: int = 10,
    max_evals: int = 10000,
    seed: int = 0,
    hf_bits: tuple[int, ...] | None = None,
    prune: bool = False,
    workers: int = 1,
) -> int | None:
    """Smallest depth whose best-of-trials energy is within tol of exact."""
    e_exact = ground_state(h).energy
    for depth in range(1, l_max + 1):
        spec = AnsatzSpec(family, h.n_qubits, depth, hf_bits=hf_bits, prune=prune)
        cfg = VqeConfig(
            ansatz=spec, max_evals=max_evals, trials=trials, seed=seed, energy_tol=tol
        )
        result = minimize(h, cfg, target_energy=e_exact, workers=workers)
        if result.energy - e_exact <= tol:
            return depth
    return None


# ---------------------------------------------------------------------------
# Outer permutation loop
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermVqeIteration:
    hamiltonian: PauliSum
    ansatz: AnsatzSpec
    vqe: VqeResult
    map: EntanglementMap
    ordering: OrderingResult

    def to_json_dict(self) -> dict:
        return {
            "vqe": self.vqe.to_json_dict(),
            "map": self.map.to_json_dict(),
            "ordering": self.ordering.to_json_dict(),
        }


@dataclass(frozen=True)
class PermVqeResult:
    iterations: tuple[PermVqeIteration, ...]
    final_hamiltonian: PauliSum
    final: VqeResult
    final_ansatz: AnsatzSpec

    def to_json_dict(self) -> dict:
        return {
            "iterations": [it.to_json_dict() for it in self.iterations],
            "final": self.final.to_json_dict(),
            "n_iterations": len(self.iterations),
        }


def solve_ordering(
    emap: EntanglementMap, conn: ConnectivityDistance, method: str = "auto"
) -> OrderingResult:
    """Brute force up to the cap, spectral beyond it."""
    if method == "auto":
        method = "brute_force" if emap.n <= BRUTE_FORCE_CAP else "fiedler"
    if method == "brute_force":
        return brute_force_order(emap, conn)
    if method == "fiedler":
        return fiedler_order(emap, conn)
    raise ValueError(f"unknown ordering method {method!r}")


def permvqe(
    h0: PauliSum,
    cfg: VqeConfig,
    conn: ConnectivityDistance | None = None,
    max_outer: int = 3,
    *,
    ordering_method: str = "auto",
    noise: NoiseModel | None = None,
    noisy_optimization: bool = False,
    workers: int = 1,
) -> PermVqeResult:
    """Iteratively relabel qubits to shorten correlations, re-optimizing each time.

    Each outer iteration optimizes the current Hamiltonian, builds the mutual
    information map of the best state, and solves for the cost-minimizing
    relabeling. The loop stops on an identity proposal, on relative cost
    improvement below 1%, or after ``max_outer`` iterations; rotation angles
    warm-start the next iteration re-indexed by the relabeling. The final
    result is the best energy seen.
    """
    if conn is None:
        conn = ConnectivityDistance()
    opt_noise = noise if (noise is not None and noisy_optimization) else None
    h = h0
    spec = cfg.ansatz
    warm: np.ndarray | None = None
    iterations: list[PermVqeIteration] = []
    for outer in range(max_outer):
        it_cfg = replace(cfg, ansatz=spec, seed=cfg.seed + outer)
        result = minimize(h, it_cfg, initial_params=warm, noise=opt_noise, workers=workers)
        state = prepare_state(spec, result.params)
        emap = mutual_information_map(state)
        ordering = solve_ordering(emap, conn, ordering_method)
        iterations.append(PermVqeIteration(h, spec, result, emap, ordering))

        p = ordering.permutation
        relative_gain = (
            (ordering.cost_before - ordering.cost_after) / ordering.cost_before
            if ordering.cost_before > COST_FLOOR
            else 0.0
        )
        if p.is_identity() or relative_gain < RELATIVE_COST_THRESHOLD:
            break
        h = apply_permutation(h, p)
        warm = ansatz_mod.permute_parameters(spec, result.params, p)
        if spec.hf_bits is not None:
            spec = replace(spec, hf_bits=p.permute_bits(spec.hf_bits))

    best_idx = min(range(len(iterations)), key=lambda i: (iterations[i].vqe.energy, i))
    best_it = iterations[best_idx]
    return PermVqeResult(tuple(iterations), best_it.hamiltonian, best_it.vqe, best_it.ansatz)


# ---------------------------------------------------------------------------
# Energy-error curves
# ---------------------------------------------------------------------------

CURVE_VARIANTS = ("unpermuted", "permuted_exact", "permvqe")


@dataclass(frozen=True)
class CurveRow:
    depth: int
    variant: str
    energy: float
    e_exact: float
    delta_e: float
    delta_e_pc: float | None
    stderr: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "variant": self.variant,
            "energy": self.energy,
            "e_exact": self.e_exact,
            "delta_e": self.delta_e,
            "delta_e_kcal_mol": self.delta_e * HARTREE_TO_KCAL,
            "delta_e_pc": self.delta_e_pc,
            "stderr": self.stderr,
        }


def exact_map_permutation(
    h: PauliSum, conn: ConnectivityDistance | None = None, method: str = "auto"
) -> OrderingResult:
    """Ordering solved on the exact ground state's entanglement map."""
    if conn is None:
        conn = ConnectivityDistance()
    gs = ground_state(h)
    state = StateVector(h.n_qubits, gs.amplitudes)
    return solve_ordering(mutual_information_map(state), conn, method)


def delta_e_curve(
    h: PauliSum,
    family: str,
    depths: list[int],
    variant: str,
    *,
    e_hf: float | None = None,
    hf_bits: tuple[int, ...] | None = None,
    prune: bool = False,
    trials: int = 5,
    max_evals: int = 100000,
    seed: int = 0,
    conn: ConnectivityDistance | None = None,
    max_outer: int = 3,
    noise: NoiseModel | None = None,
    repetitions: int = 10,
    noisy_optimization: bool = False,
    workers: int = 1,
) -> list[CurveRow]:
    """Energy error versus depth for one pipeline variant.

    Noiseless rows report the single best-of-trials energy. With a noise
    model, each depth is repeated ``repetitions`` times with fresh seeds;
    parameters are optimized on the exact statevector and the final energy of
    each repetition is a fresh noisy evaluation (set ``noisy_optimization`` to
    run the optimizer itself on noisy means instead).
    """
    if variant not in CURVE_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected {CURVE_VARIANTS}")
    if conn is None:
        conn = ConnectivityDistance()
    e_exact = ground_state(h).energy
    de_pc = (e_hf - e_exact) if e_hf is not None else None

    h_run = h
    bits_run = hf_bits
    if variant == "permuted_exact":
        ordering = exact_map_permutation(h, conn)
        h_run = apply_permutation(h, ordering.permutation)
        if hf_bits is not None:
            bits_run = ordering.permutation.permute_bits(hf_bits)

    rows: list[CurveRow] = []
    for depth in depths:
        spec = AnsatzSpec(family, h.n_qubits, depth, hf_bits=bits_run, prune=prune)

        def run_once(run_seed: int) -> tuple[AnsatzSpec, PauliSum, VqeResult]:
            cfg = VqeConfig(
                ansatz=spec, max_evals=max_evals, trials=trials, seed=run_seed
            )
            if variant == "permvqe":
                loop = permvqe(
                    h, cfg, conn, max_outer,
                    noise=noise, noisy_optimization=noisy_optimization, workers=workers,
                )
                return loop.final_ansatz, loop.final_hamiltonian, loop.final
            opt_noise = noise if noisy_optimization else None
            res = minimize(h_run, cfg, noise=opt_noise, workers=workers)
            return spec, h_run, res

        if noise is None:
            _, _, res = run_once(seed)
            rows.append(
                CurveRow(depth, variant, res.energy, e_exact, res.energy - e_exact, de_pc)
            )
            continue

        energies = []
        for rep in range(repetitions):
            rep_seed = seed + 1000 * (rep + 1)
            run_spec, run_h, res = run_once(rep_seed)
            gates = ansatz_mod.build(run_spec, res.params)
            rep_noise = replace(noise, seed=noise.seed + rep_seed)
            mean, _ = noisy_expectation(gates, run_h, rep_noise)
            energies.append(mean)
        energies = np.array(energies)
        mean_e = float(energies.mean())
        stderr = float(energies.std(ddof=1) / math.sqrt(len(energies))) if len(energies) > 1 else 0.0
        rows.append(
            CurveRow(depth, variant, mean_e, e_exact, mean_e - e_exact, de_pc, stderr)
        )
    return rows


def curve_rows_to_csv(rows: list[CurveRow]) -> str:
    lines = ["L,variant,delta_e_kcal_mol,stderr_kcal_mol"]
    for r in rows:
        stderr = "" if r.stderr is None else repr(r.stderr * HARTREE_TO_KCAL)
        lines.append(f"{r.depth},{r.variant},{r.delta_e * HARTREE_TO_KCAL!r},{stderr}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Transverse-coupling benchmark Hamiltonians (6 qubits)
# ---------------------------------------------------------------------------


def ising_hamiltonian(n_qubits: int, couplings: list[tuple[float, tuple[int, ...]]]) -> PauliSum:
    """Field term sum_i Z_i plus X-product couplings C * X_{i1} X_{i2} ..."""
    entries: list[tuple[float, list[tuple[int, str]]]] = [
        (1.0, [(i, "Z")]) for i in range(n_qubits)
    ]
    for coeff, qubits in couplings:
        entries.append((coeff, [(q, "X") for q in qubits]))
    return PauliSum.from_ops_list(n_qubits, entries)


def table1_hamiltonians() -> dict[str, PauliSum]:
    """The five 6-qubit benchmark models, 0-based qubit labels."""
    return {
        "H1": ising_hamiltonian(6, [(1.0, (0, 5))]),
        "H2": ising_hamiltonian(6, [(1.0, (0, 5)), (1.0, (1, 4))]),
        "H3": ising_hamiltonian(6, [(1.0, (0, 2, 4))]),
        "H4": ising_hamiltonian(6, [(1.0, (0, 5)), (1.0, (0, 4))]),
        "H5": ising_hamiltonian(6, [(2.0, (0, 1, 4, 5))]),
    }


def ising_depth_table(
    *,
    trials: int = 10,
    max_evals: int = 10000,
    l_max: int = 10,
    tol: float = 1e-6,
    seed: int = 0,
    workers: int = 1,
) -> dict[str, tuple[int | None, int | None]]:
    """Depth to reach the exact energy, unpermuted vs optimally permuted."""
    table: dict[str, tuple[int | None, int | None]] = {}
    for name, h in table1_hamiltonians().items():
        unpermuted = min_depth_to_exact(
            h, "ryrz", l_max, tol, trials=trials, max_evals=max_evals, seed=seed, workers=workers
        )
        ordering = exact_map_permutation(h)
        permuted_h = apply_permutation(h, ordering.permutation)
        permuted = min_depth_to_exact(
            permuted_h, "ryrz", l_max, tol,
            trials=trials, max_evals=max_evals, seed=seed, workers=workers,
        )
        table[name] = (unpermuted, permuted)
    return table
