"""Layered variational circuit builders.

Three families over a linear qubit chain:

* ``ryrz``: per depth layer, Ry+Rz rotations on every qubit followed by a
  ladder of CZ entanglers on the chain pairs (i, i+1), closed by one final
  Ry+Rz rotation layer. CZ keeps the layer's entanglers mutually commuting,
  so each layer widens the interaction light cone by exactly one chain edge.
* ``ry``: the same with all Rz gates removed and a final Ry layer.
* ``particle_preserving``: X gates preparing the reference occupation, then
  per depth layer a brickwork of two-parameter excitation-conserving
  entanglers (even-pair sweep, then odd-pair sweep).

Depth L counts the rotation+entangle (or brickwork) layers only; the final
rotation layer and the occupation X-layer are excluded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pauli import Permutation
from .simulator import Gate

FAMILIES = ("ryrz", "ry", "particle_preserving")

Pair = tuple[int, int]
Layers = list[list[Pair]]


@dataclass(frozen=True)
class AnsatzSpec:
    family: str
    n_qubits: int
    depth: int
    hf_bits: tuple[int, ...] | None = None
    prune: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown ansatz family {self.family!r}")
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        if self.depth < 0:
            raise ValueError(f"depth must be nonnegative, got {self.depth}")
        if self.family == "particle_preserving":
            if self.depth < 1:
                raise ValueError("particle_preserving requires depth >= 1")
            if self.hf_bits is None:
                raise ValueError("particle_preserving requires hf_bits")
        if self.hf_bits is not None:
            bits = tuple(int(b) for b in self.hf_bits)
            if len(bits) != self.n_qubits:
                raise ValueError(
                    f"hf_bits length {len(bits)} does not match n_qubits {self.n_qubits}"
                )
            if any(b not in (0, 1) for b in bits):
                raise ValueError("hf_bits must be 0/1")
            object.__setattr__(self, "hf_bits", bits)


def brickwork_pairs(n_qubits: int) -> tuple[list[Pair], list[Pair]]:
    even = [(i, i + 1) for i in range(0, n_qubits - 1, 2)]
    odd = [(i, i + 1) for i in range(1, n_qubits - 1, 2)]
    return even, odd


def particle_layout(n_qubits: int, depth: int) -> Layers:
    """Unpruned brickwork: each layer is the even sweep then the odd sweep."""
    even, odd = brickwork_pairs(n_qubits)
    return [list(even) + list(odd) for _ in range(depth)]


def prune_ineffective(layers: Layers, hf_bits: Sequence[int]) -> Layers:
    """Drop entanglers that can only ever see |00> or |11>.

    Deterministic forward pass: every qubit starts with the definite
    occupation given by hf_bits. An entangler whose two inputs are definite
    and equal is removed (it acts as the identity there); a retained entangler
    makes both of its qubits indefinite.
    """
    occ: list[int | None] = [int(b) for b in hf_bits]
    pruned: Layers = []
    for layer in layers:
        kept: list[Pair] = []
        for a, b in layer:
            if occ[a] is not None and occ[a] == occ[b]:
                continue
            kept.append((a, b))
            occ[a] = occ[b] = None
        pruned.append(kept)
    return pruned


def retained_depth(layers: Layers) -> int:
    """Number of layers still carrying at least one entangler."""
    return sum(1 for layer in layers if layer)


def _entangler_layers(spec: AnsatzSpec) -> Layers:
    layers = particle_layout(spec.n_qubits, spec.depth)
    if spec.prune:
        layers = prune_ineffective(layers, spec.hf_bits)
    return layers


def parameter_count(spec: AnsatzSpec) -> int:
    n, depth = spec.n_qubits, spec.depth
    if spec.family == "ryrz":
        return 2 * n * (depth + 1)
    if spec.family == "ry":
        return n * (depth + 1)
    return 2 * sum(len(layer) for layer in _entangler_layers(spec))


GateTemplate = tuple[str, tuple[int, ...], tuple[int, ...]]


def template(spec: AnsatzSpec) -> list[GateTemplate]:
    """Gate layout as (kind, qubits, parameter slots) rows."""
    n = spec.n_qubits
    ops: list[GateTemplate] = []
    k = 0

    if spec.family in ("ryrz", "ry"):
        with_rz = spec.family == "ryrz"
        if spec.hf_bits is not None:
            for q, bit in enumerate(spec.hf_bits):
                if bit:
                    ops.append(("x", (q,), ()))

        def rotation_layer():
            nonlocal k
            for q in range(n):
                ops.append(("ry", (q,), (k + q,)))
            k += n
            if with_rz:
                for q in range(n):
                    ops.append(("rz", (q,), (k + q,)))
                k += n

        for _ in range(spec.depth):
            rotation_layer()
            for q in range(n - 1):
                ops.append(("cz", (q, q + 1), ()))
        rotation_layer()
        return ops

    for q, bit in enumerate(spec.hf_bits):
        if bit:
            ops.append(("x", (q,), ()))
    for layer in _entangler_layers(spec):
        for a, b in layer:
            ops.append(("givens", (a, b), (k, k + 1)))
            k += 2
    return ops


def build(spec: AnsatzSpec, params: Sequence[float]) -> list[Gate]:
    """Materialize the gate list for a parameter vector."""
    params = np.asarray(params, dtype=np.float64)
    expected = parameter_count(spec)
    if params.shape != (expected,):
        raise ValueError(f"expected {expected} parameters, got shape {params.shape}")
    return [
        Gate(kind, qubits, tuple(float(params[s]) for s in slots))
        for kind, qubits, slots in template(spec)
    ]


def random_parameters(spec: AnsatzSpec, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(-np.pi, np.pi, size=parameter_count(spec))


def pad_parameters(spec_from: AnsatzSpec, params: Sequence[float], spec_to: AnsatzSpec) -> np.ndarray:
    """Embed a shallower circuit's optimum into a deeper parameter vector.

    New depth layers are prepended with zero angles: rotations at zero are the
    identity, the CZ ladder fixes |0...0>, and a zero-angle entangler layer
    only rephases the reference basis state, so the deeper circuit starts out
    preparing exactly the shallower circuit's state.
    """
    if spec_from.family != spec_to.family or spec_from.n_qubits != spec_to.n_qubits:
        raise ValueError("parameter padding requires matching family and width")
    if spec_to.depth < spec_from.depth:
        raise ValueError("target depth must not shrink")
    if spec_from.family == "particle_preserving" and (spec_from.prune or spec_to.prune):
        raise ValueError("parameter padding is undefined for pruned layouts")
    params = np.asarray(params, dtype=np.float64)
    if params.shape != (parameter_count(spec_from),):
        raise ValueError("parameter vector does not match source spec")
    extra = parameter_count(spec_to) - parameter_count(spec_from)
    return np.concatenate([np.zeros(extra), params])


def permute_parameters(spec: AnsatzSpec, params: Sequence[float], p: Permutation) -> np.ndarray | None:
    """Re-index qubit-local rotation angles under a qubit relabeling.

    Entangler parameters of the particle-preserving family are pair-local and
    do not transport across a relabeled brickwork; None is returned there and
    callers fall back to a fresh start.
    """
    if spec.family == "particle_preserving":
        return None
    if p.n != spec.n_qubits:
        raise ValueError(f"permutation on {p.n} indices vs {spec.n_qubits}-qubit ansatz")
    params = np.asarray(params, dtype=np.float64)
    n = spec.n_qubits
    rows = params.reshape(-1, n)
    out = np.empty_like(rows)
    out[:, list(p.map)] = rows
    return out.reshape(-1)
