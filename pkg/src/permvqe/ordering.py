"""Qubit-ordering solvers: exhaustive search and the spectral (Fiedler) method.

Both return the permutation p to apply to the current labels, i.e. qubit i is
relabeled to p(i), together with the cost before and after relabeling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .entanglement import ConnectivityDistance, EntanglementMap, cost
from .pauli import Permutation

BRUTE_FORCE_CAP = 10

_CHUNK = 40320  # 8! permutations per vectorized batch

#: couplings below this do not connect components of the correlation graph
_COMPONENT_TOL = 1e-12

#: an eigenvalue gap below this marks a degenerate Fiedler problem
_DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class OrderingResult:
    permutation: Permutation
    cost_before: float
    cost_after: float
    method: str
    degenerate: bool = False

    def to_json_dict(self) -> dict:
        return {
            "permutation": list(self.permutation.map),
            "cost_before": self.cost_before,
            "cost_after": self.cost_after,
            "method": self.method,
            "degenerate": self.degenerate,
        }


def graph_laplacian(emap: EntanglementMap) -> np.ndarray:
    """L = D - I with D the diagonal of row sums; rows sum to zero."""
    return np.diag(emap.matrix.sum(axis=1)) - emap.matrix


def _pair_weights(emap: EntanglementMap) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(emap.n, k=1)
    w = emap.matrix[iu, ju]
    keep = w != 0.0
    return iu[keep], ju[keep], w[keep]


def brute_force_order(
    emap: EntanglementMap, conn: ConnectivityDistance, cap: int = BRUTE_FORCE_CAP
) -> OrderingResult:
    """Global minimum of the relabeling cost over all n! permutations.

    Ties resolve to the lexicographically smallest permutation map. Candidates
    are evaluated in chunks partitioned by permutation prefix, so the result
    is independent of the evaluation schedule.
    """
    n = emap.n
    if n > cap:
        raise ValueError(f"brute force capped at n={cap}, got n={n}")
    before = cost(emap, conn)
    iu, ju, w = _pair_weights(emap)
    if w.size == 0:
        return OrderingResult(Permutation.identity(n), before, before, "brute_force")

    best_cost = np.inf
    best_perm: tuple[int, ...] | None = None
    perm_iter = itertools.permutations(range(n))
    while True:
        chunk = np.array(list(itertools.islice(perm_iter, _CHUNK)), dtype=np.int64)
        if chunk.size == 0:
            break
        dist = np.abs(chunk[:, iu] - chunk[:, ju]).astype(np.float64)
        costs = (dist**conn.beta) @ w
        k = int(np.argmin(costs))
        # strict < keeps the first (lexicographically smallest) minimizer
        if costs[k] < best_cost:
            best_cost = float(costs[k])
            best_perm = tuple(int(v) for v in chunk[k])
    assert best_perm is not None
    return OrderingResult(Permutation(best_perm), before, best_cost, "brute_force")


def _connected_components(matrix: np.ndarray) -> list[list[int]]:
    n = matrix.shape[0]
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in np.flatnonzero(np.abs(matrix[v]) > _COMPONENT_TOL):
                if not seen[u]:
                    seen[int(u)] = True
                    stack.append(int(u))
        components.append(sorted(comp))
    return components


def _component_order(matrix: np.ndarray, nodes: list[int]) -> list[int]:
    """Order one connected component by its own Fiedler vector.

    Both sort directions are tried; the one with the lower internal
    linear-chain cost wins. Equal vector entries keep original index order.
    """
    if len(nodes) <= 2:
        return nodes
    sub = matrix[np.ix_(nodes, nodes)]
    lap = np.diag(sub.sum(axis=1)) - sub
    _, vecs = np.linalg.eigh(lap)
    fiedler = vecs[:, 1]
    local = np.arange(len(nodes))
    asc = np.lexsort((local, fiedler))
    desc = np.lexsort((local, -fiedler))

    def chain_cost(order: np.ndarray) -> float:
        pos = np.empty(len(nodes), dtype=np.int64)
        pos[order] = np.arange(len(nodes))
        iu, ju = np.triu_indices(len(nodes), k=1)
        d = np.abs(pos[iu] - pos[ju]).astype(np.float64)
        return float((d**2) @ sub[iu, ju])

    order = asc if chain_cost(asc) <= chain_cost(desc) else desc
    return [nodes[i] for i in order]


def fiedler_order(emap: EntanglementMap, conn: ConnectivityDistance) -> OrderingResult:
    """Spectral ordering from the Laplacian eigenvector of the second-smallest
    eigenvalue.

    Disconnected correlation graphs make that eigenvalue degenerate; each
    component is then ordered by its own Fiedler vector and components are
    concatenated in descending total-weight order, with the result flagged
    degenerate.
    """
    n = emap.n
    before = cost(emap, conn)
    lap = graph_laplacian(emap)
    components = _connected_components(emap.matrix)

    if len(components) == 1:
        vals = np.linalg.eigvalsh(lap)
        degenerate = n > 1 and vals[1] < _DEGENERACY_TOL
        ordered = _component_order(emap.matrix, components[0])
    else:
        degenerate = True
        weights = [float(emap.matrix[np.ix_(c, c)].sum()) for c in components]
        by_weight = sorted(
            range(len(components)), key=lambda k: (-weights[k], components[k][0])
        )
        ordered = []
        for k in by_weight:
            ordered.extend(_component_order(emap.matrix, components[k]))

    pmap = [0] * n
    for position, qubit in enumerate(ordered):
        pmap[qubit] = position
    candidates = [Permutation(tuple(pmap)), Permutation(tuple(n - 1 - v for v in pmap))]
    after = [cost(emap.permuted(p), conn) for p in candidates]
    pick = int(np.argmin(after))
    return OrderingResult(candidates[pick], before, float(after[pick]), "fiedler", degenerate)
