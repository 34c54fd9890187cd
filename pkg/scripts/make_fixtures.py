#!/usr/bin/env python3
"""Generate the molecular integral fixtures shipped under src/permvqe/fixtures/.

Self-contained electronic-structure tooling (no external chemistry package):

* contracted Cartesian-Gaussian one- and two-electron integrals via the
  McMurchie-Davidson scheme (s and p shells, STO-3G and 6-31G data inlined),
* restricted Hartree-Fock with damping,
* full CI in the Slater-determinant basis (used for the EFCI headers, kept
  deliberately independent of the package's qubit encoders),
* frozen-core reduction for the LiH active space.

Geometries are stationary points of the respective method/basis (see each
builder); bond scans use scipy's scalar minimizer. Run from the repo root:

    python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import hyp1f1

ANGSTROM_TO_BOHR = 1.8897259886

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "src" / "permvqe" / "fixtures"

# ---------------------------------------------------------------------------
# Basis set data (exponents, contraction coefficients for normalized primitives)
# ---------------------------------------------------------------------------

STO3G_H = [
    ("s", [(3.425250914, 0.1543289673), (0.6239137298, 0.5353281423), (0.1688554040, 0.4446345422)]),
]

STO3G_LI = [
    ("s", [(16.11957475, 0.1543289673), (2.936200663, 0.5353281423), (0.7946504870, 0.4446345422)]),
    (
        "sp",
        [
            (0.6362897469, -0.09996722919, 0.1559162750),
            (0.1478600533, 0.3995128261, 0.6076837186),
            (0.0480886784, 0.7001154689, 0.3919573931),
        ],
    ),
]

H_631G = [
    ("s", [(18.73113696, 0.03349460434), (2.825394365, 0.2347269535), (0.6401216923, 0.8137573261)]),
    ("s", [(0.1612777588, 1.0)]),
]

BASIS_LIBRARY = {
    ("H", "sto-3g"): STO3G_H,
    ("Li", "sto-3g"): STO3G_LI,
    ("H", "6-31g"): H_631G,
}

CHARGES = {"H": 1, "Li": 3}


@dataclass
class ContractedGaussian:
    center: np.ndarray
    powers: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms; contracted norm applied later


def _double_factorial(n: int) -> int:
    return 1 if n <= 0 else n * _double_factorial(n - 2)


def _primitive_norm(alpha: float, powers: tuple[int, int, int]) -> float:
    l, m, n = powers
    num = (2 * alpha / math.pi) ** 1.5 * (4 * alpha) ** (l + m + n)
    den = _double_factorial(2 * l - 1) * _double_factorial(2 * m - 1) * _double_factorial(2 * n - 1)
    return math.sqrt(num / den)


def build_basis(atoms: list[tuple[str, np.ndarray]], basis: str) -> list[ContractedGaussian]:
    functions = []
    for symbol, center in atoms:
        for shell in BASIS_LIBRARY[(symbol, basis)]:
            kind, rows = shell[0], shell[1]
            exps = np.array([r[0] for r in rows])
            if kind == "s":
                coefs = np.array([r[1] for r in rows])
                functions.append(_make_function(center, (0, 0, 0), exps, coefs))
            elif kind == "sp":
                s_coefs = np.array([r[1] for r in rows])
                p_coefs = np.array([r[2] for r in rows])
                functions.append(_make_function(center, (0, 0, 0), exps, s_coefs))
                for powers in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    functions.append(_make_function(center, powers, exps, p_coefs))
            else:
                raise ValueError(f"unsupported shell kind {kind}")
    return functions


def _make_function(center, powers, exps, coefs) -> ContractedGaussian:
    scaled = coefs * np.array([_primitive_norm(a, powers) for a in exps])
    cg = ContractedGaussian(np.asarray(center, dtype=float), powers, exps, scaled)
    self_overlap = _overlap(cg, cg)
    cg.coefficients = scaled / math.sqrt(self_overlap)
    return cg


# ---------------------------------------------------------------------------
# McMurchie-Davidson integral engine
# ---------------------------------------------------------------------------


def _hermite_e(i: int, j: int, t: int, q_dist: float, a: float, b: float) -> float:
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * q_dist * q_dist)
    if i > 0:
        return (
            _hermite_e(i - 1, j, t - 1, q_dist, a, b) / (2 * p)
            - q * q_dist / a * _hermite_e(i - 1, j, t, q_dist, a, b)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, q_dist, a, b)
        )
    return (
        _hermite_e(i, j - 1, t - 1, q_dist, a, b) / (2 * p)
        + q * q_dist / b * _hermite_e(i, j - 1, t, q_dist, a, b)
        + (t + 1) * _hermite_e(i, j - 1, t + 1, q_dist, a, b)
    )


def _overlap_1d(i: int, j: int, q_dist: float, a: float, b: float) -> float:
    return _hermite_e(i, j, 0, q_dist, a, b) * math.sqrt(math.pi / (a + b))


def _overlap_prim(a, powers_a, center_a, b, powers_b, center_b) -> float:
    val = 1.0
    for k in range(3):
        val *= _overlap_1d(powers_a[k], powers_b[k], center_a[k] - center_b[k], a, b)
    return val


def _kinetic_prim(a, la, ca, b, lb, cb) -> float:
    def t1d(i, j, q_dist):
        term = b * (2 * j + 1) * _overlap_1d(i, j, q_dist, a, b)
        term -= 2 * b * b * _overlap_1d(i, j + 2, q_dist, a, b)
        if j >= 2:
            term -= 0.5 * j * (j - 1) * _overlap_1d(i, j - 2, q_dist, a, b)
        return term

    s = [_overlap_1d(la[k], lb[k], ca[k] - cb[k], a, b) for k in range(3)]
    t = [t1d(la[k], lb[k], ca[k] - cb[k]) for k in range(3)]
    return t[0] * s[1] * s[2] + s[0] * t[1] * s[2] + s[0] * s[1] * t[2]


def _boys(n: int, x: float) -> float:
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2 * n + 1)


def _hermite_coulomb(t: int, u: int, v: int, n: int, p: float, pc: np.ndarray) -> float:
    if t == u == v == 0:
        return (-2 * p) ** n * _boys(n, p * float(pc @ pc))
    if t > 0:
        val = pc[0] * _hermite_coulomb(t - 1, u, v, n + 1, p, pc)
        if t > 1:
            val += (t - 1) * _hermite_coulomb(t - 2, u, v, n + 1, p, pc)
        return val
    if u > 0:
        val = pc[1] * _hermite_coulomb(t, u - 1, v, n + 1, p, pc)
        if u > 1:
            val += (u - 1) * _hermite_coulomb(t, u - 2, v, n + 1, p, pc)
        return val
    val = pc[2] * _hermite_coulomb(t, u, v - 1, n + 1, p, pc)
    if v > 1:
        val += (v - 1) * _hermite_coulomb(t, u, v - 2, n + 1, p, pc)
    return val


def _nuclear_prim(a, la, ca, b, lb, cb, nucleus: np.ndarray) -> float:
    p = a + b
    cp = (a * ca + b * cb) / p
    total = 0.0
    for t in range(la[0] + lb[0] + 1):
        et = _hermite_e(la[0], lb[0], t, ca[0] - cb[0], a, b)
        for u in range(la[1] + lb[1] + 1):
            eu = _hermite_e(la[1], lb[1], u, ca[1] - cb[1], a, b)
            for v in range(la[2] + lb[2] + 1):
                ev = _hermite_e(la[2], lb[2], v, ca[2] - cb[2], a, b)
                total += et * eu * ev * _hermite_coulomb(t, u, v, 0, p, cp - nucleus)
    return 2 * math.pi / p * total


def _eri_prim(a, la, ca, b, lb, cb, c, lc, cc, d, ld, cd) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    cp = (a * ca + b * cb) / p
    cq = (c * cc + d * cd) / q
    pq = cp - cq
    total = 0.0
    for t in range(la[0] + lb[0] + 1):
        et = _hermite_e(la[0], lb[0], t, ca[0] - cb[0], a, b)
        for u in range(la[1] + lb[1] + 1):
            eu = _hermite_e(la[1], lb[1], u, ca[1] - cb[1], a, b)
            for v in range(la[2] + lb[2] + 1):
                ev = _hermite_e(la[2], lb[2], v, ca[2] - cb[2], a, b)
                e_bra = et * eu * ev
                if e_bra == 0.0:
                    continue
                for tt in range(lc[0] + ld[0] + 1):
                    ftt = _hermite_e(lc[0], ld[0], tt, cc[0] - cd[0], c, d)
                    for uu in range(lc[1] + ld[1] + 1):
                        fuu = _hermite_e(lc[1], ld[1], uu, cc[1] - cd[1], c, d)
                        for vv in range(lc[2] + ld[2] + 1):
                            fvv = _hermite_e(lc[2], ld[2], vv, cc[2] - cd[2], c, d)
                            e_ket = ftt * fuu * fvv
                            if e_ket == 0.0:
                                continue
                            total += (
                                e_bra
                                * e_ket
                                * (-1) ** (tt + uu + vv)
                                * _hermite_coulomb(t + tt, u + uu, v + vv, 0, alpha, pq)
                            )
    return total * 2 * math.pi**2.5 / (p * q * math.sqrt(p + q))


def _contract2(f, ga: ContractedGaussian, gb: ContractedGaussian) -> float:
    val = 0.0
    for a, ca in zip(ga.exponents, ga.coefficients):
        for b, cb in zip(gb.exponents, gb.coefficients):
            val += ca * cb * f(a, b)
    return val


def _overlap(ga, gb) -> float:
    return _contract2(
        lambda a, b: _overlap_prim(a, ga.powers, ga.center, b, gb.powers, gb.center), ga, gb
    )


def _kinetic(ga, gb) -> float:
    return _contract2(
        lambda a, b: _kinetic_prim(a, ga.powers, ga.center, b, gb.powers, gb.center), ga, gb
    )


def _nuclear(ga, gb, atoms) -> float:
    def f(a, b):
        return sum(
            -CHARGES[sym] * _nuclear_prim(a, ga.powers, ga.center, b, gb.powers, gb.center, pos)
            for sym, pos in atoms
        )

    return _contract2(f, ga, gb)


def _eri(ga, gb, gc, gd) -> float:
    val = 0.0
    for a, ca in zip(ga.exponents, ga.coefficients):
        for b, cb in zip(gb.exponents, gb.coefficients):
            for c, cc in zip(gc.exponents, gc.coefficients):
                for d, cd in zip(gd.exponents, gd.coefficients):
                    val += ca * cb * cc * cd * _eri_prim(
                        a, ga.powers, ga.center, b, gb.powers, gb.center,
                        c, gc.powers, gc.center, d, gd.powers, gd.center,
                    )
    return val


@dataclass
class AOIntegrals:
    overlap: np.ndarray
    hcore: np.ndarray
    eri: np.ndarray  # chemists' (uv|ls)
    e_nuc: float
    n_electrons: int


def ao_integrals(atoms: list[tuple[str, np.ndarray]], basis: str, charge: int = 0) -> AOIntegrals:
    funcs = build_basis(atoms, basis)
    n = len(funcs)
    overlap = np.empty((n, n))
    kinetic = np.empty((n, n))
    nuclear = np.empty((n, n))
    for i in range(n):
        for j in range(i + 1):
            overlap[i, j] = overlap[j, i] = _overlap(funcs[i], funcs[j])
            kinetic[i, j] = kinetic[j, i] = _kinetic(funcs[i], funcs[j])
            nuclear[i, j] = nuclear[j, i] = _nuclear(funcs[i], funcs[j], atoms)
    eri = np.zeros((n, n, n, n))
    # unique chemists'-symmetry quadruples
    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    for (i, j), (k, l) in itertools.combinations_with_replacement(pairs, 2):
        val = _eri(funcs[i], funcs[j], funcs[k], funcs[l])
        for a, b in ((i, j), (j, i)):
            for c, d in ((k, l), (l, k)):
                eri[a, b, c, d] = eri[c, d, a, b] = val
    e_nuc = 0.0
    for (s1, p1), (s2, p2) in itertools.combinations(atoms, 2):
        e_nuc += CHARGES[s1] * CHARGES[s2] / np.linalg.norm(p1 - p2)
    n_elec = sum(CHARGES[s] for s, _ in atoms) - charge
    return AOIntegrals(overlap, kinetic + nuclear, eri, e_nuc, n_elec)


# ---------------------------------------------------------------------------
# Restricted Hartree-Fock
# ---------------------------------------------------------------------------


@dataclass
class RHFResult:
    energy: float
    mo_coeff: np.ndarray
    mo_energy: np.ndarray


def rhf(ao: AOIntegrals, max_iter: int = 400, conv: float = 1e-12, damping: float = 0.0) -> RHFResult:
    if ao.n_electrons % 2:
        raise ValueError("restricted HF needs an even electron count")
    n_occ = ao.n_electrons // 2
    s_vals, s_vecs = np.linalg.eigh(ao.overlap)
    x = s_vecs @ np.diag(s_vals**-0.5) @ s_vecs.T

    def fock(dm):
        j = np.einsum("ls,uvls->uv", dm, ao.eri)
        k = np.einsum("ls,ulsv->uv", dm, ao.eri)
        return ao.hcore + j - 0.5 * k

    dm = np.zeros_like(ao.hcore)
    energy = 0.0
    for iteration in range(max_iter):
        f = fock(dm)
        f_ortho = x.T @ f @ x
        mo_e, c_ortho = np.linalg.eigh(f_ortho)
        c = x @ c_ortho
        dm_new = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
        if damping > 0.0 and iteration > 0:
            dm_new = (1.0 - damping) * dm_new + damping * dm
        e_new = 0.5 * np.einsum("uv,uv->", dm_new, ao.hcore + fock(dm_new)) + ao.e_nuc
        if iteration > 0 and abs(e_new - energy) < conv and np.max(np.abs(dm_new - dm)) < 1e-8:
            return RHFResult(float(e_new), c, mo_e)
        dm, energy = dm_new, e_new
    if damping == 0.0:
        return rhf(ao, max_iter=max_iter, conv=conv, damping=0.5)
    raise RuntimeError(f"SCF failed to converge (last energy {energy})")


@dataclass
class MOIntegrals:
    n_orb: int
    n_electrons: int
    core_energy: float
    h: np.ndarray
    g: np.ndarray  # chemists' (pq|rs)


def mo_integrals(ao: AOIntegrals, hf: RHFResult) -> MOIntegrals:
    c = hf.mo_coeff
    h = c.T @ ao.hcore @ c
    g = np.einsum("up,vq,lr,st,uvls->pqrt", c, c, c, c, ao.eri, optimize=True)
    return MOIntegrals(c.shape[1], ao.n_electrons, ao.e_nuc, h, _symmetrize_g(g))


def _symmetrize_g(g: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(g)
    for perm in [
        (0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
        (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0),
    ]:
        acc += g.transpose(perm)
    return acc / 8.0


def freeze_core(mo: MOIntegrals, n_frozen: int) -> MOIntegrals:
    """Fold the lowest n_frozen doubly occupied orbitals into an effective field."""
    occ = range(n_frozen)
    core = mo.core_energy
    for i in occ:
        core += 2.0 * mo.h[i, i]
        for j in occ:
            core += 2.0 * mo.g[i, i, j, j] - mo.g[i, j, j, i]
    act = slice(n_frozen, mo.n_orb)
    h_eff = mo.h[act, act].copy()
    for i in occ:
        h_eff += 2.0 * mo.g[act, act, i, i] - mo.g[act, i, i, act]
    return MOIntegrals(
        mo.n_orb - n_frozen,
        mo.n_electrons - 2 * n_frozen,
        float(core),
        h_eff,
        mo.g[act, act, act, act].copy(),
    )


# ---------------------------------------------------------------------------
# Determinant-basis full CI (independent of the package's qubit encoders)
# ---------------------------------------------------------------------------


def _spin_orbital_tensors(mo: MOIntegrals) -> tuple[np.ndarray, np.ndarray]:
    """Interleaved spin-orbitals s = 2*orbital + spin; antisymmetrized <pq||rs>."""
    n = mo.n_orb
    n_so = 2 * n
    h_so = np.zeros((n_so, n_so))
    for p in range(n):
        for q in range(n):
            for spin in (0, 1):
                h_so[2 * p + spin, 2 * q + spin] = mo.h[p, q]
    g_phys = np.zeros((n_so,) * 4)
    for p, q, r, s in itertools.product(range(n_so), repeat=4):
        if (p % 2 == r % 2) and (q % 2 == s % 2):
            g_phys[p, q, r, s] = mo.g[p // 2, r // 2, q // 2, s // 2]
    anti = g_phys - g_phys.transpose(0, 1, 3, 2)
    return h_so, anti


def _sign_single(det: int, hole: int, part: int) -> int:
    lo, hi = sorted((hole, part))
    mask = ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)
    return -1 if bin(det & mask).count("1") % 2 else 1


def fci_ground_energy(mo: MOIntegrals) -> float:
    n_so = 2 * mo.n_orb
    n_alpha = (mo.n_electrons + 1) // 2
    n_beta = mo.n_electrons // 2
    h_so, anti = _spin_orbital_tensors(mo)

    alpha_sets = list(itertools.combinations(range(0, n_so, 2), n_alpha))
    beta_sets = list(itertools.combinations(range(1, n_so, 2), n_beta))
    dets = []
    for a_occ in alpha_sets:
        for b_occ in beta_sets:
            det = 0
            for s in a_occ + b_occ:
                det |= 1 << s
            dets.append(det)

    dim = len(dets)
    ham = np.zeros((dim, dim))
    occ_lists = [sorted(s for s in range(n_so) if det >> s & 1) for det in dets]

    for i in range(dim):
        occ = occ_lists[i]
        e = sum(h_so[p, p] for p in occ)
        e += 0.5 * sum(anti[p, q, p, q] for p in occ for q in occ)
        ham[i, i] = e
        for j in range(i + 1, dim):
            d1, d2 = dets[i], dets[j]
            diff = d1 ^ d2
            n_diff = bin(diff).count("1")
            if n_diff == 2:
                hole = (d1 & diff).bit_length() - 1
                part = (d2 & diff).bit_length() - 1
                sign = _sign_single(d1, hole, part)
                common = [p for p in occ if p != hole]
                val = h_so[hole, part] + sum(anti[hole, q, part, q] for q in common)
                ham[i, j] = ham[j, i] = sign * val
            elif n_diff == 4:
                holes = sorted(s for s in occ if diff >> s & 1)
                parts = sorted(s for s in occ_lists[j] if diff >> s & 1)
                sign = _sign_single(d1, holes[0], parts[0])
                mid = d1 ^ (1 << holes[0]) ^ (1 << parts[0])
                sign *= _sign_single(mid, holes[1], parts[1])
                ham[i, j] = ham[j, i] = sign * anti[holes[0], holes[1], parts[0], parts[1]]
    return float(np.linalg.eigvalsh(ham)[0] + mo.core_energy)


# ---------------------------------------------------------------------------
# Fixture writing
# ---------------------------------------------------------------------------


def write_fixture(path: Path, mo: MOIntegrals, e_hf: float, e_fci: float, comment: str) -> None:
    n = mo.n_orb
    core = float(mo.core_energy)
    lines = [f"# {comment}"]
    lines.append(
        f"NORB={n} NELEC={mo.n_electrons} CORE={core!r} EHF={float(e_hf)!r} EFCI={float(e_fci)!r}"
    )
    for p in range(n):
        for q in range(p + 1):
            for r in range(p + 1):
                s_max = q if r == p else r
                for s in range(s_max + 1):
                    val = float(mo.g[p, q, r, s])
                    if abs(val) > 1e-14:
                        lines.append(f"{val!r} {p + 1} {q + 1} {r + 1} {s + 1}")
    for p in range(n):
        for q in range(p + 1):
            val = float(mo.h[p, q])
            if abs(val) > 1e-14:
                lines.append(f"{val!r} {p + 1} {q + 1} 0 0")
    lines.append(f"{core!r} 0 0 0 0")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path.name}: NORB={n} NELEC={mo.n_electrons} EHF={e_hf:.8f} EFCI={e_fci:.8f}")


def solve(atoms, basis, charge=0, n_frozen=0) -> tuple[MOIntegrals, float, float]:
    ao = ao_integrals(atoms, basis, charge)
    hf = rhf(ao)
    mo = mo_integrals(ao, hf)
    if n_frozen:
        mo = freeze_core(mo, n_frozen)
    e_fci = fci_ground_energy(mo)
    return mo, hf.energy, e_fci


# --- system builders (coordinates in angstrom, converted on use) ------------


def h2_atoms(r: float) -> list:
    z = r * ANGSTROM_TO_BOHR / 2
    return [("H", np.array([0.0, 0.0, -z])), ("H", np.array([0.0, 0.0, z]))]


def h3_plus_atoms(side: float) -> list:
    s = side * ANGSTROM_TO_BOHR
    return [
        ("H", s * np.array([0.0, 0.0, 0.0])),
        ("H", s * np.array([1.0, 0.0, 0.0])),
        ("H", s * np.array([0.5, math.sqrt(3) / 2, 0.0])),
    ]


def h4_square_atoms(side: float) -> list:
    s = side * ANGSTROM_TO_BOHR
    return [
        ("H", np.array([0.0, 0.0, 0.0])),
        ("H", np.array([s, 0.0, 0.0])),
        ("H", np.array([s, s, 0.0])),
        ("H", np.array([0.0, s, 0.0])),
    ]


def h2_dimer_atoms(r_sep: float, bond: float) -> list:
    b = bond * ANGSTROM_TO_BOHR / 2
    d = r_sep * ANGSTROM_TO_BOHR
    return [
        ("H", np.array([-b, 0.0, 0.0])),
        ("H", np.array([b, 0.0, 0.0])),
        ("H", np.array([d, -b, 0.0])),
        ("H", np.array([d, b, 0.0])),
    ]


def lih_atoms(r: float) -> list:
    z = r * ANGSTROM_TO_BOHR
    return [("Li", np.array([0.0, 0.0, 0.0])), ("H", np.array([0.0, 0.0, z]))]


def optimize_bond(energy_fn, bracket: tuple[float, float], tol: float = 1e-6) -> float:
    res = minimize_scalar(energy_fn, bounds=bracket, method="bounded",
                          options={"xatol": tol})
    return float(res.x)


def main() -> int:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    notes = []

    # H2 / STO-3G
    r_h2 = optimize_bond(lambda r: rhf(ao_integrals(h2_atoms(r), "sto-3g")).energy, (0.5, 1.2))
    mo, e_hf, e_fci = solve(h2_atoms(r_h2), "sto-3g")
    write_fixture(FIXTURE_DIR / "h2_sto3g.fcidump", mo, e_hf, e_fci,
                  f"H2, STO-3G, r={r_h2:.6f} A (HF optimum), full space")
    notes.append(("h2_sto3g", f"H2 r={r_h2:.6f} A", e_hf, e_fci))

    # H2 / 6-31G
    r_h2g = optimize_bond(lambda r: rhf(ao_integrals(h2_atoms(r), "6-31g")).energy, (0.5, 1.2))
    mo, e_hf, e_fci = solve(h2_atoms(r_h2g), "6-31g")
    write_fixture(FIXTURE_DIR / "h2_631g.fcidump", mo, e_hf, e_fci,
                  f"H2, 6-31G, r={r_h2g:.6f} A (HF optimum), full space")
    notes.append(("h2_631g", f"H2 r={r_h2g:.6f} A", e_hf, e_fci))

    # H3+ / STO-3G, equilateral triangle
    d_h3 = optimize_bond(
        lambda d: rhf(ao_integrals(h3_plus_atoms(d), "sto-3g", charge=1)).energy, (0.6, 1.3)
    )
    mo, e_hf, e_fci = solve(h3_plus_atoms(d_h3), "sto-3g", charge=1)
    write_fixture(FIXTURE_DIR / "h3plus_sto3g.fcidump", mo, e_hf, e_fci,
                  f"H3+, STO-3G, equilateral side={d_h3:.6f} A (HF optimum)")
    notes.append(("h3plus_sto3g", f"H3+ side={d_h3:.6f} A", e_hf, e_fci))

    # H4 / STO-3G, square (stationary in the symmetric stretch)
    a_h4 = optimize_bond(
        lambda a: rhf(ao_integrals(h4_square_atoms(a), "sto-3g")).energy, (0.8, 2.0)
    )
    mo, e_hf, e_fci = solve(h4_square_atoms(a_h4), "sto-3g")
    write_fixture(FIXTURE_DIR / "h4_sto3g.fcidump", mo, e_hf, e_fci,
                  f"H4, STO-3G, square side={a_h4:.6f} A (HF stationary)")
    notes.append(("h4_sto3g", f"H4 square side={a_h4:.6f} A", e_hf, e_fci))

    # (H2)2 / STO-3G, T-shaped. The minimal basis has no dispersion, so the
    # FCI separation curve is monotone; a representative van der Waals
    # distance is fixed instead, monomer bonds at the HF optimum.
    d_dimer = 3.4
    mo, e_hf, e_fci = solve(h2_dimer_atoms(d_dimer, r_h2), "sto-3g")
    write_fixture(FIXTURE_DIR / "h2_dimer_sto3g.fcidump", mo, e_hf, e_fci,
                  f"(H2)2 T-shaped, STO-3G, center separation={d_dimer:.6f} A, "
                  f"monomer bond={r_h2:.6f} A")
    notes.append(("h2_dimer_sto3g", f"(H2)2 sep={d_dimer:.6f} A", e_hf, e_fci))

    # LiH / STO-3G, frozen-core active space of 5 spatial orbitals.
    # Near-equilibrium bond, slightly stretched from the HF/STO-3G optimum.
    r_lih = 1.55
    mo, e_hf, e_fci = solve(lih_atoms(r_lih), "sto-3g", n_frozen=1)
    write_fixture(FIXTURE_DIR / "lih_sto3g_active.fcidump", mo, e_hf, e_fci,
                  f"LiH, STO-3G, r={r_lih:.6f} A, lowest orbital frozen "
                  f"(5 spatial orbitals, 2 active electrons)")
    notes.append(("lih_sto3g_active", f"LiH r={r_lih:.6f} A", e_hf, e_fci))

    kcal = 627.5094740631
    print("\npseudo-correlation energies (kcal/mol):")
    for name, desc, e_hf, e_fci in notes:
        print(f"  {name:<18} {desc:<28} {(e_hf - e_fci) * kcal:8.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
