"""Second-quantized electronic-structure input and fermion-to-qubit encodings.

An :class:`IntegralSet` carries the one- and two-body integrals of an active
space in chemists' notation (pq|rs) over spatial orbitals, plus header
metadata. :func:`encode` produces the qubit Hamiltonian under Jordan-Wigner,
Bravyi-Kitaev, or parity encoding.

All three encodings are generated from one construction: an invertible GF(2)
matrix A maps occupations to qubit bits, b = A n (mod 2). For mode j,

* the update set U(j) = {i : A[i, j] = 1} holds the qubits that flip with n_j,
* the parity set P(j) reads off the parity of modes below j,
* the occupation set F(j) reads off n_j itself,

and the ladder operators follow from the two flip/phase products
X_U Z_P and X_U Z_{P xor F}. Jordan-Wigner is A = identity, parity is the
running-sum matrix, and Bravyi-Kitaev is the binary-tree matrix truncated to
n modes, so n need not be a power of two.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .pauli import PauliSum, PauliTerm, Permutation, multiply_words

ENCODINGS = ("jordan_wigner", "bravyi_kitaev", "parity")
ORDERINGS = ("blocked", "interleaved")

_ENCODING_ALIASES = {"jw": "jordan_wigner", "bk": "bravyi_kitaev", "parity": "parity"}

SYMMETRY_TOL = 1e-10

#: residual imaginary weight above this means a broken encoding, not noise
_IMAG_TOL = 1e-10

_INTEGRAL_TOL = 1e-12


def canonical_encoding(name: str) -> str:
    key = name.strip().lower()
    key = _ENCODING_ALIASES.get(key, key)
    if key not in ENCODINGS:
        raise ValueError(f"unknown encoding {name!r}; expected one of {ENCODINGS}")
    return key


@dataclass(frozen=True)
class IntegralSet:
    """Active-space integrals in Hartree, chemists' notation for two-body."""

    n_spatial: int
    n_electrons: int
    core_energy: float
    one_body: np.ndarray
    two_body: np.ndarray
    e_hf: float | None = None
    e_fci: float | None = None

    def __post_init__(self):
        if self.n_spatial < 1:
            raise ValueError(f"n_spatial must be positive, got {self.n_spatial}")
        if not 0 < self.n_electrons <= 2 * self.n_spatial:
            raise ValueError(
                f"n_electrons={self.n_electrons} invalid for {self.n_spatial} spatial orbitals"
            )
        n = self.n_spatial
        one = np.asarray(self.one_body, dtype=np.float64)
        two = np.asarray(self.two_body, dtype=np.float64)
        if one.shape != (n, n):
            raise ValueError(f"one_body must be ({n}, {n}), got {one.shape}")
        if two.shape != (n, n, n, n):
            raise ValueError(f"two_body must be rank-4 of dimension {n}, got {two.shape}")
        if np.max(np.abs(one - one.T)) > SYMMETRY_TOL:
            raise ValueError("one_body asymmetry above tolerance")
        for perm in [(1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)]:
            if np.max(np.abs(two - two.transpose(perm))) > SYMMETRY_TOL:
                raise ValueError("two_body index-symmetry violation above tolerance")
        object.__setattr__(self, "one_body", one)
        object.__setattr__(self, "two_body", two)

    @property
    def n_spin_orbitals(self) -> int:
        return 2 * self.n_spatial


def spin_orbital_index(spatial: int, spin: int, n_spatial: int, ordering: str = "blocked") -> int:
    """Map (spatial orbital, spin) to a spin-orbital index.

    blocked stacks all alpha orbitals before all beta; interleaved alternates
    alpha/beta per spatial orbital.
    """
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")
    if not 0 <= spatial < n_spatial or spin not in (0, 1):
        raise ValueError(f"bad spin-orbital ({spatial}, {spin}) for n_spatial={n_spatial}")
    if ordering == "blocked":
        return spatial + spin * n_spatial
    return 2 * spatial + spin


def aufbau_occupied(n_electrons: int, n_spatial: int, ordering: str = "blocked") -> tuple[int, ...]:
    """Spin-orbital indices filled by the aufbau rule (alpha before beta per orbital)."""
    if n_electrons > 2 * n_spatial:
        raise ValueError("more electrons than spin-orbitals")
    return tuple(
        spin_orbital_index(k // 2, k % 2, n_spatial, ordering) for k in range(n_electrons)
    )


def hartree_fock_bitstring(
    n_electrons: int,
    n_spatial: int,
    ordering: str = "blocked",
    p: Permutation | None = None,
) -> tuple[int, ...]:
    """Occupation bitstring of the reference determinant, optionally relabeled.

    The bit for spin-orbital s is set at qubit p(s).
    """
    n_qubits = 2 * n_spatial
    if p is None:
        p = Permutation.identity(n_qubits)
    if p.n != n_qubits:
        raise ValueError(f"permutation on {p.n} indices vs {n_qubits} spin-orbitals")
    bits = [0] * n_qubits
    for s in aufbau_occupied(n_electrons, n_spatial, ordering):
        bits[p.map[s]] = 1
    return tuple(bits)


def hartree_fock_energy(ints: IntegralSet) -> float:
    """<HF|H|HF> evaluated directly from the integrals (encoding-free)."""
    occ = [(k // 2, k % 2) for k in range(ints.n_electrons)]
    energy = ints.core_energy
    for p_orb, _ in occ:
        energy += ints.one_body[p_orb, p_orb]
    for p_orb, p_spin in occ:
        for q_orb, q_spin in occ:
            if (p_orb, p_spin) == (q_orb, q_spin):
                continue
            energy += 0.5 * ints.two_body[p_orb, p_orb, q_orb, q_orb]
            if p_spin == q_spin:
                energy -= 0.5 * ints.two_body[p_orb, q_orb, q_orb, p_orb]
    return float(energy)


# ---------------------------------------------------------------------------
# Encoding construction
# ---------------------------------------------------------------------------


def _gf2_inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    work = np.concatenate([a.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col]), None)
        if pivot is None:
            raise ValueError("encoding matrix is singular over GF(2)")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        for r in range(n):
            if r != col and work[r, col]:
                work[r] ^= work[col]
    return work[:, n:]


def encoding_matrix(encoding: str, n_modes: int) -> np.ndarray:
    """GF(2) matrix A with b = A n (mod 2) defining the encoding."""
    encoding = canonical_encoding(encoding)
    a = np.zeros((n_modes, n_modes), dtype=np.uint8)
    if encoding == "jordan_wigner":
        np.fill_diagonal(a, 1)
    elif encoding == "parity":
        for i in range(n_modes):
            a[i, : i + 1] = 1
    else:
        for j in range(n_modes):
            span = (j + 1) & -(j + 1)  # largest power of two dividing j + 1
            a[j, j - span + 1 : j + 1] = 1
    return a


class _LadderFactory:
    """Ladder operators a_j, a_j^dagger as two-term complex Pauli-word sums."""

    def __init__(self, encoding: str, n_modes: int):
        self.n = n_modes
        a = encoding_matrix(encoding, n_modes)
        a_inv = _gf2_inverse(a)
        prefix_parity = np.zeros((n_modes, n_modes), dtype=np.uint8)
        acc = np.zeros(n_modes, dtype=np.uint8)
        for j in range(n_modes):
            prefix_parity[j] = acc
            acc = (acc + a_inv[j]) % 2
        self._flip = [np.flatnonzero(a[:, j]) for j in range(n_modes)]
        self._parity = [np.flatnonzero(prefix_parity[j]) for j in range(n_modes)]
        self._occupation = [np.flatnonzero(a_inv[j]) for j in range(n_modes)]

    def _word(self, x_qubits: np.ndarray, z_qubits: np.ndarray) -> tuple[str, complex]:
        x_word = "".join("X" if i in set(x_qubits.tolist()) else "I" for i in range(self.n))
        z_word = "".join("Z" if i in set(z_qubits.tolist()) else "I" for i in range(self.n))
        return multiply_words(x_word, z_word)

    def ladder(self, mode: int, dagger: bool) -> list[tuple[str, complex]]:
        flip = self._flip[mode]
        parity = self._parity[mode]
        occ = self._occupation[mode]
        # c_j = a_j + a_j^dag flips n_j with the parity phase of modes < j;
        # m_j = a_j^dag - a_j adds the (-1)^{n_j} readout on top.
        c_word, c_phase = self._word(flip, parity)
        m_word, m_phase = self._word(flip, np.setxor1d(parity, occ))
        sign = 1.0 if dagger else -1.0
        return [(c_word, 0.5 * c_phase), (m_word, sign * 0.5 * m_phase)]


def _accumulate_product(
    acc: dict[str, complex],
    factors: Sequence[Sequence[tuple[str, complex]]],
    scale: complex,
    n_modes: int,
) -> None:
    partial: list[tuple[str, complex]] = [("I" * n_modes, scale)]
    for factor in factors:
        nxt: list[tuple[str, complex]] = []
        for word_a, coeff_a in partial:
            for word_b, coeff_b in factor:
                word, phase = multiply_words(word_a, word_b)
                nxt.append((word, coeff_a * coeff_b * phase))
        partial = nxt
    for word, coeff in partial:
        acc[word] = acc.get(word, 0.0) + coeff


def _finalize(acc: dict[str, complex], n_qubits: int) -> PauliSum:
    worst = max((abs(c.imag) for c in acc.values()), default=0.0)
    if worst > _IMAG_TOL:
        raise ValueError(f"residual imaginary coefficient {worst:.3e} in encoded operator")
    terms = [PauliTerm(n_qubits, w, c.real) for w, c in acc.items() if abs(c.real) > 1e-12]
    return PauliSum.from_terms(terms, n_qubits)


def number_operator(mode: int, n_modes: int, encoding: str = "jordan_wigner") -> PauliSum:
    """Encoded occupation-number operator a_mode^dag a_mode."""
    factory = _LadderFactory(encoding, n_modes)
    acc: dict[str, complex] = {}
    _accumulate_product(
        acc, [factory.ladder(mode, True), factory.ladder(mode, False)], 1.0, n_modes
    )
    return _finalize(acc, n_modes)


def total_number_operator(n_modes: int, encoding: str = "jordan_wigner") -> PauliSum:
    acc: dict[str, complex] = {}
    factory = _LadderFactory(encoding, n_modes)
    for mode in range(n_modes):
        _accumulate_product(
            acc, [factory.ladder(mode, True), factory.ladder(mode, False)], 1.0, n_modes
        )
    return _finalize(acc, n_modes)


def encode(ints: IntegralSet, ordering: str = "blocked", encoding: str = "jordan_wigner") -> PauliSum:
    """Qubit Hamiltonian of an integral set on 2 * n_spatial qubits.

    The dense spectrum is encoding-independent; the constant term carries the
    core energy.
    """
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")
    encoding = canonical_encoding(encoding)
    n_sp = ints.n_spatial
    n_so = ints.n_spin_orbitals
    factory = _LadderFactory(encoding, n_so)
    ladders = {
        (mode, dag): factory.ladder(mode, dag) for mode in range(n_so) for dag in (True, False)
    }
    so = {
        (orb, spin): spin_orbital_index(orb, spin, n_sp, ordering)
        for orb in range(n_sp)
        for spin in (0, 1)
    }

    acc: dict[str, complex] = {"I" * n_so: complex(ints.core_energy)}

    for p_orb in range(n_sp):
        for q_orb in range(n_sp):
            val = ints.one_body[p_orb, q_orb]
            if abs(val) <= _INTEGRAL_TOL:
                continue
            for spin in (0, 1):
                _accumulate_product(
                    acc,
                    [ladders[(so[(p_orb, spin)], True)], ladders[(so[(q_orb, spin)], False)]],
                    val,
                    n_so,
                )

    nz = np.argwhere(np.abs(ints.two_body) > _INTEGRAL_TOL)
    for p_orb, q_orb, r_orb, s_orb in nz:
        val = 0.5 * ints.two_body[p_orb, q_orb, r_orb, s_orb]
        for spin_a in (0, 1):
            for spin_b in (0, 1):
                _accumulate_product(
                    acc,
                    [
                        ladders[(so[(p_orb, spin_a)], True)],
                        ladders[(so[(r_orb, spin_b)], True)],
                        ladders[(so[(s_orb, spin_b)], False)],
                        ladders[(so[(q_orb, spin_a)], False)],
                    ],
                    val,
                    n_so,
                )

    return _finalize(acc, n_so)


# ---------------------------------------------------------------------------
# Integral file format
#
#   NORB=<n> NELEC=<n> CORE=<float> EHF=<float> EFCI=<float>
#   <value> <p> <q> <r> <s>     (1-based; r=s=0 one-body, all zero core energy)
# ---------------------------------------------------------------------------


class IntegralFileError(ValueError):
    pass


_HEADER_KEYS = {"NORB", "NELEC", "CORE", "EHF", "EFCI"}


def load_fcidump(path: str | Path) -> IntegralSet:
    """Parse an integral file; symmetry-equivalent duplicates must agree."""
    path = Path(path)
    header: dict[str, float] = {}
    one_entries: list[tuple[int, int, float]] = []
    two_entries: list[tuple[int, int, int, int, float]] = []
    core_from_data: float | None = None

    for line_no, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = re.split(r"[,\s]+", line)
        if "=" in line and not _looks_like_data(tokens):
            for token in tokens:
                if not token or "=" not in token:
                    continue
                key, _, value = token.partition("=")
                key = key.upper()
                if key not in _HEADER_KEYS:
                    raise IntegralFileError(f"{path}:{line_no}: unknown header key {key!r}")
                try:
                    header[key] = float(value)
                except ValueError:
                    raise IntegralFileError(
                        f"{path}:{line_no}: bad header value {token!r}"
                    ) from None
            continue
        if len(tokens) != 5:
            raise IntegralFileError(
                f"{path}:{line_no}: expected '<value> p q r s', got {line!r}"
            )
        try:
            value = float(tokens[0])
            p, q, r, s = (int(t) for t in tokens[1:])
        except ValueError:
            raise IntegralFileError(f"{path}:{line_no}: malformed data line {line!r}") from None
        if p == q == r == s == 0:
            core_from_data = value
        elif r == 0 and s == 0:
            one_entries.append((p, q, value))
        elif 0 in (p, q, r, s):
            raise IntegralFileError(f"{path}:{line_no}: partial zero indices in {line!r}")
        else:
            two_entries.append((p, q, r, s, value))

    for key in ("NORB", "NELEC"):
        if key not in header:
            raise IntegralFileError(f"{path}: missing required header field {key}")
    n = int(header["NORB"])
    n_elec = int(header["NELEC"])
    core = core_from_data if core_from_data is not None else header.get("CORE", 0.0)

    one = np.zeros((n, n))
    filled_one = np.zeros((n, n), dtype=bool)
    for p, q, value in one_entries:
        if not (1 <= p <= n and 1 <= q <= n):
            raise IntegralFileError(f"{path}: one-body index ({p}, {q}) out of range 1..{n}")
        for a, b in ((p - 1, q - 1), (q - 1, p - 1)):
            if filled_one[a, b] and abs(one[a, b] - value) > SYMMETRY_TOL:
                raise IntegralFileError(
                    f"{path}: one-body entry ({p}, {q}) conflicts with symmetry partner"
                )
            one[a, b] = value
            filled_one[a, b] = True

    two = np.zeros((n, n, n, n))
    filled_two = np.zeros((n, n, n, n), dtype=bool)
    for p, q, r, s, value in two_entries:
        if not all(1 <= t <= n for t in (p, q, r, s)):
            raise IntegralFileError(
                f"{path}: two-body index ({p}, {q}, {r}, {s}) out of range 1..{n}"
            )
        i, j, k, l = p - 1, q - 1, r - 1, s - 1
        images = {
            (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
            (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
        }
        for idx in images:
            if filled_two[idx] and abs(two[idx] - value) > SYMMETRY_TOL:
                raise IntegralFileError(
                    f"{path}: two-body entry ({p}, {q}, {r}, {s}) conflicts with symmetry partner"
                )
            two[idx] = value
            filled_two[idx] = True

    return IntegralSet(
        n_spatial=n,
        n_electrons=n_elec,
        core_energy=float(core),
        one_body=one,
        two_body=two,
        e_hf=header.get("EHF"),
        e_fci=header.get("EFCI"),
    )


def _looks_like_data(tokens: list[str]) -> bool:
    if len(tokens) != 5:
        return False
    try:
        float(tokens[0])
        [int(t) for t in tokens[1:]]
    except ValueError:
        return False
    return True
