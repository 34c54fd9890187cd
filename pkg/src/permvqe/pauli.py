"""Pauli-word algebra for qubit Hamiltonians.

Operators are weighted sums of Pauli words over a fixed register. Letter i of
a word acts on qubit i, and basis states index the register with qubit 0 as
the least significant bit. Coefficients are real floats: every Hamiltonian
handled here is Hermitian by construction, and encoders that produce complex
scratch values must resolve them before building a :class:`PauliSum`.

Qubit indices are 0-based everywhere, including the text file format.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

PAULI_LETTERS = "IXYZ"

#: terms with |coefficient| at or below this are dropped during normalization
DROP_TOL = 1e-12

#: default cap on dense-matrix realizations (2^n x 2^n memory)
DENSE_CAP = 14

_MULT = {
    ("I", "I"): ("I", 1.0), ("I", "X"): ("X", 1.0), ("I", "Y"): ("Y", 1.0), ("I", "Z"): ("Z", 1.0),
    ("X", "I"): ("X", 1.0), ("X", "X"): ("I", 1.0), ("X", "Y"): ("Z", 1.0j), ("X", "Z"): ("Y", -1.0j),
    ("Y", "I"): ("Y", 1.0), ("Y", "X"): ("Z", -1.0j), ("Y", "Y"): ("I", 1.0), ("Y", "Z"): ("X", 1.0j),
    ("Z", "I"): ("Z", 1.0), ("Z", "X"): ("Y", 1.0j), ("Z", "Y"): ("X", -1.0j), ("Z", "Z"): ("I", 1.0),
}


def multiply_words(a: str, b: str) -> tuple[str, complex]:
    """Multiply two Pauli words letterwise; returns (word, phase)."""
    if len(a) != len(b):
        raise ValueError(f"word length mismatch: {len(a)} vs {len(b)}")
    letters = []
    phase = 1.0 + 0.0j
    for la, lb in zip(a, b):
        lc, ph = _MULT[(la, lb)]
        letters.append(lc)
        phase *= ph
    return "".join(letters), phase


@dataclass(frozen=True)
class PauliTerm:
    """A single weighted Pauli word; ``word[i]`` is the letter on qubit i."""

    n_qubits: int
    word: str
    coefficient: float

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        if len(self.word) != self.n_qubits:
            raise ValueError(
                f"word length {len(self.word)} does not match n_qubits {self.n_qubits}"
            )
        if any(c not in PAULI_LETTERS for c in self.word):
            raise ValueError(f"invalid Pauli letter in word {self.word!r}")
        if isinstance(self.coefficient, complex):
            raise ValueError("coefficients must be real")
        if not np.isfinite(self.coefficient):
            raise ValueError(f"coefficient must be finite, got {self.coefficient}")
        object.__setattr__(self, "coefficient", float(self.coefficient))

    @classmethod
    def from_ops(cls, n_qubits: int, ops: Iterable[tuple[int, str]], coefficient: float) -> "PauliTerm":
        """Build a term from (qubit, letter) pairs; unlisted qubits are identity."""
        letters = ["I"] * n_qubits
        for q, letter in ops:
            if not 0 <= q < n_qubits:
                raise ValueError(f"qubit index {q} out of range for n_qubits={n_qubits}")
            if letters[q] != "I":
                raise ValueError(f"duplicate qubit index {q}")
            if letter not in "XYZ":
                raise ValueError(f"invalid Pauli letter {letter!r}")
            letters[q] = letter
        return cls(n_qubits, "".join(letters), coefficient)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.word) if c != "I")

    def masks(self) -> tuple[int, int, int]:
        """Bit masks (x_mask, zlike_mask, n_y) describing the word's action.

        The word maps ``|b> -> i**n_y * (-1)**popcount(b & zlike) |b ^ x_mask>``
        where x_mask flags X/Y letters and zlike flags Y/Z letters.
        """
        x_mask = zlike = n_y = 0
        for i, c in enumerate(self.word):
            if c in "XY":
                x_mask |= 1 << i
            if c in "YZ":
                zlike |= 1 << i
            if c == "Y":
                n_y += 1
        return x_mask, zlike, n_y


@dataclass(frozen=True)
class PauliSum:
    """Normalized sum of Pauli terms over a common register.

    Normalization merges duplicate words, drops coefficients below the drop
    tolerance, and sorts terms by word, so equal operators compare equal.
    """

    n_qubits: int
    terms: tuple[PauliTerm, ...]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        for t in self.terms:
            if t.n_qubits != self.n_qubits:
                raise ValueError(
                    f"term on {t.n_qubits} qubits in a {self.n_qubits}-qubit sum"
                )

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[PauliTerm],
        n_qubits: int | None = None,
        drop_tol: float = DROP_TOL,
    ) -> "PauliSum":
        terms = list(terms)
        if n_qubits is None:
            if not terms:
                raise ValueError("n_qubits required for an empty sum")
            n_qubits = terms[0].n_qubits
        merged: dict[str, float] = {}
        for t in terms:
            if t.n_qubits != n_qubits:
                raise ValueError(
                    f"term on {t.n_qubits} qubits in a {n_qubits}-qubit sum"
                )
            merged[t.word] = merged.get(t.word, 0.0) + t.coefficient
        kept = tuple(
            PauliTerm(n_qubits, w, c)
            for w, c in sorted(merged.items())
            if abs(c) > drop_tol
        )
        return cls(n_qubits, kept)

    @classmethod
    def from_ops_list(
        cls, n_qubits: int, entries: Iterable[tuple[float, Sequence[tuple[int, str]]]]
    ) -> "PauliSum":
        """Convenience constructor from (coefficient, [(qubit, letter), ...]) rows."""
        return cls.from_terms(
            [PauliTerm.from_ops(n_qubits, ops, c) for c, ops in entries], n_qubits
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __getstate__(self):
        # keep pickles free of lazily attached evaluation caches
        return {"n_qubits": self.n_qubits, "terms": self.terms}

    def __setstate__(self, state):
        object.__setattr__(self, "n_qubits", state["n_qubits"])
        object.__setattr__(self, "terms", state["terms"])

    @property
    def constant(self) -> float:
        ident = "I" * self.n_qubits
        for t in self.terms:
            if t.word == ident:
                return t.coefficient
        return 0.0

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("cannot add sums on different registers")
        return PauliSum.from_terms(self.terms + other.terms, self.n_qubits)

    def scaled(self, factor: float) -> "PauliSum":
        return PauliSum.from_terms(
            [PauliTerm(self.n_qubits, t.word, factor * t.coefficient) for t in self.terms],
            self.n_qubits,
        )

    def normalized(self) -> "PauliSum":
        """Re-run normalization (idempotent)."""
        return PauliSum.from_terms(self.terms, self.n_qubits)


@dataclass(frozen=True)
class Permutation:
    """Bijection on qubit indices; ``map[i]`` is the image of index i."""

    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(i) for i in self.map))
        n = len(self.map)
        if n < 1:
            raise ValueError("permutation must act on at least one index")
        if sorted(self.map) != list(range(n)):
            raise ValueError(f"map {self.map} is not a bijection on 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, i: int) -> int:
        return self.map[i]

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.map))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, p in enumerate(self.map):
            inv[p] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Composition self after other: (self.compose(other))(i) = self(other(i))."""
        if other.n != self.n:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.map[other.map[i]] for i in range(self.n)))

    def permute_bits(self, bits: Sequence[int]) -> tuple[int, ...]:
        """Move the bit at index i to index map[i]."""
        if len(bits) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(bits)}")
        out = [0] * self.n
        for i, b in enumerate(bits):
            out[self.map[i]] = int(b)
        return tuple(out)


def apply_permutation(h: PauliSum, p: Permutation) -> PauliSum:
    """Relabel qubits of a Pauli sum: the letter at qubit i moves to qubit p(i).

    Coefficients are unchanged and the term count is preserved (a bijection on
    words cannot create merges).
    """
    if p.n != h.n_qubits:
        raise ValueError(f"permutation on {p.n} indices vs {h.n_qubits}-qubit sum")
    new_terms = []
    for t in h.terms:
        letters = ["I"] * h.n_qubits
        for i, c in enumerate(t.word):
            letters[p.map[i]] = c
        new_terms.append(PauliTerm(h.n_qubits, "".join(letters), t.coefficient))
    return PauliSum.from_terms(new_terms, h.n_qubits)


def _term_action(term: PauliTerm) -> tuple[int, np.ndarray]:
    """Vectorized action of a word: returns (x_mask, diagonal phase array).

    ``P |b> = phases[b] |b ^ x_mask>`` over all basis indices b.
    """
    x_mask, zlike, n_y = term.masks()
    idx = np.arange(1 << term.n_qubits)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & zlike) & 1).astype(np.float64)
    return x_mask, (1j ** (n_y % 4)) * signs


def to_dense(h: PauliSum, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the sum; Hermitian since coefficients are real."""
    n = h.n_qubits
    if n > cap:
        raise ValueError(f"n_qubits={n} exceeds dense cap {cap}")
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=np.complex128)
    idx = np.arange(dim)
    for t in h.terms:
        x_mask, phases = _term_action(t)
        mat[idx ^ x_mask, idx] += t.coefficient * phases
    return mat


class GroundState(NamedTuple):
    energy: float
    amplitudes: np.ndarray
    degenerate: bool


def ground_state(h: PauliSum, cap: int = DENSE_CAP, gap_tol: float = 1e-10) -> GroundState:
    """Minimal eigenvalue and a unit-norm eigenvector by dense diagonalization.

    Degenerate ground spaces return an arbitrary member with the
    ``degenerate`` flag set when the spectral gap is below ``gap_tol``.
    """
    mat = to_dense(h, cap=cap)
    vals, vecs = np.linalg.eigh(mat)
    degenerate = len(vals) > 1 and (vals[1] - vals[0]) < gap_tol
    vec = np.ascontiguousarray(vecs[:, 0])
    return GroundState(float(vals[0]), vec / np.linalg.norm(vec), degenerate)


def eigenvalues(h: PauliSum, cap: int = DENSE_CAP) -> np.ndarray:
    """Full ascending spectrum of the dense realization."""
    return np.linalg.eigvalsh(to_dense(h, cap=cap))


# ---------------------------------------------------------------------------
# Text format
#
#   qubits <n>
#   <coefficient> <LETTER><index> [<LETTER><index> ...]
#
# '#' starts a comment; a bare coefficient is an identity (constant) term.
# ---------------------------------------------------------------------------


class PauliFileError(ValueError):
    """Malformed Pauli text file; carries the offending line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_pauli_text(text: str) -> PauliSum:
    n_qubits = None
    entries: list[tuple[float, list[tuple[int, str]]]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n_qubits is None:
            if fields[0] != "qubits" or len(fields) != 2:
                raise PauliFileError("expected header 'qubits <n>'", line_no)
            try:
                n_qubits = int(fields[1])
            except ValueError:
                raise PauliFileError(f"bad qubit count {fields[1]!r}", line_no) from None
            if n_qubits < 1:
                raise PauliFileError(f"qubit count must be positive, got {n_qubits}", line_no)
            continue
        try:
            coeff = float(fields[0])
        except ValueError:
            raise PauliFileError(f"non-numeric coefficient {fields[0]!r}", line_no) from None
        ops = []
        for token in fields[1:]:
            letter, idx_str = token[:1], token[1:]
            if letter not in "XYZ":
                raise PauliFileError(f"bad Pauli letter in token {token!r}", line_no)
            try:
                idx = int(idx_str)
            except ValueError:
                raise PauliFileError(f"bad qubit index in token {token!r}", line_no) from None
            if not 0 <= idx < n_qubits:
                raise PauliFileError(
                    f"qubit index {idx} out of range for n={n_qubits}", line_no
                )
            if any(q == idx for q, _ in ops):
                raise PauliFileError(f"duplicate qubit index {idx}", line_no)
            ops.append((idx, letter))
        entries.append((coeff, ops))
    if n_qubits is None:
        raise PauliFileError("missing 'qubits <n>' header", 1)
    return PauliSum.from_ops_list(n_qubits, entries)


def format_pauli_text(h: PauliSum) -> str:
    lines = [f"qubits {h.n_qubits}"]
    for t in h.terms:
        tokens = [repr(t.coefficient)]
        tokens.extend(f"{c}{i}" for i, c in enumerate(t.word) if c != "I")
        lines.append(" ".join(tokens))
    return "\n".join(lines) + "\n"


def parse_pauli_file(path: str | Path) -> PauliSum:
    return parse_pauli_text(Path(path).read_text())


def write_pauli_file(h: PauliSum, path: str | Path) -> None:
    Path(path).write_text(format_pauli_text(h))
