"""Domain types and exact arithmetic shared by every pipeline.

Matrices are tuples of tuples of Python ints (arbitrary precision). Words are
tuples of letter indices. Relations and state sets are stored as bitmasks:
bit ``q`` of ``rows[p]`` is set iff the relation contains ``(p, q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Matrix = tuple[tuple[int, ...], ...]
Word = tuple[int, ...]


class InputError(ValueError):
    """Malformed input: bad dimensions, negative entries, unknown letters."""


class PreconditionError(RuntimeError):
    """An operation was called outside its documented domain.

    ``reason`` is a short machine-readable tag; ``details`` carries any
    certificate explaining the refusal (e.g. a JSR witness).
    """

    def __init__(self, reason: str, message: str, details: dict | None = None):
        super().__init__(message)
        self.reason = reason
        self.details = details or {}


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# ---------------------------------------------------------------------------
# Alphabet / words


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise InputError("alphabet must be nonempty")
        if any(not isinstance(s, str) or not s for s in self.symbols):
            raise InputError("alphabet symbols must be nonempty strings")
        if len(set(self.symbols)) != len(self.symbols):
            raise InputError("alphabet symbols must be distinct")

    def __len__(self) -> int:
        return len(self.symbols)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InputError(f"unknown symbol {symbol!r}") from None

    def parse(self, text: str | Sequence[str]) -> Word:
        """Turn a string (single-character symbols) or a symbol list into a word."""
        if isinstance(text, str):
            if any(len(s) != 1 for s in self.symbols):
                raise InputError(
                    "string words need single-character symbols; pass a list instead"
                )
            return tuple(self.index(ch) for ch in text)
        return tuple(self.index(s) for s in text)

    def symbols_of(self, word: Word) -> list[str]:
        return [self.symbols[a] for a in word]

    def render(self, word: Word) -> str:
        sep = "" if all(len(s) == 1 for s in self.symbols) else " "
        return sep.join(self.symbols_of(word)) if word else "ε"

    def check_word(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for a in word:
            if not isinstance(a, int) or not 0 <= a < len(self.symbols):
                raise InputError(f"letter index {a!r} out of range for {len(self)} letters")
        return word


# ---------------------------------------------------------------------------
# Matrices


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple((0,) * n for _ in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def is_zero(mat: Matrix) -> bool:
    return not any(any(row) for row in mat)


def transpose(mat: Matrix) -> Matrix:
    return tuple(zip(*mat))


def submatrix(mat: Matrix, rows: Sequence[int], cols: Sequence[int] | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return tuple(tuple(mat[i][j] for j in cols) for i in rows)


def rank(mat: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by Bareiss fraction-free elimination.

    Pivot choice: for each column in order, the first remaining row with a
    nonzero entry in it. Entries may be negative.
    """
    rows = [list(r) for r in mat]
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            f = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c, n_cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


class RowSpan:
    """Incrementally grown subspace of Q^d with exact membership tests.

    Rows are kept in reduced echelon form over ``Fraction``.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)

    def __len__(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: Sequence[int | Fraction]) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for piv, row in self._rows:
            f = v[piv]
            if f:
                for j in range(piv, self.dim):
                    v[j] -= f * row[j]
        return v

    def __contains__(self, vec: Sequence[int | Fraction]) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec: Sequence[int | Fraction]) -> bool:
        """Insert ``vec``; return False if it was already in the span."""
        v = self._reduce(vec)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        lead = v[piv]
        v = [x / lead for x in v]
        for _, row in self._rows:
            f = row[piv]
            if f:
                for j in range(piv, self.dim):
                    row[j] -= f * v[j]
        self._rows.append((piv, v))
        self._rows.sort(key=lambda t: t[0])
        return True


# ---------------------------------------------------------------------------
# Relations and state sets


@dataclass(frozen=True)
class StateSet:
    dim: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.dim:
            raise InputError("state set has members outside 0..n-1")

    @classmethod
    def of(cls, dim: int, members: Iterable[int]) -> StateSet:
        bits = 0
        for q in members:
            bits |= 1 << q
        return cls(dim, bits)

    @classmethod
    def full(cls, dim: int) -> StateSet:
        return cls(dim, (1 << dim) - 1)

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, q: int) -> bool:
        return bool(self.bits >> q & 1)

    def __or__(self, other: StateSet) -> StateSet:
        return StateSet(self.dim, self.bits | other.bits)

    def __bool__(self) -> bool:
        return bool(self.bits)

    def __repr__(self) -> str:
        return f"StateSet({sorted(self)})"


@dataclass(frozen=True)
class Relation:
    """Boolean n×n matrix; ``rows[p]`` is the bitmask of ``p·r``."""

    dim: int
    rows: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> Relation:
        return cls(n, tuple(1 << p for p in range(n)))

    @classmethod
    def zero(cls, n: int) -> Relation:
        return cls(n, (0,) * n)

    @classmethod
    def from_matrix(cls, mat: Matrix) -> Relation:
        rows = []
        for row in mat:
            mask = 0
            for q, x in enumerate(row):
                if x:
                    mask |= 1 << q
            rows.append(mask)
        return cls(len(mat), tuple(rows))

    def to_matrix(self) -> Matrix:
        return tuple(tuple(r >> q & 1 for q in range(self.dim)) for r in self.rows)

    def forward(self, bits: int) -> int:
        out = 0
        for p in bits_of(bits):
            out |= self.rows[p]
        return out

    def backward(self, bits: int) -> int:
        out = 0
        for p, r in enumerate(self.rows):
            if r & bits:
                out |= 1 << p
        return out

    def __matmul__(self, other: Relation) -> Relation:
        return Relation(self.dim, tuple(other.forward(r) for r in self.rows))

    def transpose(self) -> Relation:
        cols = [0] * self.dim
        for p, r in enumerate(self.rows):
            for q in bits_of(r):
                cols[q] |= 1 << p
        return Relation(self.dim, tuple(cols))

    def is_zero(self) -> bool:
        return not any(self.rows)

    @property
    def survivors(self) -> int:
        """Bitmask of states with a nonempty row."""
        return sum(1 << p for p, r in enumerate(self.rows) if r)

    @property
    def reached(self) -> int:
        """Bitmask of states with a nonempty column."""
        out = 0
        for r in self.rows:
            out |= r
        return out


def image(r: Relation, s: StateSet, direction: str = "forward") -> StateSet:
    """Row image ``s·r`` (forward) or column preimage ``r·s`` (backward)."""
    if r.dim != s.dim:
        raise InputError(f"dimension mismatch: relation {r.dim}, state set {s.dim}")
    if direction == "forward":
        return StateSet(r.dim, r.forward(s.bits))
    if direction == "backward":
        return StateSet(r.dim, r.backward(s.bits))
    raise InputError(f"direction must be 'forward' or 'backward', got {direction!r}")


# ---------------------------------------------------------------------------
# Morphisms


def _as_matrix(raw) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in raw)


@dataclass(frozen=True)
class MatrixMorphism:
    """One n×n nonnegative integer matrix per letter of ``alphabet``."""

    alphabet: Alphabet
    generators: tuple[Matrix, ...]
    _relations: tuple[Relation, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(_as_matrix(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if len(gens) != len(self.alphabet):
            raise InputError(
                f"{len(self.alphabet)} letters but {len(gens)} generator matrices"
            )
        n = len(gens[0])
        if n < 1:
            raise InputError("matrices must be at least 1x1")
        for g in gens:
            if len(g) != n or any(len(row) != n for row in g):
                raise InputError(f"all generators must be {n}x{n}")
            if any(x < 0 for row in g for x in row):
                raise InputError("generator entries must be nonnegative")
        object.__setattr__(self, "_relations", tuple(Relation.from_matrix(g) for g in gens))

    @classmethod
    def from_dict(cls, generators: dict[str, Sequence[Sequence[int]]]) -> MatrixMorphism:
        """Build from ``{symbol: matrix}`` keeping the dict order as letter order."""
        return cls(Alphabet(tuple(generators)), tuple(_as_matrix(m) for m in generators.values()))

    @classmethod
    def from_relations(cls, alphabet: Alphabet, relations: Sequence[Relation]) -> MatrixMorphism:
        return cls(alphabet, tuple(r.to_matrix() for r in relations))

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @property
    def relations(self) -> tuple[Relation, ...]:
        """Support relation (zero/nonzero pattern) of each generator."""
        return self._relations

    def is_boolean(self) -> bool:
        return all(x <= 1 for g in self.generators for row in g for x in row)

    def transpose(self) -> MatrixMorphism:
        return MatrixMorphism(self.alphabet, tuple(transpose(g) for g in self.generators))

    def restrict(self, states: Sequence[int]) -> MatrixMorphism:
        return MatrixMorphism(self.alphabet, tuple(submatrix(g, states) for g in self.generators))

    def evaluate(self, word: Iterable[int]) -> Matrix:
        return evaluate(self, word)

    def relation_of(self, word: Iterable[int]) -> Relation:
        """Support of M(word), computed on bitmasks."""
        rel = Relation.identity(self.dim)
        for a in self.alphabet.check_word(word):
            rel = rel @ self._relations[a]
        return rel

    def support_graph(self) -> tuple[int, ...]:
        """Union of the letter relations as successor bitmasks."""
        rows = [0] * self.dim
        for r in self._relations:
            for p, mask in enumerate(r.rows):
                rows[p] |= mask
        return tuple(rows)


def evaluate(m: MatrixMorphism, word: Iterable[int]) -> Matrix:
    """Exact product M(a_1)···M(a_l); the identity for the empty word."""
    word = m.alphabet.check_word(word)
    n = m.dim
    if not word:
        return identity(n)
    acc = m.generators[word[0]]
    for a in word[1:]:
        acc = matmul(acc, m.generators[a])
    return acc


@dataclass
class SynthesisCertificate:
    """A synthesized word plus the intermediate words that justify it.

    ``bound`` is the closed-form length bound (floored to an int) that the
    word is guaranteed to satisfy; ``details`` holds pipeline-specific
    witnesses (y, z, separators, per-block words, ...), all as letter tuples.
    """

    kind: str
    word: Word
    bound: int
    rank: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.word)


def killing_bound(n: int) -> int:
    """floor(n^5/16 + 15 n^4/16)."""
    return n**4 * (n + 15) // 16
