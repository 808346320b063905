"""Finite codes: decipherability, flower automata and uncompletable words."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .analysis import mortality, require_jsr
from .core import (
    Alphabet,
    InputError,
    MatrixMorphism,
    PreconditionError,
    Relation,
    SynthesisCertificate,
    Word,
)
from .sc_synthesis import ScContext, _context_from, _kill_from_context, _Separation


class NotACodeError(PreconditionError):
    def __init__(self, witness: Word, left: list[Word], right: list[Word]):
        super().__init__(
            "not_a_code",
            "word set is not uniquely decipherable",
            {"word": witness, "factorizations": [left, right]},
        )
        self.witness = witness
        self.factorizations = (left, right)


@dataclass(frozen=True)
class Ambiguity:
    word: Word
    left: list[Word]
    right: list[Word]


def sardinas_patterson(words: Sequence[Word]) -> tuple[bool, Ambiguity | None]:
    """Decide unique decipherability; on failure return a doubly factorized word.

    Breadth-first search over dangling suffixes. Each search node carries the
    two partial factorizations (the longer one is ``ahead`` by the suffix).
    """
    words = [tuple(w) for w in words]
    if any(len(w) == 0 for w in words):
        raise InputError("code words must be nonempty")
    words = list(dict.fromkeys(words))

    queue: deque = deque()
    seen: set[Word] = set()
    for x in words:
        for y in words:
            if x != y and len(y) < len(x) and x[: len(y)] == y:
                s = x[len(y):]
                if s not in seen:
                    seen.add(s)
                    queue.append((s, [x], [y]))
    while queue:
        s, ahead, behind = queue.popleft()
        for x in words:
            if x == s:
                left, right = ahead, behind + [x]
                return False, Ambiguity(sum(left, ()), left, right)
            if len(x) > len(s) and x[: len(s)] == s:
                t = x[len(s):]
                if t not in seen:
                    seen.add(t)
                    queue.append((t, behind + [x], ahead))
            elif len(x) < len(s) and s[: len(x)] == x:
                t = s[len(x):]
                if t not in seen:
                    seen.add(t)
                    queue.append((t, ahead, behind + [x]))
    return True, None


@dataclass(frozen=True)
class Code:
    """A finite code over ``alphabet``; construction enforces unique decipherability."""

    alphabet: Alphabet
    words: tuple[Word, ...]

    def __post_init__(self):
        words = tuple(self.alphabet.check_word(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise InputError("a code needs at least one word")
        if any(not w for w in words):
            raise InputError("code words must be nonempty")
        if len(set(words)) != len(words):
            raise InputError("code words must be distinct")
        ok, amb = sardinas_patterson(words)
        if not ok:
            raise NotACodeError(amb.word, amb.left, amb.right)

    @classmethod
    def from_strings(cls, words: Sequence[str | Sequence[str]], alphabet: Sequence[str] | None = None) -> Code:
        if alphabet is None:
            letters = sorted({ch for w in words for ch in (w if isinstance(w, str) else w)})
            alphabet = letters
        alpha = Alphabet(tuple(alphabet))
        return cls(alpha, tuple(alpha.parse(w) for w in words))

    @property
    def k_code(self) -> int:
        return max(len(w) for w in self.words)

    @property
    def m_code(self) -> int:
        return sum(len(w) for w in self.words)

    def render(self) -> list[str]:
        return [self.alphabet.render(w) for w in self.words]


@dataclass(frozen=True)
class FlowerAutomaton:
    morphism: MatrixMorphism
    central: int
    petal_map: tuple[tuple[int, int] | None, ...]  # state -> (word index, offset)
    return_words: tuple[Word, ...]


def _flower_of(alphabet: Alphabet, words: Sequence[Word]) -> FlowerAutomaton:
    """Petal construction without the code check (non-codes give ambiguous automata)."""
    petal: list[tuple[int, int] | None] = [None]
    index: dict[tuple[int, int], int] = {}
    for wi, x in enumerate(words):
        for j in range(1, len(x)):
            index[(wi, j)] = len(petal)
            petal.append((wi, j))
    n = len(petal)
    mats = [[[0] * n for _ in range(n)] for _ in alphabet.symbols]
    for wi, x in enumerate(words):
        states = [0] + [index[(wi, j)] for j in range(1, len(x))] + [0]
        for j, a in enumerate(x):
            mats[a][states[j]][states[j + 1]] += 1
    returns = [()] + [words[wi][j:] for wi, j in petal[1:]]
    morphism = MatrixMorphism(alphabet, tuple(tuple(map(tuple, g)) for g in mats))
    return FlowerAutomaton(morphism, 0, tuple(petal), tuple(returns))


def flower(code: Code) -> FlowerAutomaton:
    """Flower automaton with m - |X| + 1 states; state 0 is the centre."""
    fa = _flower_of(code.alphabet, code.words)
    require_jsr(fa.morphism)
    return fa


def is_uncompletable(code: Code, v: Word) -> bool:
    """v is a factor of no word of X*, i.e. v kills the flower automaton."""
    v = code.alphabet.check_word(v)
    fa = _flower_of(code.alphabet, code.words)
    return fa.morphism.relation_of(v).is_zero()


def _least_surviving_word(relations: Sequence[Relation], start: int, length: int) -> Word:
    """Lexicographically least word of the given length that ``start`` (a bitmask) survives.

    Greedy is exact here because every state of a flower automaton has an
    outgoing transition, so a nonempty set never gets stuck.
    """
    word = []
    cur = start
    for _ in range(length):
        for a, rel in enumerate(relations):
            nxt = rel.forward(cur)
            if nxt:
                word.append(a)
                cur = nxt
                break
        else:
            raise AssertionError("dead end in flower automaton")
    return tuple(word)


def code_context(code: Code, fa: FlowerAutomaton | None = None) -> ScContext:
    """y, z and survivors built with the seeded (length k-1) extender words."""
    fa = fa or flower(code)
    m = fa.morphism
    k = code.k_code
    sides = []
    for rels in (m.relations, tuple(r.transpose() for r in m.relations)):
        full = (1 << m.dim) - 1
        sides.append(
            _Separation(
                rels,
                init_for=lambda q, rels=rels: _least_surviving_word(rels, 1 << q, k - 1),
                z_init=_least_surviving_word(rels, full, k - 1),
            )
        )
    return _context_from(m, sides[0], sides[1], mortality(m, gate=False))


def code_bounds(code: Code, n: int | None = None) -> dict[str, int]:
    k, m = code.k_code, code.m_code
    n = m - len(code.words) + 1 if n is None else n
    return {
        "extender": (k - 1) * (n + 2) * n // 2,
        "z": k * (k - 1) * (n + 2) * (n + 1) // 2,
        "killing_n": (k + 1) * k * k * (n + 2) * (n + 1),
        "uncompletable": (k + 1) * k * k * (m + 2) * (m + 1),
    }


def uncompletable_word(code: Code) -> tuple[Word | None, SynthesisCertificate]:
    """Uncompletable word of length <= (k+1) k^2 (m+2)(m+1), or None if X is complete."""
    fa = flower(code)
    bounds = code_bounds(code, fa.morphism.dim)
    if not mortality(fa.morphism, gate=False):
        cert = SynthesisCertificate(
            "complete", (), bounds["uncompletable"], rank=None,
            details={"complete": True, "reason": "no killing word: average matrix has eigenvalue 1"},
        )
        return None, cert
    ctx = code_context(code, fa)
    cert = _kill_from_context(ctx, bounds["uncompletable"], "uncompletable")
    cert.details["bounds"] = bounds
    cert.details["k_code"] = code.k_code
    cert.details["m_code"] = code.m_code
    return cert.word, cert
