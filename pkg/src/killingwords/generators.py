"""Fixture and random-instance construction.

Randomness comes from ``random.Random(seed)`` (Mersenne Twister MT19937,
CPython's stdlib generator). Only ``Random.random`` and ``Random.randrange``
are used, so a given seed reproduces the same instance on any CPython >= 3.10.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .analysis import check_jsr_le_one, is_strongly_connected, scc_decompose
from .codes import Code, sardinas_patterson
from .core import Alphabet, InputError, MatrixMorphism

MAX_REJECTIONS = 10_000


class GenerationError(RuntimeError):
    pass


def first_primes(count: int) -> list[int]:
    primes: list[int] = []
    cand = 2
    while len(primes) < count:
        if all(cand % p for p in primes if p * p <= cand):
            primes.append(cand)
        cand += 1
    return primes


@dataclass(frozen=True)
class PrimesFamilyInstance:
    m_petals: int
    primes: tuple[int, ...]
    morphism: MatrixMorphism
    state_index: dict
    P: int

    @property
    def n(self) -> int:
        return self.morphism.dim


def primes_family(m_petals: int) -> PrimesFamilyInstance:
    """Centre 0 plus one a-cycle of length p_i per petal; b_i collapses petal i to 0.

    Letters are ``a, b1, ..., bm``. State (i, j) (1-based petal i) sits at
    index 1 + p_1 + ... + p_{i-1} + j.
    """
    if m_petals < 1:
        raise InputError("m_petals must be at least 1")
    primes = first_primes(m_petals)
    index: dict = {0: 0}
    offset = 1
    for i, p in enumerate(primes, start=1):
        for j in range(p):
            index[(i, j)] = offset + j
        offset += p
    n = offset
    a = [[0] * n for _ in range(n)]
    bs = [[[0] * n for _ in range(n)] for _ in primes]
    for i, p in enumerate(primes, start=1):
        a[0][index[(i, 0)]] = 1
        b = bs[i - 1]
        b[0][0] = 1
        for j in range(p):
            a[index[(i, j)]][index[(i, (j + 1) % p)]] = 1
            b[index[(i, j)]][0] = 1
    alphabet = Alphabet(("a",) + tuple(f"b{i}" for i in range(1, m_petals + 1)))
    morphism = MatrixMorphism(alphabet, (a, *bs))
    P = 1
    for p in primes:
        P *= p
    return PrimesFamilyInstance(m_petals, tuple(primes), morphism, index, P)


def _letters(count: int) -> Alphabet:
    return Alphabet(tuple("abcdefghijklmnopqrstuvwxyz"[:count]) if count <= 26
                    else tuple(f"x{i}" for i in range(count)))


def _draw(rng: random.Random, n: int, letters: int, density: float):
    return tuple(
        tuple(tuple(int(rng.random() < density) for _ in range(n)) for _ in range(n))
        for _ in range(letters)
    )


def _plant_cycle(rng: random.Random, gens, n: int, letters: int):
    """OR a Hamiltonian cycle in random order into the generators, each edge on a random letter."""
    mats = [[list(row) for row in g] for g in gens]
    order = list(range(n))
    rng.shuffle(order)
    for i in range(n):
        mats[rng.randrange(letters)][order[i]][order[(i + 1) % n]] = 1
    return tuple(tuple(map(tuple, g)) for g in mats)


def _weight_transient_edges(rng: random.Random, m: MatrixMorphism, max_entry: int) -> MatrixMorphism:
    owner = scc_decompose(m).class_of
    gens = []
    for g in m.generators:
        gens.append(tuple(
            tuple(
                x * (1 + rng.randrange(max_entry)) if x and owner[i] != owner[j] else x
                for j, x in enumerate(row)
            )
            for i, row in enumerate(g)
        ))
    return MatrixMorphism(m.alphabet, tuple(gens))


def random_ufa(
    n: int,
    density: float,
    seed: int,
    *,
    letters: int = 2,
    strongly_connected: bool = False,
    max_entry: int = 1,
) -> MatrixMorphism:
    """Rejection-sample 0/1 generators until the growth gate passes.

    With ``strongly_connected`` each draw also gets a planted Hamiltonian
    cycle (random state order, each edge on a random letter), so ``density``
    then controls only the extra edges; uniform draws are almost never both
    strongly connected and unambiguous once n exceeds 6.

    With ``max_entry > 1`` the accepted instance then gets weights from
    1..max_entry on edges between different strongly connected classes;
    such edges lie on no cycle, so the gate still passes.
    """
    if n < 1 or letters < 1 or max_entry < 1:
        raise InputError("n, letters and max_entry must be positive")
    if not 0 < density < 1:
        raise InputError("density must lie in (0, 1)")
    rng = random.Random(seed)
    alphabet = _letters(letters)
    for _ in range(MAX_REJECTIONS):
        gens = _draw(rng, n, letters, density)
        if strongly_connected:
            gens = _plant_cycle(rng, gens, n, letters)
        m = MatrixMorphism(alphabet, gens)
        assert not strongly_connected or is_strongly_connected(m)
        if check_jsr_le_one(m).ok:
            if max_entry > 1:
                m = _weight_transient_edges(rng, m, max_entry)
                assert check_jsr_le_one(m).ok
            return m
    raise GenerationError(
        f"no acceptable instance after {MAX_REJECTIONS} draws; try a different density"
    )


def random_strongly_connected_ufa(n: int, density: float, seed: int, letters: int = 2) -> MatrixMorphism:
    return random_ufa(n, density, seed, letters=letters, strongly_connected=True)


def random_code(alphabet_size: int, max_words: int, max_len: int, seed: int) -> Code:
    """Draw 1..max_words distinct words of length 1..max_len until they form a code."""
    if min(alphabet_size, max_words, max_len) < 1:
        raise InputError("all parameters must be at least 1")
    rng = random.Random(seed)
    alphabet = _letters(alphabet_size)
    for _ in range(MAX_REJECTIONS):
        count = 1 + rng.randrange(max_words)
        words = []
        for _ in range(count):
            length = 1 + rng.randrange(max_len)
            words.append(tuple(rng.randrange(alphabet_size) for _ in range(length)))
        words = list(dict.fromkeys(words))
        if sardinas_patterson(words)[0]:
            return Code(alphabet, tuple(words))
    raise GenerationError(f"no code found after {MAX_REJECTIONS} draws")
