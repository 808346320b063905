"""Brute-force ground truth for small instances.

Nothing here uses the synthesis machinery; the uncompletability check works
on strings directly rather than through the flower automaton.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .codes import Code
from .core import Matrix, MatrixMorphism, Word, identity, matmul, rank

DEFAULT_ELEMENT_CAP = 200_000
DEFAULT_LEN_CAP = 64


class OracleCapExceeded(RuntimeError):
    pass


def shortest_killing_word_bfs(m: MatrixMorphism, max_len: int | None = None) -> Word | None:
    """Shortest w (lexicographically least among them) with Q·w empty.

    Subset BFS on the support relations from the full state set; complete
    because there are only 2^n subsets.
    """
    rels = m.relations
    start = (1 << m.dim) - 1
    parent: dict[int, tuple[int, int] | None] = {start: None}
    depth = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if max_len is not None and depth[s] >= max_len:
            continue
        for a, rel in enumerate(rels):
            t = rel.forward(s)
            if t in parent:
                continue
            parent[t] = (s, a)
            depth[t] = depth[s] + 1
            if t == 0:
                word = []
                node = 0
                while parent[node] is not None:
                    node, b = parent[node]
                    word.append(b)
                return tuple(reversed(word))
            queue.append(t)
    return None


@dataclass
class MonoidTable:
    """Products discovered by length-then-lex BFS, each with its first (shortest) word."""

    dim: int
    elements: dict[Matrix, Word] = field(default_factory=dict)
    complete: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def min_rank(self) -> int:
        return min(rank(e) for e in self.elements)

    def witness(self, element: Matrix) -> Word | None:
        return self.elements.get(element)


def enumerate_monoid(
    m: MatrixMorphism,
    element_cap: int = DEFAULT_ELEMENT_CAP,
    len_cap: int = DEFAULT_LEN_CAP,
) -> MonoidTable:
    table = MonoidTable(m.dim)
    eye = identity(m.dim)
    table.elements[eye] = ()
    frontier = [eye]
    length = 0
    while frontier:
        if length >= len_cap:
            return table
        length += 1
        nxt = []
        for elem in frontier:
            word = table.elements[elem]
            for a, g in enumerate(m.generators):
                prod = matmul(elem, g)
                if prod not in table.elements:
                    if len(table.elements) >= element_cap:
                        return table
                    table.elements[prod] = word + (a,)
                    nxt.append(prod)
        frontier = nxt
    table.complete = True
    return table


def min_rank_oracle(table: MonoidTable) -> int:
    if not table.complete:
        raise OracleCapExceeded("monoid enumeration did not reach closure")
    return table.min_rank


# ---------------------------------------------------------------------------
# codes


def is_completable_brute(code: Code, v: Word) -> bool:
    """Search for u, w with u v w in X*.

    It suffices to try |u| <= k-1 (u is the part of the first covering code
    word before v) and to let w finish the last code word, i.e. to accept as
    soon as some X-parse of u v ends inside a code word.
    """
    words = [tuple(x) for x in code.words]
    proper_prefixes = {x[:j] for x in words for j in range(len(x))}
    k = code.k_code
    v = tuple(v)
    letters = range(len(code.alphabet))
    for ulen in range(k):
        for u in itertools.product(letters, repeat=ulen):
            s = u + v
            ok = [False] * (len(s) + 1)
            ok[0] = True
            for i in range(len(s) + 1):
                if not ok[i]:
                    continue
                if s[i:] in proper_prefixes:
                    return True
                for x in words:
                    if s[i:i + len(x)] == x:
                        ok[i + len(x)] = True
    return False


def shortest_uncompletable_brute(code: Code, max_len: int) -> Word | None:
    """First uncompletable word in length-then-lex order, up to ``max_len``.

    Only completable words are extended: completable words are closed under
    taking factors, so a shortest uncompletable word has completable prefixes.
    """
    level: list[Word] = [()]
    for _ in range(max_len):
        nxt = []
        for v in level:
            for a in range(len(code.alphabet)):
                cand = v + (a,)
                if not is_completable_brute(code, cand):
                    return cand
                nxt.append(cand)
        level = nxt
    return None
