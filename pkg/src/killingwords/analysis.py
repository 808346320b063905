"""Structural gates: SCCs, the growth (JSR <= 1) test, mortality, coreachability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import (
    InputError,
    MatrixMorphism,
    PreconditionError,
    Relation,
    StateSet,
    Word,
    bits_of,
    evaluate,
    rank,
)


@dataclass(frozen=True)
class SccDecomposition:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class JsrVerdict:
    ok: bool
    witness: tuple[int, Word] | None = None

    def as_dict(self, m: MatrixMorphism | None = None) -> dict:
        out: dict = {"ok": self.ok}
        if self.witness is not None:
            q, v = self.witness
            out["state"] = q
            out["word"] = m.alphabet.symbols_of(v) if m else list(v)
            if m is not None:
                out["diagonal_entry"] = evaluate(m, v)[q][q]
        return out


# ---------------------------------------------------------------------------
# reachability


def reachability(m: MatrixMorphism) -> tuple[int, ...]:
    """``reach[i]`` is the bitmask of j with i -> j (reflexive)."""
    succ = m.support_graph()
    reach = []
    for i in range(m.dim):
        seen = 1 << i
        frontier = seen
        while frontier:
            nxt = 0
            for p in bits_of(frontier):
                nxt |= succ[p]
            frontier = nxt & ~seen
            seen |= nxt
        reach.append(seen)
    return tuple(reach)


def scc_decompose(m: MatrixMorphism) -> SccDecomposition:
    """Mutual-reachability classes, topologically ordered along ->.

    Ties between incomparable classes go to the one with the smallest state.
    """
    reach = reachability(m)
    n = m.dim
    class_mask: list[int] = []
    owner = [-1] * n
    for i in range(n):
        if owner[i] >= 0:
            continue
        mask = 0
        for j in bits_of(reach[i]):
            if reach[j] >> i & 1:
                mask |= 1 << j
        for j in bits_of(mask):
            owner[j] = len(class_mask)
        class_mask.append(mask)

    h = len(class_mask)
    preds = [set() for _ in range(h)]
    for c, mask in enumerate(class_mask):
        i = next(bits_of(mask))
        for j in bits_of(reach[i] & ~mask):
            preds[owner[j]].add(c)
    order: list[int] = []
    placed = set()
    while len(order) < h:
        # class indices already follow min-state order, so the first ready one wins
        c = next(c for c in range(h) if c not in placed and preds[c] <= placed)
        order.append(c)
        placed.add(c)

    classes = tuple(tuple(bits_of(class_mask[c])) for c in order)
    class_of = [0] * n
    for idx, states in enumerate(classes):
        for q in states:
            class_of[q] = idx
    return SccDecomposition(classes, tuple(class_of))


def is_strongly_connected(m: MatrixMorphism) -> bool:
    full = (1 << m.dim) - 1
    return all(r == full for r in reachability(m))


# ---------------------------------------------------------------------------
# growth gate


def check_jsr_le_one(m: MatrixMorphism) -> JsrVerdict:
    """Decide rho(M) <= 1 by searching for a word v and state q with M(v)(q,q) >= 2.

    Such a pair exists iff two distinct v-labelled paths q -> q exist in the
    multigraph whose edge multiplicities are the generator entries. Search
    runs over triples (r, s, diverged) tracking two paths in lockstep.
    """
    n = m.dim
    gens = m.generators
    rels = m.relations
    for p in range(n):
        start = (p, p, False)
        target = (p, p, True)
        parent: dict[tuple, tuple | None] = {start: None}
        queue = deque([start])
        found = False
        while queue and not found:
            node = queue.popleft()
            r, s, div = node
            for a, rel in enumerate(rels):
                row_r = rel.rows[r]
                if not row_r:
                    continue
                succ = []
                if not div and r == s:
                    for r2 in bits_of(row_r):
                        succ.append((r2, r2, False))
                        if gens[a][r][r2] >= 2:
                            succ.append((r2, r2, True))
                        for s2 in bits_of(row_r):
                            if s2 > r2:
                                succ.append((r2, s2, True))
                else:
                    row_s = rel.rows[s]
                    for r2 in bits_of(row_r):
                        for s2 in bits_of(row_s):
                            succ.append((min(r2, s2), max(r2, s2), True))
                for nxt in succ:
                    if nxt not in parent:
                        parent[nxt] = (node, a)
                        if nxt == target:
                            found = True
                            break
                        queue.append(nxt)
                if found:
                    break
        if found:
            word = []
            node = target
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            v = tuple(reversed(word))
            assert evaluate(m, v)[p][p] >= 2
            return JsrVerdict(False, (p, v))
    return JsrVerdict(True)


def require_jsr(m: MatrixMorphism) -> None:
    verdict = check_jsr_le_one(m)
    if not verdict.ok:
        raise PreconditionError(
            "jsr_gt_one",
            "joint spectral radius exceeds 1: products grow exponentially",
            verdict.as_dict(m),
        )


def require_strongly_connected(m: MatrixMorphism) -> None:
    if not is_strongly_connected(m):
        raise PreconditionError("not_strongly_connected", "morphism is not strongly connected")


def mortality(m: MatrixMorphism, *, gate: bool = True) -> bool:
    """True iff the zero matrix is a product of generators.

    With A the average of the generators, mortality holds iff A x = x has
    only the trivial solution, i.e. iff sum_a M(a) - |Sigma| I is nonsingular.
    """
    if gate:
        require_jsr(m)
    n, k = m.dim, len(m.alphabet)
    total = [[-k * (i == j) for j in range(n)] for i in range(n)]
    for g in m.generators:
        for i in range(n):
            row = total[i]
            for j, x in enumerate(g[i]):
                row[j] += x
    return rank(total) == n


# ---------------------------------------------------------------------------
# pair graph


def _pairs_within(mask: int) -> list[int]:
    """Singletons and 2-subsets of ``mask``, ordered by their sorted index tuple."""
    members = list(bits_of(mask))
    out = []
    for i, x in enumerate(members):
        out.append(1 << x)
        for y in members[i + 1:]:
            out.append(1 << x | 1 << y)
    return out


def pair_bfs(relations: Sequence[Relation], sources: Sequence[int]) -> dict[int, tuple[int, int] | None]:
    """BFS over {r, s} vertices with edges R -a-> S whenever R·a ⊇ S.

    Returns parent pointers ``vertex -> (previous vertex, letter)``.
    """
    parent: dict[int, tuple[int, int] | None] = {}
    queue = deque()
    for src in sources:
        if src not in parent:
            parent[src] = None
            queue.append(src)
    while queue:
        node = queue.popleft()
        for a, rel in enumerate(relations):
            img = rel.forward(node)
            for nxt in _pairs_within(img):
                if nxt not in parent:
                    parent[nxt] = (node, a)
                    queue.append(nxt)
    return parent


def _path_to(parent: dict[int, tuple[int, int] | None], target: int) -> Word:
    word = []
    node = target
    while parent[node] is not None:
        node, a = parent[node]
        word.append(a)
    return tuple(reversed(word))


class Coreachability:
    """Per-state pair-graph searches for a strongly connected 0/1 morphism.

    ``witness(q, q2)`` returns a shortest w with q·w ⊇ {q, q2}.
    """

    def __init__(self, relations: Sequence[Relation]):
        self.relations = tuple(relations)
        self.dim = self.relations[0].dim
        self._trees: dict[int, dict] = {}

    def _tree(self, q: int) -> dict:
        tree = self._trees.get(q)
        if tree is None:
            tree = self._trees[q] = pair_bfs(self.relations, [1 << q])
        return tree

    def partners(self, q: int) -> int:
        """Bitmask of C(q), the states coreachable with q."""
        out = 0
        for v in self._tree(q):
            if v >> q & 1 and v != 1 << q:
                out |= v & ~(1 << q)
        return out

    def witness(self, q: int, q2: int) -> Word | None:
        tree = self._tree(q)
        target = 1 << q | 1 << q2
        if target not in tree:
            return None
        return _path_to(tree, target)


def _check_pair(m: MatrixMorphism, q: int, q2: int | None = None) -> None:
    for s in (q, q2):
        if s is not None and not 0 <= s < m.dim:
            raise InputError(f"state {s} out of range")
    if q2 is not None and q == q2:
        raise PreconditionError("same_state", "states must be distinct")
    require_strongly_connected(m)
    require_jsr(m)


def coreachability_witness(m: MatrixMorphism, q: int, q2: int) -> Word | None:
    """Shortest w with q·w ⊇ {q, q2}, or None if q, q2 are not coreachable."""
    _check_pair(m, q, q2)
    return Coreachability(m.relations).witness(q, q2)


def coreachable_set(m: MatrixMorphism, q: int) -> StateSet:
    _check_pair(m, q)
    return StateSet(m.dim, Coreachability(m.relations).partners(q))


def merge_witness_from_relations(relations: Sequence[Relation], q: int, q2: int) -> Word | None:
    """Shortest w with q·w ∩ q2·w nonempty.

    Runs the coreachability search on the transposed relations from every
    singleton and reverses the word found.
    """
    dual = [r.transpose() for r in relations]
    n = relations[0].dim
    tree = pair_bfs(dual, [1 << p for p in range(n)])
    target = 1 << q | 1 << q2
    if target not in tree:
        return None
    return tuple(reversed(_path_to(tree, target)))


def mergeability_witness(m: MatrixMorphism, q: int, q2: int) -> Word | None:
    _check_pair(m, q, q2)
    return merge_witness_from_relations(m.relations, q, q2)
