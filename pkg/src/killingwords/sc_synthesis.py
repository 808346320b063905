"""Killing words and minimum-rank words for strongly connected morphisms.

Pipeline for a strongly connected morphism M with rho(M) <= 1 (so every
product is a 0/1 matrix, i.e. M is an unambiguous automaton):

* ``extender_word(q)``: grows q·w until no state coreachable with q survives w;
* ``z``: no two coreachable states survive z; ``y``: the dual statement for
  mergeable states, obtained on the transposed morphism and reversed;
* ``q_1..q_k``: states reached by y that survive z;
* ``separator_word(i)``: a word x of length <= n with q_i z x y z empty,
  found by a linear-algebra basis search;
* killing word: yz followed by x_i y z blocks until everything dies;
* minimum-rank word: yz itself, of rank k.

Ties are always broken towards the smallest state index and the
lexicographically smallest pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .analysis import (
    Coreachability,
    mortality,
    require_jsr,
    require_strongly_connected,
)
from .core import (
    InputError,
    MatrixMorphism,
    PreconditionError,
    Relation,
    RowSpan,
    SynthesisCertificate,
    Word,
    bits_of,
    killing_bound,
    lowest_bit,
)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def relation_of(relations: Sequence[Relation], word: Word) -> Relation:
    rel = Relation.identity(relations[0].dim)
    for a in word:
        rel = rel @ relations[a]
    return rel


class _Separation:
    """The z-word machinery for one orientation of a 0/1 morphism.

    ``init_for(q)`` seeds each extender word (empty by default) and
    ``z_init`` seeds the z loop; the code pipeline uses length k-1 seeds.
    """

    def __init__(
        self,
        relations: Sequence[Relation],
        init_for: Callable[[int], Word] | None = None,
        z_init: Word = (),
    ):
        self.relations = tuple(relations)
        self.n = self.relations[0].dim
        self.coreach = Coreachability(self.relations)
        self.init_for = init_for or (lambda q: ())
        self.z_init = tuple(z_init)
        self._extenders: dict[int, tuple[Word, int, int]] = {}

    def extender(self, q: int) -> tuple[Word, int, int]:
        """Return (w_q, |q·w_q|, iterations)."""
        hit = self._extenders.get(q)
        if hit is not None:
            return hit
        partners = self.coreach.partners(q)
        w = self.init_for(q)
        rel = relation_of(self.relations, w)
        if w and not rel.rows[q]:
            raise PreconditionError("bad_init", f"seed word kills state {q}")
        iterations = 0
        while True:
            alive = partners & rel.survivors
            if not alive:
                break
            q2 = lowest_bit(alive)
            wq = self.coreach.witness(q, q2)
            before = rel.rows[q]
            rel = relation_of(self.relations, wq) @ rel
            # unambiguity makes q·w grow strictly; a failure means rho > 1
            assert rel.rows[q] & before == before and rel.rows[q] != before
            w = wq + w
            iterations += 1
        out = (w, popcount(rel.rows[q]), iterations)
        self._extenders[q] = out
        return out

    def z_word(self) -> tuple[Word, dict]:
        partner = [self.coreach.partners(p) for p in range(self.n)]
        w = self.z_init
        rel = relation_of(self.relations, w)
        picks = []
        c_seen = 1
        while True:
            surv = rel.survivors
            pair = None
            for p in bits_of(surv):
                rest = partner[p] & surv & ~((1 << (p + 1)) - 1)
                if rest:
                    pair = (p, lowest_bit(rest))
                    break
            if pair is None:
                break
            q = lowest_bit(rel.rows[pair[0]])
            wq, size, _ = self.extender(q)
            c_seen = max(c_seen, size)
            picks.append({"pair": pair, "q": q, "w_q": wq})
            w = w + wq
            rel = rel @ relation_of(self.relations, wq)
        return w, {"iterations": len(picks), "picks": picks, "c_seen": c_seen}


@dataclass
class ScContext:
    """Words y, z and the surviving states q_1..q_k of a strongly connected morphism.

    ``c`` and ``m_par`` are the largest |q w| and |w q| actually produced by
    the extender words (lower bounds on the true maxima).
    """

    morphism: MatrixMorphism
    z: Word
    y: Word
    survivors: tuple[int, ...]
    c: int
    m_par: int
    z_info: dict = field(default_factory=dict, repr=False)
    y_info: dict = field(default_factory=dict, repr=False)
    mortal: bool | None = None
    _separators: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.morphism.dim

    @property
    def k(self) -> int:
        return len(self.survivors)

    @property
    def yz(self) -> Word:
        return self.y + self.z

    def rel(self, word: Word) -> Relation:
        return relation_of(self.morphism.relations, word)


def _check_sc(m: MatrixMorphism) -> None:
    require_strongly_connected(m)
    require_jsr(m)


def extender_word(m: MatrixMorphism, q: int) -> Word:
    """w_q: no state q' != q coreachable with q survives it."""
    _check_sc(m)
    if not 0 <= q < m.dim:
        raise InputError(f"state {q} out of range")
    return _Separation(m.relations).extender(q)[0]


def _context_from(
    m: MatrixMorphism, primal: _Separation, dual: _Separation, mortal: bool | None
) -> ScContext:
    z, z_info = primal.z_word()
    y_dual, y_info = dual.z_word()
    y = tuple(reversed(y_dual))
    rels = m.relations
    reached = relation_of(rels, y).reached
    surv = relation_of(rels, z).survivors
    return ScContext(
        morphism=m,
        z=z,
        y=y,
        survivors=tuple(bits_of(reached & surv)),
        c=z_info["c_seen"],
        m_par=y_info["c_seen"],
        z_info=z_info,
        y_info=y_info,
        mortal=mortal,
    )


def build_context(m: MatrixMorphism, *, gate: bool = True) -> ScContext:
    if gate:
        _check_sc(m)
    primal = _Separation(m.relations)
    dual = _Separation([r.transpose() for r in m.relations])
    return _context_from(m, primal, dual, mortality(m, gate=False))


def separator_word(ctx: ScContext, i: int) -> Word:
    """x_i with |x_i| <= n and q_i z x_i y z empty (0-based ``i``)."""
    if not 0 <= i < ctx.k:
        raise InputError(f"separator index {i} out of range for k={ctx.k}")
    if ctx.mortal is False:
        raise PreconditionError("immortal", "separator words need a mortal morphism")
    hit = ctx._separators.get(i)
    if hit is not None:
        return hit
    m = ctx.morphism
    n = m.dim
    gens = m.generators
    qi = ctx.survivors[i]
    e_mask = ctx.rel(ctx.z).rows[qi]
    surv_mask = sum(1 << q for q in ctx.survivors)
    f_mask = ctx.rel(ctx.y).backward(surv_mask)
    f = [f_mask >> q & 1 for q in range(n)]

    def step(vec: list[int], a: int) -> list[int]:
        g = gens[a]
        out = [0] * n
        for p, x in enumerate(vec):
            if x:
                row = g[p]
                for q in range(n):
                    if row[q]:
                        out[q] += x * row[q]
        return out

    e = [e_mask >> q & 1 for q in range(n)]
    span = RowSpan(n + 1)
    span.add(e + [1])
    basis: list[tuple[Word, list[int]]] = [((), e)]
    idx = 0
    while idx < len(basis):
        u, vec = basis[idx]
        for a in range(len(m.alphabet)):
            cand = step(vec, a)
            if span.add(cand + [1]):
                basis.append((u + (a,), cand))
        idx += 1
    assert len(basis) <= n + 1
    chosen = None
    for x, vec in basis:
        val = sum(v * fv for v, fv in zip(vec, f))
        # unambiguity plus the choice of y, z caps this at 1
        assert val <= 1, "e M(x) f exceeded 1"
        if val == 0 and chosen is None:
            chosen = x
    if chosen is None:
        raise PreconditionError("immortal", "no separator: the morphism is not mortal")
    ctx._separators[i] = chosen
    return chosen


def _generator_of(ctx: ScContext, zrows: dict[int, int], mask: int) -> list[int]:
    gen = [q for q in ctx.survivors if zrows[q] & mask]
    covered = 0
    for q in gen:
        assert zrows[q] & ~mask == 0
        covered |= zrows[q]
    assert covered == mask, "set is not a union of q_i z blocks"
    return gen


def _kill_from_context(ctx: ScContext, bound: int, kind: str) -> SynthesisCertificate:
    rels = ctx.morphism.relations
    yz = ctx.yz
    rel_z = ctx.rel(ctx.z)
    zrows = {q: rel_z.rows[q] for q in ctx.survivors}
    rel_yz = ctx.rel(yz)
    w = yz
    rel = rel_yz
    steps = []
    while rel.reached:
        gen = _generator_of(ctx, zrows, rel.reached)
        i = ctx.survivors.index(gen[0])
        x = separator_word(ctx, i)
        block = x + yz
        rel = rel @ relation_of(rels, block)
        w = w + block
        steps.append({"q": gen[0], "generator_size": len(gen), "x": x})
    if len(steps) > ctx.k:
        raise AssertionError("killing loop ran more than k iterations")
    return SynthesisCertificate(
        kind=kind,
        word=w,
        bound=bound,
        rank=0,
        details={
            "y": ctx.y,
            "z": ctx.z,
            "survivors": ctx.survivors,
            "k": ctx.k,
            "c_seen": ctx.c,
            "m_seen": ctx.m_par,
            "steps": steps,
            "separators": dict(ctx._separators),
        },
    )


def _single_state(m: MatrixMorphism) -> SynthesisCertificate:
    zero = next((a for a, g in enumerate(m.generators) if g[0][0] == 0), None)
    if zero is None:
        return SynthesisCertificate("min_rank", (), killing_bound(1), rank=1)
    return SynthesisCertificate("killing", (zero,), killing_bound(1), rank=0)


def killing_word(m: MatrixMorphism) -> tuple[Word, SynthesisCertificate]:
    """A word w with M(w) = 0 and |w| <= n^5/16 + 15 n^4/16."""
    _check_sc(m)
    if m.dim == 1:
        cert = _single_state(m)
        if cert.rank != 0:
            raise PreconditionError("immortal", "morphism is not mortal; use min_rank_word")
        return cert.word, cert
    ctx = build_context(m, gate=False)
    if not ctx.mortal:
        raise PreconditionError("immortal", "morphism is not mortal; use min_rank_word")
    cert = _kill_from_context(ctx, killing_bound(m.dim), "killing")
    return cert.word, cert


def _min_rank_from_context(ctx: ScContext) -> SynthesisCertificate:
    return SynthesisCertificate(
        kind="min_rank",
        word=ctx.yz,
        bound=killing_bound(ctx.n),
        rank=ctx.k,
        details={
            "y": ctx.y,
            "z": ctx.z,
            "survivors": ctx.survivors,
            "k": ctx.k,
            "c_seen": ctx.c,
            "m_seen": ctx.m_par,
        },
    )


def min_rank_word(m: MatrixMorphism) -> tuple[Word, SynthesisCertificate]:
    """yz, whose matrix has the minimum rank k over all products."""
    _check_sc(m)
    if m.dim == 1:
        cert = _single_state(m)
        if cert.rank != 1:
            raise PreconditionError("mortal", "morphism is mortal; use killing_word")
        return cert.word, cert
    ctx = build_context(m, gate=False)
    if ctx.mortal:
        raise PreconditionError("mortal", "morphism is mortal; use killing_word")
    cert = _min_rank_from_context(ctx)
    return cert.word, cert


def synthesize_sc(m: MatrixMorphism) -> SynthesisCertificate:
    """Dispatch on mortality: killing word if mortal, else minimum-rank word."""
    _check_sc(m)
    if m.dim == 1:
        return _single_state(m)
    ctx = build_context(m, gate=False)
    if ctx.mortal:
        return _kill_from_context(ctx, killing_bound(m.dim), "killing")
    return _min_rank_from_context(ctx)
