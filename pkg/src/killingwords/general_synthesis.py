"""Minimum-rank words for arbitrary morphisms with rho <= 1.

Order the strongly connected classes so every generator is block upper
triangular, solve each diagonal block on its own and concatenate the block
words in class order. The rank of the result equals the sum of the block
minimum ranks, which is the minimum rank of the whole monoid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import SccDecomposition, require_jsr, scc_decompose
from .core import (
    InputError,
    MatrixMorphism,
    PreconditionError,
    StateSet,
    SynthesisCertificate,
    Word,
    evaluate,
    killing_bound,
    rank,
    submatrix,
)
from .sc_synthesis import synthesize_sc


@dataclass(frozen=True)
class BlockPlan:
    decomposition: SccDecomposition
    block_words: tuple[Word, ...]
    block_ranks: tuple[int, ...]
    block_certificates: tuple[SynthesisCertificate, ...]


def restrict_block(m: MatrixMorphism, class_states: StateSet, decomposition: SccDecomposition | None = None) -> MatrixMorphism:
    """Diagonal block of ``m`` on one strongly connected class."""
    decomposition = decomposition or scc_decompose(m)
    states = tuple(class_states)
    if states not in decomposition.classes:
        raise InputError(f"{sorted(states)} is not a strongly connected class")
    return m.restrict(states)


def plan_blocks(m: MatrixMorphism) -> BlockPlan:
    dec = scc_decompose(m)
    words, ranks, certs = [], [], []
    for states in dec.classes:
        block = m.restrict(states)
        if all(g[0][0] == 0 for g in block.generators) and len(states) == 1:
            # transient state: every letter is already the 1x1 zero map
            cert = SynthesisCertificate("killing", (0,), killing_bound(1), rank=0)
        else:
            cert = synthesize_sc(block)
        words.append(cert.word)
        ranks.append(cert.rank)
        certs.append(cert)
    return BlockPlan(dec, tuple(words), tuple(ranks), tuple(certs))


def synthesize(m: MatrixMorphism) -> tuple[Word, SynthesisCertificate]:
    """Word w with |w| <= n^5/16 + 15 n^4/16 whose matrix has minimum rank."""
    require_jsr(m)
    plan = plan_blocks(m)
    word: Word = ()
    stage_ranks = []
    prefix_states: list[int] = []
    total = 0
    for states, w_i, r_i in zip(plan.decomposition.classes, plan.block_words, plan.block_ranks):
        word = word + w_i
        total += r_i
        prefix_states.extend(states)
        stage = rank(submatrix(evaluate(m, word), sorted(prefix_states)))
        # rank subadditivity over the block sum
        assert stage <= total, (stage, total)
        stage_ranks.append(stage)
    final_rank = stage_ranks[-1] if stage_ranks else 0
    assert final_rank == total
    cert = SynthesisCertificate(
        kind="killing" if total == 0 else "min_rank",
        word=word,
        bound=killing_bound(m.dim),
        rank=total,
        details={
            "classes": plan.decomposition.classes,
            "block_words": plan.block_words,
            "block_ranks": plan.block_ranks,
            "stage_ranks": tuple(stage_ranks),
            "blocks": [c.details for c in plan.block_certificates],
        },
    )
    return word, cert


def kill(m: MatrixMorphism) -> tuple[Word, SynthesisCertificate]:
    """Killing word for a mortal morphism (not necessarily strongly connected)."""
    word, cert = synthesize(m)
    if cert.rank != 0:
        raise PreconditionError("immortal", "morphism is not mortal", {"min_rank": cert.rank})
    return word, cert
