import functools
import itertools
import random

import pytest

from killingwords.analysis import is_strongly_connected
from killingwords.codes import Code, flower
from killingwords.core import MatrixMorphism
from killingwords.generators import primes_family, random_ufa
from killingwords.sc_synthesis import extender_word


def morphism(**gens):
    return MatrixMorphism.from_dict(gens)


@functools.lru_cache(maxsize=None)
def primes(m):
    return primes_family(m)


def random_instances(count, n_max, *, keep=lambda m: True, sc=False, n_min=1, start=0, max_entry=1):
    """Deterministic stream of JSR-gated instances: (seed, morphism)."""
    out = []
    for seed in itertools.count(start):
        n = n_min + seed % (n_max - n_min + 1)
        letters = 2 + seed % 2
        density = min(0.9, (1.0 if sc else 3.2) / (n * letters))
        m = random_ufa(n, density, seed, letters=letters, strongly_connected=sc,
                       max_entry=max_entry if seed % 3 == 0 else 1)
        if keep(m):
            out.append((seed, m))
            if len(out) == count:
                return out


def random_complete_dfa(n, letters, seed, *, transpose=False):
    """Strongly connected complete DFA (every letter a total function); immortal."""
    rng = random.Random(seed)
    while True:
        gens = {}
        for a in range(letters):
            g = [[0] * n for _ in range(n)]
            for p in range(n):
                g[p][rng.randrange(n)] = 1
            gens["abc"[a]] = g
        m = MatrixMorphism.from_dict(gens)
        if is_strongly_connected(m):
            return m.transpose() if transpose else m


def immortal_sc_instances(count, n_max, start=0):
    out = []
    for seed in range(start, start + count):
        n = 2 + seed % (n_max - 1)
        out.append((seed, random_complete_dfa(n, 2 + seed % 2, seed, transpose=seed % 3 == 1)))
    return out


def words_upto(letters, length):
    for ell in range(length + 1):
        yield from itertools.product(range(letters), repeat=ell)


def reachable_sets(m, start_mask):
    """All sets start·w, by subset BFS on the support relations."""
    seen = {start_mask}
    todo = [start_mask]
    while todo:
        s = todo.pop()
        for rel in m.relations:
            t = rel.forward(s)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def coreachable_oracle(m):
    """q -> states q2 with some p·w containing both."""
    out = {q: set() for q in range(m.dim)}
    for p in range(m.dim):
        for s in reachable_sets(m, 1 << p):
            members = [q for q in range(m.dim) if s >> q & 1]
            for q, q2 in itertools.permutations(members, 2):
                out[q].add(q2)
    return out


def mergeable_oracle(m, q, q2):
    """Whether q·w and q2·w meet for some w, by BFS over image pairs."""
    start = (1 << q, 1 << q2)
    seen = {start}
    todo = [start]
    while todo:
        s, t = todo.pop()
        if s & t:
            return True
        for rel in m.relations:
            nxt = (rel.forward(s), rel.forward(t))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return False


def max_image(m):
    """max |q u| over states q and words u."""
    return max(bin(s).count("1") for q in range(m.dim) for s in reachable_sets(m, 1 << q))


def survives(rel, q):
    return rel.rows[q] != 0


def check_context(m, ctx):
    n = m.dim
    rel_z, rel_y = ctx.rel(ctx.z), ctx.rel(ctx.y)
    cor = coreachable_oracle(m)
    for q, q2 in itertools.combinations(range(n), 2):
        if q2 in cor[q]:
            assert not (survives(rel_z, q) and survives(rel_z, q2)), (q, q2)
        if mergeable_oracle(m, q, q2):
            reached = rel_y.reached
            assert not (reached >> q & 1 and reached >> q2 & 1), (q, q2)
    expected = [q for q in range(n) if rel_y.reached >> q & 1 and survives(rel_z, q)]
    assert list(ctx.survivors) == expected
    # yz may already kill a mortal morphism; otherwise some state gets through
    assert ctx.k >= 1 or ctx.mortal
    blocks = [rel_z.rows[q] for q in ctx.survivors]
    for b1, b2 in itertools.combinations(blocks, 2):
        assert b1 & b2 == 0
    assert all(blocks)

    c, mm = max_image(m), max_image(m.transpose())
    assert ctx.c <= c and ctx.m_par <= mm
    assert c + mm + ctx.k <= n + 3
    assert 4 * len(ctx.z) <= (c - 1) * (n + 2) * n * (n - 1)
    assert 4 * len(ctx.y) <= (mm - 1) * (n + 2) * n * (n - 1)
    for q in range(n):
        w = extender_word(m, q)
        assert 2 * len(w) <= (c - 1) * (n + 2) * (n - 1)
        rel = m.relation_of(w)
        assert not any(survives(rel, q2) for q2 in cor[q])


def check_containment(m, ctx, probes=200, seed=0):
    rng = random.Random(seed)
    rel_z = ctx.rel(ctx.z)
    blocks = {q: rel_z.rows[q] for q in ctx.survivors}
    letters = len(m.alphabet)
    for _ in range(probes):
        x = tuple(rng.randrange(letters) for _ in range(rng.randrange(3 * m.dim + 1)))
        rel = ctx.rel(ctx.z + x + ctx.yz)
        for q in ctx.survivors:
            image = rel.rows[q]
            assert any(image & ~b == 0 for b in blocks.values()), (q, x)


@pytest.fixture
def nilpotent():
    return morphism(a=[[0, 1], [0, 0]])


@pytest.fixture
def code_aa_ba():
    return Code.from_strings(["aa", "ba"])


@pytest.fixture
def flower_aa_ba(code_aa_ba):
    return flower(code_aa_ba)


@pytest.fixture
def flower_aa_ab():
    return flower(Code.from_strings(["aa", "ab"]))


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion; the test still asserts."""

    def record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
