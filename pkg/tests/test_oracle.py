import itertools

import pytest

from killingwords.codes import Code
from killingwords.core import evaluate, identity, is_zero, rank
from killingwords.oracle import (
    OracleCapExceeded,
    enumerate_monoid,
    is_completable_brute,
    min_rank_oracle,
    shortest_killing_word_bfs,
    shortest_uncompletable_brute,
)

from conftest import morphism, primes, random_instances, words_upto


def test_shortest_killing_word_examples(flower_aa_ba):
    assert shortest_killing_word_bfs(morphism(a=[[0, 1], [0, 0]])) == (0, 0)
    assert shortest_killing_word_bfs(morphism(a=identity(3))) is None
    assert shortest_killing_word_bfs(flower_aa_ba.morphism) == (1, 1)


def test_shortest_killing_word_is_shortest():
    for _, m in random_instances(30, 4):
        w = shortest_killing_word_bfs(m)
        if w is None:
            continue
        assert is_zero(evaluate(m, w))
        shorter = words_upto(len(m.alphabet), len(w) - 1)
        assert not any(is_zero(evaluate(m, u)) for u in shorter)


def test_monoid_examples():
    cyc = enumerate_monoid(morphism(a=[[0, 1, 0], [0, 0, 1], [1, 0, 0]]))
    assert cyc.complete and len(cyc) == 3 and min_rank_oracle(cyc) == 3

    nil = enumerate_monoid(morphism(a=[[0, 1], [0, 0]]))
    assert nil.complete and len(nil) == 3 and min_rank_oracle(nil) == 0

    ident = enumerate_monoid(morphism(a=identity(4)))
    assert min_rank_oracle(ident) == 4


def test_primes_two_monoid():
    inst = primes(2)
    m = inst.morphism
    table = enumerate_monoid(m)
    assert table.complete
    assert min_rank_oracle(table) == 1
    target = evaluate(m, m.alphabet.parse(["b1"] + ["a"] * inst.P))
    witness = table.witness(target)
    assert len(witness) == 7
    assert evaluate(m, witness) == target
    # first-found witnesses are shortest: no shorter word has the same matrix
    letters = len(m.alphabet)
    assert not any(evaluate(m, u) == target for u in words_upto(letters, 6))


def test_witnesses_reproduce_their_elements():
    for _, m in random_instances(15, 4):
        table = enumerate_monoid(m, element_cap=2_000)
        for elem, word in itertools.islice(table.elements.items(), 200):
            assert evaluate(m, word) == elem


def test_incomplete_table_refuses_min_rank():
    table = enumerate_monoid(morphism(a=[[1, 1], [0, 1]]), element_cap=10)
    assert not table.complete
    with pytest.raises(OracleCapExceeded):
        min_rank_oracle(table)


def test_min_rank_of_mortal_instance_is_zero():
    table = enumerate_monoid(morphism(a=[[0, 1], [0, 0]], b=[[0, 0], [1, 0]]))
    assert min_rank_oracle(table) == 0
    assert rank(next(e for e in table.elements if is_zero(e))) == 0


def test_uncompletable_oracle_examples(code_aa_ba):
    assert shortest_uncompletable_brute(code_aa_ba, 5) == (1, 1)
    assert shortest_uncompletable_brute(Code.from_strings(["a", "b"]), 6) is None
    assert shortest_uncompletable_brute(Code.from_strings(["a"], alphabet=["a", "b"]), 3) == (1,)
    assert is_completable_brute(code_aa_ba, (0, 1))
    assert is_completable_brute(code_aa_ba, ())
    assert not is_completable_brute(code_aa_ba, (1, 1))
