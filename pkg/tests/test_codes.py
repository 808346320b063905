import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from killingwords.analysis import check_jsr_le_one
from killingwords.codes import (
    Code,
    NotACodeError,
    _flower_of,
    code_bounds,
    code_context,
    flower,
    is_uncompletable,
    sardinas_patterson,
    uncompletable_word,
)
from killingwords.core import Alphabet, InputError, evaluate, is_zero
from killingwords.generators import random_code
from killingwords.oracle import is_completable_brute, shortest_uncompletable_brute


def words(*texts):
    return [tuple(ord(c) - ord("a") for c in t) for t in texts]


def test_sardinas_patterson_examples():
    ok, amb = sardinas_patterson(words("a", "ab", "ba"))
    assert not ok
    assert amb.word == (0, 1, 0)
    assert sum(amb.left, ()) == sum(amb.right, ()) == amb.word
    assert amb.left != amb.right
    assert sardinas_patterson(words("aa", "ba")) == (True, None)
    assert sardinas_patterson(words("a")) == (True, None)
    # suffix code, not prefix: still decipherable
    assert sardinas_patterson(words("a", "ab", "bb"))[0]


def _is_code_brute(ws, max_len=8):
    """No word up to max_len has two distinct factorizations."""
    counts = {(): 1}
    for length in range(1, max_len + 1):
        for w in itertools.product(range(2), repeat=length):
            c = sum(counts.get(w[: len(w) - len(x)], 0) for x in ws if w[len(w) - len(x):] == x)
            if c:
                counts[w] = c
                if c >= 2:
                    return False
    return True


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=1, max_size=3).map(tuple), min_size=1, max_size=4, unique=True))
def test_sardinas_patterson_matches_bounded_search(ws):
    ok, amb = sardinas_patterson(ws)
    if ok:
        assert _is_code_brute(ws)
    else:
        assert sum(amb.left, ()) == sum(amb.right, ()) == amb.word
        assert amb.left != amb.right
        assert all(x in ws for x in amb.left + amb.right)


def test_code_rejects_non_codes():
    with pytest.raises(NotACodeError) as err:
        Code.from_strings(["a", "ab", "ba"])
    assert err.value.reason == "not_a_code"
    assert err.value.witness == (0, 1, 0)
    with pytest.raises(InputError):
        Code(Alphabet(("a",)), ((),))


def test_flower_sizes():
    for texts, n in ((["aa", "ba"], 3), (["a"], 1), (["ab", "ba"], 3), (["abb", "ba", "a"], 4)):
        code = Code.from_strings(texts)
        fa = flower(code)
        assert fa.morphism.dim == n == code.m_code - len(code.words) + 1
        assert check_jsr_le_one(fa.morphism).ok
    single = flower(Code.from_strings(["a"]))
    assert single.morphism.generators[0] == ((1,),)


def test_flower_of_non_code_is_ambiguous():
    fa = _flower_of(Alphabet(("a", "b")), words("a", "ab", "ba"))
    verdict = check_jsr_le_one(fa.morphism)
    assert not verdict.ok
    q, v = verdict.witness
    assert evaluate(fa.morphism, v)[q][q] >= 2


def test_flower_accepts_exactly_the_star():
    code = Code.from_strings(["a", "ab", "bb"])
    fa = flower(code)
    star = set()
    for k in range(6):
        for combo in itertools.product(code.words, repeat=k):
            star.add(sum(combo, ()))
    for length in range(6):
        for w in itertools.product(range(2), repeat=length):
            assert (evaluate(fa.morphism, w)[0][0] == 1) == (w in star), w


def test_is_uncompletable_examples(code_aa_ba):
    assert is_uncompletable(code_aa_ba, (1, 1))
    assert not is_uncompletable(code_aa_ba, (0, 1))
    assert not is_uncompletable(code_aa_ba, ())


def test_is_uncompletable_matches_brute_force():
    for seed in range(30):
        code = random_code(2, 4, 3, seed)
        for length in range(5):
            for v in itertools.product(range(2), repeat=length):
                assert is_uncompletable(code, v) == (not is_completable_brute(code, v)), (code.render(), v)


def test_uncompletable_examples(code_aa_ba):
    word, cert = uncompletable_word(code_aa_ba)
    assert is_uncompletable(code_aa_ba, word)
    assert len(word) <= cert.bound == 360
    assert shortest_uncompletable_brute(code_aa_ba, 6) == (1, 1)

    complete = Code.from_strings(["a", "b"])
    word, cert = uncompletable_word(complete)
    assert word is None and cert.kind == "complete"

    only_a = Code.from_strings(["a"], alphabet=["a", "b"])
    word, cert = uncompletable_word(only_a)
    assert word is not None and 1 in word
    assert shortest_uncompletable_brute(only_a, 3) == (1,)


def test_survivor_count_at_most_longest_word():
    for seed in range(40):
        code = random_code(2 + seed % 2, 5, 4, seed)
        ctx = code_context(code)
        assert ctx.k <= code.k_code
        bounds = code_bounds(code)
        assert len(ctx.z) <= bounds["z"]
        assert len(ctx.y) <= bounds["z"]


def test_random_code_pipeline():
    for seed in range(40):
        code = random_code(2, 5, 4, seed)
        word, cert = uncompletable_word(code)
        if word is None:
            assert shortest_uncompletable_brute(code, 8) is None
        else:
            assert is_zero(evaluate(flower(code).morphism, word))
            assert is_uncompletable(code, word)
            assert len(word) <= cert.bound
            assert len(word) <= cert.details["bounds"]["killing_n"]


def test_few_states_of_an_image_survive_long_words():
    rng = random.Random(11)
    for seed in range(30):
        code = random_code(2, 5, 4, seed)
        m = flower(code).morphism
        k = code.k_code
        for _ in range(60):
            p = rng.randrange(m.dim)
            v = tuple(rng.randrange(2) for _ in range(rng.randrange(7)))
            w = tuple(rng.randrange(2) for _ in range(k - 1 + rng.randrange(4)))
            image = m.relation_of(v).rows[p]
            survivors = m.relation_of(w).survivors
            assert bin(image & survivors).count("1") <= k
