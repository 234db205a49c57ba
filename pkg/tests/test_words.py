import doctest
import random

import pytest

import locfree.words as words
from locfree.errors import AlphabetError, RangeError
from locfree.words import (Alphabet, CyclicWord, build_W, build_W_length,
                           conjugate, cyclic_reduce, exponent_sum, invert,
                           make_weights, multiply, reduce_word, rotate,
                           substitute)


def test_doctests():
    failures, _ = doctest.testmod(words)
    assert failures == 0


def test_reduce_examples():
    assert reduce_word("aA") == ""
    assert reduce_word("TatTAt") == ""
    assert reduce_word("xYYyy") == "x"
    assert reduce_word("abBA") == ""
    assert reduce_word("") == ""


def test_reduce_idempotent():
    rng = random.Random(1)
    for _ in range(200):
        raw = "".join(rng.choice("abABtT") for _ in range(rng.randrange(0, 20)))
        once = reduce_word(raw)
        assert reduce_word(once) == once


def _reduce_random_order(raw, rng):
    letters = list(raw)
    while True:
        sites = [i for i in range(len(letters) - 1)
                 if letters[i] == letters[i + 1].swapcase()]
        if not sites:
            return "".join(letters)
        i = rng.choice(sites)
        del letters[i:i + 2]


def test_reduction_confluence_500_random_words():
    rng = random.Random(42)
    for _ in range(500):
        raw = "".join(rng.choice("abABtT") for _ in range(rng.randrange(0, 24)))
        assert reduce_word(raw) == _reduce_random_order(raw, rng)


def test_multiply_invert_conjugate():
    assert multiply("ab", "Ba") == "aa"
    assert invert("Tat") == "TAt"
    assert invert(invert("TaBt")) == "TaBt"
    assert conjugate("a", "t") == "Tat"
    assert conjugate("ab", "") == "ab"
    assert conjugate(conjugate("a", "t"), "T") == "a"


def test_group_laws_random():
    rng = random.Random(7)

    def rand():
        return reduce_word("".join(rng.choice("abAB")
                                   for _ in range(rng.randrange(0, 10))))

    for _ in range(300):
        u, v, w = rand(), rand(), rand()
        assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))
        assert multiply(u, "") == u
        assert multiply("", u) == u
        assert multiply(u, invert(u)) == ""
        assert multiply(invert(u), u) == ""


def test_cyclic_reduce():
    assert cyclic_reduce("Tat") == ("a", "t")
    assert cyclic_reduce("") == ("", "")
    core, conj = cyclic_reduce("TTattaTAtA")
    assert (core, conj) == ("TTattaTAtA", "")
    assert len(core) == 10
    rng = random.Random(3)
    for _ in range(200):
        u = reduce_word("".join(rng.choice("abtABT")
                                for _ in range(rng.randrange(0, 14))))
        core, conj = cyclic_reduce(u)
        assert conjugate(core, conj) == u


def test_alphabet_errors():
    with pytest.raises(AlphabetError):
        Alphabet("aa")
    with pytest.raises(AlphabetError):
        Alphabet("aB")
    with pytest.raises(AlphabetError):
        Alphabet("ab").check_word("ac")
    with pytest.raises(AlphabetError):
        Alphabet("ab").index("c")


def test_cyclic_word_canonical():
    ab = Alphabet("abt")
    assert CyclicWord("TatB", ab).letters == "atBT"
    assert CyclicWord("Tat", ab).letters == "a"
    assert CyclicWord("", ab).letters == ""
    # equality is cyclic equality
    assert CyclicWord("atBT", ab) == CyclicWord("BTat", ab)
    assert CyclicWord("ab", ab) != CyclicWord("ba" + "", Alphabet("ab"))


def _cyclically_equal_brute(u, v):
    return len(u) == len(v) and (u in v + v if u else True)


def test_canonical_rotation_matches_brute_force():
    rng = random.Random(11)
    ab = Alphabet("ab")
    pool = []
    for _ in range(120):
        w = reduce_word("".join(rng.choice("abAB")
                                for _ in range(rng.randrange(1, 10))))
        core, _ = cyclic_reduce(w)
        if core:
            pool.append(core)
    for u in pool:
        k = rng.randrange(len(u))
        assert CyclicWord(u, ab) == CyclicWord(rotate(u, k), ab)
    for u in pool[:40]:
        for v in pool[:40]:
            assert (CyclicWord(u, ab) == CyclicWord(v, ab)) \
                == _cyclically_equal_brute(u, v)


def test_exponent_sum_examples():
    psi = make_weights("abt", 1)
    phi = make_weights("abt", {"a": 0, "b": 0, "t": 1})
    assert exponent_sum("TatB", psi) == 0
    assert exponent_sum("TatB", phi) == 0
    assert exponent_sum("at", psi) == 2
    assert exponent_sum("TbtaBA", psi) == 0
    assert exponent_sum("TbtaBA", phi) == 0


def test_exponent_sum_homomorphism_500_pairs():
    rng = random.Random(5)
    weights = make_weights("abt", {"a": 2, "b": -1, "t": 3})
    for _ in range(500):
        u = reduce_word("".join(rng.choice("abtABT")
                                for _ in range(rng.randrange(0, 12))))
        v = reduce_word("".join(rng.choice("abtABT")
                                for _ in range(rng.randrange(0, 12))))
        assert exponent_sum(multiply(u, v), weights) \
            == exponent_sum(u, weights) + exponent_sum(v, weights)


def test_weight_map_must_be_total():
    with pytest.raises(AlphabetError):
        make_weights("abt", {"a": 1, "b": 1})
    with pytest.raises(AlphabetError):
        make_weights("ab", {"a": 1, "b": 1, "t": 1})
    with pytest.raises(AlphabetError):
        exponent_sum("at", {"a": 1})


def test_substitute():
    # eliminating a via a = xt in the ten-letter relator
    assert substitute("TTattaTAtA", {"a": "xt", "t": "t"}) == "TTxtttxTXX"
    assert substitute("ab", {"a": "a", "b": "b"}) == "ab"
    assert substitute("ab", {"a": "b", "b": "abA"}) == "babA"
    with pytest.raises(AlphabetError):
        substitute("ab", {"a": "b"})


def test_substitute_is_homomorphic():
    rng = random.Random(9)
    images = {"a": "xt", "b": "TyX", "t": "t"}
    for _ in range(200):
        u = reduce_word("".join(rng.choice("abtABT")
                                for _ in range(rng.randrange(0, 8))))
        v = reduce_word("".join(rng.choice("abtABT")
                                for _ in range(rng.randrange(0, 8))))
        assert substitute(multiply(u, v), images) \
            == multiply(substitute(u, images), substitute(v, images))


def test_build_W():
    assert build_W(3, "x", "y") == "xyyyyxyyyyyxyyyyyyxyyyyyyyx"
    assert len(build_W(3, "x", "y")) == 27
    assert build_W_length(3) == 27
    assert build_W_length(9) == 96
    for s in range(3, 13):
        w = build_W(s, "x", "y")
        assert len(w) == (s + 2) + (s + 1) * (s + 8) // 2
        assert w.count("x") == s + 2
    with pytest.raises(RangeError):
        build_W(2, "x", "y")
    with pytest.raises(AlphabetError):
        build_W(3, "x", "x")
