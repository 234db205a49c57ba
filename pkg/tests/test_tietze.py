import pytest

from locfree.errors import MoveError, ParseError
from locfree.presentations import (AddGen, InvertRelator, MultRelator,
                                   Permute, Presentation, RemoveGen,
                                   RemoveTrivial, apply_tietze, format_script,
                                   make_gs, make_prop1, make_prop2_target,
                                   parse_script)
from locfree.verify import prop2_script_text
from locfree.words import Alphabet, CyclicWord


def test_remove_gen_prop1():
    p = apply_tietze(make_prop1(), [RemoveGen("b", 0)])
    assert p.alphabet.letters == "at"
    assert p.relators == (CyclicWord("TTattaTAtA", Alphabet("at")),)


def test_add_then_remove_reaches_x_form():
    script = [RemoveGen("b", 0), AddGen("x", "aT"), RemoveGen("a", 1)]
    p = apply_tietze(make_prop1(), script)
    assert p.alphabet.letters == "tx"
    assert p.relators == (CyclicWord("TTxtttxTXX", Alphabet("tx")),)


def test_move_validation_errors():
    p = make_prop1()
    with pytest.raises(MoveError) as err:
        apply_tietze(p, [AddGen("a", "t")])
    assert err.value.index == 0
    with pytest.raises(MoveError):
        apply_tietze(p, [AddGen("x", "q")])
    with pytest.raises(MoveError):
        apply_tietze(p, [RemoveGen("b", 5)])
    with pytest.raises(MoveError):
        # relator 1 does not define b by a b-free word
        apply_tietze(p, [RemoveGen("b", 1)])
    with pytest.raises(MoveError):
        apply_tietze(p, [MultRelator(0, 0)])
    with pytest.raises(MoveError):
        apply_tietze(p, [MultRelator(0, 1, "", 2)])
    with pytest.raises(MoveError):
        apply_tietze(p, [Permute("ab")])
    with pytest.raises(MoveError):
        apply_tietze(p, [RemoveTrivial(0)])
    with pytest.raises(MoveError):
        apply_tietze(p, [InvertRelator(7)])


def test_mult_relator_and_remove_trivial():
    p = Presentation("ab", ["ab", "ab"])
    q = apply_tietze(p, [MultRelator(0, 1, "", -1)])
    assert len(q.relators[0]) == 0
    q2 = apply_tietze(q, [RemoveTrivial(0)])
    assert len(q2.relators) == 1


def test_invert_relator():
    p = Presentation("ab", ["aab"])
    q = apply_tietze(p, [InvertRelator(0)])
    assert q.relators[0] == CyclicWord("BAA", Alphabet("ab"))


def test_permute_recanonicalizes():
    p = Presentation("ab", ["abAB"])
    q = apply_tietze(p, [Permute("ba")])
    assert q.alphabet.letters == "ba"
    assert q.relators[0] == CyclicWord("abAB", Alphabet("ba"))
    assert q.relators[0].letters == "bABa"


def test_script_roundtrip():
    script = parse_script(prop2_script_text())
    assert parse_script(format_script(script)) == script


def test_script_parse_errors():
    with pytest.raises(ParseError):
        parse_script("FROB 1\n")
    with pytest.raises(ParseError):
        parse_script("MULT 0 1 conj=T\n")
    with pytest.raises(ParseError):
        parse_script("RMGEN b x\n")


def test_bundled_script_replays_to_target():
    script = parse_script(prop2_script_text())
    trace = apply_tietze(make_prop1(), script, trace=True)
    assert trace[-1] == make_prop2_target()

    milestones = [CyclicWord("TTattaTAtA", Alphabet("at")).letters,
                  CyclicWord("TTxtttxTXX", Alphabet("tx")).letters,
                  CyclicWord("ztxYYT", Alphabet("txyz")).letters]
    for want in milestones:
        assert any(any(r.letters == want for r in p.relators) for p in trace)


def test_corrupted_script_fails_at_the_move():
    script = parse_script(prop2_script_text())
    bad = list(script)
    bad[1], bad[2] = bad[2], bad[1]
    with pytest.raises(MoveError) as err:
        apply_tietze(make_prop1(), bad)
    assert err.value.index == 1

    bad = list(script)
    bad[0] = RemoveGen("b", 1)
    with pytest.raises(MoveError) as err:
        apply_tietze(make_prop1(), bad)
    assert err.value.index == 0


def test_abelianization_invariant_along_script():
    script = parse_script(prop2_script_text())
    trace = apply_tietze(make_prop1(), script, trace=True)
    invariants = {p.abelianization() for p in trace}
    assert invariants == {(2, ())}


def test_abelianization_invariant_for_gs_elimination():
    for s in (3, 5, 9):
        p = make_gs(s)
        trace = apply_tietze(p, [RemoveGen("b", 0)], trace=True)
        assert trace[0].abelianization() == trace[1].abelianization()
