import itertools
import random

import pytest

from locfree.errors import CertificateRefused, StateError
from locfree.presentations import FreeEndo, make_gs, make_prop1, \
    recognize_ascending_hnn
from locfree.stallings import (SubgroupGraph, analyze_endomorphism,
                               graph_from_generators, separability_witness,
                               wedge_of_loops)
from locfree.words import Alphabet, invert, multiply, reduce_word


def test_graph_from_generators_examples():
    g = graph_from_generators(["b", "abA"], "ab")
    assert g.num_vertices == 2
    assert g.edges == ((0, "a", 1), (0, "b", 0), (1, "b", 1))

    rose = graph_from_generators(["a", "b"], "ab")
    assert rose.is_rose()
    assert rose.num_vertices == 1 and len(rose.edges) == 2

    trivial = graph_from_generators([], "ab")
    assert trivial.num_vertices == 1 and trivial.edges == ()
    assert trivial.rank() == 0


def test_fold_idempotent_and_state_errors():
    g = graph_from_generators(["b", "abA"], "ab")
    assert g.fold() is g

    unfolded = wedge_of_loops(["a", "a"], "ab")
    assert not unfolded.folded
    with pytest.raises(StateError):
        unfolded.contains("a")
    with pytest.raises(StateError):
        unfolded.rank()
    folded = unfolded.fold()
    assert folded.num_vertices == 1 and folded.edges == ((0, "a", 0),)


def test_contains():
    g = graph_from_generators(["b", "abA"], "ab")
    assert g.contains("b")
    assert not g.contains("a")
    assert g.contains("")
    assert g.contains("abA")
    assert g.contains("abAbb")
    assert not g.contains("ab")
    # letters outside the graph never trace
    h = graph_from_generators(["a", "b"], "abt")
    assert not h.contains("t")
    assert h.contains("ab")


def test_rank():
    assert graph_from_generators(["b", "abA"], "ab").rank() == 2
    assert graph_from_generators(["a", "b"], "ab").rank() == 2
    assert graph_from_generators([], "ab").rank() == 0
    rng = random.Random(2)
    for _ in range(50):
        w = reduce_word("".join(rng.choice("abAB")
                                for _ in range(rng.randrange(1, 10))))
        if w:
            assert graph_from_generators([w], "ab").rank() == 1


def test_folding_confluence_200_shuffles():
    rng = random.Random(13)
    cases = [
        ["b", "abA"],
        ["ab", "ba", "aa"],
        ["abAB", "aab"],
        ["aTat", "bt", "tba"],
    ]
    for gens in cases:
        alphabet = "abt" if any("t" in w.lower() for w in gens) else "ab"
        wedge = wedge_of_loops(gens, alphabet)
        reference = wedge.fold()
        for _ in range(50):
            edges = list(wedge.edges)
            rng.shuffle(edges)
            shuffled = SubgroupGraph(alphabet, wedge.num_vertices, edges)
            assert shuffled.fold() == reference


def test_contains_agrees_with_enumeration():
    rng = random.Random(17)
    for _ in range(40):
        gens = []
        for _ in range(rng.randrange(1, 4)):
            w = reduce_word("".join(rng.choice("abAB")
                                    for _ in range(rng.randrange(1, 6))))
            if w:
                gens.append(w)
        if not gens:
            continue
        graph = graph_from_generators(gens, "ab")
        factors = gens + [invert(w) for w in gens]
        members = {""}
        for r in range(1, 5):
            for combo in itertools.product(factors, repeat=r):
                word = ""
                for f in combo:
                    word = multiply(word, f)
                members.add(word)
        for word in members:
            if len(word) <= 8:
                assert graph.contains(word), (gens, word)


def test_analyze_endomorphism():
    endo = FreeEndo("ab", {"a": "b", "b": "abA"})
    rep = analyze_endomorphism(endo)
    assert rep.image_rank == 2
    assert rep.injective and rep.proper
    assert rep.missing_generator == "a"
    assert rep.strictly_ascending()

    ident = FreeEndo("ab", {"a": "a", "b": "b"})
    rep = analyze_endomorphism(ident)
    assert rep.injective and not rep.proper
    assert rep.missing_generator is None

    collapse = FreeEndo("ab", {"a": "b", "b": "b"})
    rep = analyze_endomorphism(collapse)
    assert rep.image_rank == 1 and not rep.injective

    gs3 = recognize_ascending_hnn(make_gs(3), "t").endo
    rep = analyze_endomorphism(gs3)
    assert rep.injective and rep.proper and rep.missing_generator == "a"


def test_iterated_images_strictly_descend():
    # the subgroup chain image(e) > image(e^2) > ... read downward
    cases = [(recognize_ascending_hnn(make_prop1(), "t").endo, 4),
             (recognize_ascending_hnn(make_gs(3), "t").endo, 2)]
    for endo, depth in cases:
        witness = analyze_endomorphism(endo).missing_generator
        graphs = []
        for n in range(1, depth + 2):
            e_n = endo.power(n)
            graphs.append((e_n, graph_from_generators(
                [e_n.images[g] for g in endo.alphabet], endo.alphabet)))
        for n in range(depth):
            e_n, outer = graphs[n]
            e_next, inner = graphs[n + 1]
            for g in endo.alphabet:
                assert outer.contains(e_next.images[g])
            separator = e_n.apply(witness)
            assert outer.contains(separator)
            assert not inner.contains(separator)


def test_separability_witness():
    endo = FreeEndo("ab", {"a": "b", "b": "abA"})
    w = separability_witness(endo, "t")
    assert w.conjugator == "t"
    assert w.outside_element == "taT"
    assert w.inner.rank() == 2
    assert not w.inner.contains("taT")
    assert all(flag for _, flag in w.replay())

    gs9 = recognize_ascending_hnn(make_gs(9), "t").endo
    w9 = separability_witness(gs9, "t")
    assert w9.outside_element == "taT"

    with pytest.raises(CertificateRefused):
        separability_witness(FreeEndo("ab", {"a": "a", "b": "b"}), "t")


def test_dump_canonical_order():
    g = graph_from_generators(["b", "abA"], "ab")
    assert g.dump() == ["v0 -a-> v1", "v0 -b-> v0", "v1 -b-> v1"]
