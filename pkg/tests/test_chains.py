"""Chain words, their graph, parses and decompositions."""
from __future__ import annotations

import pytest

from toupie.chains import ChainGraph, underlying_path
from toupie.rewriting import build_groebner
from tests.conftest import single_chain_presentation


def names(word):
    return tuple(p.names for p in word)


@pytest.fixture
def cg3(three_branch):
    return ChainGraph(build_groebner(three_branch))


@pytest.fixture
def cgm(overlap_monomial):
    return ChainGraph(build_groebner(overlap_monomial))


def test_chain_counts_three_branch(cg3):
    assert len(cg3.chains(0)) == 7
    assert sorted(names(w) for w in cg3.chains(1)) == [
        ((("a1",), ("a2", "a3"))),
        ((("b1",), ("b2",))),
    ]
    assert cg3.chains(2) == []
    assert cg3.max_chain_degree() == 1


def test_chain_counts_overlap(cgm):
    assert len(cgm.chains(0)) == 3
    assert sorted(names(w) for w in cgm.chains(1)) == [
        ((("d1",), ("d2",))),
        ((("d2",), ("d3",))),
    ]
    assert [names(w) for w in cgm.chains(2)] == [(("d1",), ("d2",), ("d3",))]
    assert cgm.chains(3) == []


def test_one_chains_match_tips(cg3, cgm):
    for cg in (cg3, cgm):
        paths = {underlying_path(w) for w in cg.chains(1)}
        assert paths == set(cg.gd.tips)


def test_cubic_overlapping_tips():
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d2", "d3", "d4"]])
    cg = ChainGraph(build_groebner(pres))
    assert sorted(names(w) for w in cg.chains(1)) == [
        (("d1",), ("d2", "d3")),
        (("d2",), ("d3", "d4")),
    ]
    assert [names(w) for w in cg.chains(2)] == [(("d1",), ("d2", "d3"), ("d4",))]
    assert cg.chains(3) == []


def test_gapped_tips():
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d3", "d4"]])
    cg = ChainGraph(build_groebner(pres))
    assert sorted(names(w) for w in cg.chains(1)) == [
        (("d1",), ("d2", "d3")),
        (("d3",), ("d4",)),
    ]
    assert [names(w) for w in cg.chains(2)] == [(("d1",), ("d2", "d3"), ("d4",))]


def test_parse_inverts_underlying_path(cg3, cgm):
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d2", "d3", "d4"]])
    cgo = ChainGraph(build_groebner(pres))
    for cg in (cg3, cgm, cgo):
        d = 0
        while cg.chains(d):
            for w in cg.chains(d):
                assert cg.parse(underlying_path(w)) == w
            d += 1
        # distinct chains, distinct paths
        for k in range(d):
            layer = cg.chains(k)
            assert len({underlying_path(w) for w in layer}) == len(layer)


def test_parse_rejects_non_chain_paths(cg3):
    q = cg3.gd.quiver
    assert cg3.parse(q.path("a1", "a2")) is None
    assert cg3.parse(q.path("c1", "c2")) is None
    assert cg3.parse(q.path("a1", "a2", "a3")) == (q.path("a1"), q.path("a2", "a3"))


def test_decompositions_none_for_long_tip_chain(cg3):
    q = cg3.gd.quiver
    u = (q.path("a1"), q.path("a2", "a3"))
    assert cg3.decompositions(u, 2) == []


def test_decompositions_overlap(cgm):
    q = cgm.gd.quiver
    w = (q.path("d1"), q.path("d2"), q.path("d3"))
    got = cgm.decompositions(w, 2)
    assert sorted(tuple(names(b) for b in d) for d in got) == [
        (((("d1",),)), ((("d2",), ("d3",)))),
        (((("d1",), ("d2",))), ((("d3",),))),
    ]


def test_decomposition_can_cross_letter_boundaries():
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d2", "d3", "d4"]])
    cg = ChainGraph(build_groebner(pres))
    q = pres.quiver
    w = (q.path("d1"), q.path("d2", "d3"), q.path("d4"))
    got = cg.decompositions(w, 2)
    # the cut (d1, d2 d3 d4) does not respect the letter boundary of w
    assert sorted(tuple(names(b) for b in d) for d in got) == [
        ((("d1",),), (("d2",), ("d3", "d4"))),
        ((("d1",), ("d2", "d3")), (("d4",),)),
    ]


def test_prefix_chain_length(cg3):
    q = cg3.gd.quiver
    assert cg3.prefix_chain_length((q.path("a1"), q.path("a2", "a3"))) == 2
    assert cg3.prefix_chain_length((q.path("a1"), q.path("a2"))) == 1
    assert cg3.prefix_chain_length((q.path("a1", "a2"), q.path("a3"))) == 0
    assert cg3.prefix_chain_length((q.path("c1"), q.path("c2"))) == 1
    # formal words with a tip letter never start a chain prefix past it
    assert cg3.prefix_chain_length((q.path("b1", "b2"),)) == 0
