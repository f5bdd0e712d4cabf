import pytest

from tests.conftest import single_chain_presentation
from toupie.chains import ChainGraph
from toupie.morse import BarSDR, bar_differential, bar_words, classify_word
from toupie.presentation import FormalSum
from toupie.rewriting import build_groebner


def lift(*words):
    out = FormalSum()
    sign = 1
    for w in words:
        if w in (+1, -1):
            sign = w
            continue
        out.add_term(w, sign)
        sign = 1
    return out


def test_bar_cells_three_branch(three_branch):
    gd = build_groebner(three_branch)
    cells = bar_words(gd)
    assert [len(cells.get(d, ())) for d in range(5)] == [6, 10, 6, 1, 0]


def test_bar_differential_signs(three_branch):
    gd = build_groebner(three_branch)
    q = gd.quiver
    b1, b2 = q.path("b1"), q.path("b2")
    c12 = q.path("c1", "c2")
    # the first merge comes in positive; b1 b2 rewrites to c1 c2
    assert bar_differential(gd, (b1, b2)) == lift((c12,))
    a1, a2, a3 = q.path("a1"), q.path("a2"), q.path("a3")
    a12, a23 = q.path("a1", "a2"), q.path("a2", "a3")
    assert bar_differential(gd, (a1, a2, a3)) == lift((a12, a3), -1, (a1, a23))
    assert bar_differential(gd, (a1,)).is_zero
    assert bar_differential(gd, q.trivial("0")).is_zero


def test_matching_pairs_three_branch(three_branch):
    gd = build_groebner(three_branch)
    cg = ChainGraph(gd)
    q = gd.quiver
    pairs = {
        (q.path("c1", "c2"),): (q.path("c1"), q.path("c2")),
        (q.path("a1", "a2"),): (q.path("a1"), q.path("a2")),
        (q.path("a2", "a3"),): (q.path("a2"), q.path("a3")),
        (q.path("a1", "a2"), q.path("a3")): (q.path("a1"), q.path("a2"), q.path("a3")),
    }
    for lo, hi in pairs.items():
        assert classify_word(cg, lo) == ("lower", hi)
        assert classify_word(cg, hi) == ("upper", lo)
    assert classify_word(cg, (q.path("b1"), q.path("b2")))[0] == "critical"
    assert classify_word(cg, (q.path("a1"), q.path("a2", "a3")))[0] == "critical"


def test_criticals_are_chains(three_branch, overlap_monomial):
    for pres in (three_branch, overlap_monomial):
        sdr = BarSDR(build_groebner(pres))
        cx = sdr.complex
        for d in sorted(cx.cells_by_degree):
            crit = set(cx.critical(d))
            if d == 0:
                assert crit == set(cx.cells_by_degree[0])
            else:
                assert crit == set(sdr.cg.chains(d - 1))


def test_partner_of_partner(three_branch):
    sdr = BarSDR(build_groebner(three_branch))
    cx = sdr.complex
    for lo, hi in cx.up.items():
        assert classify_word(sdr.cg, hi) == ("upper", lo)


def test_closed_maps_frozen_values(three_branch):
    gd = build_groebner(three_branch)
    sdr = BarSDR(gd)
    q = gd.quiver
    c12 = (q.path("c1", "c2"),)
    assert sdr.sdr_h(c12) == lift((q.path("c1"), q.path("c2")))
    assert sdr.sdr_p(c12).is_zero
    split = (q.path("a1", "a2"), q.path("a3"))
    assert sdr.sdr_h(split) == lift((q.path("a1"), q.path("a2"), q.path("a3")))
    assert sdr.sdr_p(split) == lift((q.path("a1"), q.path("a2", "a3")))
    # inclusion corrects 1-chains by the rest of their relation
    assert sdr.sdr_i((q.path("b1"), q.path("b2"))) == lift(
        (q.path("b1"), q.path("b2")), -1, (q.path("c1"), q.path("c2"))
    )
    assert sdr.sdr_i((q.path("a1"), q.path("a2", "a3"))) == lift(
        (q.path("a1"), q.path("a2", "a3")), -1, (q.path("c1"), q.path("c2"))
    )
    assert sdr.sdr_i((q.path("a1"),)) == lift((q.path("a1"),))
    assert sdr.sdr_h((q.path("b1"), q.path("b2"))).is_zero


def test_closed_h_rejects_unattached(three_branch):
    gd = build_groebner(three_branch)
    sdr = BarSDR(gd)
    q = gd.quiver
    with pytest.raises(ValueError, match="not attached"):
        sdr.sdr_h((q.path("a1"), q.path("a2")))


def test_formal_words_with_tip_letters():
    pres = single_chain_presentation([["d1", "d2"], ["d2", "d3"]])
    gd = build_groebner(pres)
    sdr = BarSDR(gd)
    q = gd.quiver
    w = (q.path("d1", "d2"), q.path("d3"))
    expected = lift((q.path("d1"), q.path("d2"), q.path("d3")))
    assert sdr.sdr_h(w) == expected
    assert sdr.sdr_p(w) == expected


def test_monomial_algebra_has_no_matched_cells(overlap_monomial):
    sdr = BarSDR(build_groebner(overlap_monomial))
    assert sdr.complex.up == {}
    for d, cells in sdr.complex.cells_by_degree.items():
        for w in cells:
            assert sdr.complex.morse_diff(w).is_zero


def test_induced_differential_vanishes(three_branch):
    sdr = BarSDR(build_groebner(three_branch))
    cx = sdr.complex
    for d in sorted(cx.cells_by_degree):
        for w in cx.critical(d):
            assert cx.morse_diff(w).is_zero


def test_closed_maps_match_oracle_everywhere(three_branch, overlap_monomial):
    for pres in (three_branch, overlap_monomial):
        assert BarSDR(build_groebner(pres)).verify() == []


def test_oracle_identities_on_longer_tips():
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d3", "d4"]])
    assert BarSDR(build_groebner(pres)).verify() == []
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d2", "d3", "d4"]])
    assert BarSDR(build_groebner(pres)).verify() == []
