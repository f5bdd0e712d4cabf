import pytest

from tests.conftest import single_chain_presentation
from toupie.ainf import (
    ExtAlgebra,
    TorCoalgebra,
    algebra_table,
    coalgebra_table,
    delta_prime,
    stasheff_algebra_defects,
    stasheff_coalgebra_defects,
)
from toupie.chains import underlying_path
from toupie.presentation import FormalSum
from toupie.rewriting import build_groebner


def lift(*terms):
    out = FormalSum()
    sign = 1
    for t in terms:
        if t in (+1, -1):
            sign = t
            continue
        out.add_term(t, sign)
        sign = 1
    return out


@pytest.fixture
def tor3(three_branch):
    return TorCoalgebra(build_groebner(three_branch))


def test_delta_prime_splits(three_branch):
    gd = build_groebner(three_branch)
    q = gd.quiver
    a1, a2, a3 = q.path("a1"), q.path("a2"), q.path("a3")
    assert delta_prime((a1, a2)) == lift(((a1,), (a2,)))
    assert delta_prime((a1, a2, a3)) == lift(
        ((a1,), (a2, a3)), ((a1, a2), (a3,))
    )
    assert delta_prime((a1,)).is_zero


def test_coproducts_three_branch_frozen(tor3):
    q = tor3.gd.quiver
    u = tor3.cg.parse(q.path("a1", "a2", "a3"))
    v = tor3.cg.parse(q.path("b1", "b2"))
    b = lambda *names: (q.path(n) for n in names)
    b1, b2 = b("b1", "b2")
    c1, c2 = b("c1", "c2")
    a1, a2, a3 = b("a1", "a2", "a3")
    want2v = lift(((b1,), (b2,)), -1, ((c1,), (c2,)))
    want2u = lift(-1, ((c1,), (c2,)))
    want3u = lift(((a1,), (a2,), (a3,)))
    for delta in (tor3.transfer_delta, tor3.closed_delta):
        assert delta(2, v) == want2v
        assert delta(2, u) == want2u
        assert delta(3, u) == want3u
        assert delta(3, v).is_zero
        assert delta(2, (a1,)).is_zero


def test_coproduct_monomial_two_chain_signs(overlap_monomial):
    tor = TorCoalgebra(build_groebner(overlap_monomial))
    q = tor.gd.quiver
    d1, d2, d3 = q.path("d1"), q.path("d2"), q.path("d3")
    got = tor.closed_delta(2, (d1, d2, d3))
    assert got == lift(((d1,), (d2, d3)), ((d1, d2), (d3,)))
    assert got == tor.transfer_delta(2, (d1, d2, d3))


def test_coproduct_gapped_tips_single_term():
    # tips d1d2d3 and d3d4: the cut after d1 does not parse, so one term survives
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d3", "d4"]])
    tor = TorCoalgebra(build_groebner(pres))
    q = tor.gd.quiver
    d1, d4 = q.path("d1"), q.path("d4")
    d23 = q.path("d2", "d3")
    two = tor.cg.parse(q.path("d1", "d2", "d3", "d4"))
    assert two == (d1, d23, d4)
    got = tor.closed_delta(2, two)
    assert got == lift(((d1, d23), (d4,)))
    assert got == tor.transfer_delta(2, two)


def test_coproduct_shifted_cubic_tips_both_terms():
    pres = single_chain_presentation([["d1", "d2", "d3"], ["d2", "d3", "d4"]])
    tor = TorCoalgebra(build_groebner(pres))
    q = tor.gd.quiver
    d1, d2, d4 = q.path("d1"), q.path("d2"), q.path("d4")
    d23, d34 = q.path("d2", "d3"), q.path("d3", "d4")
    two = (d1, d23, d4)
    got = tor.closed_delta(2, two)
    assert got == lift(((d1,), (d2, d34)), ((d1, d23), (d4,)))
    assert got == tor.transfer_delta(2, two)


def test_closed_equals_transfer_on_fixtures(three_branch, overlap_monomial):
    presentations = [
        three_branch,
        overlap_monomial,
        single_chain_presentation([["d1", "d2", "d3"], ["d3", "d4"]]),
        single_chain_presentation([["d1", "d2", "d3"], ["d2", "d3", "d4"]]),
        single_chain_presentation([["d1", "d2"], ["d2", "d3", "d4"]]),
        single_chain_presentation([["d1", "d2"], ["d2", "d3"], ["d3", "d4"]]),
        single_chain_presentation([["d1", "d2"], ["d3", "d4"]]),
    ]
    for pres in presentations:
        tor = TorCoalgebra(build_groebner(pres))
        for c in tor.all_chains():
            for n in range(2, 6):
                assert tor.closed_delta(n, c) == tor.transfer_delta(n, c)


def test_coproduct_degree_bookkeeping(three_branch, overlap_monomial):
    # every output word of Delta_n carries total degree |c| + n - 2
    for pres in (three_branch, overlap_monomial):
        tor = TorCoalgebra(build_groebner(pres))
        for c in tor.all_chains():
            for n in range(2, 6):
                for word in tor.closed_delta(n, c).terms:
                    assert sum(len(w) for w in word) == len(c) + n - 2
                    assert all(tor.cg.is_chain(w) for w in word)


def test_coproduct_local_finiteness(tor3):
    # arities beyond the underlying path length vanish
    for c in tor3.all_chains():
        for n in range(len(underlying_path(c)) + 1, len(underlying_path(c)) + 4):
            assert tor3.closed_delta(n, c).is_zero


def test_ext_products_three_branch_frozen(tor3):
    ext = ExtAlgebra(tor3)
    q = tor3.gd.quiver
    u = tor3.cg.parse(q.path("a1", "a2", "a3"))
    v = tor3.cg.parse(q.path("b1", "b2"))
    dual = lambda name: (q.path(name),)
    assert ext.m((dual("b1"), dual("b2"))) == lift(-1, v)
    assert ext.m((dual("c1"), dual("c2"))) == lift(u, v)
    assert ext.m((dual("a1"), dual("a2"), dual("a3"))) == lift(u)
    # everything else among the generators vanishes
    gens = [dual(a.name) for a in q.arrows]
    hits = {}
    for f in gens:
        for g in gens:
            got = ext.m((f, g))
            if got:
                hits[(f[0].names, g[0].names)] = got
    assert set(hits) == {(("b1",), ("b2",)), (("c1",), ("c2",))}
    for f in gens:
        for g in gens:
            for h in gens:
                got = ext.m((f, g, h))
                if got:
                    assert (f[0].names, g[0].names, h[0].names) == (("a1",), ("a2",), ("a3",))


def test_ext_products_match_oracle_pipeline(tor3):
    closed = ExtAlgebra(tor3)
    oracle = ExtAlgebra(tor3, use_oracle=True)
    for n in (2, 3):
        for tup in closed.composable_tuples(n):
            assert closed.m(tup) == oracle.m(tup)


def test_products_associative_monomial(overlap_monomial):
    # with m_1 = 0, coherence at arity 3 is associativity of m_2 on the nose
    tor = TorCoalgebra(build_groebner(overlap_monomial))
    ext = ExtAlgebra(tor)
    q = tor.gd.quiver
    d1, d2, d3 = ((q.path(n),) for n in ("d1", "d2", "d3"))
    left = ext.m((d1, d2)).map_terms(lambda g: ext.m((g, d3)))
    right = ext.m((d2, d3)).map_terms(lambda g: ext.m((d1, g)))
    full = tor.cg.parse(q.path("d1", "d2", "d3"))
    assert left == right == lift(-1, full)


def test_one_term_product_form_agrees(three_branch, overlap_monomial):
    presentations = [
        three_branch,
        overlap_monomial,
        single_chain_presentation([["d1", "d2", "d3"], ["d2", "d3", "d4"]]),
        single_chain_presentation([["d1", "d2"], ["d2", "d3"], ["d3", "d4"]]),
    ]
    for pres in presentations:
        ext = ExtAlgebra(TorCoalgebra(build_groebner(pres)))
        for n in range(2, 6):
            for tup in ext.composable_tuples(n):
                assert ext.m(tup) == ext.closed_m(tup), (n, tup)


def test_stasheff_identities_hold(three_branch, overlap_monomial):
    for pres in (three_branch, overlap_monomial):
        tor = TorCoalgebra(build_groebner(pres))
        ext = ExtAlgebra(tor)
        ctab = coalgebra_table(tor, 5)
        atab = algebra_table(ext, 5)
        assert stasheff_coalgebra_defects(ctab, tor.all_chains(), 5) == []
        tuples = {n: ext.composable_tuples(n) for n in range(2, 6)}
        assert stasheff_algebra_defects(atab, tuples, 5) == []


def test_stasheff_catches_corrupted_sign(overlap_monomial):
    tor = TorCoalgebra(build_groebner(overlap_monomial))
    ext = ExtAlgebra(tor)
    q = tor.gd.quiver
    atab = algebra_table(ext, 5)
    key = ((q.path("d1"),), (q.path("d2"),))
    atab[2] = dict(atab[2])
    atab[2][key] = atab[2][key].scale(-1)
    tuples = {n: ext.composable_tuples(n) for n in range(2, 6)}
    bad = stasheff_algebra_defects(atab, tuples, 5)
    assert any(n == 3 for n, _, _ in bad)
