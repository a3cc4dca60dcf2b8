import pytest

from cutforge.cuts import (
    Cut,
    CutAlgebra,
    CutError,
    boolean_closure,
    cut_from_members,
    full_mask,
    nested_report,
    orbit_cuts,
)
from cutforge.graphs import Graph
from cutforge.groups import ZdOracle, ball
from cutforge.sieve import (
    classify,
    irreducible_family,
    select_nested_generating,
)


def k2():
    return Graph(["u", "w"], [("e", "u", "w")])


def c4():
    return Graph(
        ["v1", "v2", "v3", "v4"],
        [
            ("e1", "v1", "v2"),
            ("e2", "v2", "v3"),
            ("e3", "v3", "v4"),
            ("e4", "v4", "v1"),
        ],
    )


def p4():
    return Graph(
        ["a", "b", "c", "d"],
        [("e0", "a", "b"), ("e1", "b", "c"), ("e2", "c", "d")],
    )


def test_power_set_of_k2():
    g = k2()
    rep = classify(boolean_closure([cut_from_members(g, ["u"], "A")]))
    assert rep.certified and rep.undecided_count == 0
    assert sorted(el.bits for el in rep.irreducible) == [0b01, 0b10]
    # the trivial elements are classified reducible
    statuses = {el.bits: el.status for el in rep.elements}
    assert statuses[0] == "reducible"
    assert statuses[full_mask(g)] == "reducible"


def test_trivial_algebra_has_no_irreducibles():
    g = k2()
    rep = classify(CutAlgebra(g, (), (full_mask(g),)))
    assert rep.irreducible == ()
    assert len(rep.elements) == 2


def test_crossing_pair_on_cycle():
    g = c4()
    A = cut_from_members(g, ["v1", "v2"], "A")
    B = cut_from_members(g, ["v2", "v3"], "B")
    rep = classify(boolean_closure([A, B]))
    assert rep.certified and rep.L == 17
    assert [el.mask for el in rep.irreducible] == [1, 2, 4, 7, 8, 11, 13, 14]
    irr = [Cut(g, el.bits) for el in rep.irreducible]
    for i in range(len(irr)):
        for j in range(i + 1, len(irr)):
            assert nested_report(irr[i], irr[j]).nested
    assert rep.complement_stable and rep.nested and rep.generates


def test_single_cut_family():
    g = k2()
    a = cut_from_members(g, ["u"], "A")
    rep, paired = irreducible_family([a])
    assert len(paired) == 2
    assert {c.bits for c in paired} == {a.bits, a.complement().bits}
    assert len(list(rep.algebra.all_element_bits())) == 4


def test_nested_chain_family():
    g = p4()
    A1 = cut_from_members(g, ["a"], "A1")
    A2 = cut_from_members(g, ["a", "b"], "A2")
    rep, paired = irreducible_family([A1, A2])
    assert len(rep.irreducible) == 4
    assert len(list(rep.algebra.all_element_bits())) == 8
    assert [c.name for c in paired] == ["c0", "~c0", "c1", "~c1"]


def test_empty_family_needs_a_universe():
    with pytest.raises(CutError):
        irreducible_family([])


def test_selection_single_cut_forced():
    g = k2()
    sel = select_nested_generating([cut_from_members(g, ["u"], "A")])
    assert len(sel.kept) == 2 and sel.removed == ()
    assert sel.system.valid


def test_selection_fixed_point_on_nested_family():
    g = p4()
    cuts = [
        cut_from_members(g, ["a"], "A1"),
        cut_from_members(g, ["a", "b"], "A2"),
    ]
    sel = select_nested_generating(cuts)
    assert len(sel.kept) == 4 and sel.removed == ()


def test_selection_on_z_orbit():
    bv = ball(ZdOracle(1), 6)
    o = bv.oracle
    members = [
        bv.graph.vertices[i] for i, el in enumerate(bv.elements) if el[0] <= 0
    ]
    half = cut_from_members(bv, members, "A")
    wl = [(o.identity(), ""), ((1,), "x"), ((-1,), "x^-1")]
    orb = orbit_cuts(bv, half, wl)
    sel = select_nested_generating(orb.cuts, action=wl)
    # three half-lines and their complements survive as a nested chain
    assert len(sel.kept) == 6 and sel.removed == ()
    assert sel.system.valid


def test_ball_window_classification():
    bv = ball(ZdOracle(1), 6)
    members = [
        bv.graph.vertices[i] for i, el in enumerate(bv.elements) if el[0] <= 0
    ]
    half = cut_from_members(bv, members, "A")
    rep = classify(boolean_closure([half]), L=16)
    assert not rep.certified
    assert rep.undecided_count == 0  # measured: half-spaces decide early
    assert classify(boolean_closure([half])).certified
