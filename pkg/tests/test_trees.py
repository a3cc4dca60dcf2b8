import pytest

from cutforge.cuts import cut_from_members, orbit_cuts
from cutforge.graphs import Graph, is_tree, tree_distance
from cutforge.groups import TableOracle, ZdOracle, ball
from cutforge.sieve import select_nested_generating
from cutforge.trees import (
    SizePolynomial,
    TreeAction,
    TreeError,
    blow_up,
    build_partial_action,
    collapse_compressible,
    edge_cut,
    edge_cuts,
    induce_action,
    interval,
    is_compressible,
    paired_tree,
    prec,
    size_polynomial,
    subgroups,
    substabs,
    unpaired_tree,
    verify_system,
    vertex_embed,
)


def z2():
    return TableOracle(["e", "s"], [[0, 1], [1, 0]], ["s"])


def k2_pair():
    g = Graph(["u", "w"], [("uw", "u", "w")])
    a = cut_from_members(g, ["u"], "A")
    return g, verify_system([a, a.complement()])


def chain3_system():
    g = Graph(
        ["a", "b", "c", "d"],
        [("e0", "a", "b"), ("e1", "b", "c"), ("e2", "c", "d")],
    )
    cuts = [
        cut_from_members(g, ["a"], "A1"),
        cut_from_members(g, ["a", "b"], "A2"),
        cut_from_members(g, ["a", "b", "c"], "A3"),
    ]
    return g, verify_system(cuts)


def test_verify_system_flags():
    _g, paired = k2_pair()
    assert paired.valid and paired.complement_stable and not paired.complement_free
    _g, chain = chain3_system()
    assert chain.complement_free and not chain.complement_stable
    assert not chain.valid  # valid is the paired-tree precondition
    assert chain.nested and chain.max_separation == 3


def test_verify_system_rejections():
    g = Graph(["u", "w"], [("uw", "u", "w")])
    a = cut_from_members(g, ["u"], "A")
    with pytest.raises(TreeError):
        verify_system([a, cut_from_members(g, ["u"], "again")])
    crossing = verify_system(
        [
            cut_from_members(
                Graph(["1", "2", "3", "4"], []), ["1", "2"], "A"
            ),
        ]
    )
    assert crossing.excludes_empty and crossing.excludes_full


def test_crossing_witness():
    g = Graph(["1", "2", "3", "4"], [])
    a = cut_from_members(g, ["1", "2"], "A")
    b = cut_from_members(g, ["2", "3"], "B")
    system = verify_system([a, b])
    assert not system.nested
    assert system.nested_witness == ("A", "B")


def test_paired_tree_of_one_pair():
    _g, system = k2_pair()
    t = paired_tree(system)
    assert t.graph.vertices == ("n0", "n1", "n2")
    assert t.graph.edges == (("e0", "n0", "n1"), ("e1", "n2", "n1"))
    assert [t.label_names(l) for l in t.labels] == [
        ("A",),
        ("A", "~A"),
        ("~A",),
    ]
    # iota e and iota e-complement sit at distance 2 across the pair vertex
    assert tree_distance(t.graph, "n0", "n2") == 2


def test_unpaired_tree_of_chain():
    _g, system = chain3_system()
    t = unpaired_tree(system)
    assert is_tree(t.graph)
    assert t.graph.nv == 4 and t.graph.ne == 3
    assert [t.label_names(l) for l in t.labels] == [
        ("A1", "A2", "A3"),
        ("A2", "A3"),
        ("A3",),
        (),
    ]


def test_mode_preconditions():
    _g, paired = k2_pair()
    _g2, chain = chain3_system()
    with pytest.raises(TreeError):
        unpaired_tree(paired)
    with pytest.raises(TreeError):
        paired_tree(chain)


def test_empty_system_single_vertex():
    empty = verify_system([])
    assert paired_tree(empty).graph.nv == 1
    assert unpaired_tree(empty).graph.ne == 0


def test_edge_cut_blocks():
    _g, system = k2_pair()
    t = paired_tree(system)
    assert edge_cut(t.graph, "e0") == frozenset(["n0"])
    assert edge_cuts(t.graph)["e1"] == frozenset(["n2"])


def test_vertex_embed_t_mode_only():
    g, system = k2_pair()
    t = paired_tree(system)
    assert vertex_embed(t, "u") == "n0"
    assert vertex_embed(t, "w") == "n2"
    _g2, chain = chain3_system()
    with pytest.raises(TreeError):
        vertex_embed(unpaired_tree(chain), "a")


def test_interval_and_prec():
    g, system = chain3_system()
    cuts = system.cuts
    assert tuple(c.name for c in interval(system, cuts[0], cuts[2])) == (
        "A1",
        "A2",
        "A3",
    )
    assert prec(system, cuts[0], cuts[1])
    assert not prec(system, cuts[0], cuts[2])
    assert not prec(system, cuts[0], cuts[0])


def reflection_action():
    g = Graph(["a", "m", "b"], [("l", "a", "m"), ("r", "b", "m")])
    return TreeAction(
        g,
        z2(),
        {0: (0, 1, 2), 1: (2, 1, 0)},
        {0: (0, 1), 1: (1, 0)},
    )


def test_tree_action_orbits_and_stabilizers():
    act = reflection_action()
    assert act.vertex_orbits() == ((0, 2), (1,))
    assert act.edge_orbits() == ((0, 1),)
    assert act.vertex_stabilizer(1) == frozenset([0, 1])
    assert act.vertex_stabilizer(0) == frozenset([0])
    assert act.edge_stabilizer(0) == frozenset([0])


def test_action_with_inversion_rejected():
    g = Graph(["u", "w"], [("uw", "u", "w")])
    with pytest.raises(TreeError):
        TreeAction(g, z2(), {0: (0, 1), 1: (1, 0)}, {0: (0,), 1: (0,)})


def test_action_homomorphism_verified():
    g = Graph(["a", "m", "b"], [("l", "a", "m"), ("r", "b", "m")])
    with pytest.raises(TreeError):
        # s mapped to a non-involution permutation cannot be a homomorphism
        TreeAction(g, z2(), {0: (0, 1, 2), 1: (1, 2, 0)}, {0: (0, 1), 1: (1, 0)})


def test_compressible_and_collapse():
    act = reflection_action()
    assert is_compressible(act, "l") and is_compressible(act, "r")
    assert str(size_polynomial(act)) == "-1 + t"
    reduced, log = collapse_compressible(act)
    assert reduced.graph.nv == 1 and len(log) == 1
    # |G\E| - |G\V| is collapse-invariant; the edge term goes with its orbit
    assert str(size_polynomial(reduced)) == "-1"
    assert substabs(reduced) == substabs(act)


def test_subgroup_enumeration():
    o = z2()
    assert sorted(len(h) for h in subgroups(o)) == [1, 2]
    assert sorted(len(h) for h in substabs(reflection_action())) == [1, 2]


def test_collapse_needs_closed_set():
    act = reflection_action()
    with pytest.raises(TreeError):
        act.collapse(["l"])  # orbit mate r stays behind


def test_induced_action_from_vertex_permutation():
    _g, system = k2_pair()
    t = paired_tree(system)
    act = induce_action(t, z2(), vertex_perms={"s": {"u": "w", "w": "u"}})
    assert len(act.vertex_orbits()) == 2
    assert len(act.edge_orbits()) == 1
    assert str(size_polynomial(act)) == "-1 + t"


def test_induced_action_from_cut_maps():
    _g, system = k2_pair()
    t = paired_tree(system)
    act = induce_action(t, z2(), cut_maps={"s": (1, 0)})
    assert len(act.edge_orbits()) == 1
    # mapping s to the identity permutation is the (legal) trivial action
    triv = induce_action(t, z2(), cut_maps={"s": (0, 1)})
    assert len(triv.edge_orbits()) == 2


def test_cut_maps_must_respect_nesting():
    g = Graph(
        ["a", "b", "c", "d"],
        [("e0", "a", "b"), ("e1", "b", "c"), ("e2", "c", "d")],
    )
    a1 = cut_from_members(g, ["a"], "A1")
    a2 = cut_from_members(g, ["a", "b"], "A2")
    system = verify_system([a1, a1.complement(), a2, a2.complement()])
    t = paired_tree(system)
    with pytest.raises(TreeError):
        # swapping A1 with A2 reverses a strict containment
        induce_action(t, z2(), cut_maps={"s": (2, 3, 0, 1)})


def test_blow_up_path_fiber():
    act = reflection_action()
    fiber = Graph(["x", "c", "y"], [("f1", "x", "c"), ("f2", "y", "c")])
    big = blow_up(
        act,
        {"m": (fiber, {1: {"x": "y", "y": "x", "c": "c"}})},
        {("l", "dst"): "x"},
    )
    assert big.graph.nv == 5 and big.graph.ne == 4
    assert substabs(big) == substabs(act)
    reduced, log = collapse_compressible(big)
    assert reduced.graph.nv == 1 and len(log) == 2
    assert str(size_polynomial(reduced)) == "-1"


def test_size_polynomial_str():
    assert str(SizePolynomial(-1, ())) == "-1"
    assert str(SizePolynomial(0, ((2, 3),))) == "0 + 3 t^2"
    assert str(SizePolynomial(-1, ((1, 1), (2, 1)))) == "-1 + t + t^2"


def z_partial():
    bv = ball(ZdOracle(1), 6)
    o = bv.oracle
    members = [
        bv.graph.vertices[i] for i, el in enumerate(bv.elements) if el[0] <= 0
    ]
    half = cut_from_members(bv, members, "A")
    wl = o.words_up_to(2)
    sel = select_nested_generating(orbit_cuts(bv, half, wl).cuts, action=wl)
    stree = paired_tree(sel.system)
    return stree, build_partial_action(stree, wl)


def test_partial_action_on_z_tree():
    stree, pa = z_partial()
    assert stree.graph.nv == 11 and stree.graph.ne == 10
    assert pa.edge_orbits() == ((0, 2, 4, 6, 8), (1, 3, 5, 7, 9))
    assert len(pa.vertex_orbits()) == 2
    assert pa.fixed_vertices() == ()
    assert pa.orbit_max_edge_stabilizer(pa.edge_orbits()[0]) == 1


def test_partial_collapse_stages():
    stree, pa = z_partial()
    g = stree.graph
    first = [g.edges[k][0] for k in pa.edge_orbits()[0]]
    c1 = pa.collapse(first)
    assert c1.graph.nv == 6 and c1.fixed_vertices() == ()
    both = first + [g.edges[k][0] for k in pa.edge_orbits()[1]]
    c2 = pa.collapse(both)
    assert c2.graph.nv == 1 and c2.fixed_vertices() == ("n0",)
    with pytest.raises(TreeError):
        pa.collapse(first[:2])  # not closed under the word maps
