import pytest

from cutforge.groups import (
    FreeOracle,
    FreeProductOracle,
    GroupError,
    PermOracle,
    TableOracle,
    ZdOracle,
    ball,
    make_oracle,
)


def z6():
    mul = [[(a + b) % 6 for b in range(6)] for a in range(6)]
    return TableOracle([str(i) for i in range(6)], mul, ["1"])


def test_zd_arithmetic():
    o = ZdOracle(2)
    a, b = (1, 0), (0, 1)
    assert o.multiply(a, b) == (1, 1)
    assert o.invert((2, -1)) == (-2, 1)
    assert o.identity() == (0, 0)
    assert [n for n, _g in o.generators()] == ["x0", "x1"]


def test_words_identity_first():
    o = ZdOracle(1)
    ws = o.words_up_to(2)
    assert ws[0] == ((0,), "")
    assert dict(ws)[(2,)] == "x x"
    assert len(ws) == 5  # -2..2


def test_element_from_word():
    o = FreeOracle(2)
    assert o.element_from_word("") == o.identity()
    assert o.element_from_word("a b^-1") == o.multiply(
        o.element_from_word("a"), o.invert(o.element_from_word("b"))
    )
    with pytest.raises(GroupError):
        o.element_from_word("zz")
    with pytest.raises(GroupError):
        o.element_from_word("a^x")


def test_table_oracle_finite():
    o = z6()
    assert o.finite_kind
    # table elements are indices; names only appear in el_str
    assert o.el_str(o.multiply(5, 2)) == "1"
    assert o.el_str(o.invert(2)) == "4"
    bv = ball(o, 6)
    assert bv.exhausted and bv.nv == 6 and len(bv.sphere) == 0


def test_perm_oracle():
    o = PermOracle(3, [(1, 2, 0)], ["r"])
    assert o.finite_kind
    els = o.elements()
    assert len(els) == 3


def test_free_ball_is_tree():
    bv = ball(FreeOracle(2), 2)
    # 1 + 4 + 12 vertices, tree: edges = vertices - 1
    assert bv.nv == 17 and bv.graph.ne == 16
    assert len(bv.sphere) == 12
    assert not bv.exhausted


def test_free_product_ball_is_line():
    bv = ball(FreeProductOracle([2, 2]), 4)
    # the infinite dihedral Cayley graph: involutions double their edges
    assert bv.nv == 9 and bv.graph.ne == 16
    assert len(bv.sphere) == 2


def test_ball_distances():
    bv = ball(ZdOracle(1), 3)
    assert bv.dist[bv.index_of((0,))] == 0
    assert bv.dist[bv.index_of((-3,))] == 3
    assert bv.index_of((3,)) in bv.sphere
    with pytest.raises(GroupError):
        bv.index_of((4,))


def test_make_oracle_specs():
    assert isinstance(make_oracle({"kind": "zd", "d": 2}), ZdOracle)
    assert isinstance(make_oracle({"kind": "free", "k": 1}), FreeOracle)
    assert isinstance(
        make_oracle({"kind": "free_product", "orders": [2, 3]}),
        FreeProductOracle,
    )
    with pytest.raises(GroupError):
        make_oracle({"kind": "nope"})
    with pytest.raises(GroupError):
        make_oracle({"kind": "zd"})


def test_vertex_cap(monkeypatch):
    with pytest.raises(GroupError):
        ball(FreeOracle(2), 8, cap=100)
    monkeypatch.setenv("CUTFORGE_CAP_VERTICES", "10")
    with pytest.raises(GroupError):
        ball(FreeOracle(2), 3)
