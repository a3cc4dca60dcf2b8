import pytest

from cutforge.cuts import cut_from_members
from cutforge.graphs import Graph
from cutforge.series import (
    DEFAULT_BALL_L,
    SeriesError,
    certified_length,
    compare,
    corner_series,
    crossing_distance,
    enumeration_counts,
    measure,
    odd_crossing_series,
    series_scale,
    series_sum,
    transfer_counts,
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


def test_k2_measure_alternates():
    g = k2()
    a = cut_from_members(g, ["u"], "A")
    s = measure(g, a, 5)
    assert s.coeffs == (0, 1, 0, 1, 0, 1)
    assert measure(g, a.complement(), 5).coeffs == s.coeffs


def test_measure_empty_cut_is_zero():
    g = k2()
    s = measure(g, 0, 5)
    assert s.is_zero()


def test_k2_odd_crossing():
    g = k2()
    s = odd_crossing_series(g, ["e"], 4)
    assert s.coeffs == (0, 2, 0, 2, 0)
    assert odd_crossing_series(g, [], 4).is_zero()


def test_odd_degree_one_counts_darts():
    g = c4()
    s = odd_crossing_series(g, ["e1", "e3"], 3)
    assert s.coeffs[0] == 0 and s.coeffs[1] == 4
    assert all(c % 2 == 0 for c in s.coeffs)


def test_coboundary_series_is_twice_measure():
    g = c4()
    a = cut_from_members(g, ["v1", "v2"])
    L = certified_length(g)
    sd = odd_crossing_series(g, a.coboundary(), L)
    assert sd.coeffs == series_scale(measure(g, a, L), 2).coeffs


def test_certified_length_and_flags():
    g = k2()
    assert certified_length(g) == 9
    assert DEFAULT_BALL_L == 16
    assert measure(g, 1, 9).certified
    assert not measure(g, 1, 8).certified


def test_compare_outcomes():
    g = c4()
    a = cut_from_members(g, ["v1"])
    b = cut_from_members(g, ["v1", "v2"])
    L = certified_length(g)
    ord1 = compare(measure(g, a, L), measure(g, b, L))
    assert ord1.outcome == "less" and ord1.pivot == 2
    assert compare(measure(g, a, L), measure(g, a, L)).outcome == "certified_equal"
    assert compare(measure(g, a, 5), measure(g, a, 5)).outcome == "equal_up_to"
    with pytest.raises(SeriesError):
        compare(measure(g, a, 5), measure(g, a, 6))


def test_corner_identity_and_crossing_pair():
    g = c4()
    A = cut_from_members(g, ["v1", "v2"], "A")
    B = cut_from_members(g, ["v2", "v3"], "B")
    sa, sb, sc, sd = corner_series(g, A.bits, B.bits, 4)
    assert sb.coeffs == (0, 0, 2, 0, 8)
    assert series_sum(sa, sb, sc).coeffs == measure(g, A, 4).coeffs
    # a counts paths out of an empty corner when A cap B = emptyset
    C = cut_from_members(g, ["v3"])
    ea, _eb, _ec, _ed = corner_series(g, A.bits & C.bits, C.bits, 4)
    assert ea.is_zero()


def test_crossing_distance():
    g = c4()
    assert crossing_distance(g, ["e1"], ["e1"]) == 1
    p4 = Graph(
        ["a", "b", "c", "d"],
        [("e0", "a", "b"), ("e1", "b", "c"), ("e2", "c", "d")],
    )
    # graph distance between the edge sets is 1, so d = 3
    assert crossing_distance(p4, ["e0"], ["e2"]) == 3


def test_engines_agree_on_fixed_cases():
    g = c4()
    a = cut_from_members(g, ["v1", "v2"]).bits
    b = cut_from_members(g, ["v2", "v3"]).bits
    for spec in (("measure", a), ("odd", ("e1", "e2")), ("corner", a, b)):
        t = transfer_counts(g, spec, 6)
        e = enumeration_counts(g, spec, 6)
        assert t.coeffs == e.coeffs
        assert t.provenance == "transfer" and e.provenance == "enumeration"


def test_series_str_format():
    g = k2()
    assert str(measure(g, 1, 3)) == "0 + 1 t + 0 t^2 + 1 t^3"
    assert measure(g, 1, 3).json_coeffs() == ["0", "1", "0", "1"]
