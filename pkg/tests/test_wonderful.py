import pytest
from hypothesis import given, strategies as st

from torusnef import DirectSum, Line, NotNefError, SchemaError, Table, WeylElement, build_root_system
from torusnef.selftest import all_involutions
from torusnef.wonderful import (
    curve_classes, curves_through, diagram_automorphisms, minimal_rank_report, nef_test_w,
    ample_test_w, parse_involution, seshadri_w, validate_involution,
)


def test_minus_identity_on_a1():
    sd = parse_involution(build_root_system("A1"), "minus-identity")
    assert sd.restricted_roots == ((2,),)
    assert [c.class_id for c in curve_classes(sd)] == ["S[1]", "R[2]"]
    assert (sd.t1_rank, sd.t2_rank) == (0, 1)


def test_swap_on_a1xa1():
    rs = build_root_system("A1xA1")
    sd = parse_involution(rs, "swap")
    assert sd.sigma == ((0, -1), (-1, 0))
    assert (sd.t1_rank, sd.t2_rank) == (1, 1)
    assert sd.restricted_roots == ((1, 1),)
    assert [c.class_id for c in curve_classes(sd)] == ["S[0,1]", "S[1,0]", "R[1,1]"]


def test_swap_seshadri_example():
    sd = parse_involution(build_root_system("A1xA1"), "swap")
    e = Table({"S[1,0]": [2], "S[0,1]": [3], "R[1,1]": [1]})
    assert seshadri_w(sd, e, WeylElement.identity(sd.rs)) == 1
    assert seshadri_w(sd, e, WeylElement.from_word(sd.rs, [1, 2])) == 1


def test_identity_is_degenerate():
    sd = parse_involution(build_root_system("A2"), "identity")
    assert sd.degenerate and curve_classes(sd) == []
    assert minimal_rank_report(sd)["degenerate"]
    with pytest.raises(SchemaError, match="degenerate"):
        nef_test_w(sd, Table({"x": [1]}))


def test_diagram_involution_on_a2():
    rs = build_root_system("A2")
    assert diagram_automorphisms(rs) == [(1, 2), (2, 1)]
    sd = parse_involution(rs, "diagram:2,1")
    assert sd.sigma == ((0, -1), (-1, 0))
    assert (sd.t1_rank, sd.t2_rank) == (1, 1)
    assert sd.restricted_roots == ((1, 1), (2, 2))
    assert parse_involution(rs, "diagram:1,2").sigma == parse_involution(rs, "minus-identity").sigma


@pytest.mark.parametrize("sigma,match", [
    ([[0, 1], [1, 0]], "Borel"),
    ([[1, 1], [0, 1]], "involution"),
    ([[2, 0], [0, 1]], "involution"),
    ([[1, 0]], "matrix"),
    ([[1, 0], [0, "a"]], "integers"),
])
def test_invalid_involutions(sigma, match):
    with pytest.raises(SchemaError, match=match):
        validate_involution(build_root_system("A2"), sigma)


@pytest.mark.parametrize("spec", ["swap", "diagram:1,1", "diagram:3,1,2", "rotate"])
def test_invalid_shortcuts(spec):
    with pytest.raises(SchemaError):
        parse_involution(build_root_system("A3"), spec)


def test_verdicts_on_tables():
    sd = parse_involution(build_root_system("A1"), "minus-identity")
    zero = Table({"S[1]": [0], "R[2]": [0]})
    assert nef_test_w(sd, zero) and not ample_test_w(sd, zero)
    bad = Table({"S[1]": [0, -1], "R[2]": [3, 3]})
    v = nef_test_w(sd, bad)
    assert not v and v.witness == ("S[1]", (-1, 0))
    assert ample_test_w(sd, Table({"S[1]": [1], "R[2]": [4]}))
    assert seshadri_w(sd, Table({"S[1]": [5, 5], "R[2]": [5, 5]}), WeylElement.identity(sd.rs)) == 5
    with pytest.raises(NotNefError):
        seshadri_w(sd, bad, WeylElement.identity(sd.rs))


def test_table_coverage():
    sd = parse_involution(build_root_system("A1"), "minus-identity")
    with pytest.raises(SchemaError, match="misses"):
        nef_test_w(sd, Table({"S[1]": [1]}))
    with pytest.raises(SchemaError, match="unknown"):
        nef_test_w(sd, Table({"S[1]": [1], "R[2]": [1], "R[4]": [1]}))
    with pytest.raises(SchemaError, match="line"):
        nef_test_w(sd, Line((1,)))


def test_translates_through_point():
    sd = parse_involution(build_root_system("A1xA1"), "swap")
    w = WeylElement.from_word(sd.rs, [1])
    assert [str(c) for c in curves_through(sd, w)] == ["[1].S[0,1]", "[1].S[1,0]", "[1].R[1,1]"]


# exhaustive over involutions sending simple roots to roots
INVOLUTION_COUNTS = {"A1": 2, "A1xA1": 5, "A2": 5, "A3": 8}


@pytest.mark.parametrize("t", sorted(INVOLUTION_COUNTS))
def test_all_involutions_satisfy_invariants(t):
    rs = build_root_system(t)
    sds = all_involutions(rs)
    assert len(sds) == INVOLUTION_COUNTS[t]
    for sd in sds:
        assert sd.t1_rank + sd.t2_rank == rs.rank
        for b in rs.roots:
            assert rs.is_root(sd.apply(b))
        for b in sd.fixed_levi_roots:
            assert sd.apply(b) == b
        for g in sd.restricted_roots:
            assert sd.apply(g) == -g
        n = len(rs.positive_roots) - len(sd.positive_levi_roots) + len(sd.restricted_roots)
        assert len(curve_classes(sd)) == n


SWAP = parse_involution(build_root_system("A1xA1"), "swap")
IDS = [c.class_id for c in curve_classes(SWAP)]
ENTRIES = st.lists(st.integers(0, 6), min_size=2, max_size=2)


@given(st.tuples(*[ENTRIES] * 3), st.tuples(*[ENTRIES] * 3))
def test_seshadri_of_sum_is_min(a, b):
    E, F = Table(dict(zip(IDS, a))), Table(dict(zip(IDS, b)))
    w = WeylElement.identity(SWAP.rs)
    both = seshadri_w(SWAP, DirectSum((E, F)), w)
    assert both == min(seshadri_w(SWAP, E, w), seshadri_w(SWAP, F, w))
    assert both == min(min(x) for x in a + b)
