import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from torusnef import DirectSum, Dual, Line, SchemaError, Sym, Table, Tensor, from_json, restrict, to_json
from torusnef.bundles import (
    Verdict, rank, seshadri_engine, split_type, twist_threshold, EXACT_TAG, MODEL_CURVE_TAG,
)
from torusnef.oracles import flatten, random_bundle


def deg(a, curve):
    # toy degree function: curve k pairs with the k-th coordinate
    return a[curve]


def test_split_type_sorted():
    assert split_type([3, -1, 2]) == (-1, 2, 3)
    with pytest.raises(SchemaError):
        split_type([])


def test_basic_operations():
    L, M = Line((1, 0)), Line((0, 2))
    assert restrict(L + M, 1, deg) == (0, 2)
    assert restrict(L * M, 0, deg) == (1,)
    assert restrict(Dual(L + M), 1, deg) == (-2, 0)
    assert restrict(Sym(2, L + M), 1, deg) == (0, 2, 4)
    assert restrict(Sym(3, Table({"c": [0, 1]})), "c") == (0, 1, 2, 3)


def test_sym_of_split_type():
    # Sym^2 of O(1) + O(-1) on P^1: O(2) + O + O(-2)
    assert restrict(Sym(2, Table({"c": [1, -1]})), "c") == (-2, 0, 2)


@pytest.mark.parametrize("n,s", [(1, 1), (2, 3), (3, 4), (4, 2), (5, 3)])
def test_sym_rank(n, s):
    e = Sym(n, Table({"c": list(range(s))}))
    assert rank(e) == comb(n + s - 1, n) == len(restrict(e, "c"))


def test_table_validation():
    with pytest.raises(SchemaError, match="inconsistent"):
        Table({"a": [1], "b": [1, 2]})
    with pytest.raises(SchemaError):
        Table({})
    with pytest.raises(SchemaError, match="no entry"):
        restrict(Table({"a": [1]}), "b")
    with pytest.raises(SchemaError):
        DirectSum(())
    with pytest.raises(SchemaError):
        Sym(0, Line((1,)))


def test_line_without_degree_function():
    with pytest.raises(SchemaError):
        restrict(Line((1,)), 0)


def test_json_round_trip():
    obj = {"tensor": [{"sym": {"n": 2, "of": {"sum": [{"line": [1, 0]}, {"dual": {"line": [0, 1]}}]}}},
                      {"table": {"*0": [1], "0*": [2]}}]}
    e = from_json(obj)
    assert from_json(to_json(e)) == e
    three = from_json({"tensor": [{"line": [1]}, {"line": [2]}, {"line": [3]}]})
    assert restrict(three, 0, deg) == (6,)


@pytest.mark.parametrize("bad,where", [
    ({"line": [1, "x"]}, "bundle.line"),
    ({"sum": []}, "bundle.sum"),
    ({"tensor": [{"line": [1]}]}, "bundle.tensor"),
    ({"sym": {"n": 0, "of": {"line": [1]}}}, "bundle.sym.n"),
    ({"sym": {"n": 2, "of": {"frob": 1}}}, "bundle.sym.of"),
    ({"table": {"c": []}}, "bundle.table"),
    ({"line": [1], "sum": []}, "bundle"),
    ([1, 2], "bundle"),
])
def test_json_errors_name_the_field(bad, where):
    with pytest.raises(SchemaError, match=where.replace(".", r"\.")):
        from_json(bad)


def test_verdict_tags():
    assert Verdict("nef", True, True).tag == EXACT_TAG
    assert Verdict("nef", True, False).tag == MODEL_CURVE_TAG
    assert not Verdict("ample", False, True, ("c", (0,)))


def test_seshadri_engine():
    assert seshadri_engine([0, 1], lambda c: [(3, 5), (2, 9)][c]) == 2
    with pytest.raises(ValueError):
        seshadri_engine([], lambda c: (1,))


def test_twist_threshold():
    # Sym^n(O(1) + O(2)) (x) O(-3): least degree n - 3
    e = Table({"c": [1, 2]})
    assert twist_threshold(e, (3,), ["c"], lambda a, c: a[0], bound=10) == 3
    assert twist_threshold(Table({"c": [0]}), (1,), ["c"], lambda a, c: a[0], bound=10) is None


CURVES = ["p", "q", "r"]


def curve_deg(a, curve):
    return sum(x * (CURVES.index(curve) + k + 1) for k, x in enumerate(a))


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32 - 1))
def test_evaluator_matches_flattener(seed):
    e = random_bundle(random.Random(seed), CURVES, r=2, depth=4, max_rank=20)
    assert rank(e) <= 20
    for c in CURVES:
        assert restrict(e, c, curve_deg) == tuple(sorted(flatten(e, c, curve_deg)))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_sum_and_tensor_are_commutative(a, b):
    A, B = Table({"c": a}), Table({"c": b})
    assert restrict(A + B, "c") == restrict(B + A, "c")
    assert restrict(A * B, "c") == restrict(B * A, "c")
    assert restrict(Dual(A * B), "c") == restrict(Dual(A) * Dual(B), "c")
    assert min(restrict(A * B, "c")) == min(a) + min(b)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.integers(1, 4))
def test_sym_extremes(a, n):
    st_ = restrict(Sym(n, Table({"c": a})), "c")
    assert st_[0] == n * min(a) and st_[-1] == n * max(a)
    assert sum(st_) == comb(n + len(a) - 1, n) * n * sum(a) // len(a)
